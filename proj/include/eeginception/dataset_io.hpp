// Copyright 2026 The eeginception Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "eeginception/trial.hpp"

#include <string>

namespace eeginc {

// On-disk trial storage: a versioned JSON manifest describing subjects,
// channels and per-trial byte ranges, next to a binary blob of little-endian
// 32-bit floats (trials concatenated, channel-major within each trial).
//
// Converting the public BCI Competition IV recordings into this format is an
// external contract: write one trial per manifest record, channels in the
// montage order of the recording (EEG only, microvolts), label from the cue
// event code, `rejected` from the artifact annotation, and the session's
// train/test membership as the split tag.

// Writes `set` as <manifest_path> plus a sibling blob whose name is the
// manifest's stem + ".bin".
void save_trialset(const TrialSet& set, const std::string& manifest_path);

TrialSet load_trialset(const std::string& manifest_path);

// Tiny hand-made trials: one CSV per trial, header row of channel names,
// one row per time sample, channels as columns. Bit-exactness is not
// promised through this path.
Trial csv_import_trial(const std::string& csv_path, const std::string& id,
                       const std::string& subject, int label,
                       double sample_rate_hz = 250.0);

}  // namespace eeginc
