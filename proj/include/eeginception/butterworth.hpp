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

#include "eeginception/common.hpp"

#include <complex>
#include <string>
#include <vector>

namespace eeginc {

// One second-order IIR section, direct form II transposed.
// Transfer function (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2).
struct Biquad {
  double b0 = 1, b1 = 0, b2 = 0;
  double a1 = 0, a2 = 0;

  // Poles strictly inside the unit circle (stability triangle).
  bool stable() const {
    return std::abs(a2) < 1.0 && std::abs(a1) < 1.0 + a2;
  }
};

// Cascade of biquads realizing one high-order filter, with its design
// metadata. High-order direct forms are numerically fragile this close to
// Nyquist; sections keep coefficient sensitivity bounded.
struct SosFilter {
  std::vector<Biquad> sections;
  int order = 0;
  double cutoff_hz = 0;
  double sample_rate_hz = 0;

  bool stable() const {
    for (const auto& s : sections)
      if (!s.stable()) return false;
    return true;
  }
};

// Designs an even-order Butterworth high-pass: analog prototype, high-pass
// transform, bilinear transform with frequency prewarping, paired into
// second-order sections with the gain spread evenly across sections.
SosFilter design_butterworth_highpass(int order, double cutoff_hz,
                                      double fs_hz);

// Complex frequency response of the cascade at frequency hz.
std::complex<double> frequency_response(const SosFilter& filter, double hz);

inline double magnitude_db(const SosFilter& filter, double hz) {
  return 20.0 * std::log10(std::abs(frequency_response(filter, hz)));
}

// Causal forward filtering, zero initial conditions, sections in cascade.
VecX<double> sos_filter(const SosFilter& filter, const VecX<double>& signal);

// Forward-backward filtering (zero phase, squared magnitude response).
VecX<double> sos_filter_zero_phase(const SosFilter& filter,
                                   const VecX<double>& signal);

// Filters each row of a channels x time matrix independently.
MatX<double> sos_filter_channels(const SosFilter& filter,
                                 const MatX<double>& signal,
                                 bool zero_phase = false);

// Plain-text coefficient table, one section per line: b0 b1 b2 a1 a2,
// >= 15 significant digits, for cross-checking against external design
// tools.
std::string export_coefficients(const SosFilter& filter);

}  // namespace eeginc
