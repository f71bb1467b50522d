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

#include "eeginception/dataset_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace eeginc {

namespace {

using nlohmann::json;

constexpr int kManifestVersion = 1;

std::filesystem::path blob_path_for(const std::filesystem::path& manifest) {
  std::filesystem::path p = manifest;
  p.replace_extension(".bin");
  return p;
}

void write_f32(std::ostream& os, const MatX<double>& samples) {
  // channel-major: all of channel 0, then channel 1, ...
  std::vector<float> row(static_cast<size_t>(samples.cols()));
  for (Index c = 0; c < samples.rows(); ++c) {
    for (Index t = 0; t < samples.cols(); ++t)
      row[static_cast<size_t>(t)] = static_cast<float>(samples(c, t));
    os.write(reinterpret_cast<const char*>(row.data()),
             static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
}

}  // namespace

void save_trialset(const TrialSet& set, const std::string& manifest_path) {
  const std::filesystem::path mpath(manifest_path);
  const std::filesystem::path bpath = blob_path_for(mpath);

  std::ofstream blob(bpath, std::ios::binary | std::ios::trunc);
  if (!blob) throw DataError("cannot open blob for writing: " + bpath.string());

  json trials = json::array();
  std::uint64_t offset = 0;
  for (const auto& t : set.trials) {
    if (!t.samples.allFinite())
      throw NumericError("save_trialset: trial " + t.id +
                         " contains non-finite samples");
    write_f32(blob, t.samples);
    json rec;
    rec["id"] = t.id;
    rec["subject"] = t.subject;
    rec["label"] = t.label;
    rec["rejected"] = t.rejected;
    rec["split"] = split_name(t.split);
    rec["offset"] = offset;
    rec["n_samples"] = t.length();
    rec["sample_rate_hz"] = t.sample_rate_hz;
    trials.push_back(rec);
    offset += static_cast<std::uint64_t>(t.channels()) *
              static_cast<std::uint64_t>(t.length()) * sizeof(float);
  }
  blob.close();

  std::set<std::string> subjects;
  for (const auto& t : set.trials) subjects.insert(t.subject);

  json m;
  m["format"] = "eeginception-trialset";
  m["version"] = kManifestVersion;
  m["n_classes"] = set.n_classes;
  m["channels"] = set.channel_names;
  m["subjects"] = std::vector<std::string>(subjects.begin(), subjects.end());
  m["blob"] = bpath.filename().string();
  m["trials"] = trials;

  std::ofstream out(mpath, std::ios::trunc);
  if (!out) throw DataError("cannot open manifest for writing: " + manifest_path);
  out << m.dump(2) << "\n";
}

TrialSet load_trialset(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw DataError("cannot open manifest: " + manifest_path);
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw DataError("manifest parse error in " + manifest_path + ": " +
                    e.what());
  }
  if (!m.contains("format") || m["format"] != "eeginception-trialset")
    throw DataError("not a trialset manifest: " + manifest_path);
  if (!m.contains("version") || m["version"].get<int>() != kManifestVersion)
    throw DataError("unsupported manifest version in " + manifest_path);

  const std::filesystem::path mdir =
      std::filesystem::path(manifest_path).parent_path();
  const std::filesystem::path bpath = mdir / m.at("blob").get<std::string>();
  std::ifstream blob(bpath, std::ios::binary);
  if (!blob) throw DataError("cannot open blob: " + bpath.string());
  blob.seekg(0, std::ios::end);
  const std::uint64_t blob_size = static_cast<std::uint64_t>(blob.tellg());

  TrialSet set;
  set.n_classes = m.at("n_classes").get<int>();
  set.channel_names = m.at("channels").get<std::vector<std::string>>();
  const Index n_channels = static_cast<Index>(set.channel_names.size());

  // Bounds and overlap checks before touching payload bytes.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  for (const auto& rec : m.at("trials")) {
    const std::uint64_t off = rec.at("offset").get<std::uint64_t>();
    const std::uint64_t len = static_cast<std::uint64_t>(n_channels) *
                              rec.at("n_samples").get<std::uint64_t>() *
                              sizeof(float);
    if (off + len > blob_size)
      throw DataError("corrupt manifest: trial '" +
                      rec.at("id").get<std::string>() +
                      "' range extends past end of blob");
    ranges.emplace_back(off, off + len);
  }
  std::sort(ranges.begin(), ranges.end());
  for (size_t i = 1; i < ranges.size(); ++i)
    if (ranges[i].first < ranges[i - 1].second)
      throw DataError("corrupt manifest: overlapping trial byte ranges");

  for (const auto& rec : m.at("trials")) {
    Trial t;
    t.id = rec.at("id").get<std::string>();
    t.subject = rec.at("subject").get<std::string>();
    t.label = rec.at("label").get<int>();
    t.rejected = rec.at("rejected").get<bool>();
    t.split = split_from_name(rec.at("split").get<std::string>());
    t.sample_rate_hz = rec.at("sample_rate_hz").get<double>();
    const Index n_samples = rec.at("n_samples").get<Index>();
    if (t.label < 0 || t.label >= set.n_classes)
      throw DataError("manifest: trial '" + t.id + "' label out of range");

    blob.seekg(static_cast<std::streamoff>(rec.at("offset").get<std::uint64_t>()));
    std::vector<float> buf(static_cast<size_t>(n_channels * n_samples));
    blob.read(reinterpret_cast<char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!blob)
      throw DataError("blob read failed for trial '" + t.id + "'");
    t.samples.resize(n_channels, n_samples);
    for (Index c = 0; c < n_channels; ++c)
      for (Index s = 0; s < n_samples; ++s)
        t.samples(c, s) =
            static_cast<double>(buf[static_cast<size_t>(c * n_samples + s)]);
    if (!t.samples.allFinite())
      throw DataError("NaN payload in trial '" + t.id + "'");
    set.trials.push_back(std::move(t));
  }
  return set;
}

Trial csv_import_trial(const std::string& csv_path, const std::string& id,
                       const std::string& subject, int label,
                       double sample_rate_hz) {
  std::ifstream in(csv_path);
  if (!in) throw DataError("cannot open csv: " + csv_path);
  std::string line;
  if (!std::getline(in, line))
    throw DataError("csv has no header row: " + csv_path);

  auto split_line = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };

  const auto header = split_line(line);
  const Index n_channels = static_cast<Index>(header.size());
  if (n_channels < 1) throw DataError("csv header empty: " + csv_path);

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (static_cast<Index>(cells.size()) != n_channels)
      throw DataError("csv row " + std::to_string(rows.size() + 2) +
                      " has wrong column count: " + csv_path);
    std::vector<double> vals;
    for (const auto& c : cells) {
      try {
        vals.push_back(std::stod(c));
      } catch (const std::exception&) {
        throw DataError("csv: cannot parse '" + c + "' in " + csv_path);
      }
    }
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw DataError("csv has no samples: " + csv_path);

  Trial t;
  t.id = id;
  t.subject = subject;
  t.label = label;
  t.sample_rate_hz = sample_rate_hz;
  t.samples.resize(n_channels, static_cast<Index>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (Index c = 0; c < n_channels; ++c)
      t.samples(c, static_cast<Index>(r)) = rows[r][static_cast<size_t>(c)];
  if (!t.samples.allFinite())
    throw DataError("csv contains non-finite values: " + csv_path);
  return t;
}

}  // namespace eeginc
