// Copyright 2026 The shotplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shotplan/bench.hpp"
#include "shotplan/metaplan.hpp"

namespace shotplan {

/// Provenance stamped into every emitted file.
struct FileMeta {
    std::string tool;
    std::string version;
    std::uint64_t seed = 0;
    std::string config_digest;
};

FileMeta make_meta(std::uint64_t seed, const nlohmann::json& config);

void to_json(nlohmann::json& j, const FileMeta& m);

/// FNV-1a 64-bit of the canonical (dumped) JSON, as 16 hex digits.
std::string config_digest(const nlohmann::json& config);

std::string iso_timestamp_utc();

/// Appends records as JSON lines. A fresh file starts with one meta line
/// {"meta": {...}}; readers skip meta lines.
void append_trial_records(const std::filesystem::path& path,
                          const FileMeta& meta,
                          std::span<const TrialRecord> records);

std::vector<TrialRecord> read_trial_records(const std::filesystem::path& path);

/// JSON document {"meta": ..., <key>: <payload>} written atomically enough
/// for our purposes (truncate + write).
void write_json_file(const std::filesystem::path& path, const FileMeta& meta,
                     const std::string& key, const nlohmann::json& payload);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// CSV `r,m,n,P,gamma,P_reliable`, row-major by r then m, after a `#` meta
/// comment line. Infeasible cells carry nan in the probability columns.
void write_surface_csv(const std::filesystem::path& path, const FileMeta& meta,
                       std::span<const SurfaceCell> cells);

/// CSV `B,d,P_reliable,n,m,r` after a `#` meta comment line.
void write_frontier_csv(const std::filesystem::path& path,
                        const FileMeta& meta,
                        std::span<const FrontierRow> rows);

/// Accuracy in Hartree from a decimal string or the ChPxK shorthand
/// (K a positive number, case-insensitive), e.g. "ChPx3" = 0.0045.
double parse_precision(const std::string& text);

}  // namespace shotplan
