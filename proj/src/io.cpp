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

#include "shotplan/io.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "shotplan/version.hpp"

namespace shotplan {

FileMeta make_meta(std::uint64_t seed, const nlohmann::json& config) {
    return FileMeta{kToolName, kToolVersion, seed, config_digest(config)};
}

void to_json(nlohmann::json& j, const FileMeta& m) {
    j = nlohmann::json{{"tool", m.tool},
                       {"version", m.version},
                       {"seed", m.seed},
                       {"config_digest", m.config_digest}};
}

std::string config_digest(const nlohmann::json& config) {
    const std::string canonical = config.dump();
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(hash));
    return buf;
}

std::string iso_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", &tm);
    return buf;
}

void append_trial_records(const std::filesystem::path& path,
                          const FileMeta& meta,
                          std::span<const TrialRecord> records) {
    const bool fresh = !std::filesystem::exists(path) ||
                       std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    if (fresh) out << nlohmann::json{{"meta", meta}}.dump() << '\n';
    for (const auto& record : records) {
        out << nlohmann::json(record).dump() << '\n';
    }
}

std::vector<TrialRecord> read_trial_records(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<TrialRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        if (j.contains("meta")) continue;
        records.push_back(j.get<TrialRecord>());
    }
    return records;
}

void write_json_file(const std::filesystem::path& path, const FileMeta& meta,
                     const std::string& key, const nlohmann::json& payload) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json doc{{"meta", meta}, {key, payload}};
    out << doc.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    return j;
}

namespace {

std::string meta_comment(const FileMeta& meta) {
    std::ostringstream os;
    os << "# " << meta.tool << ' ' << meta.version << " seed=" << meta.seed
       << " config_digest=" << meta.config_digest;
    return os.str();
}

void write_double(std::ostream& os, double v) {
    if (std::isnan(v)) {
        os << "nan";
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        os << buf;
    }
}

}  // namespace

void write_surface_csv(const std::filesystem::path& path, const FileMeta& meta,
                       std::span<const SurfaceCell> cells) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << meta_comment(meta) << '\n';
    out << "r,m,n,P,gamma,P_reliable\n";
    for (const auto& cell : cells) {
        out << cell.r << ',' << cell.m << ',' << cell.n << ',';
        write_double(out, cell.P);
        out << ',';
        write_double(out, cell.gamma);
        out << ',';
        write_double(out, cell.P_reliable);
        out << '\n';
    }
}

void write_frontier_csv(const std::filesystem::path& path,
                        const FileMeta& meta,
                        std::span<const FrontierRow> rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << meta_comment(meta) << '\n';
    out << "B,d,P_reliable,n,m,r\n";
    for (const auto& row : rows) {
        out << row.B << ',';
        write_double(out, row.d);
        out << ',';
        write_double(out, row.P_reliable);
        out << ',' << row.n << ',' << row.m << ',' << row.r << '\n';
    }
}

double parse_precision(const std::string& text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    double value = 0.0;
    std::size_t consumed = 0;
    if (lower.rfind("chpx", 0) == 0) {
        const double k = std::stod(lower.substr(4), &consumed);
        if (consumed + 4 != lower.size() || !(k > 0.0)) {
            throw std::invalid_argument("bad precision '" + text + "'");
        }
        value = k * kChemicalPrecision;
    } else {
        value = std::stod(lower, &consumed);
        if (consumed != lower.size()) {
            throw std::invalid_argument("bad precision '" + text + "'");
        }
    }
    if (!(value > 0.0)) {
        throw std::invalid_argument("precision must be positive");
    }
    return value;
}

}  // namespace shotplan
