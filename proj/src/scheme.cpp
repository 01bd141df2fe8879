/**
 * Copyright 2026 permlab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "permlab/scheme.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "permlab/errors.hpp"

namespace permlab {

namespace {

using nlohmann::json;

constexpr double kUnitModulusTol = 1e-9;

const char* kind_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::kSign: return "sign";
        case ChannelKind::kPhase: return "phase";
        case ChannelKind::kFixed: return "fixed";
    }
    return "sign";
}

ChannelKind kind_from_name(const std::string& name) {
    if (name == "sign") return ChannelKind::kSign;
    if (name == "phase") return ChannelKind::kPhase;
    if (name == "fixed") return ChannelKind::kFixed;
    throw ConfigError("unknown channel kind '" + name +
                      "' (expected sign, phase or fixed)");
}

std::string cell_name(std::size_t row, std::size_t col) {
    return "(" + std::to_string(row) + ", " + std::to_string(col) + ")";
}

}  // namespace

DecouplingScheme::DecouplingScheme(std::vector<EntryChannel> channels)
    : channels_(std::move(channels)) {}

void DecouplingScheme::validate(const NonzeroPattern& pattern) const {
    std::set<std::pair<std::size_t, std::size_t>> nonzero_cells;
    for (const NonzeroEntry& e : pattern.entries) {
        nonzero_cells.emplace(e.row, e.col);
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const EntryChannel& ch : channels_) {
        if (ch.row >= pattern.rows || ch.col >= pattern.cols) {
            throw ConfigError("scheme entry " + cell_name(ch.row, ch.col) +
                              " is outside a " + std::to_string(pattern.rows) +
                              "x" + std::to_string(pattern.cols) + " matrix");
        }
        if (!nonzero_cells.count({ch.row, ch.col})) {
            throw ConfigError("scheme entry " + cell_name(ch.row, ch.col) +
                              " names a zero matrix entry");
        }
        if (!seen.insert({ch.row, ch.col}).second) {
            throw ConfigError("scheme lists entry " + cell_name(ch.row, ch.col) +
                              " twice");
        }
        if (ch.kind == ChannelKind::kPhase && ch.p < 2) {
            throw ConfigError("phase channel at " + cell_name(ch.row, ch.col) +
                              " needs root order p >= 2");
        }
        if (std::abs(std::abs(ch.fixed) - 1.0) > kUnitModulusTol) {
            throw ConfigError("multiplier at " + cell_name(ch.row, ch.col) +
                              " must have unit modulus");
        }
    }
    if (seen.size() != nonzero_cells.size()) {
        for (const auto& cell : nonzero_cells) {
            if (!seen.count(cell)) {
                throw ConfigError("scheme covers " + std::to_string(seen.size()) +
                                  " of " + std::to_string(nonzero_cells.size()) +
                                  " nonzero entries; first missing entry is " +
                                  cell_name(cell.first, cell.second));
            }
        }
    }
}

const EntryChannel& DecouplingScheme::channel_for(std::size_t row,
                                                  std::size_t col) const {
    for (const EntryChannel& ch : channels_) {
        if (ch.row == row && ch.col == col) return ch;
    }
    throw ConfigError("scheme has no channel for entry " + cell_name(row, col));
}

DecouplingScheme DecouplingScheme::uniform_sign(const NonzeroPattern& pattern) {
    std::vector<EntryChannel> channels;
    channels.reserve(pattern.entries.size());
    for (const NonzeroEntry& e : pattern.entries) {
        EntryChannel ch;
        ch.row = e.row;
        ch.col = e.col;
        ch.kind = ChannelKind::kSign;
        channels.push_back(ch);
    }
    return DecouplingScheme(std::move(channels));
}

DecouplingScheme DecouplingScheme::uniform_phase(const NonzeroPattern& pattern,
                                                 int p) {
    if (p < 2) {
        throw ParameterError("phase channels need root order p >= 2");
    }
    std::vector<EntryChannel> channels;
    channels.reserve(pattern.entries.size());
    for (const NonzeroEntry& e : pattern.entries) {
        EntryChannel ch;
        ch.row = e.row;
        ch.col = e.col;
        ch.kind = ChannelKind::kPhase;
        ch.p = p;
        channels.push_back(ch);
    }
    return DecouplingScheme(std::move(channels));
}

std::string DecouplingScheme::to_json() const {
    json arr = json::array();
    for (const EntryChannel& ch : channels_) {
        json item;
        item["row"] = ch.row;
        item["col"] = ch.col;
        item["channel"] = kind_name(ch.kind);
        if (ch.kind == ChannelKind::kPhase) item["p"] = ch.p;
        if (ch.kind == ChannelKind::kFixed ||
            ch.fixed != Scalar{1.0, 0.0}) {
            item["fixed"] = {{"re", ch.fixed.real()}, {"im", ch.fixed.imag()}};
        }
        arr.push_back(std::move(item));
    }
    return arr.dump(2);
}

DecouplingScheme DecouplingScheme::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("scheme is not valid JSON: ") + err.what());
    }
    if (!doc.is_array()) {
        throw ConfigError("scheme must be a JSON array of entry channels");
    }
    std::vector<EntryChannel> channels;
    channels.reserve(doc.size());
    for (const json& item : doc) {
        if (!item.is_object()) {
            throw ConfigError("scheme entries must be JSON objects");
        }
        EntryChannel ch;
        if (!item.contains("row") || !item.contains("col") ||
            !item["row"].is_number_unsigned() || !item["col"].is_number_unsigned()) {
            throw ConfigError("scheme entries need nonnegative integer "
                              "\"row\" and \"col\" fields");
        }
        ch.row = item["row"].get<std::size_t>();
        ch.col = item["col"].get<std::size_t>();
        if (!item.contains("channel") || !item["channel"].is_string()) {
            throw ConfigError("scheme entries need a string \"channel\" field");
        }
        ch.kind = kind_from_name(item["channel"].get<std::string>());
        if (ch.kind == ChannelKind::kPhase) {
            if (!item.contains("p") || !item["p"].is_number_integer()) {
                throw ConfigError("phase channels need an integer \"p\" field");
            }
            ch.p = item["p"].get<int>();
        }
        if (item.contains("fixed")) {
            const json& f = item["fixed"];
            if (!f.is_object() || !f.contains("re") || !f.contains("im") ||
                !f["re"].is_number() || !f["im"].is_number()) {
                throw ConfigError("\"fixed\" must be an object with numeric "
                                  "\"re\" and \"im\" fields");
            }
            ch.fixed = Scalar{f["re"].get<double>(), f["im"].get<double>()};
        } else if (ch.kind == ChannelKind::kFixed) {
            throw ConfigError("fixed channels need a \"fixed\" multiplier");
        }
        channels.push_back(ch);
    }
    return DecouplingScheme(std::move(channels));
}

DecouplingScheme load_scheme_file(const std::string& path) {
    std::ostringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("cannot open scheme file '" + path + "'");
        }
        buffer << in.rdbuf();
    }
    return DecouplingScheme::from_json(buffer.str());
}

}  // namespace permlab
