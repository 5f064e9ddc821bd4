#pragma once

// JSON loading for market configs and mechanisms. Schema (see README):
//   {
//     "v": "3", "t": 1,
//     "segments": [ {"kind": "B-only", "mass": "1/2", "density": "uniform"}, ... ],
//     "mechanism": { "share_B_to_A": [["1/4","3/8"]], "share_A_to_B": [] }
//   }
// Unlisted segments get mass 0; "mechanism" is optional. Numbers may be
// "p/q" / decimal strings (parsed digit-exactly), JSON integers (exact), or
// JSON floats (taken as their exact binary double value). Densities are
// "uniform" or {"breakpoints": [...], "levels": [...]}.

#include <string>

#include "hotshare/market.hpp"

namespace hotshare {

struct LoadedConfig {
    MarketConfig config;
    bool has_mechanism = false;
    SharingMechanism mechanism;
};

// Structural problems throw ParseError naming the file and field; market
// validation errors (mass / density / coverage) surface verbatim.
LoadedConfig parse_config_json(const std::string& text, const std::string& origin);
LoadedConfig load_config_file(const std::string& path);

// Standalone mechanism document: either the mechanism object itself or a
// document with a "mechanism" key.
SharingMechanism parse_mechanism_json(const std::string& text, const std::string& origin);
SharingMechanism load_mechanism_file(const std::string& path);

} // namespace hotshare
