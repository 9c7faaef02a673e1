#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mrpower/qobjects.hpp"

namespace mrpower {

// Channel files:  {"dim_in": d, "dim_out": d', "kraus": [K_0, K_1, ...]}
// POVM files:     {"dim": d, "elements": [M_0, M_1, ...]}
// Each matrix is a list of rows, each entry a [re, im] pair.
//
// Syntax and schema problems throw Error(ParseError). Well-formed files that
// violate a channel or POVM invariant throw the invariant's own error kind.

QuantumChannel channel_from_json(std::string_view text);
std::string channel_to_json(const QuantumChannel& e);

Povm povm_from_json(std::string_view text);
std::string povm_to_json(const Povm& m);

QuantumChannel read_channel_file(const std::filesystem::path& path);
void write_channel_file(const std::filesystem::path& path, const QuantumChannel& e);

Povm read_povm_file(const std::filesystem::path& path);
void write_povm_file(const std::filesystem::path& path, const Povm& m);

}  // namespace mrpower
