#pragma once

#include <iosfwd>
#include <string>

#include "hgsg/interpolant.hpp"

namespace hgsg {

/// Self-describing JSON export of a grid state: dimension, degree rule, the
/// multi-index registry, and every record's integer level/pos vectors with
/// f-value, surplus, and weight. Round-trips exactly (bitwise doubles,
/// byte-identical re-serialization).
std::string serialize_grid(const GridState& state);
void save_grid(const GridState& state, const std::string& path);

GridState deserialize_grid(const std::string& text);
GridState load_grid(const std::string& path);

}  // namespace hgsg
