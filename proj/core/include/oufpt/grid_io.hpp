#pragma once

#include <map>
#include <string>

#include "oufpt/mc.hpp"

namespace oufpt {

using Metadata = std::map<std::string, std::string>;

/// CSV with '#'-prefixed key=value metadata lines, then a header row and
/// t_lo,t_hi,density,half_width rows. Locale-independent, '.' decimal point,
/// %.17g values; identical inputs produce byte-identical output.
std::string grid_to_csv(const DensityGrid& grid, const Metadata& meta);

/// JSON object with "metadata", edges, density, half_width, survival; stable
/// key order.
std::string grid_to_json(const DensityGrid& grid, const Metadata& meta);

struct ParsedGrid {
  DensityGrid grid;
  Metadata meta;
};

ParsedGrid grid_from_csv(const std::string& text);
ParsedGrid grid_from_json(const std::string& text);

std::string format_double(double v);  // shortest round-trip-exact decimal

}  // namespace oufpt
