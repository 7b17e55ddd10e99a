#pragma once

// Input documents and report serialization.

#include <cstddef>
#include <string>
#include <vector>

#include "mltoric/invariants.hpp"

namespace mltoric {

inline constexpr const char* tool_version = "0.1.0";

struct MonoidInput {
  std::size_t rank = 0;
  std::vector<LatticePoint> generators;
  std::string name;
  Bounds bounds;
};

// Throws InputError with a field path (or the parser position) on malformed
// documents, rank mismatch, empty or duplicate generators.
MonoidInput parse_input(const std::string& text);
std::string input_to_json(const MonoidInput& in);

// Keys appear in a fixed order and integers outside the int64 range are
// written as decimal strings, so equal reports give identical bytes.
std::string report_to_json(const InvariantReport& r, int indent = 2);
InvariantReport report_from_json(const std::string& text);

std::string report_to_text(const InvariantReport& r);

}  // namespace mltoric
