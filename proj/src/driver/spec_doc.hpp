#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "counting/fibers.hpp"
#include "counting/variety.hpp"

namespace fqp::driver {

// Variety spec document (JSON):
//   {"name": "...", "field": "p^k", "n": 3, "r": 2, "s": 0,
//    "generators": ["X0*X2 + 2*X1^2"], "projection": [[...], ...]}
// "s" absent or null means declared smooth; "field" and "projection" are
// optional. Projection entries are element indices.
struct VarietyDocument {
  std::string name;
  std::optional<std::string> field;
  unsigned n = 0, r = 0;
  std::optional<int> s;
  std::vector<std::string> generators;
  std::optional<std::vector<std::vector<std::int64_t>>> projection;
};

VarietyDocument parse_variety_document(std::string_view text);

counting::VarietySpec build_variety(const VarietyDocument& doc, const gf::FieldRef& field);
counting::LinearProjection build_projection(const VarietyDocument& doc, const counting::VarietySpec& V);

}  // namespace fqp::driver
