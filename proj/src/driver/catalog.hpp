#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "common/bigint.hpp"
#include "counting/variety.hpp"

namespace fqp::driver {

// Built-in varieties with ground truth where a closed form is known.
struct CatalogEntry {
  std::string name;
  std::string description;
  unsigned n = 0, r = 0;
  std::optional<int> s;  // empty: declared smooth
  std::vector<int> degrees;
  // Reason the entry cannot be built over this field, if any.
  std::function<std::optional<std::string>(const gf::Field&)> unsupported;
  std::function<std::vector<mpoly::MultiPoly>(const gf::FieldRef&)> generators;
  std::function<std::optional<BigInt>(const gf::Field&)> expected_count;
  std::function<std::optional<BigInt>(const gf::Field&)> expected_singular;
  bool singular_locus_known_empty = false;  // true when smooth over the closure (given `unsupported` passes)

  counting::VarietySpec build(const gf::FieldRef& field) const;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);

}  // namespace fqp::driver
