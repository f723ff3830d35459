#include "driver/spec_doc.hpp"

#include <json.hpp>

#include "common/error.hpp"

namespace fqp::driver {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(std::string("spec document: missing field '") + key + "'");
  return doc.at(key);
}

template <class T>
T get_as(const json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("spec document: field '") + key + "' has the wrong type");
  }
}

}  // namespace

VarietyDocument parse_variety_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("spec document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("spec document must be a JSON object");
  VarietyDocument out;
  if (doc.contains("name")) out.name = get_as<std::string>(doc["name"], "name");
  if (doc.contains("field") && !doc["field"].is_null()) {
    const json& f = doc["field"];
    out.field = f.is_number_unsigned() ? std::to_string(f.get<std::uint64_t>())
                                       : get_as<std::string>(f, "field");
  }
  const auto n = get_as<std::int64_t>(require(doc, "n"), "n");
  const auto r = get_as<std::int64_t>(require(doc, "r"), "r");
  if (n < 1 || r < 0) throw ValidationError("spec document: need n >= 1 and r >= 0");
  out.n = static_cast<unsigned>(n);
  out.r = static_cast<unsigned>(r);
  if (doc.contains("s") && !doc["s"].is_null()) out.s = get_as<int>(doc["s"], "s");
  out.generators = get_as<std::vector<std::string>>(require(doc, "generators"), "generators");
  if (doc.contains("projection") && !doc["projection"].is_null())
    out.projection = get_as<std::vector<std::vector<std::int64_t>>>(doc["projection"], "projection");
  return out;
}

counting::VarietySpec build_variety(const VarietyDocument& doc, const gf::FieldRef& field) {
  std::vector<mpoly::MultiPoly> gens;
  for (const auto& g : doc.generators) gens.push_back(mpoly::parse_poly(g, field, {doc.n + 1}));
  return counting::make_variety(field, doc.n, doc.r, std::move(gens), doc.s,
                                doc.name.empty() ? "spec" : doc.name);
}

counting::LinearProjection build_projection(const VarietyDocument& doc, const counting::VarietySpec& V) {
  if (!doc.projection) throw ValidationError("spec document has no projection");
  const std::uint32_t q = V.field->cardinality();
  std::vector<std::vector<gf::Raw>> rows;
  for (const auto& row : *doc.projection) {
    std::vector<gf::Raw> r;
    for (std::int64_t v : row) {
      if (v < 0 || v >= static_cast<std::int64_t>(q))
        throw ValidationError("projection entry " + std::to_string(v) + " is not an element index below " +
                              std::to_string(q));
      r.push_back(static_cast<gf::Raw>(v));
    }
    rows.push_back(std::move(r));
  }
  return counting::make_projection(V, rows);
}

}  // namespace fqp::driver
