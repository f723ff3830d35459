#include "fqpoints/fqpoints.h"

#include <charconv>
#include <string>
#include <vector>

#include "common/error.hpp"
#include "counting/variety.hpp"
#include "driver/catalog.hpp"
#include "driver/commands.hpp"
#include "driver/spec_doc.hpp"

using namespace fqp;

struct fqp_session {
  driver::RunConfig cfg;
  std::string error;
  std::string output;
  std::vector<std::string> files;
};

struct fqp_variety {
  counting::VarietySpec spec;
};

namespace {

fqp_status fail(fqp_session* s, fqp_status code, std::string msg) {
  if (s) s->error = std::move(msg);
  return code;
}

template <class F>
fqp_status guarded(fqp_session* s, F&& body) {
  if (!s) return FQP_VALIDATION;
  s->error.clear();
  try {
    return body();
  } catch (const ValidationError& e) {
    return fail(s, FQP_VALIDATION, e.what());
  } catch (const BudgetError& e) {
    return fail(s, FQP_BUDGET, e.what());
  } catch (const std::exception& e) {
    return fail(s, FQP_INTERNAL, e.what());
  }
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end || text.empty())
    throw ValidationError("option " + key + ": '" + text + "' is not a valid number");
  return v;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

template <class T>
std::vector<T> split_numbers(const std::string& key, const std::string& text) {
  std::vector<T> out;
  for (const auto& part : split(text)) out.push_back(parse_number<T>(key, part));
  return out;
}

void apply_option(driver::RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "field") c.fields = split(v);
  else if (key == "spec") c.spec_path = v;
  else if (key == "spec-text") c.spec_text = v;
  else if (key == "catalog") c.catalog = split(v);
  else if (key == "budget") c.budget = parse_number<std::uint64_t>(key, v);
  else if (key == "ext-level") c.ext_level = parse_number<unsigned>(key, v);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
  else if (key == "seeds") c.seeds = parse_number<unsigned>(key, v);
  else if (key == "workers") c.workers = parse_number<unsigned>(key, v);
  else if (key == "out") c.out_dir = v;
  else if (key == "format") c.format = v;
  else if (key == "n") c.n = parse_number<unsigned>(key, v);
  else if (key == "r") c.r = parse_number<unsigned>(key, v);
  else if (key == "s") c.s = parse_number<int>(key, v);
  else if (key == "degrees") c.degrees = split_numbers<int>(key, v);
  else if (key == "d") c.d = parse_number<int>(key, v);
  else if (key == "vs-s") c.vs_s = parse_number<int>(key, v);
  else if (key == "fixed") c.fixed = split_numbers<std::uint32_t>(key, v);
  else if (key == "inject-fault") c.inject_fault = parse_number<int>(key, v) != 0;
  else throw ValidationError("unknown option '" + key + "'");
}

}  // namespace

extern "C" {

const char* fqp_version(void) { return driver::kToolkitVersion; }

fqp_status fqp_session_new(fqp_session** out) {
  if (!out) return FQP_VALIDATION;
  try {
    *out = new fqp_session();
    return FQP_OK;
  } catch (...) {
    *out = nullptr;
    return FQP_INTERNAL;
  }
}

void fqp_session_free(fqp_session* s) { delete s; }

const char* fqp_last_error(const fqp_session* s) { return s ? s->error.c_str() : "null session"; }

fqp_status fqp_session_set(fqp_session* s, const char* key, const char* value) {
  return guarded(s, [&] {
    if (!key || !value) throw ValidationError("option key and value must be non-null");
    apply_option(s->cfg, key, value);
    return FQP_OK;
  });
}

fqp_status fqp_run(fqp_session* s, const char* command) {
  return guarded(s, [&] {
    if (!command) throw ValidationError("command must be non-null");
    s->output.clear();
    s->files.clear();
    driver::RunConfig cfg = s->cfg;
    cfg.command = command;
    driver::RunResult res = driver::run_command(cfg);
    for (const auto& t : res.tables) {
      if (res.tables.size() > 1) s->output += "# " + t.name + "\n";
      s->output += driver::render(t, cfg.format);
    }
    s->files = res.files;
    s->error = res.message;
    return static_cast<fqp_status>(res.status);
  });
}

const char* fqp_output(const fqp_session* s) { return s ? s->output.c_str() : ""; }

size_t fqp_output_file_count(const fqp_session* s) { return s ? s->files.size() : 0; }

const char* fqp_output_file(const fqp_session* s, size_t i) {
  return s && i < s->files.size() ? s->files[i].c_str() : nullptr;
}

fqp_status fqp_variety_from_spec(fqp_session* s, const char* spec_text, const char* field, fqp_variety** out) {
  return guarded(s, [&] {
    if (!spec_text || !out) throw ValidationError("spec text and output handle must be non-null");
    const auto doc = driver::parse_variety_document(spec_text);
    std::string f = field ? field : doc.field.value_or("");
    if (f.empty()) throw ValidationError("no field given and the spec document has none");
    *out = new fqp_variety{driver::build_variety(doc, gf::parse_field(f))};
    return FQP_OK;
  });
}

fqp_status fqp_variety_from_catalog(fqp_session* s, const char* name, const char* field, fqp_variety** out) {
  return guarded(s, [&] {
    if (!name || !field || !out) throw ValidationError("name, field and output handle must be non-null");
    *out = new fqp_variety{driver::catalog_entry(name).build(gf::parse_field(field))};
    return FQP_OK;
  });
}

void fqp_variety_free(fqp_variety* v) { delete v; }

fqp_status fqp_count(fqp_session* s, const fqp_variety* v, uint64_t* total, uint64_t* smooth,
                     uint64_t* singular) {
  return guarded(s, [&] {
    if (!v) throw ValidationError("variety handle must be non-null");
    const auto c = counting::count_smooth_points(v->spec, ExecOptions{s->cfg.budget, s->cfg.workers});
    if (total) *total = c.total;
    if (smooth) *smooth = c.smooth;
    if (singular) *singular = c.singular;
    return FQP_OK;
  });
}

}  // extern "C"
