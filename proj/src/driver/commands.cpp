#include "driver/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bounds/bounds.hpp"
#include "common/error.hpp"
#include "counting/fibers.hpp"
#include "driver/catalog.hpp"
#include "driver/spec_doc.hpp"
#include "points/points.hpp"
#include "valueset/valueset.hpp"

namespace fqp::driver {

namespace {

using bounds::BoundRow;
using counting::VarietySpec;

struct Source {
  std::string name;
  const CatalogEntry* entry = nullptr;
  std::optional<VarietyDocument> doc;
};

struct Built {
  std::optional<VarietySpec> V;
  std::string skip_reason;
};

class Runner {
 public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg), ex_{cfg.budget, cfg.workers} {
    if (cfg.spec_text) doc_ = parse_variety_document(*cfg.spec_text);
    else if (cfg.spec_path) doc_ = parse_variety_document(read_file(*cfg.spec_path));
  }

  RunResult run() {
    const std::string& c = cfg_.command;
    if (c == "count") count();
    else if (c == "verify") verify();
    else if (c == "bounds") bounds_cmd();
    else if (c == "bertini-audit") audit();
    else if (c == "valueset") valueset_cmd();
    else if (c == "catalog-list") catalog_list();
    else throw ValidationError("unknown command '" + c + "'");
    return std::move(result_);
  }

 private:
  static std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::vector<std::string> tail() const {
    return {std::to_string(cfg_.seed), std::to_string(cfg_.budget), kToolkitVersion};
  }

  static std::vector<std::string> with_tail(std::vector<std::string> cols) {
    for (const char* c : {"seed", "budget", "version"}) cols.emplace_back(c);
    return cols;
  }

  void add(Table& t, std::vector<std::string> row) const {
    for (auto& c : tail()) row.push_back(std::move(c));
    t.add(std::move(row));
  }

  std::vector<Source> sources(bool default_all) const {
    if (doc_) return {Source{doc_->name.empty() ? "spec" : doc_->name, nullptr, doc_}};
    std::vector<Source> out;
    if (!cfg_.catalog.empty()) {
      for (const auto& n : cfg_.catalog) out.push_back(Source{n, &catalog_entry(n), std::nullopt});
    } else if (default_all) {
      for (const auto& e : catalog()) out.push_back(Source{e.name, &e, std::nullopt});
    } else {
      throw ValidationError(cfg_.command + " needs --spec or --catalog");
    }
    return out;
  }

  std::vector<std::string> fields(const std::vector<std::string>& fallback) const {
    if (!cfg_.fields.empty()) return cfg_.fields;
    if (doc_ && doc_->field) return {*doc_->field};
    if (!fallback.empty()) return fallback;
    throw ValidationError(cfg_.command + " needs --field");
  }

  static Built build(const Source& src, const gf::FieldRef& F) {
    Built b;
    if (src.entry) {
      if (auto why = src.entry->unsupported(*F)) {
        b.skip_reason = *why;
        return b;
      }
      b.V = src.entry->build(F);
    } else {
      b.V = build_variety(*src.doc, F);
    }
    return b;
  }

  static std::string q_of(const gf::Field& F) { return std::to_string(F.cardinality()); }

  void count() {
    Table t{"count", with_tail({"instance", "q", "quantity", "formula", "value"}), {}};
    const auto srcs = sources(false);
    for (const auto& field : fields({})) {
      const auto F = gf::parse_field(field);
      for (const auto& src : srcs) {
        Built b = build(src, F);
        if (!b.V) {
          add(t, {src.name, q_of(*F), "skipped", "", b.skip_reason});
          continue;
        }
        const VarietySpec& V = *b.V;
        const auto c = counting::count_smooth_points(V, ex_);
        add(t, {src.name, q_of(*F), "total", "|V(F_q)|", std::to_string(c.total)});
        add(t, {src.name, q_of(*F), "smooth", "|V_sm(F_q)|", std::to_string(c.smooth)});
        add(t, {src.name, q_of(*F), "singular", "|V(F_q)| - |V_sm(F_q)|", std::to_string(c.singular)});
        if (src.doc && src.doc->projection) {
          const auto proj = build_projection(*src.doc, V);
          const auto rep = counting::fiber_decomposition(V, proj, ex_);
          for (std::size_t y = 0; y < rep.fiber_counts.size(); ++y)
            add(t, {src.name, q_of(*F), "fiber[" + std::to_string(y) + "]", "N_y",
                    std::to_string(rep.fiber_counts[y])});
          add(t, {src.name, q_of(*F), "exceptional", "e = |(V cap L)(F_q)|", std::to_string(rep.exceptional)});
          add(t, {src.name, q_of(*F), "fiber-identity", "sum N_y - (p_(s+1) - 1) e", rep.identity_lhs.str()});
        }
      }
    }
    result_.tables.push_back(std::move(t));
  }

  static std::vector<std::string> bound_cells(const BoundRow& r) {
    return {r.bound, r.formula, r.lhs, r.rhs, bounds::to_string(r.verdict), bounds::to_string(r.cls), r.note};
  }

  void verify() {
    Table t{"verify",
            with_tail({"instance", "q", "bound", "formula", "lhs", "rhs", "verdict", "class", "note"}),
            {}};
    bool violated = false;
    const auto srcs = sources(true);
    for (const auto& field : fields(default_verify_fields())) {
      const auto F = gf::parse_field(field);
      const std::string q = q_of(*F);
      for (const auto& src : srcs) {
        Built b = build(src, F);
        if (!b.V) {
          add(t, {src.name, q, "instance", "", "", "", "not-applicable", "", b.skip_reason});
          continue;
        }
        const VarietySpec& V = *b.V;
        const auto c = counting::count_smooth_points(V, ex_);
        add(t, {src.name, q, "measured", "N, N_sm", std::to_string(c.total), std::to_string(c.smooth),
                "recorded", "", "singular=" + std::to_string(c.singular)});
        std::vector<BoundRow> rows;
        if (src.entry) {
          if (auto want = src.entry->expected_count(*F))
            rows.push_back(equality_row("ground-truth-count", "N = closed form", BigInt(c.total), *want));
          if (auto want = src.entry->expected_singular(*F))
            rows.push_back(equality_row("ground-truth-singular", "N - N_sm = closed form",
                                        BigInt(c.singular), *want));
        }
        const auto ctx = bounds::make_context(V.n, V.r, V.s, V.degrees, F->cardinality());
        const auto rep = bounds::check(ctx, bounds::Measured{BigInt(c.total), BigInt(c.smooth)},
                                       bounds::CheckOptions{cfg_.inject_fault});
        rows.insert(rows.end(), rep.rows.begin(), rep.rows.end());
        for (const auto& r : rows) {
          if (r.cls == bounds::BoundClass::Hard && r.verdict == bounds::Verdict::Violated) violated = true;
          auto cells = bound_cells(r);
          cells.insert(cells.begin(), {src.name, q});
          add(t, std::move(cells));
        }
      }
    }
    result_.tables.push_back(std::move(t));
    if (violated) {
      result_.status = Status::HardViolation;
      result_.message = "a HARD bound was violated";
    }
  }

  static BoundRow equality_row(std::string name, std::string formula, const BigInt& got, const BigInt& want) {
    BoundRow r;
    r.bound = std::move(name);
    r.formula = std::move(formula);
    r.lhs = got.str();
    r.rhs = want.str();
    r.verdict = got == want ? bounds::Verdict::Holds : bounds::Verdict::Violated;
    return r;
  }

  bounds::BoundContext bounds_context(const gf::FieldRef& F, std::string& name) const {
    if (doc_) {
      const VarietySpec V = build_variety(*doc_, F);
      name = V.name;
      return bounds::make_context(V.n, V.r, V.s, V.degrees, F->cardinality());
    }
    if (!cfg_.catalog.empty()) {
      const CatalogEntry& e = catalog_entry(cfg_.catalog.front());
      name = e.name;
      return bounds::make_context(e.n, e.r, e.s.value_or(-1), e.degrees, F->cardinality());
    }
    if (!cfg_.n || !cfg_.r) throw ValidationError("bounds needs --spec, --catalog or --n/--r/--degrees");
    name = "shape";
    return bounds::make_context(*cfg_.n, *cfg_.r, cfg_.s.value_or(-1), cfg_.degrees, F->cardinality());
  }

  void bounds_cmd() {
    Table t{"bounds", with_tail({"instance", "q", "bound", "formula", "value", "applicable", "note"}), {}};
    for (const auto& field : fields({})) {
      const auto F = gf::parse_field(field);
      std::string name;
      const auto ctx = bounds_context(F, name);
      const std::string q = q_of(*F);
      auto put = [&](const std::string& b, const std::string& f, const std::string& v, bool ok,
                     const std::string& note) { add(t, {name, q, b, f, v, ok ? "yes" : "no", note}); };
      put("delta", "prod d_i", ctx.delta().str(), true, "");
      put("D", "sum (d_i - 1)", std::to_string(ctx.D()), true, "");
      put("degree-bound", "delta*p_r", bounds::projective_upper(ctx.delta(), ctx.r, ctx.q).str(), true, "");
      if (ctx.n - ctx.r == 1)
        put("serre", "delta*q^(n-1) + p_(n-2)", bounds::serre(ctx.delta(), ctx.n, ctx.q).str(), true, "");
      const int r = static_cast<int>(ctx.r);
      for (int s : {r - 2, r - 3}) {
        if (s < std::max(ctx.s, 0)) continue;
        const auto c = ctx.with_s(s);
        const std::string tag = "[s=" + std::to_string(s) + "]";
        put("B_ds" + tag, "D^(r-s-2) delta (((n-s)(r-s)+2)D + r-s-1) + delta + 1", bounds::B_ds(c).str(), true, "");
        for (bool smooth : {false, true}) {
          const auto est = bounds::main_estimate(c, smooth);
          const std::string sfx = (smooth ? "-smooth" : "") + tag;
          if (!est.applicable) {
            put("main-theorem" + sfx, "", "", false, est.reason);
            continue;
          }
          put("b'" + sfx, "b'_(r-s-1)(n-s-1, d)", est.bprime.str(), true, "");
          put(std::string(smooth ? "B" : "A") + sfx, "theorem constant", est.constant.str(), true, "");
          put("main-theorem" + sfx, "b' q^((r+s+1)/2) + const q^(r-1)", est.theorem.to_string(), true,
              "ceil " + est.theorem.ceil().str());
          put("main-corollary" + sfx, "corollary form", est.corollary.to_string(), true,
              "ceil " + est.corollary.ceil().str());
          if (est.alternate)
            put("main-intro-alternate" + sfx, "8(r+1) variant", est.alternate->to_string(), true,
                "differs from the proved 11(r+1)");
        }
        const auto cb = bounds::comparison_bounds(c);
        put("gl-C", "9*2^(n-r)((n-r)d+3)^(n+1)", cb.C.str(), true, "");
        if (cb.gl) put("gl" + tag, "b' q^((r+s+1)/2) + C q^((r+s)/2)", cb.gl->to_string(), true, "");
        if (s == r - 2 && cb.cm)
          put("cm" + tag, "(delta(D-2)+2) q^(r-1/2) + 2((n-r)d delta)^2 q^(r-1)", cb.cm->to_string(),
              cb.cm_q_valid, cb.cm_q_valid ? "" : "needs q > " + cb.cm_q_threshold.str());
      }
      if (ctx.s < 0) {
        if (auto b = bounds::primitive_betti(ctx.r, ctx.n, ctx.d))
          put("deligne", "b_r'(n,d) q^(r/2)", bounds::deligne_bound(ctx.q, ctx.r, *b).to_string(), true,
              "b'=" + b->str());
      }
      for (const auto& th : bounds::existence_thresholds(ctx)) {
        std::string note = th.kind == bounds::ThresholdKind::Section ? "section existence" : "smooth point";
        if (th.applicable) note += th.guaranteed ? "; guaranteed at this q" : "; not guaranteed at this q";
        else note += "; " + th.reason;
        put(th.name, "q > " + th.formula, th.applicable ? th.value.str() : "", th.applicable, note);
      }
    }
    result_.tables.push_back(std::move(t));
  }

  void audit() {
    Table t{"bertini-audit",
            with_tail({"instance", "q", "lambda_seed", "attempts", "rank_rejections", "screen_rejections", "K",
                       "flagged", "flagged_by_level", "bound", "verdict", "note"}),
            {}};
    Table sec{"bertini-section",
              with_tail({"instance", "q", "found", "lambda_seed", "y", "fiber_points", "witness", "seeds_tried",
                         "K", "note"}),
              {}};
    bool violated = false;
    const unsigned K = cfg_.ext_level;
    std::vector<std::uint64_t> seeds;
    for (unsigned i = 0; i < std::max(cfg_.seeds, 1u); ++i) seeds.push_back(cfg_.seed + i);
    for (const auto& field : fields({})) {
      const auto F = gf::parse_field(field);
      const std::string q = q_of(*F);
      for (const auto& src : sources(true)) {
        Built b = build(src, F);
        std::string skip = b.skip_reason;
        if (b.V) {
          if (b.V->s < 0 || b.V->s > static_cast<int>(b.V->r) - 2) skip = "needs a declared 0 <= s <= r-2";
          for (int d : b.V->degrees)
            if (d < 2) skip = "needs every d_i >= 2";
        }
        if (!skip.empty()) {
          add(t, {src.name, q, "", "", "", "", std::to_string(K), "", "", "", "not-applicable", skip});
          continue;
        }
        const VarietySpec& V = *b.V;
        const auto ctx = bounds::make_context(V.n, V.r, V.s, V.degrees, F->cardinality());
        const BigInt bound = big_pow(ctx.D(), V.r - V.s) * ctx.delta() * points::p_r(ctx.q, V.s);
        const counting::PointCache cache(V, K, ex_);
        const counting::SampleOptions sopts{K, 200};
        for (std::uint64_t seed : seeds) {
          counting::LinearProjection proj;
          try {
            proj = counting::sample_projection(V, seed, sopts, ex_);
          } catch (const ValidationError& e) {
            add(t, {src.name, q, std::to_string(seed), "", "", "", std::to_string(K), "", "", bound.str(),
                    "inconclusive", e.what()});
            continue;
          }
          const auto res = counting::singular_fiber_audit(V, proj, cache);
          std::string by_level;
          for (auto v : res.flagged_by_level) by_level += (by_level.empty() ? "" : ";") + std::to_string(v);
          const bool ok = BigInt(res.flagged.size()) <= bound;
          if (!ok) violated = true;
          add(t, {src.name, q, std::to_string(seed), std::to_string(proj.attempts),
                  std::to_string(proj.rank_rejections), std::to_string(proj.screen_rejections), std::to_string(K),
                  std::to_string(res.flagged.size()), by_level, bound.str(), ok ? "holds" : "violated",
                  counting::AuditResult::kSemantics});
        }
        const auto found = counting::nonsingular_section_search(V, seeds, K, sopts, ex_);
        auto join = [](const std::vector<gf::Raw>& v) {
          std::string s;
          for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
          return s;
        };
        add(sec, {src.name, q, found.found ? "yes" : "no", found.found ? std::to_string(found.seed) : "",
                  join(found.y), std::to_string(found.fiber_points), join(found.smooth_witness),
                  std::to_string(found.seeds_tried), std::to_string(found.level), found.note});
      }
    }
    result_.tables.push_back(std::move(t));
    result_.tables.push_back(std::move(sec));
    if (violated) {
      result_.status = Status::HardViolation;
      result_.message = "an audit set exceeded its degree bound";
    }
  }

  void valueset_cmd() {
    Table t{"valueset",
            with_tail({"d", "s", "q", "tuple", "n_direct", "n_via_chi", "identity", "mu_d_q", "deviation",
                       "e_interval", "e_verdict", "class"}),
            {}};
    Table ct{"valueset-chi",
             with_tail({"d", "s", "r", "q", "tuple", "chi", "q^(d-s)/r!", "lhs", "bound", "verdict", "class", "note"}),
             {}};
    bool violated = false;
    const int d = cfg_.d, s = cfg_.vs_s;
    for (const auto& field : fields({})) {
      const auto F = gf::parse_field(field);
      const std::string q = q_of(*F);
      std::vector<std::vector<gf::Raw>> tuples;
      if (cfg_.fixed) tuples.push_back(*cfg_.fixed);
      else tuples = valueset::fixed_tuples(*F, s, cfg_.seed);
      for (const auto& tup : tuples) {
        const auto fam = valueset::make_family(F, d, s, tup);
        const auto e = valueset::e_bound_check(fam, ex_);
        const Rational via = valueset::average_via_chi(fam, ex_);
        const bool same = via == e.average;
        if (!same) violated = true;
        const Rational muq = valueset::mu(d) * Rational(F->cardinality());
        add(t, {std::to_string(d), std::to_string(s), q, fam.tuple_string(), e.average.str(), via.str(),
                same ? "holds" : "violated", muq.str(), e.deviation.str(), e.row.rhs,
                bounds::to_string(e.row.verdict), bounds::to_string(e.row.cls)});
        for (int r = d - s + 1; r <= d; ++r) {
          const auto c = valueset::chi_bound_check(fam, r, ex_);
          add(ct, {std::to_string(d), std::to_string(s), std::to_string(r), q, fam.tuple_string(),
                   std::to_string(c.chi), c.row.note, c.row.lhs, c.row.rhs, bounds::to_string(c.row.verdict),
                   bounds::to_string(c.row.cls), ""});
        }
      }
    }
    result_.tables.push_back(std::move(t));
    result_.tables.push_back(std::move(ct));
    if (violated) {
      result_.status = Status::HardViolation;
      result_.message = "average via chi differs from the direct average";
    }
  }

  void catalog_list() {
    Table t{"catalog", {"name", "n", "r", "s", "degrees", "description"}, {}};
    for (const auto& e : catalog()) {
      std::string degs;
      for (int d : e.degrees) degs += (degs.empty() ? "" : " ") + std::to_string(d);
      t.add({e.name, std::to_string(e.n), std::to_string(e.r), e.s ? std::to_string(*e.s) : "smooth", degs,
             e.description});
    }
    result_.tables.push_back(std::move(t));
  }

  const RunConfig& cfg_;
  ExecOptions ex_;
  std::optional<VarietyDocument> doc_;
  RunResult result_;
};

void write_outputs(const RunConfig& cfg, RunResult& res) {
  if (cfg.out_dir.empty()) return;
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  for (const auto& t : res.tables) {
    const fs::path p = fs::path(cfg.out_dir) / (t.name + "." + cfg.format);
    std::ofstream out(p, std::ios::binary);
    out << render(t, cfg.format);
    if (!out) throw Error("cannot write " + p.string());
    res.files.push_back(p.string());
  }
  const fs::path meta = fs::path(cfg.out_dir) / "run_meta.json";
  std::ofstream out(meta, std::ios::binary);
  out << run_meta_json(cfg);
  res.files.push_back(meta.string());
}

}  // namespace

const std::vector<std::string>& default_verify_fields() {
  static const std::vector<std::string> f{"3", "2^2", "5", "7", "2^3", "3^2", "11", "13"};
  return f;
}

std::string run_meta_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["command"] = cfg.command;
  j["version"] = kToolkitVersion;
  j["seed"] = cfg.seed;
  j["budget"] = cfg.budget;
  j["ext_level"] = cfg.ext_level;
  j["workers"] = cfg.workers;
  return j.dump(2) + "\n";
}

RunResult run_command(const RunConfig& cfg) {
  RunResult res;
  try {
    if (cfg.format != "csv" && cfg.format != "json")
      throw ValidationError("unknown format '" + cfg.format + "' (expected csv or json)");
    if (cfg.workers < 1) throw ValidationError("invariant violated: workers must be >= 1");
    if (cfg.budget < 1) throw ValidationError("invariant violated: budget must be >= 1");
    if (cfg.ext_level < 1) throw ValidationError("invariant violated: ext-level must be >= 1");
    res = Runner(cfg).run();
    write_outputs(cfg, res);
  } catch (const ValidationError& e) {
    res = RunResult{Status::Validation, e.what(), {}, {}};
  } catch (const BudgetError& e) {
    res = RunResult{Status::Budget, e.what(), {}, {}};
  } catch (const std::exception& e) {
    res = RunResult{Status::Internal, e.what(), {}, {}};
  }
  return res;
}

}  // namespace fqp::driver
