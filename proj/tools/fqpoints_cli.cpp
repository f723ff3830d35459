#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fqpoints/fqpoints.h"

namespace {

struct Session {
  fqp_session* s = nullptr;
  Session() {
    if (fqp_session_new(&s) != FQP_OK) throw std::runtime_error("cannot create session");
  }
  ~Session() { fqp_session_free(s); }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;
};

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : ",") + x;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational points, point-count bounds and value sets over finite fields"};
  app.set_version_flag("--version", fqp_version());
  app.require_subcommand(1);
  app.fallthrough();

  std::vector<std::string> fields, catalog;
  std::optional<std::string> spec, budget, ext_level, seed, seeds, workers, out, n, r, s, d, fixed;
  std::optional<std::string> degrees;
  std::string format = "csv";
  bool inject_fault = false;

  app.add_option("--field", fields, "Field p or p^k; repeat or comma-separate for a grid")->delimiter(',');
  app.add_option("--spec", spec, "Variety spec document (JSON)");
  app.add_option("--catalog", catalog, "Catalog entry names")->delimiter(',');
  app.add_option("--budget", budget, "Maximum enumeration size per operation");
  app.add_option("--ext-level", ext_level, "Extension level K for audits (default 2)");
  app.add_option("--seed", seed, "Seed (default 1)");
  app.add_option("--seeds", seeds, "Number of consecutive seeds for bertini-audit");
  app.add_option("--workers", workers, "Worker threads");
  app.add_option("--out", out, "Directory for report files");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--n", n, "Ambient dimension (bounds)");
  app.add_option("--r", r, "Dimension (bounds)");
  app.add_option("--s", s, "Singular-locus dimension (bounds) or number of fixed coefficients (valueset)");
  app.add_option("--degrees", degrees, "Comma-separated multidegree (bounds)");
  app.add_option("--d", d, "Polynomial degree (valueset)");
  app.add_option("--fixed", fixed, "Comma-separated fixed coefficients a_{d-1},...,a_{d-s} (valueset)");
  app.add_flag("--inject-fault", inject_fault, "Evaluate the degree bound with p_{r-1} (harness self-test)")
      ->group("");

  app.add_subcommand("count", "Count total, smooth and singular points");
  app.add_subcommand("verify", "Check every applicable bound against exact counts");
  app.add_subcommand("bounds", "Evaluate bounds and thresholds for a shape");
  app.add_subcommand("bertini-audit", "Audit singular fibers of seeded linear projections");
  app.add_subcommand("valueset", "Value-set averages, chi counts and their bounds");
  auto* cat = app.add_subcommand("catalog", "Built-in varieties");
  cat->add_subcommand("list", "List catalog entries");
  cat->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (command == "catalog") command = "catalog-list";

  Session session;
  auto set = [&](const char* key, const std::string& value) {
    if (fqp_session_set(session.s, key, value.c_str()) != FQP_OK) {
      std::cerr << "error: " << fqp_last_error(session.s) << "\n";
      std::exit(2);
    }
  };
  if (!fields.empty()) set("field", join(fields));
  if (!catalog.empty()) set("catalog", join(catalog));
  if (spec) set("spec", *spec);
  if (budget) set("budget", *budget);
  if (ext_level) set("ext-level", *ext_level);
  if (seed) set("seed", *seed);
  if (seeds) set("seeds", *seeds);
  if (workers) set("workers", *workers);
  if (out) set("out", *out);
  set("format", format);
  if (n) set("n", *n);
  if (r) set("r", *r);
  if (s) set(command == "valueset" ? "vs-s" : "s", *s);
  if (degrees) set("degrees", *degrees);
  if (d) set("d", *d);
  if (fixed) set("fixed", *fixed);
  if (inject_fault) set("inject-fault", "1");

  const fqp_status st = fqp_run(session.s, command.c_str());
  std::cout << fqp_output(session.s);
  for (size_t i = 0; i < fqp_output_file_count(session.s); ++i)
    std::cerr << "wrote " << fqp_output_file(session.s, i) << "\n";
  if (st != FQP_OK) std::cerr << "error: " << fqp_last_error(session.s) << "\n";
  return static_cast<int>(st);
}
