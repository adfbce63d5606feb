#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "stw/io.hpp"
#include "stw/suite.hpp"

using namespace stw;

namespace {

Vec element_by_name(const Algebra& A, const std::string& name) {
  auto it = A.named_elements.find(name);
  if (it != A.named_elements.end()) return it->second;
  for (std::size_t i = 0; i < A.dim; ++i)
    if (A.basis_names[i] == name) return A.elem(i);
  throw Error("ParseError", "unknown element name '" + name + "'");
}

int cmd_validate(const std::string& path, const std::string& json_out) {
  Json report;
  report["schema_version"] = 1;
  report["command"] = "validate";
  report["file"] = path;
  try {
    auto j = load_json_file(path);
    auto A = algebra_from_json(j);
    report["valid"] = true;
    report["p"] = A->field.p;
    report["d"] = A->dim;
    report["loewy_length"] = A->loewy_length;
    report["semisimple_warning"] = A->semisimple;
    auto sf = find_symmetric_form(*A);
    report["symmetric_certified"] = sf.has_value();
    if (sf) report["lambda"] = sf->lambda;
    if (!json_out.empty()) write_json_file(json_out, report);
    std::printf("valid: local%s, d=%zu, p=%u, Loewy length %zu%s\n",
                sf ? " symmetric" : " (symmetric form not certified)", A->dim, A->field.p,
                A->loewy_length, A->semisimple ? " [semisimple warning]" : "");
    if (!sf) std::printf("warning: no nondegenerate symmetric form found by the bounded sweep\n");
    return 0;
  } catch (const Error& e) {
    report["valid"] = false;
    report["error"] = e.code();
    report["message"] = e.what();
    if (!json_out.empty()) write_json_file(json_out, report);
    std::printf("invalid: %s\n", e.what());
    return e.code() == "ParseError" ? 2 : 1;
  }
}

struct TwistArgs {
  std::string alg, kind = "spherical", x = "x", y, module = "simple", compare, json_out;
  std::size_t iter = 1;
  uint64_t seed = 0;
};

int cmd_twist(const TwistArgs& args) {
  Json report;
  report["schema_version"] = 1;
  report["command"] = "twist";
  report["algebra"] = args.alg;
  report["kind"] = args.kind;
  try {
    auto cat = resolve_algebra(args.alg);
    Vec x = element_by_name(*cat.A, args.x);
    std::optional<Vec> y;
    if (!args.y.empty()) y = element_by_name(*cat.A, args.y);
    auto ctx = make_twist_context(cat.A, x, y, args.seed);
    auto hyp = hypothesis_report(ctx);
    Json hj;
    hj["t_restriction_blocks"] = ctx.t_restriction.jordan.block_sizes;
    hj["stable_end_dim"] = hyp.stable_end_dim;
    hj["n"] = hyp.n;
    hj["omega_hom_ok"] = hyp.omega_hom_ok;
    hj["spherical_ready"] = hyp.spherical_ready;
    hj["pn_ready"] = hyp.pn_ready;
    report["hypothesis"] = hj;

    ModulePtr M;
    if (args.module == "simple")
      M = ctx.simple;
    else if (args.module == "regular")
      M = regular_module(cat.A);
    else if (args.module == "T")
      M = ctx.T;
    else
      M = module_from_json(load_json_file(args.module), cat.A);
    report["input"] = Json{{"module", args.module}, {"dim", M->dim}};

    if (args.kind == "spherical" && !hyp.spherical_ready)
      throw Error("HypothesisFailed", "context is not spherical-ready (T restriction has " +
                                          std::to_string(ctx.t_restriction.k_count) +
                                          " trivial blocks)");
    if (args.kind == "pn" && !hyp.pn_ready) {
      std::string why = !hyp.has_y            ? "no element y"
                        : !hyp.y_commutes     ? "CommutationFailed: x*y != y*x"
                        : !hyp.y_well_defined ? "NotWellDefined: y*xA not in xA"
                                              : "EndoRingMismatch: psi = L_y does not certify";
      throw Error("HypothesisFailed", why);
    }

    ModulePtr R = M;
    for (std::size_t i = 0; i < args.iter; ++i)
      R = (args.kind == "spherical") ? spherical_twist(ctx, R) : pn_twist(ctx, R);
    std::size_t endo = R->dim ? stable_hom(R, R).stable_dim : 0;
    Json res;
    res["dim"] = R->dim;
    res["grothendieck_class"] = grothendieck_class(*R).value;
    res["grothendieck_modulus"] = grothendieck_class(*R).modulus;
    res["stable_end_dim"] = endo;
    report["result"] = res;
    std::string verdict_line;
    if (!args.compare.empty()) {
      auto pos = args.compare.find(':');
      if (pos == std::string::npos || args.compare.substr(0, pos) != "omega")
        throw Error("ParseError", "--compare expects omega:<k>");
      long kpow = std::stol(args.compare.substr(pos + 1));
      ModulePtr target = strip_projectives(M).core;
      for (long i = 0; i < std::labs(kpow); ++i)
        target = kpow > 0 ? syzygy(target) : cosyzygy(target);
      auto iso = is_stably_isomorphic(R, target, IsoOptions{args.seed});
      std::string v = iso.verdict == Tri::Yes  ? "stably isomorphic"
                      : iso.verdict == Tri::No ? "not stably isomorphic"
                                               : "inconclusive";
      report["compare"] = Json{{"against", args.compare},
                               {"target_dim", target->dim},
                               {"verdict", v},
                               {"certificate", iso.certificate}};
      verdict_line = "; vs Omega^" + std::to_string(kpow) + ": " + v;
    }
    if (!args.json_out.empty()) write_json_file(args.json_out, report);
    std::printf("%s^%zu(%s): dim %zu, class %zu mod %zu, stable End dim %zu%s\n",
                args.kind == "spherical" ? "tau" : "rho", args.iter, args.module.c_str(), R->dim,
                grothendieck_class(*R).value, grothendieck_class(*R).modulus, endo,
                verdict_line.c_str());
    return 0;
  } catch (const Error& e) {
    report["error"] = e.code();
    report["message"] = e.what();
    if (!args.json_out.empty()) write_json_file(args.json_out, report);
    std::printf("error: %s\n", e.what());
    return e.code() == "ParseError" ? 2 : 1;
  }
}

int cmd_suite(const std::string& level, uint64_t seed, std::size_t jobs, const std::string& json_out,
              bool no_timing) {
  auto rep = run_suite(level, seed, jobs);
  for (const auto& r : rep.results) {
    std::printf("[%s] %s (%zu ms)\n",
                r.verdict == Verdict::Pass           ? "PASS"
                : r.verdict == Verdict::Inconclusive ? "INCONCLUSIVE"
                                                     : "FAIL",
                r.id.c_str(), (std::size_t)r.wall_ms);
    if (r.verdict == Verdict::Fail)
      for (const auto& item : r.details)
        if (item.contains("ok") && !item["ok"].get<bool>())
          std::printf("    failed: %s: %s\n", item["check"].get<std::string>().c_str(),
                      item.value("witness", std::string("(no witness)")).c_str());
  }
  if (!json_out.empty()) write_json_file(json_out, rep.to_json(!no_timing));
  return rep.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stw: exact twist functors on stable module categories over GF(p)"};
  app.require_subcommand(1);

  std::string validate_path, validate_json;
  auto* v = app.add_subcommand("validate", "validate an algebra file");
  v->add_option("file", validate_path, "algebra JSON file")->required();
  v->add_option("--json", validate_json, "write a JSON report");

  TwistArgs targs;
  auto* t = app.add_subcommand("twist", "apply a twist functor");
  t->add_option("--alg", targs.alg, "catalog name or algebra JSON file")->required();
  t->add_option("--kind", targs.kind, "spherical | pn")->check(CLI::IsMember({"spherical", "pn"}));
  t->add_option("--x", targs.x, "element generating R = k[x]");
  t->add_option("--y", targs.y, "commuting element (P^n twists)");
  t->add_option("--module", targs.module, "simple | regular | T | module JSON file");
  t->add_option("--iter", targs.iter, "apply the twist this many times");
  t->add_option("--compare", targs.compare, "omega:<k> compares against Omega^k of the input");
  t->add_option("--seed", targs.seed, "seed for randomized searches");
  t->add_option("--json", targs.json_out, "write a JSON report");

  std::string level = "quick", suite_json;
  uint64_t seed = 0;
  std::size_t jobs = 1;
  bool no_timing = false;
  auto* s = app.add_subcommand("suite", "run the verification suite");
  s->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  s->add_option("--seed", seed, "suite seed");
  s->add_option("--jobs", jobs, "worker threads");
  s->add_option("--json", suite_json, "write the JSON report");
  s->add_flag("--no-timing", no_timing, "omit wall times from the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (v->parsed()) return cmd_validate(validate_path, validate_json);
    if (t->parsed()) return cmd_twist(targs);
    if (s->parsed()) return cmd_suite(level, seed, jobs, suite_json, no_timing);
  } catch (const Error& e) {
    std::printf("error: %s\n", e.what());
    return e.code() == "ParseError" ? 2 : 1;
  } catch (const std::exception& e) {
    std::printf("error: %s\n", e.what());
    return 1;
  }
  return 2;
}
