// lowdisc: command-line front end for design generation, discrepancy
// evaluation, coordinate exchange and the studies.
//
// Exit codes: 0 ok, 2 contract violation, 3 numerical error, 4 size refusal.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lowdisc/lowdisc.hpp"

namespace {

using namespace lowdisc;

enum ExitCode { kOk = 0, kContract = 2, kNumerical = 3, kSize = 4 };

const std::map<std::string, GeneratorKind> kKinds{{"rand", GeneratorKind::Rand},
                                                  {"sobol", GeneratorKind::Sobol},
                                                  {"scrambled-sobol", GeneratorKind::ScrambledSobol},
                                                  {"esobol", GeneratorKind::ESobol}};
const std::map<std::string, TargetKind> kTargets{{"unit", TargetKind::UnitUniform},
                                                 {"centered", TargetKind::CenteredUniform},
                                                 {"normal", TargetKind::StandardNormal}};
const std::map<std::string, KernelBase> kKernels{{"origin", KernelBase::OriginAnchored},
                                                 {"centered-l2", KernelBase::CenteredL2},
                                                 {"transformed-normal", KernelBase::TransformedOriginAnchored}};

Domain domain_of(TargetKind kind) { return TargetSpec(kind, 1).domain(); }

template <class Map>
std::vector<std::string> keys(const Map& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

/// Writes to the path, or to stdout for "-".
template <class F>
void emit(const std::string& path, F&& write) {
  if (path == "-") {
    write(std::cout);
    return;
  }
  auto out = io::open_out(path);
  write(out);
}

Design centered_from_unit(const Design& u) {
  std::vector<double> v = u.values();
  for (double& x : v) x -= 0.5;
  return {u.size(), u.dimension(), std::move(v), Domain::CenteredCube};
}

struct GenerateArgs {
  std::string kind = "rand";
  std::size_t n = 0, d = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> skip;
  std::string target = "unit";
  std::string out = "-";
};

int run_generate(const GenerateArgs& a) {
  GeneratorConfig config{kKinds.at(a.kind), a.n, a.d, a.seed, a.skip};
  const auto target = kTargets.at(a.target);
  const Design u = generate_uniform(config);
  Design x = target == TargetKind::StandardNormal ? transform_to_target(u, TargetSpec::standard_normal(a.d))
             : target == TargetKind::CenteredUniform ? centered_from_unit(u)
                                                     : u;
  emit(a.out, [&](std::ostream& os) { io::write_design_csv(os, x); });
  if (a.out != "-") io::write_json(io::sidecar_path(a.out), io::generator_metadata(config, target));
  return kOk;
}

struct DiscrepancyArgs {
  std::string design, target = "normal", kernel = "origin", out = "-";
  std::vector<double> weights;
  std::optional<std::size_t> pieces;
};

int run_discrepancy(const DiscrepancyArgs& a) {
  const auto tk = kTargets.at(a.target);
  const Design x = io::read_design_csv(a.design, domain_of(tk));
  std::optional<std::vector<double>> w;
  if (!a.weights.empty()) w = a.weights;
  const KernelSpec kernel(kKernels.at(a.kernel), w);
  const auto report = discrepancy(x, TargetSpec(tk, x.dimension()), kernel, a.pieces);
  emit(a.out, [&](std::ostream& os) { os << io::report_json(report).dump(2) << '\n'; });
  return kOk;
}

struct OptimizeArgs {
  std::string design, target = "normal", kernel = "origin", out = "-", trace;
  double tol = 1e-10;
  std::size_t max_iters = 200, restarts = 1, grid = 64;
  std::uint64_t seed = 0;
};

int run_optimize(const OptimizeArgs& a) {
  const auto tk = kTargets.at(a.target);
  const Design x0 = io::read_design_csv(a.design, domain_of(tk));
  const TargetSpec target(tk, x0.dimension());
  ExchangeConfig config;
  config.tol = a.tol;
  config.max_iters = a.max_iters;
  config.grid_size = a.grid;

  // Start 0 is the given design; further starts are E-SOBOL designs of the
  // same size from seeds derived from --seed.
  std::vector<Design> starts{x0};
  for (std::size_t r = 1; r < a.restarts; ++r) {
    const auto u = generate_uniform(
        {GeneratorKind::ESobol, x0.size(), x0.dimension(), derive_seed(a.seed, r), std::nullopt});
    starts.push_back(tk == TargetKind::StandardNormal ? transform_to_target(u, target)
                     : tk == TargetKind::CenteredUniform ? centered_from_unit(u)
                                                         : u);
  }
  const auto [result, best] = multistart_exchange(starts, target, KernelSpec(kKernels.at(a.kernel)), config);
  emit(a.out, [&](std::ostream& os) { io::write_design_csv(os, result.design); });
  if (!a.trace.empty())
    emit(a.trace, [&](std::ostream& os) { io::write_trace_csv(os, result.trace); });
  std::cerr << "start " << best << ": " << io::format_double(result.trace.initial_discrepancy) << " -> "
            << io::format_double(result.trace.final_discrepancy) << " after "
            << result.trace.steps.size() << " exchanges (" << to_string(result.trace.terminated_by)
            << ")\n";
  return kOk;
}

struct StudyArgs {
  std::string study, out = "-", closest = "center";
  std::uint64_t seed = 0;
  std::size_t replicates = 500;
  std::vector<std::size_t> dims, sizes;
};

int run_study(const StudyArgs& a) {
  if (a.study == "cubature") {
    const auto rule = a.closest == "center" ? ClosestRule::PreTransformCenter : ClosestRule::PostTransformOrigin;
    const auto ex = run_cubature_example(a.seed, rule);
    emit(a.out, [&](std::ostream& os) { io::write_cubature_csv(os, ex); });
    return kOk;
  }
  StudyConfig config = a.study == "correlation" ? StudyConfig::correlation_defaults(a.seed)
                                                : StudyConfig::compare_defaults(a.seed);
  config.replicates = a.replicates;
  if (!a.dims.empty()) config.dims = a.dims;
  if (!a.sizes.empty()) config.sizes = a.sizes;
  if (a.study == "correlation") {
    const auto rows = run_correlation_study(config);
    emit(a.out, [&](std::ostream& os) { io::write_correlation_csv(os, rows); });
  } else {
    const auto rows = run_compare_study(config);
    emit(a.out, [&](std::ostream& os) { io::write_compare_csv(os, rows); });
  }
  return kOk;
}

int run_verify(std::size_t d, bool closed) {
  const auto rep = verify_appendix(d);
  const double expected = closed ? rep.double_closed : rep.double_printed;
  const bool double_ok = closed ? rep.double_closed_ok : rep.double_printed_ok;
  std::printf("single integral, 25 points: max |error| = %.3e  %s\n", rep.max_single_error,
              rep.single_ok ? "ok" : "FAIL");
  std::printf("double integral: quadrature %.15f, expected %.15f (%s form), |error| = %.3e  %s\n",
              rep.double_integral, expected, closed ? "closed" : "printed",
              std::abs(rep.double_integral - expected), double_ok ? "ok" : "FAIL");
  return rep.single_ok && double_ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel discrepancy designs for uniform and normal targets"};
  app.require_subcommand(1);

  GenerateArgs g;
  auto* gen = app.add_subcommand("generate", "Generate a design");
  gen->add_option("--kind", g.kind)->check(CLI::IsMember(keys(kKinds)))->capture_default_str();
  gen->add_option("--n", g.n, "number of points")->required();
  gen->add_option("--d", g.d, "dimension")->required();
  gen->add_option("--seed", g.seed)->capture_default_str();
  gen->add_option("--skip", g.skip, "leading Sobol' points to drop");
  gen->add_option("--target", g.target)->check(CLI::IsMember(keys(kTargets)))->capture_default_str();
  gen->add_option("--out", g.out)->capture_default_str();

  DiscrepancyArgs q;
  auto* dis = app.add_subcommand("discrepancy", "Discrepancy of a design");
  dis->add_option("--design", q.design)->required();
  dis->add_option("--target", q.target)->check(CLI::IsMember(keys(kTargets)))->capture_default_str();
  dis->add_option("--kernel", q.kernel)->check(CLI::IsMember(keys(kKernels)))->capture_default_str();
  dis->add_option("--weights", q.weights, "coordinate weights g1,...,gd")->delimiter(',');
  dis->add_option("--pieces", q.pieces, "report projection pieces up to this order");
  dis->add_option("--out", q.out)->capture_default_str();

  OptimizeArgs o;
  auto* opt = app.add_subcommand("optimize", "Coordinate exchange");
  opt->add_option("--design", o.design)->required();
  opt->add_option("--target", o.target)->check(CLI::IsMember(keys(kTargets)))->capture_default_str();
  opt->add_option("--kernel", o.kernel)->check(CLI::IsMember(keys(kKernels)))->capture_default_str();
  opt->add_option("--tol", o.tol)->capture_default_str();
  opt->add_option("--max-iters", o.max_iters)->capture_default_str();
  opt->add_option("--seed", o.seed, "seed for extra starts")->capture_default_str();
  opt->add_option("--restarts", o.restarts, "number of starts")->capture_default_str();
  opt->add_option("--grid", o.grid, "grid points in the line search")->capture_default_str();
  opt->add_option("--out", o.out)->capture_default_str();
  opt->add_option("--trace", o.trace);

  StudyArgs s;
  auto* st = app.add_subcommand("study", "Run a study");
  st->add_option("study", s.study)->required()->check(CLI::IsMember({"cubature", "correlation", "compare"}));
  st->add_option("--seed", s.seed)->capture_default_str();
  st->add_option("--replicates", s.replicates)->capture_default_str();
  st->add_option("--dims", s.dims)->delimiter(',');
  st->add_option("--sizes", s.sizes)->delimiter(',');
  st->add_option("--closest", s.closest, "cubature: point replaced is nearest the cube center or the normal origin")
      ->check(CLI::IsMember({"center", "origin"}))
      ->capture_default_str();
  st->add_option("--out", s.out)->capture_default_str();

  std::string what;
  std::size_t vd = 1;
  bool closed = false;
  auto* ver = app.add_subcommand("verify", "Check integral closed forms by quadrature");
  ver->add_option("what", what)->required()->check(CLI::IsMember({"appendix"}));
  ver->add_option("--d", vd)->check(CLI::IsMember({1, 2}))->capture_default_str();
  ver->add_flag("--closed", closed, "compare the double integral with (1 + sqrt(2/pi) - 1/sqrt(pi))^d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kContract;
  }

  try {
    if (*gen) return run_generate(g);
    if (*dis) return run_discrepancy(q);
    if (*opt) return run_optimize(o);
    if (*st) return run_study(s);
    if (*ver) return run_verify(vd, closed);
  } catch (const SizeError& e) {
    std::cerr << "size refused: " << e.what() << '\n';
    return kSize;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kContract;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
