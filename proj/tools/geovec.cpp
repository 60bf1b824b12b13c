// geovec: command-line front end.
//
// Exit codes: 0 success; 1 usage, parse or dimension error; 2 validation
// failure; 3 unsupported case; 4 point not stationary; 5 acceptance failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geovec/acceptance.hpp"
#include "geovec/catalog.hpp"
#include "geovec/classify.hpp"
#include "geovec/euler.hpp"
#include "geovec/io.hpp"
#include "geovec/probe.hpp"
#include "geovec/report.hpp"

namespace {

using namespace geovec;

constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitNotStationary = 4;
constexpr int kExitSuiteFailed = 5;

std::vector<double> parse_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_point(item, 1, field)[0]);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int cmd_validate(const std::string& file) {
  const MetricLieAlgebra alg = load_algebra(file);
  const ValidationReport r = validate(alg);
  std::cout << dump_json(to_json(r)) << "\n";
  return r.passed ? 0 : kExitInvalid;
}

int cmd_classify(const std::string& file, const std::string& point, const std::string& emit) {
  const MetricLieAlgebra alg = load_algebra(file);
  json doc;
  if (!point.empty()) {
    const Vector x = parse_point(point, alg.dim());
    if (!is_stationary(alg, x)) {
      double worst = 0.0;
      for (std::size_t i = 0; i < alg.dim(); ++i)
        worst = std::max(worst, std::abs(inner(alg, x, bracket(alg, x, Vector::unit(alg.dim(), i)))));
      std::cerr << "error: point is not stationary (max |<X,[X,e_i]>| = " << format_double(worst) << ")\n";
      return kExitNotStationary;
    }
    const StabilityVerdict v = classify_point(alg, x);
    doc = to_json(v);
    if (emit == "normal-form") doc["normal_form"] = normal_form_json(alg);
    std::cout << dump_json(doc) << "\n";
    return v.status == Status::Unsupported ? kExitUnsupported : 0;
  }
  if (emit != "normal-form") throw CLI::ValidationError("--point", "required unless --emit normal-form is given");
  doc = normal_form_json(alg);
  std::cout << dump_json(doc) << "\n";
  const AlgebraCase kind = detect_case(orthonormalized(alg).algebra);
  return (kind == AlgebraCase::NonUnimodular4D || kind == AlgebraCase::Unsupported) ? kExitUnsupported : 0;
}

int cmd_stationary(const std::string& file, std::size_t samples) {
  const MetricLieAlgebra alg = load_algebra(file);
  const auto families = enumerate_stationary(alg);
  std::cout << "family,kind";
  for (std::size_t i = 0; i < alg.dim(); ++i) std::cout << ",x" << (i + 1);
  std::cout << "\n";
  for (const auto& f : families) {
    for (std::uint64_t s = 0; s < samples; ++s) {
      const Vector x = f.sample(s);
      std::cout << '"' << f.label << "\"," << to_string(f.kind);
      for (double v : x) std::cout << "," << format_double(v);
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_simulate(const std::string& file, const std::string& y0s, double t, double h, const std::string& out,
                 std::size_t stride) {
  const MetricLieAlgebra alg = load_algebra(file);
  const Vector y0 = parse_point(y0s, alg.dim(), "y0");
  const IntegralSet set = IntegralSet::for_algebra(alg);
  Trajectory traj = integrate(alg, y0, t, h, set.integrals);
  if (stride > 1) {
    Trajectory thin = traj;
    thin.times.clear();
    thin.states.clear();
    for (auto& v : thin.integral_values) v.clear();
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
      if (s % stride != 0 && s + 1 != traj.times.size()) continue;
      thin.times.push_back(traj.times[s]);
      thin.states.push_back(traj.states[s]);
      for (std::size_t i = 0; i < traj.integral_values.size(); ++i)
        thin.integral_values[i].push_back(traj.integral_values[i][s]);
    }
    traj = std::move(thin);
  }
  if (out.empty() || out == "-") {
    write_trajectory_csv(std::cout, traj);
  } else {
    std::ofstream f(out);
    if (!f) throw Error("cannot write " + out);
    write_trajectory_csv(f, traj);
  }
  for (const auto& [name, d] : traj.drift) std::cerr << name << " relative drift " << format_double(d) << "\n";
  if (traj.aborted) std::cerr << "warning: integration stopped early: " << traj.abort_reason << "\n";
  return 0;
}

int cmd_probe(const std::string& file, const std::string& point, const std::string& eps, std::size_t trials,
              std::uint64_t seed, double t, double h, const std::string& format) {
  const MetricLieAlgebra alg = load_algebra(file);
  const Vector x = parse_point(point, alg.dim());
  if (!is_stationary(alg, x)) {
    std::cerr << "error: point is not stationary\n";
    return kExitNotStationary;
  }
  ProbeConfig cfg;
  if (!eps.empty()) cfg.epsilons = parse_list(eps, "eps");
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.horizon = t;
  cfg.step = h;
  const ProbeReport r = probe_point(alg, x, cfg);
  if (format == "table")
    write_probe_table(std::cout, r);
  else
    std::cout << dump_json(to_json(r)) << "\n";
  return 0;
}

int cmd_suite(int only) {
  bool ok = true;
  const int count = static_cast<int>(criteria().size());
  for (int id = 1; id <= count; ++id) {
    if (only != 0 && id != only) continue;
    const CriterionResult r = run_criterion(id);
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << " ("
              << acceptance::fmt(r.seconds) << " s)\n";
    for (const auto& l : r.lines) std::cout << "    " << l << "\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitSuiteFailed;
}

int cmd_catalog(const std::string& dir) {
  const auto cat = builtin_catalog();
  if (dir.empty()) {
    for (const auto& e : cat) {
      std::cout << e.name << "  (dim " << e.algebra.dim() << ")  " << e.description << "\n";
      for (const auto& p : e.points)
        std::cout << "    " << detail::point_text(p.point) << "  " << to_string(p.expected) << "  " << p.reason << "\n";
    }
    return 0;
  }
  std::filesystem::create_directories(dir);
  for (const auto& e : cat) {
    const std::string path = (std::filesystem::path(dir) / (e.name + ".json")).string();
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << dump_json(algebra_to_json(e.algebra, e.name)) << "\n";
  }
  std::cout << "wrote " << cat.size() << " algebras to " << dir << "\n";
  return 0;
}

int cmd_agreement(const std::string& eps, std::uint64_t seed, const std::string& format) {
  ProbeConfig cfg;
  if (!eps.empty()) cfg.epsilons = parse_list(eps, "eps");
  cfg.seed = seed;
  const AgreementReport rep = agreement_report(builtin_catalog(), cfg);
  if (format == "json")
    std::cout << dump_json(to_json(rep)) << "\n";
  else
    write_agreement_table(std::cout, rep);
  return rep.disagree == 0 ? 0 : kExitSuiteFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability of geodesic vectors on low-dimensional metric Lie algebras"};
  // "--h" is the step size, so help is long-form only.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.footer(std::string("Environment: ") + kToleranceEnv + " overrides the base zero tolerance (default 1e-9).");

  std::string file, point, emit, y0, out, eps, format = "json", table_format = "table", dir;
  double t = kDefaultHorizon, h = kDefaultStep;
  std::size_t samples = 10, trials = 32, stride = 1;
  std::uint64_t seed = 1;
  int criterion = 0;

  auto* validate = app.add_subcommand("validate", "check antisymmetry, Jacobi identity and the inner product");
  validate->add_option("file", file, "algebra JSON file")->required();

  auto* classify = app.add_subcommand("classify", "classify a stationary point");
  classify->add_option("file", file, "algebra JSON file")->required();
  classify->add_option("--point", point, "comma-separated coordinates");
  classify->add_option("--emit", emit, "extra output")->check(CLI::IsMember({"normal-form"}));

  auto* stationary = app.add_subcommand("stationary", "sample the stationary set, one CSV row per point");
  stationary->add_option("file", file, "algebra JSON file")->required();
  stationary->add_option("--samples", samples, "points per family");

  auto* simulate = app.add_subcommand("simulate", "integrate the Euler equation with RK4 and write CSV");
  simulate->add_option("file", file, "algebra JSON file")->required();
  simulate->add_option("--y0", y0, "initial point")->required();
  simulate->add_option("--t", t, "horizon T");
  simulate->add_option("--h", h, "step size");
  simulate->add_option("--out", out, "output CSV path (default stdout)");
  simulate->add_option("--stride", stride, "write every k-th step");

  auto* probe = app.add_subcommand("probe", "perturb a stationary point and integrate");
  probe->add_option("file", file, "algebra JSON file")->required();
  probe->add_option("--point", point, "stationary point")->required();
  probe->add_option("--eps", eps, "comma-separated perturbation radii (default 1e-2,1e-3,1e-4)");
  probe->add_option("--trials", trials, "random directions per radius");
  probe->add_option("--seed", seed, "RNG seed");
  probe->add_option("--t", t, "horizon T");
  probe->add_option("--h", h, "step size");
  probe->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));

  auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
  suite->add_option("--criterion", criterion, "run a single criterion (1-8)")->check(CLI::Range(1, 8));

  auto* catalog = app.add_subcommand("catalog", "list the built-in algebras or write them as JSON");
  catalog->add_option("--out", dir, "directory for <name>.json files");

  auto* agreement = app.add_subcommand("agreement", "classifier versus probe over the catalog");
  agreement->add_option("--eps", eps, "comma-separated perturbation radii");
  agreement->add_option("--seed", seed, "RNG seed");
  agreement->add_option("--format", table_format, "table or json")->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*classify) return cmd_classify(file, point, emit);
    if (*stationary) return cmd_stationary(file, samples);
    if (*simulate) return cmd_simulate(file, y0, t, h, out, stride);
    if (*probe) return cmd_probe(file, point, eps, trials, seed, t, h, format);
    if (*suite) return cmd_suite(criterion);
    if (*catalog) return cmd_catalog(dir);
    if (*agreement) return cmd_agreement(eps, seed, table_format);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const NotStationary& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotStationary;
  } catch (const UnsupportedCase& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
