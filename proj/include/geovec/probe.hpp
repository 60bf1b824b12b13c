#pragma once

// Finite-horizon numerical evidence for (in)stability: perturb a stationary
// point in many directions, integrate, and record the worst excursion.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geovec/algebra.hpp"
#include "geovec/catalog.hpp"
#include "geovec/classify.hpp"
#include "geovec/euler.hpp"
#include "geovec/normal_forms.hpp"

namespace geovec {

enum class EmpVerdict { EmpStable, EmpUnstable, Inconclusive };

inline std::string to_string(EmpVerdict v) {
  switch (v) {
    case EmpVerdict::EmpStable: return "EmpStable";
    case EmpVerdict::EmpUnstable: return "EmpUnstable";
    case EmpVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct ProbeConfig {
  std::vector<double> epsilons{1e-2, 1e-3, 1e-4};
  double horizon = kDefaultHorizon;
  double step = kDefaultStep;
  std::size_t trials = 32;  // random directions per radius, on top of the two derived from J_X
  std::uint64_t seed = 1;
  double close_factor = 20.0;   // EmpStable needs max deviation <= close_factor * eps
  double far_fraction = 0.1;    // EmpUnstable needs max deviation >= far_fraction * max(|X|, 1)
};

struct ProbeReport {
  Vector point;
  std::vector<double> epsilons;
  std::vector<double> max_deviation;
  EmpVerdict verdict = EmpVerdict::Inconclusive;
  Vector worst_direction;
  std::uint64_t seed = 0;
  double close_factor = 0.0;
  double far_threshold = 0.0;
  double horizon = 0.0;
  double step = 0.0;
  std::size_t directions = 0;
  // Least-squares slope of log max_deviation against log eps. 1 means the
  // excursion scales linearly with the perturbation.
  std::optional<double> deviation_slope;
  std::vector<std::string> notes;
};

namespace detail {

/// Perturbation directions in orthonormal coordinates: the top right singular
/// vector of J, the top eigenvector of its symmetric part, then random ones.
inline std::vector<Vector> probe_directions(const Matrix& j, std::size_t trials, std::uint64_t seed) {
  const std::size_t n = j.rows();
  std::vector<Vector> dirs;
  dirs.push_back(symmetric_eigen(j.transpose() * j).vectors.col(0));
  dirs.push_back(symmetric_eigen(symmetric_part(j)).vectors.col(0));
  std::mt19937_64 rng(mix_seed(seed));
  for (std::size_t t = 0; t < trials; ++t) dirs.push_back(random_unit(rng, n));
  for (auto& d : dirs) d /= norm(d);
  return dirs;
}

inline std::optional<double> loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(ys[i])) return std::nullopt;
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(xs.size());
  const double den = m * sxx - sx * sx;
  if (std::abs(den) < 1e-300) return std::nullopt;
  return (m * sxy - sx * sy) / den;
}

}  // namespace detail

inline ProbeReport probe_point(const MetricLieAlgebra& alg, const Vector& point, const ProbeConfig& config = {}) {
  detail::check_dim(alg, point, "probe_point");
  if (!is_stationary(alg, point)) throw NotStationary("probe_point: point is not stationary");
  if (config.epsilons.empty()) throw DimensionError("probe_point: at least one radius is required");

  const OrthonormalFrame frame = orthonormalized(alg);
  const Vector x = frame.to_frame(point, alg);
  const EulerField field(frame.algebra);
  const std::vector<Vector> dirs =
      detail::probe_directions(linearization(frame.algebra, x), config.trials, config.seed);

  ProbeReport rep;
  rep.point = point;
  rep.epsilons = config.epsilons;
  rep.seed = config.seed;
  rep.close_factor = config.close_factor;
  rep.far_threshold = config.far_fraction * std::max(norm(x), 1.0);
  rep.horizon = config.horizon;
  rep.step = config.step;
  rep.directions = dirs.size();

  double overall_worst = -1.0;
  bool any_aborted = false;
  for (double eps : config.epsilons) {
    double worst = 0.0;
    for (const Vector& d : dirs) {
      const Vector y0 = x + eps * d;
      double dev = 0.0;
      const EvolveStatus st = evolve(field, y0, config.horizon, config.step, [&](double, const Vector& y) {
        double s = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - x[i]) * (y[i] - x[i]);
        dev = std::max(dev, s);
        return true;
      });
      dev = std::sqrt(dev);
      if (st.aborted) {
        any_aborted = true;
        dev = std::numeric_limits<double>::infinity();
      }
      if (dev > worst) worst = dev;
      if (dev > overall_worst) {
        overall_worst = dev;
        rep.worst_direction = frame.from_frame(d);
      }
    }
    rep.max_deviation.push_back(worst);
  }

  bool all_close = true, some_far = false;
  for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
    all_close = all_close && rep.max_deviation[i] <= config.close_factor * rep.epsilons[i];
    some_far = some_far || rep.max_deviation[i] >= rep.far_threshold;
  }
  // With eps large enough, close_factor * eps can exceed the far threshold; the
  // uniform linear bound then wins.
  if (all_close)
    rep.verdict = EmpVerdict::EmpStable;
  else if (some_far)
    rep.verdict = EmpVerdict::EmpUnstable;
  else
    rep.verdict = EmpVerdict::Inconclusive;

  rep.deviation_slope = detail::loglog_slope(rep.epsilons, rep.max_deviation);
  if (any_aborted) rep.notes.push_back("some trajectories left the blow-up bound; their deviation is recorded as inf");
  if (rep.verdict == EmpVerdict::Inconclusive)
    rep.notes.push_back("deviations exceed the linear bound but stay below the far threshold; slow drifts (rate ~ eps) "
                        "may need a horizon T beyond 1/eps");
  return rep;
}

// ---------------------------------------------------------------------------
// First integrals beyond the energy

struct IntegralSet {
  std::vector<FirstIntegral> integrals;
  std::vector<std::string> notes;

  const FirstIntegral* find(const std::string& name) const {
    for (const auto& fi : integrals)
      if (fi.name == name) return &fi;
    return nullptr;
  }

  /// I0 always; I1 = sum lambda_i y_i^2 (3D unimodular, Milnor coordinates); I1 = y4,
  /// I2 = <Sy, y> + 2 y4 <l, y> and, when S has a double eigenvalue with l along the
  /// remaining eigenvector n, I3 = <n, y> (4D, one-dimensional centre). Evaluators
  /// take coordinates in the algebra's own basis.
  static IntegralSet for_algebra(const MetricLieAlgebra& alg) {
    IntegralSet set;
    set.integrals.push_back(energy_integral(alg));
    const OrthonormalFrame frame = orthonormalized(alg);
    const MetricLieAlgebra& a = frame.algebra;
    const double tol = a.tolerance();
    auto to_frame = [frame, alg](const Vector& y) { return frame.to_frame(y, alg); };

    const AlgebraCase kind = detect_case(a);
    if (kind == AlgebraCase::Unimodular3D) {
      const MilnorFrame mf = milnor_frame(a);
      set.integrals.push_back({"I1", [mf, to_frame](const Vector& y) {
                                 const Vector yf = to_frame(y);
                                 double s = 0.0;
                                 for (std::size_t k = 0; k < 3; ++k) s += mf.lambda[k] * std::pow(dot(mf.basis[k], yf), 2);
                                 return s;
                               }});
    } else if (kind == AlgebraCase::CenterOne4D) {
      try {
        const CenterSplit4D cs = center_split_4d(a);
        set.integrals.push_back({"I1", [cs, to_frame](const Vector& y) { return dot(cs.e4, to_frame(y)); }});
        set.integrals.push_back({"I2", [cs, to_frame](const Vector& y) {
                                   const Vector yf = to_frame(y);
                                   const Vector m = cs.m_coordinates(yf);
                                   return dot(cs.s * m, m) + 2.0 * dot(cs.e4, yf) * dot(cs.l, m);
                                 }});
        const SymmetricEigen eig = symmetric_eigen(cs.s);
        std::optional<Vector> axis;
        if (std::abs(eig.values[0] - eig.values[2]) <= tol) {
          if (norm(cs.l) > tol) axis = cs.l / norm(cs.l);
        } else if (std::abs(eig.values[0] - eig.values[1]) <= tol) {
          axis = eig.vectors.col(2);
        } else if (std::abs(eig.values[1] - eig.values[2]) <= tol) {
          axis = eig.vectors.col(0);
        }
        if (axis && norm(cs.l - dot(*axis, cs.l) * *axis) <= tol) {
          const Vector n = *axis;
          set.integrals.push_back(
              {"I3", [cs, n, to_frame](const Vector& y) { return dot(n, cs.m_coordinates(to_frame(y))); }});
        } else {
          set.notes.push_back("I3 not defined: S has no double eigenvalue with l along the remaining axis");
        }
      } catch (const DegenerateForm& e) {
        set.notes.push_back(std::string("case integrals skipped: ") + e.what());
      }
    } else {
      set.notes.push_back("only I0 is registered for case " + to_string(kind));
    }
    return set;
  }
};

struct DriftResult {
  std::map<std::string, double> drift;
  std::vector<std::string> notes;
};

inline DriftResult integral_drift(const MetricLieAlgebra& alg, const Trajectory& traj) {
  if (traj.dim != alg.dim()) throw DimensionError("integral_drift: trajectory dimension does not match the algebra");
  const IntegralSet set = IntegralSet::for_algebra(alg);
  DriftResult out;
  out.notes = set.notes;
  for (const auto& fi : set.integrals) {
    std::vector<double> values;
    values.reserve(traj.states.size());
    for (const auto& y : traj.states) values.push_back(fi.evaluate(y));
    out.drift[fi.name] = relative_drift(values);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classifier versus probe

enum class Outcome { Agree, Disagree, Inconclusive, NotApplicable };

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Agree: return "agree";
    case Outcome::Disagree: return "disagree";
    case Outcome::Inconclusive: return "inconclusive";
    case Outcome::NotApplicable: return "n/a";
  }
  return "?";
}

struct AgreementRow {
  std::string entry;
  Vector point;
  Status expected = Status::Stable;
  Status theorem = Status::Stable;
  std::string rule;
  EmpVerdict probe = EmpVerdict::Inconclusive;
  std::vector<double> max_deviation;
  std::optional<double> deviation_slope;
  Outcome outcome = Outcome::Inconclusive;
  std::string detail;
};

struct AgreementReport {
  std::vector<AgreementRow> rows;
  std::size_t agree = 0, disagree = 0, inconclusive = 0, not_applicable = 0;

  /// agree / (agree + disagree); Inconclusive rows never count.
  double fraction() const {
    const std::size_t decisive = agree + disagree;
    return decisive == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(decisive);
  }
};

inline Outcome compare(Status expected, Status theorem, EmpVerdict probe, std::string& why) {
  if (theorem != expected) {
    why = "theorem verdict differs from the expected label";
    return Outcome::Disagree;
  }
  if (theorem == Status::Unsupported) {
    why = "no theorem verdict to compare";
    return Outcome::NotApplicable;
  }
  if (probe == EmpVerdict::Inconclusive) {
    why = "probe inconclusive";
    return Outcome::Inconclusive;
  }
  const bool match = (theorem == Status::Stable) == (probe == EmpVerdict::EmpStable);
  if (!match) why = "probe contradicts the theorem verdict";
  return match ? Outcome::Agree : Outcome::Disagree;
}

inline AgreementRow agreement_row(const std::string& entry, const MetricLieAlgebra& alg, const LabeledPoint& lp,
                                  const ProbeConfig& config) {
  AgreementRow row;
  row.entry = entry;
  row.point = lp.point;
  row.expected = lp.expected;
  const StabilityVerdict v = classify_point(alg, lp.point);
  row.theorem = v.status;
  row.rule = v.rule;
  if (v.status != Status::Unsupported || lp.expected != Status::Unsupported) {
    const ProbeReport rep = probe_point(alg, lp.point, config);
    row.probe = rep.verdict;
    row.max_deviation = rep.max_deviation;
    row.deviation_slope = rep.deviation_slope;
  }
  row.outcome = compare(row.expected, row.theorem, row.probe, row.detail);
  return row;
}

inline AgreementReport agreement_report(const std::vector<CatalogEntry>& catalog, const ProbeConfig& config = {}) {
  AgreementReport rep;
  for (const auto& entry : catalog)
    for (const auto& lp : entry.points) rep.rows.push_back(agreement_row(entry.name, entry.algebra, lp, config));
  for (const auto& r : rep.rows) {
    switch (r.outcome) {
      case Outcome::Agree: ++rep.agree; break;
      case Outcome::Disagree: ++rep.disagree; break;
      case Outcome::Inconclusive: ++rep.inconclusive; break;
      case Outcome::NotApplicable: ++rep.not_applicable; break;
    }
  }
  return rep;
}

}  // namespace geovec
