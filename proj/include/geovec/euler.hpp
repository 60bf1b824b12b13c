#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "geovec/algebra.hpp"
#include "geovec/io.hpp"
#include "geovec/linalg.hpp"

namespace geovec {

/// Right-hand side of the Euler equation, ad_t(Y) Y.
inline Vector euler_rhs(const MetricLieAlgebra& alg, const Vector& y) {
  detail::check_dim(alg, y, "euler_rhs");
  return ad_t(alg, y) * y;
}

/// max_i |<X, [X, e_i]>| <= tol * max(1, |X|^2).
inline bool is_stationary(const MetricLieAlgebra& alg, const Vector& x, double tol) {
  detail::check_dim(alg, x, "is_stationary");
  const std::size_t n = alg.dim();
  const Vector gx = alg.gram() * x;
  const double bound = tol * std::max(1.0, inner(alg, x, x));
  for (std::size_t i = 0; i < n; ++i) {
    const Vector b = bracket(alg, x, Vector::unit(n, i));
    if (std::abs(dot(gx, b)) > bound) return false;
  }
  return true;
}

inline bool is_stationary(const MetricLieAlgebra& alg, const Vector& x) {
  return is_stationary(alg, x, alg.tolerance());
}

/// Linearisation of the Euler field at X: J Y = ad_t(X) Y + ad_t(Y) X.
inline Matrix linearization(const MetricLieAlgebra& alg, const Vector& x) {
  detail::check_dim(alg, x, "linearization");
  const std::size_t n = alg.dim();
  Matrix j = ad_t(alg, x);
  for (std::size_t c = 0; c < n; ++c) {
    const Vector col = ad_t(alg, Vector::unit(n, c)) * x;
    for (std::size_t r = 0; r < n; ++r) j(r, c) += col[r];
  }
  return j;
}

/// Elementary symmetric functions sigma_1..sigma_n of the eigenvalues, from
/// the power sums Tr(J^m) by Newton's identities.
inline std::vector<double> sigma_k(const Matrix& op) {
  if (!op.square()) throw DimensionError("sigma_k: matrix must be square");
  const std::size_t n = op.rows();
  std::vector<double> p(n + 1, 0.0);
  Matrix pw = Matrix::identity(n);
  for (std::size_t m = 1; m <= n; ++m) {
    pw = pw * op;
    p[m] = trace(pw);
  }
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) s += ((i % 2 == 1) ? 1.0 : -1.0) * e[k - i] * p[i];
    e[k] = s / static_cast<double>(k);
  }
  return {e.begin() + 1, e.end()};
}

/// Fast evaluator of the Euler field: rhs_k = sum_{i,m} T[k][i][m] y_i y_m.
class EulerField {
 public:
  explicit EulerField(const MetricLieAlgebra& alg) : n_(alg.dim()), t_(n_ * n_ * n_, 0.0) {
    const Matrix& g = alg.gram();
    const Matrix& gi = alg.gram_inverse();
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t m = 0; m < n_; ++m) {
          double s = 0.0;
          for (std::size_t p = 0; p < n_; ++p)
            for (std::size_t q = 0; q < n_; ++q) s += gi(k, p) * alg.constant(i, p, q) * g(q, m);
          t_[(k * n_ + i) * n_ + m] = s;
        }
  }

  std::size_t dim() const noexcept { return n_; }

  void evaluate(const double* y, double* out) const {
    for (std::size_t k = 0; k < n_; ++k) {
      double s = 0.0;
      const double* row = &t_[k * n_ * n_];
      for (std::size_t i = 0; i < n_; ++i) {
        double inner = 0.0;
        for (std::size_t m = 0; m < n_; ++m) inner += row[i * n_ + m] * y[m];
        s += y[i] * inner;
      }
      out[k] = s;
    }
  }

  Vector operator()(const Vector& y) const {
    Vector out(n_);
    evaluate(y.data(), out.data());
    return out;
  }

 private:
  std::size_t n_;
  std::vector<double> t_;
};

/// One classical RK4 step in place.
inline void rk4_step(const EulerField& f, Vector& y, double h) {
  const std::size_t n = f.dim();
  double k1[16] = {}, k2[16] = {}, k3[16] = {}, k4[16] = {}, tmp[16] = {};
  f.evaluate(y.data(), k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  f.evaluate(tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  f.evaluate(tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  f.evaluate(tmp, k4);
  for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kDefaultHorizon = 200.0;
inline constexpr double kBlowUpFactor = 1e6;

/// Outcome of a fixed-step run; `aborted` is set when the state stopped being
/// finite or grew past kBlowUpFactor * |Y0|.
struct EvolveStatus {
  std::size_t steps = 0;
  bool aborted = false;
  std::string reason;
};

/// Integrate Y' = rhs(Y) from Y0 with step h up to the largest multiple of h
/// not exceeding T. `observe(t, Y)` is called at t = 0 and after every step;
/// returning false stops early.
template <class Observer>
EvolveStatus evolve(const EulerField& f, Vector y, double horizon, double h, Observer&& observe) {
  if (!(h > 0.0) || !(horizon > 0.0)) throw DimensionError("integration requires h > 0 and T > 0");
  if (y.size() > 16) throw DimensionError("integrator supports dimension <= 16");
  const auto steps = static_cast<std::size_t>(std::floor(horizon / h + 1e-9));
  const double limit = kBlowUpFactor * std::max(norm(y), std::numeric_limits<double>::min());
  EvolveStatus st;
  if (!observe(0.0, static_cast<const Vector&>(y))) return st;
  for (std::size_t s = 1; s <= steps; ++s) {
    rk4_step(f, y, h);
    st.steps = s;
    if (!all_finite(y) || norm(y) > limit) {
      st.aborted = true;
      st.reason = all_finite(y) ? "state norm exceeded blow-up bound" : "non-finite state";
      return st;
    }
    if (!observe(static_cast<double>(s) * h, static_cast<const Vector&>(y))) return st;
  }
  return st;
}

struct FirstIntegral {
  std::string name;
  std::function<double(const Vector&)> evaluate;
};

inline FirstIntegral energy_integral(const MetricLieAlgebra& alg) {
  return {"I0", [alg](const Vector& y) { return inner(alg, y, y); }};
}

/// max_t |I(Y(t)) - I(Y0)| / max(1, |I(Y0)|)
inline double relative_drift(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double ref = values.front();
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v - ref));
  return worst / std::max(1.0, std::abs(ref));
}

struct Trajectory {
  std::size_t dim = 0;
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<std::string> integral_names;          // "I0" first
  std::vector<std::vector<double>> integral_values;  // [integral][sample]
  std::map<std::string, double> drift;
  bool aborted = false;
  std::string abort_reason;
};

/// RK4 trajectory sampled at every step, recording I0 and any extra integrals.
inline Trajectory integrate(const MetricLieAlgebra& alg, const Vector& y0, double horizon = kDefaultHorizon,
                            double h = kDefaultStep, std::span<const FirstIntegral> extra = {}) {
  detail::check_dim(alg, y0, "integrate");
  std::vector<FirstIntegral> integrals{energy_integral(alg)};
  for (const auto& fi : extra)
    if (fi.name != "I0") integrals.push_back(fi);

  Trajectory traj;
  traj.dim = alg.dim();
  for (const auto& fi : integrals) traj.integral_names.push_back(fi.name);
  traj.integral_values.resize(integrals.size());
  const EulerField field(alg);
  const EvolveStatus st = evolve(field, y0, horizon, h, [&](double t, const Vector& y) {
    traj.times.push_back(t);
    traj.states.push_back(y);
    for (std::size_t i = 0; i < integrals.size(); ++i) traj.integral_values[i].push_back(integrals[i].evaluate(y));
    return true;
  });
  traj.aborted = st.aborted;
  traj.abort_reason = st.reason;
  for (std::size_t i = 0; i < integrals.size(); ++i)
    traj.drift[integrals[i].name] = relative_drift(traj.integral_values[i]);
  return traj;
}

/// CSV with header t,y1,...,yn,I0[,I1,...]; 17 significant digits.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t";
  for (std::size_t i = 0; i < traj.dim; ++i) out << ",y" << (i + 1);
  for (const auto& name : traj.integral_names) out << "," << name;
  out << "\n";
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    out << format_double(traj.times[s]);
    for (double v : traj.states[s]) out << "," << format_double(v);
    for (const auto& vals : traj.integral_values) out << "," << format_double(vals[s]);
    out << "\n";
  }
}

}  // namespace geovec
