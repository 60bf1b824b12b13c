#pragma once

// The eight acceptance checks, runnable from the test suite and `geovec suite`.

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geovec/catalog.hpp"
#include "geovec/classify.hpp"
#include "geovec/euler.hpp"
#include "geovec/normal_forms.hpp"
#include "geovec/probe.hpp"

namespace geovec {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = true;
  double seconds = 0.0;
  std::vector<std::string> lines;  // failures first, then a summary
};

namespace oracle {

/// det(M) by partial-pivot elimination in long double.
inline long double det_ld(std::vector<long double> m, std::size_t n) {
  long double d = 1.0L;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r * n + c]) > std::fabs(m[p * n + c])) p = r;
    if (m[p * n + c] == 0.0L) return 0.0L;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[p * n + k], m[c * n + k]);
      d = -d;
    }
    d *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return d;
}

/// sigma_1..sigma_n from det(lambda I - J) sampled at n + 1 nodes and
/// interpolated (Newton divided differences, expanded to monomials).
inline std::vector<double> sigma_by_interpolation(const Matrix& j) {
  const std::size_t n = j.rows();
  std::vector<long double> nodes(n + 1), vals(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    nodes[m] = static_cast<long double>(m) - static_cast<long double>(n) / 2.0L;
    std::vector<long double> a(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a[r * n + c] = (r == c ? nodes[m] : 0.0L) - j(r, c);
    vals[m] = det_ld(a, n);
  }
  std::vector<long double> dd = vals;
  for (std::size_t lvl = 1; lvl <= n; ++lvl)
    for (std::size_t m = n; m >= lvl; --m) dd[m] = (dd[m] - dd[m - 1]) / (nodes[m] - nodes[m - lvl]);
  // p(t) = dd[0] + dd[1](t - x0) + ... ; Horner on the Newton form, coefficients low to high.
  std::vector<long double> coef(n + 1, 0.0L);
  coef[0] = dd[n];
  for (std::size_t m = n; m-- > 0;) {
    std::vector<long double> next(n + 1, 0.0L);
    for (std::size_t k = 0; k < n; ++k) {
      next[k + 1] += coef[k];
      next[k] -= nodes[m] * coef[k];
    }
    next[0] += dd[m];
    coef = next;
  }
  // coefficient of t^(n-k) is (-1)^k sigma_k
  std::vector<double> sigma(n);
  for (std::size_t k = 1; k <= n; ++k)
    sigma[k - 1] = static_cast<double>(((k % 2) ? -1.0L : 1.0L) * coef[n - k]);
  return sigma;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) m(i, k) = u(rng);
  return m;
}

/// Haar-ish random orthogonal matrix: Gram-Schmidt of a Gaussian matrix.
inline Matrix random_orthogonal(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Vector> cols;
  while (cols.size() < n) {
    Vector v(n);
    for (double& x : v) x = g(rng);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : cols) v -= dot(q, v) * q;
    const double len = norm(v);
    if (len > 1e-6) cols.push_back(v / len);
  }
  return Matrix::from_columns(cols, n);
}

}  // namespace oracle

namespace acceptance {

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    if (!ok) {
      r_.passed = false;
      r_.lines.push_back("FAIL " + what);
    }
  }
  void note(const std::string& what) { notes_.push_back(what); }
  ~Recorder() { r_.lines.insert(r_.lines.end(), notes_.begin(), notes_.end()); }

 private:
  CriterionResult& r_;
  std::vector<std::string> notes_;
};

inline const CatalogEntry& entry(const std::vector<CatalogEntry>& cat, const std::string& name) {
  const CatalogEntry* e = find_entry(cat, name);
  if (!e) throw Error("catalog entry missing: " + name);
  return *e;
}

inline std::string point_str(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s + ")";
}

inline void expect_verdict(Recorder& rec, const CatalogEntry& e, const Vector& x, Status want,
                           const std::string& rule = {}) {
  const StabilityVerdict v = classify_point(e.algebra, x);
  rec.check(v.status == want, e.name + " " + point_str(x) + ": expected " + to_string(want) + ", got " +
                                  to_string(v.status) + " (" + v.rule + ")");
  if (!rule.empty()) rec.check(v.rule == rule, e.name + " " + point_str(x) + ": expected rule " + rule + ", got " + v.rule);
}

inline void expect_probe(Recorder& rec, const CatalogEntry& e, const Vector& x, const ProbeConfig& cfg,
                         std::size_t& decisive, std::size_t& agreeing, bool inconclusive_fails) {
  const StabilityVerdict v = classify_point(e.algebra, x);
  const ProbeReport p = probe_point(e.algebra, x, cfg);
  std::string devs;
  for (double d : p.max_deviation) devs += (devs.empty() ? "" : ",") + fmt(d);
  const std::string tag = e.name + " " + point_str(x) + ": theorem " + to_string(v.status) + ", probe " +
                          to_string(p.verdict) + " max_dev [" + devs + "]";
  if (p.verdict == EmpVerdict::Inconclusive) {
    if (inconclusive_fails)
      rec.check(false, tag);
    else
      rec.note("inconclusive (not decisive) " + tag);
    return;
  }
  ++decisive;
  const bool agree = (v.status == Status::Stable) == (p.verdict == EmpVerdict::EmpStable);
  if (agree) ++agreeing;
  rec.check(agree, tag);
}

// 1. Worked centreless example.
inline void criterion1(Recorder& rec) {
  const auto cat = builtin_catalog();
  const Matrix a = catalog::centreless_example_matrix();
  const PhiCoefficients phi = phi_taylor(a, Vector{0, 0, 1}, 6);
  for (std::size_t k = 1; k <= 5; ++k)
    rec.check(std::abs(phi.c[k]) <= 1e-9, "c" + std::to_string(k) + " = " + fmt(phi.c[k]) + " exceeds 1e-9");
  rec.check(std::abs(phi.c[6] - 1.6) <= 1e-9, "c6 = " + format_double(phi.c[6]) + ", expected 8/5");
  const auto& e = entry(cat, "caseC_tangent6");
  const StabilityVerdict v = classify_point(e.algebra, Vector{0, 0, 0, 1});
  rec.check(v.status == Status::Stable && v.rule == "T2.c", "verdict " + to_string(v.status) + " " + v.rule);
  rec.check(v.certificates.count("k") && v.certificates.at("k") == 6.0, "first nonzero order is not 6");
  rec.note("c6 = " + format_double(phi.c[6]) + ", verdict " + to_string(v.status) + " " + v.rule);
}

// 2. Three-dimensional rules plus probe agreement at eps in {1e-2, 1e-3}.
inline void criterion2(Recorder& rec) {
  const auto cat = builtin_catalog();
  const auto S = Status::Stable, U = Status::Unstable;
  const auto& m10 = entry(cat, "milnor_1_0_-1");
  const auto& m11 = entry(cat, "milnor_1_1_-1");
  const auto& hyp = entry(cat, "hyperbolic3");

  std::vector<std::pair<const CatalogEntry*, std::pair<Vector, Status>>> pts{
      {&m10, {Vector{1, 0, 0}, S}}, {&m10, {Vector{0, 0, 1}, S}}, {&m10, {Vector{0, 1, 0}, U}},
      {&hyp, {Vector{-1, 0, 0}, S}}, {&hyp, {Vector{1, 0, 0}, U}}};
  for (double t : {1.0, -0.5, 2.0}) pts.push_back({&m11, {Vector{0, 0, t}, S}});
  for (double th : {0.0, 0.7, 2.1, 4.0}) {
    const double r = 0.5 + 0.4 * th;
    pts.push_back({&m11, {Vector{r * std::cos(th), r * std::sin(th), 0}, U}});
  }
  for (const auto& [e, pv] : pts) expect_verdict(rec, *e, pv.first, pv.second);

  ProbeConfig cfg;
  cfg.epsilons = {1e-2, 1e-3};
  std::size_t decisive = 0, agree = 0;
  for (const auto& [e, pv] : pts) expect_probe(rec, *e, pv.first, cfg, decisive, agree, true);
  rec.note("probe agreement " + std::to_string(agree) + "/" + std::to_string(decisive) + " at eps {1e-2, 1e-3}");
}

// 3. Four-dimensional unimodular rules plus probe agreement on decisive rows.
inline void criterion3(Recorder& rec) {
  const auto cat = builtin_catalog();
  const auto S = Status::Stable, U = Status::Unstable;
  const auto& heis = entry(cat, "heisenberg_r");
  expect_verdict(rec, heis, Vector{0, 0, 1, 0}, S);
  expect_verdict(rec, heis, Vector{1, 0, 0, 0}, U, "T2.a");

  const auto& b0 = entry(cat, "caseB_diag_1_0_-1");
  const StabilityVerdict ve2 = classify_point(b0.algebra, Vector{0, 1, 0, 0});
  rec.check(ve2.status == U, "caseB S=diag(1,0,-1) e2 not Unstable");
  rec.check(ve2.certificates.count("sigma2") && std::abs(ve2.certificates.at("sigma2") + 1.0) <= 1e-9,
            "caseB S=diag(1,0,-1) e2: sigma2 certificate is not -1");
  const std::vector<std::string> central_one{"caseB_diag_1_0_-1", "caseB_diag_1_0_-1_l3", "caseB_diag_1_1_-2_l3",
                                             "caseB_rank_one", "so3_plus_r"};
  for (const auto& name : central_one) expect_verdict(rec, entry(cat, name), Vector{0, 0, 0, 1}, S);

  const auto& c = entry(cat, "caseC_tangent6");
  expect_verdict(rec, c, Vector{1, 0, 0, 0}, U, "T2.c");
  expect_verdict(rec, c, Vector{-0.5, 0, 0, 0}, U, "T2.c");
  expect_verdict(rec, c, Vector{0, 0, 0, 1}, S, "T2.c");

  ProbeConfig cfg;
  std::size_t decisive = 0, agree = 0;
  for (const std::string name : {"heisenberg_r", "caseB_diag_1_0_-1", "caseB_diag_1_0_-1_l3", "caseB_diag_1_1_-2_l3",
                                 "caseB_rank_one", "caseC_tangent6"}) {
    const auto& e = entry(cat, name);
    for (const auto& lp : e.points) expect_probe(rec, e, lp.point, cfg, decisive, agree, false);
  }
  rec.note("probe agreement on decisive rows " + std::to_string(agree) + "/" + std::to_string(decisive));
}

// 4. Existence of stable and unstable witnesses.
inline void criterion4(Recorder& rec) {
  std::size_t checked = 0;
  for (const auto& e : builtin_catalog()) {
    const AlgebraCase kind = detect_case(e.algebra);
    if (kind == AlgebraCase::Abelian) continue;
    if (kind == AlgebraCase::NonUnimodular4D || kind == AlgebraCase::Unsupported) {
      rec.note(e.name + ": outside the classified cases, skipped");
      continue;
    }
    ++checked;
    const bool bi = is_biinvariant(e.algebra);
    try {
      const Witnesses w = find_stable_and_unstable(e.algebra);
      rec.check(w.stable && norm(e.algebra, *w.stable) > 0.0, e.name + ": no nonzero stable witness");
      if (bi) {
        rec.check(!w.unstable, e.name + ": bi-invariant algebra produced an unstable witness");
      } else {
        rec.check(w.unstable.has_value(), e.name + ": no unstable witness");
      }
      if (w.stable) rec.check(classify_point(e.algebra, *w.stable).status == Status::Stable, e.name + ": stable witness reclassifies");
      if (w.unstable)
        rec.check(classify_point(e.algebra, *w.unstable).status == Status::Unstable,
                  e.name + ": unstable witness reclassifies");
    } catch (const Error& ex) {
      rec.check(false, e.name + ": " + ex.what());
    }
  }
  for (const std::string name : {"so3", "so3_plus_r"})
    rec.check(is_biinvariant(entry(builtin_catalog(), name).algebra), name + " is not reported bi-invariant");
  rec.note(std::to_string(checked) + " non-abelian entries searched");
}

// 5. Conservation of first integrals and fourth-order convergence.
inline void criterion5(Recorder& rec) {
  std::mt19937_64 rng(5);
  double worst_i0 = 0.0, worst_case = 0.0;
  std::size_t order_checks = 0;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (const auto& e : builtin_catalog()) {
    const std::size_t n = e.algebra.dim();
    std::vector<Vector> starts;
    for (int t = 0; t < 2; ++t) {
      Vector y = detail::random_unit(rng, n);
      y *= std::uniform_real_distribution<double>(0.5, 2.0)(rng) / norm(e.algebra, y);
      starts.push_back(y);
    }
    const IntegralSet set = IntegralSet::for_algebra(e.algebra);
    for (const auto& y0 : starts) {
      const Trajectory traj = integrate(e.algebra, y0, kDefaultHorizon, kDefaultStep);
      rec.check(!traj.aborted, e.name + ": trajectory aborted");
      const DriftResult d = integral_drift(e.algebra, traj);
      for (const auto& [name, drift] : d.drift) {
        rec.check(drift <= 1e-8, e.name + " " + name + " drift " + fmt(drift));
        if (name == "I0")
          worst_i0 = std::max(worst_i0, drift);
        else
          worst_case = std::max(worst_case, drift);
      }
    }
    // Order check on a coarse grid where truncation dominates roundoff.
    const Trajectory coarse = integrate(e.algebra, starts[0], 20.0, 0.05);
    const Trajectory fine = integrate(e.algebra, starts[0], 20.0, 0.025);
    const double dc = coarse.drift.at("I0"), df = fine.drift.at("I0");
    if (dc > 1e-10 && !coarse.aborted && !fine.aborted) {
      ++order_checks;
      const double ratio = dc / std::max(df, 1e-300);
      worst_ratio = std::min(worst_ratio, ratio);
      rec.check(ratio >= 12.0, e.name + ": halving h improved I0 drift by only " + fmt(ratio));
    }
  }
  rec.check(order_checks >= 3, "too few algebras with measurable truncation drift for the order check");
  rec.note("worst I0 drift " + fmt(worst_i0) + ", worst case-integral drift " + fmt(worst_case) + ", order checks " +
           std::to_string(order_checks) + ", worst improvement " + fmt(worst_ratio));
}

// 6. Independent oracles for sigma_k and phi.
inline void criterion6(Recorder& rec) {
  std::mt19937_64 rng(6);
  double worst_sigma = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Matrix j = oracle::random_matrix(rng, 4, 4);
    const auto fast = sigma_k(j);
    const auto slow = oracle::sigma_by_interpolation(j);
    for (std::size_t k = 0; k < 4; ++k) {
      const double rel = std::abs(fast[k] - slow[k]) / std::max(1.0, std::abs(slow[k]));
      worst_sigma = std::max(worst_sigma, rel);
    }
  }
  rec.check(worst_sigma <= 1e-10, "sigma_k relative mismatch " + fmt(worst_sigma));

  const double s = 1e-2;
  double worst_phi = 0.0;
  std::uniform_int_distribution<std::size_t> dim(2, 4);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = dim(rng);
    const Matrix a = oracle::random_matrix(rng, n, n);
    Vector x(n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : x) v = u(rng);
    const PhiCoefficients phi = phi_taylor(a, x, 8);
    double partial = 0.0, sp = 1.0;
    for (std::size_t k = 0; k <= 8; ++k, sp *= s) partial += phi.c[k] * sp;
    const double ref = phi_value(a, x, s);
    worst_phi = std::max(worst_phi, std::abs(partial - ref) / std::max(1.0, std::abs(ref)));
  }
  rec.check(worst_phi <= 1e-14, "phi partial sums mismatch " + fmt(worst_phi));
  rec.note("worst sigma_k mismatch " + fmt(worst_sigma) + ", worst phi mismatch " + fmt(worst_phi));
}

// 7. Structural identities at stationary points and a finite-difference check of J.
inline void criterion7(Recorder& rec) {
  const auto cat = builtin_catalog();
  std::vector<std::pair<const CatalogEntry*, std::vector<StationaryFamily>>> fams;
  for (const auto& e : cat) {
    try {
      fams.push_back({&e, enumerate_stationary(e.algebra)});
    } catch (const UnsupportedCase&) {
    }
  }
  std::size_t sampled = 0;
  double worst_c = 0.0, worst_a = 0.0;
  for (std::uint64_t seed = 0; sampled < 500; ++seed) {
    for (const auto& [e, fs] : fams) {
      for (const auto& f : fs) {
        if (sampled >= 500) break;
        const Vector x = f.sample(seed);
        ++sampled;
        rec.check(is_stationary(e->algebra, x), e->name + " " + f.label + ": sample not stationary");
        const OrthonormalFrame fr = orthonormalized(e->algebra);
        const Vector xf = fr.to_frame(x, e->algebra);
        const Matrix j = linearization(fr.algebra, xf);
        const double scale = std::max(1.0, frobenius(j) * norm(xf));
        const double r = std::max(norm(j * xf), norm(j.transpose() * xf)) / scale;
        worst_c = std::max(worst_c, r);
        if (is_unimodular(e->algebra)) worst_a = std::max(worst_a, std::abs(sigma_k(j)[0]));
      }
    }
  }
  rec.check(worst_c <= 1e-10, "J_X X or J_X^t X residual " + fmt(worst_c));
  rec.check(worst_a <= 1e-12, "sigma1 on unimodular algebra " + fmt(worst_a));

  std::mt19937_64 rng(7);
  double worst_fd = 0.0;
  const double h = 1e-4;
  for (const auto& e : cat) {
    const std::size_t n = e.algebra.dim();
    for (int t = 0; t < 10; ++t) {
      const Vector x = detail::random_unit(rng, n) * 1.5;
      const Vector y = detail::random_unit(rng, n);
      const Vector fd = (euler_rhs(e.algebra, x + h * y) - euler_rhs(e.algebra, x - h * y)) / (2.0 * h);
      worst_fd = std::max(worst_fd, max_abs(fd - linearization(e.algebra, x) * y));
    }
  }
  rec.check(worst_fd <= 1e-6, "finite-difference Jacobian mismatch " + fmt(worst_fd));
  rec.note(std::to_string(sampled) + " stationary samples; worst stationarity identity residual " + fmt(worst_c) + ", worst sigma1 " +
           fmt(worst_a) + ", worst FD mismatch " + fmt(worst_fd));
}

// 8. Verdicts are invariant under orthogonal changes of basis.
inline void criterion8(Recorder& rec) {
  std::mt19937_64 rng(8);
  std::size_t compared = 0;
  for (const auto& e : builtin_catalog()) {
    for (int t = 0; t < 20; ++t) {
      const Matrix q = oracle::random_orthogonal(rng, e.algebra.dim());
      const MetricLieAlgebra conj = change_basis(e.algebra, q);
      for (const auto& lp : e.points) {
        const Vector x = q.transpose() * lp.point;
        try {
          const StabilityVerdict v = classify_point(conj, x);
          ++compared;
          rec.check(v.status == lp.expected, e.name + " " + point_str(lp.point) + " trial " + std::to_string(t) +
                                                 ": " + to_string(v.status) + " (" + v.rule + ")");
        } catch (const Error& ex) {
          rec.check(false, e.name + " trial " + std::to_string(t) + ": " + ex.what());
        }
      }
    }
  }
  rec.note(std::to_string(compared) + " conjugated verdicts compared");
}

}  // namespace acceptance

inline const std::vector<std::pair<std::string, std::function<void(acceptance::Recorder&)>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<void(acceptance::Recorder&)>>> list{
      {"centreless worked example (c1..c5 = 0, c6 = 8/5, T2.c k = 6)", acceptance::criterion1},
      {"three-dimensional catalog verdicts and probe agreement", acceptance::criterion2},
      {"four-dimensional catalog verdicts and probe agreement", acceptance::criterion3},
      {"stable and unstable witnesses exist", acceptance::criterion4},
      {"first-integral conservation and RK4 order", acceptance::criterion5},
      {"oracle equivalence for sigma_k and phi", acceptance::criterion6},
      {"structural identities and Jacobian check", acceptance::criterion7},
      {"basis invariance under orthogonal conjugation", acceptance::criterion8},
  };
  return list;
}

inline CriterionResult run_criterion(int id) {
  const auto& list = criteria();
  if (id < 1 || id > static_cast<int>(list.size())) throw DimensionError("no criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.title = list[id - 1].first;
  const auto t0 = std::chrono::steady_clock::now();
  {
    acceptance::Recorder rec(r);
    try {
      list[id - 1].second(rec);
    } catch (const std::exception& e) {
      rec.check(false, std::string("exception: ") + e.what());
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace geovec
