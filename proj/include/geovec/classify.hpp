#pragma once

// Lyapunov stability of stationary points of the Euler equation.
//
// Rule labels:
//   L2.1.b      J_X skew-symmetric (covers J_X = 0, central X, abelian algebras)
//   R2.2        non-abelian 2-dimensional algebra: stable iff Tr ad_X <= 0
//   T1.i/T1.ii  3-dimensional: J_X = 0, or sigma2 >= 0 >= sigma1 with one strict
//   T1          3-dimensional, neither branch holds (unstable)
//   T2.a        4-dimensional unimodular, dim z >= 2: stable iff X in z
//   T2.b.i/ii/iii, T2.b   dim z = 1: J_X = 0 / sigma2 > 0 / rk J_X = 1 and <X,Z> Tr(J_X J_Z) < 0
//   T2.c        dim z = 0: X in the abelian ideal and phi_x has first nonzero
//               Taylor term of even order with positive coefficient
//   unsupported anything else

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geovec/algebra.hpp"
#include "geovec/error.hpp"
#include "geovec/euler.hpp"
#include "geovec/linalg.hpp"
#include "geovec/normal_forms.hpp"

namespace geovec {

enum class Status { Stable, Unstable, Unsupported };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Stable: return "Stable";
    case Status::Unstable: return "Unstable";
    case Status::Unsupported: return "Unsupported";
  }
  return "?";
}

struct StabilityVerdict {
  Status status = Status::Unsupported;
  std::string rule;
  std::map<std::string, double> certificates;
  bool marginal = false;  // a consulted quantity fell within 10 tau of zero
};

enum class AlgebraCase {
  Abelian,
  NonAbelian2D,
  Unimodular3D,
  NonUnimodular3D,
  CenterAtLeastTwo4D,
  CenterOne4D,
  Centerless4D,
  NonUnimodular4D,
  Unsupported,
};

inline std::string to_string(AlgebraCase c) {
  switch (c) {
    case AlgebraCase::Abelian: return "abelian";
    case AlgebraCase::NonAbelian2D: return "dim2-nonabelian";
    case AlgebraCase::Unimodular3D: return "dim3-unimodular";
    case AlgebraCase::NonUnimodular3D: return "dim3-nonunimodular";
    case AlgebraCase::CenterAtLeastTwo4D: return "dim4-unimodular-center>=2";
    case AlgebraCase::CenterOne4D: return "dim4-unimodular-center=1";
    case AlgebraCase::Centerless4D: return "dim4-unimodular-center=0";
    case AlgebraCase::NonUnimodular4D: return "dim4-nonunimodular";
    case AlgebraCase::Unsupported: return "unsupported";
  }
  return "?";
}

inline AlgebraCase detect_case(const MetricLieAlgebra& alg) {
  if (is_abelian(alg)) return AlgebraCase::Abelian;
  switch (alg.dim()) {
    case 2: return AlgebraCase::NonAbelian2D;
    case 3: return is_unimodular(alg) ? AlgebraCase::Unimodular3D : AlgebraCase::NonUnimodular3D;
    case 4: {
      if (!is_unimodular(alg)) return AlgebraCase::NonUnimodular4D;
      const std::size_t dz = center(alg).dim();
      if (dz >= 2) return AlgebraCase::CenterAtLeastTwo4D;
      return dz == 1 ? AlgebraCase::CenterOne4D : AlgebraCase::Centerless4D;
    }
    default: return AlgebraCase::Unsupported;
  }
}

namespace detail {

/// Sign tests against a tolerance band; consulting a quantity inside
/// [-10 tol, 10 tol] marks the decision marginal.
struct Band {
  bool marginal = false;

  double consult(double v, double tol) {
    if (std::abs(v) <= 10.0 * tol) marginal = true;
    return v;
  }
  bool positive(double v, double tol) { return consult(v, tol) > tol; }
  bool negative(double v, double tol) { return consult(v, tol) < -tol; }
  bool nonnegative(double v, double tol) { return consult(v, tol) >= -tol; }
  bool nonpositive(double v, double tol) { return consult(v, tol) <= tol; }
};

inline double op_scale(const Matrix& j) { return std::max(1.0, norm_inf(j)); }

}  // namespace detail

/// Three-dimensional rule on J = J_X. With `unimodular`, sigma1 is taken as
/// the structural zero Tr ad_X = 0 rather than read off J.
inline StabilityVerdict theorem1_rule(const Matrix& j, double tol, bool unimodular = false) {
  if (j.rows() != 3 || j.cols() != 3) throw DimensionError("theorem1_rule: J must be 3x3");
  StabilityVerdict v;
  v.certificates["norm_J"] = max_abs(j);
  if (max_abs(j) <= tol) {
    v.status = Status::Stable;
    v.rule = "T1.i";
    return v;
  }
  const auto s = sigma_k(j);
  const double sc = detail::op_scale(j);
  const double t1 = tol * sc, t2 = tol * sc * sc;
  const double sigma1 = unimodular ? 0.0 : s[0];
  const double sigma2 = s[1];
  v.certificates["sigma1"] = s[0];
  v.certificates["sigma2"] = sigma2;
  v.certificates["sigma3"] = s[2];
  detail::Band band;
  const bool s2_nonneg = band.nonnegative(sigma2, t2);
  const bool s2_pos = sigma2 > t2;
  bool s1_nonpos = true, s1_neg = false;
  if (!unimodular) {
    s1_nonpos = band.nonpositive(sigma1, t1);
    s1_neg = sigma1 < -t1;
  }
  const bool stable = s2_nonneg && s1_nonpos && (s2_pos || s1_neg);
  v.status = stable ? Status::Stable : Status::Unstable;
  v.rule = stable ? "T1.ii" : "T1";
  v.marginal = band.marginal;
  return v;
}

/// Four-dimensional unimodular rule. `alg` must have identity gram.
inline StabilityVerdict theorem2_rule(const MetricLieAlgebra& alg, const Vector& x) {
  detail::require_orthonormal(alg, "theorem2_rule");
  if (alg.dim() != 4 || !is_unimodular(alg))
    throw StructureError("theorem2_rule: algebra must be 4-dimensional and unimodular");
  const double tol = alg.tolerance();
  const double xnorm = norm(x);
  const Subspace z = center(alg);
  StabilityVerdict v;
  v.certificates["center_dim"] = static_cast<double>(z.dim());
  detail::Band band;

  if (z.dim() >= 2) {
    const double d = distance(alg, z, x);
    v.certificates["dist_to_center"] = d;
    const bool in_center = band.nonpositive(d, tol * xnorm) || xnorm == 0.0;
    v.status = in_center ? Status::Stable : Status::Unstable;
    v.rule = "T2.a";
    v.marginal = band.marginal && xnorm > 0.0;
    return v;
  }

  if (z.dim() == 1) {
    const CenterSplit4D cs = center_split_4d(alg);
    const Matrix j = linearization(alg, x);
    const double sc = detail::op_scale(j);
    const double t2 = tol * sc * sc;
    v.certificates["norm_J"] = max_abs(j);
    if (const auto mu = recover_mu(cs, x, tol)) v.certificates["mu"] = *mu;
    if (max_abs(j) <= tol) {
      v.status = Status::Stable;
      v.rule = "T2.b.i";
      return v;
    }
    const auto s = sigma_k(j);
    v.certificates["sigma1"] = s[0];
    v.certificates["sigma2"] = s[1];
    if (band.positive(s[1], t2)) {
      v.status = Status::Stable;
      v.rule = "T2.b.ii";
      v.marginal = band.marginal;
      return v;
    }
    const std::size_t rank = numerical_rank(j, base_tolerance());
    const Matrix jz = linearization(alg, cs.e4);
    const double product = dot(x, cs.e4) * trace(j * jz);
    v.certificates["rank_J"] = static_cast<double>(rank);
    v.certificates["xz_trace"] = product;
    const double tp = tol * sc * std::max(1.0, norm_inf(jz)) * std::max(1.0, xnorm);
    const bool rank_one = rank == 1;
    const bool negative = rank_one && band.negative(product, tp);
    v.status = negative ? Status::Stable : Status::Unstable;
    v.rule = negative ? "T2.b.iii" : "T2.b";
    v.marginal = band.marginal;
    return v;
  }

  const IdealSplit split = codim1_split(alg);
  const double x1 = dot(split.e1, x);
  v.certificates["x1"] = x1;
  v.certificates["dist_to_ideal"] = std::abs(x1);
  if (std::abs(x1) > tol * xnorm) {
    v.status = Status::Unstable;
    v.rule = "T2.c";
    return v;
  }
  if (xnorm <= tol) {
    v.status = Status::Stable;
    v.rule = "T2.c";
    v.certificates["k"] = 0;
    return v;
  }
  const Vector xa = split.ideal_coordinates(x);
  const PhiCoefficients phi = phi_taylor(split.a, xa, 6);
  for (std::size_t k = 1; k <= 6; ++k) v.certificates["c" + std::to_string(k)] = phi.c[k];
  const double tk = tol * xnorm * xnorm;
  for (std::size_t k = 2; k <= 6; ++k) {
    const double ck = band.consult(phi.c[k], tk);
    if (std::abs(ck) > tk) {
      v.certificates["k"] = static_cast<double>(k);
      v.status = (k % 2 == 0 && ck > 0.0) ? Status::Stable : Status::Unstable;
      v.rule = "T2.c";
      v.marginal = band.marginal;
      return v;
    }
  }
  // All of c_2..c_6 vanish to tolerance; c_6 > 0 is guaranteed in exact arithmetic.
  v.certificates["k"] = 6;
  v.status = Status::Stable;
  v.rule = "T2.c";
  v.marginal = true;
  return v;
}

/// Classify a stationary point (coordinates in the algebra's own basis).
inline StabilityVerdict classify_point(const MetricLieAlgebra& alg, const Vector& point) {
  detail::check_dim(alg, point, "classify_point");
  if (!is_stationary(alg, point)) throw NotStationary("classify_point: point is not stationary");
  const OrthonormalFrame frame = orthonormalized(alg);
  const MetricLieAlgebra& a = frame.algebra;
  const Vector x = frame.to_frame(point, alg);
  const double tol = a.tolerance();

  const Matrix j = linearization(a, x);
  const double trace_ad = trace(ad(a, x));
  const double skew_residual = max_abs(j + j.transpose());
  if (skew_residual <= tol * detail::op_scale(j)) {
    StabilityVerdict v{Status::Stable, "L2.1.b", {{"norm_J", max_abs(j)}, {"sym_J", skew_residual}}, false};
    v.certificates["trace_ad"] = trace_ad;
    return v;
  }

  StabilityVerdict v;
  switch (detect_case(a)) {
    case AlgebraCase::NonAbelian2D: {
      detail::Band band;
      const bool stable = band.nonpositive(trace_ad, tol * std::max(1.0, norm(x)));
      v = {stable ? Status::Stable : Status::Unstable, "R2.2", {}, band.marginal};
      break;
    }
    case AlgebraCase::Unimodular3D: v = theorem1_rule(j, tol, true); break;
    case AlgebraCase::NonUnimodular3D: v = theorem1_rule(j, tol, false); break;
    case AlgebraCase::CenterAtLeastTwo4D:
    case AlgebraCase::CenterOne4D:
    case AlgebraCase::Centerless4D: v = theorem2_rule(a, x); break;
    case AlgebraCase::Abelian:  // J = 0 is caught by the skew shortcut
    case AlgebraCase::NonUnimodular4D:
    case AlgebraCase::Unsupported: v = {Status::Unsupported, "unsupported", {}, false}; break;
  }
  v.certificates["trace_ad"] = trace_ad;
  return v;
}

// ---------------------------------------------------------------------------
// Stationary sets

enum class FamilyKind { Axis, Subspace, Cone, MuCurve, WholeSpace };

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Axis: return "axis";
    case FamilyKind::Subspace: return "subspace";
    case FamilyKind::Cone: return "cone";
    case FamilyKind::MuCurve: return "mu-curve";
    case FamilyKind::WholeSpace: return "whole-space";
  }
  return "?";
}

/// A parametrized piece of the stationary set. `basis` spans the family
/// (Axis/Subspace) or the ambient ideal (Cone); `form` is the cone's quadratic
/// form or the operator S of a mu-curve. `sample(seed)` is deterministic and
/// returns a nonzero stationary point in the algebra's coordinates.
struct StationaryFamily {
  FamilyKind kind = FamilyKind::Axis;
  std::string label;
  std::vector<Vector> basis;
  Matrix form;
  Vector offset;  // mu-curve: l
  std::vector<double> grid;  // mu-curve: sampled mu values
  std::function<Vector(std::uint64_t)> sample;
};

namespace detail {

inline double sample_radius(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.5, 2.0)(rng); }

inline Vector random_unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  for (;;) {
    Vector v(n);
    for (double& c : v) c = g(rng);
    const double len = norm(v);
    if (len > 1e-3) return v / len;
  }
}

inline std::uint64_t mix_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Span sampler: the first 2*dim seeds give +-basis vectors, later seeds random
/// combinations of random radius.
inline std::function<Vector(std::uint64_t)> span_sampler(std::vector<Vector> basis,
                                                         std::function<Vector(const Vector&)> to_original) {
  return [basis = std::move(basis), to_original = std::move(to_original)](std::uint64_t seed) {
    const std::size_t d = basis.size();
    if (seed < 2 * d) {
      const Vector v = basis[seed / 2] * ((seed % 2 == 0) ? 1.0 : -1.0);
      return to_original(v);
    }
    std::mt19937_64 rng(mix_seed(seed));
    const Vector c = random_unit(rng, d);
    Vector v(basis[0].size());
    for (std::size_t k = 0; k < d; ++k) v += c[k] * basis[k];
    v *= sample_radius(rng) / norm(v);
    return to_original(v);
  };
}

}  // namespace detail

namespace detail {

/// The zero set of the quadratic form q(u) = u^T Q u on span(basis).
inline std::optional<StationaryFamily> cone_family(const std::vector<Vector>& basis, const Matrix& q, double tol,
                                                  const std::string& label,
                                                  const std::function<Vector(const Vector&)>& to_original) {
  const std::size_t d = basis.size();
  const SymmetricEigen eig = symmetric_eigen(q);
  const double top = eig.values[0], bottom = eig.values[d - 1];
  auto embed = [basis](const Vector& coords) {
    Vector v(basis[0].size());
    for (std::size_t k = 0; k < coords.size(); ++k) v += coords[k] * basis[k];
    return v;
  };
  std::vector<Vector> orig_basis;
  for (const auto& b : basis) orig_basis.push_back(to_original(b));

  if (std::max(std::abs(top), std::abs(bottom)) <= tol) {
    StationaryFamily f{FamilyKind::Subspace, label + " (form vanishes)", orig_basis, q, {}, {}, {}};
    f.sample = span_sampler(basis, to_original);
    return f;
  }
  if (bottom > tol || top < -tol) return std::nullopt;  // definite: only the origin
  if (bottom >= -tol || top <= tol) {
    std::vector<Vector> ker;
    for (std::size_t k = 0; k < d; ++k)
      if (std::abs(eig.values[k]) <= tol) ker.push_back(embed(eig.vectors.col(k)));
    std::vector<Vector> ker_orig;
    for (const auto& v : ker) ker_orig.push_back(to_original(v));
    StationaryFamily f{ker.size() == 1 ? FamilyKind::Axis : FamilyKind::Subspace, label + " (semidefinite kernel)",
                       ker_orig, q, {}, {}, {}};
    f.sample = span_sampler(ker, to_original);
    return f;
  }
  StationaryFamily f{FamilyKind::Cone, label, orig_basis, q, {}, {}, {}};
  const Vector plus = eig.vectors.col(0), minus = eig.vectors.col(d - 1);
  f.sample = [q, plus, minus, embed, to_original, d](std::uint64_t seed) {
    std::mt19937_64 rng(mix_seed(seed));
    const Vector u = random_unit(rng, d);
    const double a = dot(u, q * u);
    const Vector w = a >= 0.0 ? minus : plus;
    const double c = dot(w, q * w), b = dot(u, q * w);
    const double disc = std::sqrt(std::max(0.0, b * b - a * c));
    const double t = (seed % 2 == 0 ? (-b + disc) : (-b - disc)) / c;
    Vector v = u + t * w;
    v *= sample_radius(rng) / norm(v);
    if ((seed / 2) % 2 == 1) v = -v;
    return to_original(embed(v));
  };
  return f;
}

}  // namespace detail

/// Number of mu grid points on [min eig S - 2, max eig S + 2].
inline constexpr std::size_t kMuGridPoints = 101;

inline std::vector<StationaryFamily> enumerate_stationary(const MetricLieAlgebra& alg) {
  const OrthonormalFrame frame = orthonormalized(alg);
  const MetricLieAlgebra& a = frame.algebra;
  const std::size_t n = a.dim();
  const double tol = a.tolerance();
  const std::function<Vector(const Vector&)> to_original = [frame](const Vector& v) { return frame.from_frame(v); };
  std::vector<StationaryFamily> out;

  auto add_span = [&](FamilyKind kind, const std::string& label, std::vector<Vector> basis) {
    std::vector<Vector> orig;
    for (const auto& b : basis) orig.push_back(to_original(b));
    StationaryFamily f{kind, label, std::move(orig), {}, {}, {}, {}};
    f.sample = detail::span_sampler(std::move(basis), to_original);
    out.push_back(std::move(f));
  };
  auto unit_basis = [n] {
    std::vector<Vector> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(Vector::unit(n, i));
    return b;
  };

  const AlgebraCase kind = detect_case(a);
  if (kind == AlgebraCase::Abelian || is_biinvariant(a)) {
    add_span(FamilyKind::WholeSpace, "every point", unit_basis());
    return out;
  }
  switch (kind) {
    case AlgebraCase::NonAbelian2D: {
      const IdealSplit s = codim1_split(a);
      add_span(FamilyKind::Axis, "normal to derived algebra", {s.e1});
      break;
    }
    case AlgebraCase::Unimodular3D: {
      const MilnorFrame mf = milnor_frame(a);
      const bool eq12 = std::abs(mf.lambda[0] - mf.lambda[1]) <= tol;
      const bool eq23 = std::abs(mf.lambda[1] - mf.lambda[2]) <= tol;
      if (eq12 && eq23) {
        add_span(FamilyKind::WholeSpace, "every point", unit_basis());
      } else if (eq23) {
        add_span(FamilyKind::Axis, "Milnor axis 1", {mf.basis[0]});
        add_span(FamilyKind::Subspace, "Milnor plane 2-3", {mf.basis[1], mf.basis[2]});
      } else if (eq12) {
        add_span(FamilyKind::Subspace, "Milnor plane 1-2", {mf.basis[0], mf.basis[1]});
        add_span(FamilyKind::Axis, "Milnor axis 3", {mf.basis[2]});
      } else {
        for (std::size_t k = 0; k < 3; ++k)
          add_span(FamilyKind::Axis, "Milnor axis " + std::to_string(k + 1), {mf.basis[k]});
      }
      break;
    }
    case AlgebraCase::NonUnimodular3D: {
      const IdealSplit s = codim1_split(a);
      std::vector<Vector> span{s.e1};
      for (const Vector& k : kernel(s.a.transpose(), base_tolerance())) span.push_back(s.from_ideal(k));
      const Subspace sub = canonical_subspace(a, span, 1e-8);
      add_span(sub.dim() == 1 ? FamilyKind::Axis : FamilyKind::Subspace, "span(e1, ker A^t)", sub.basis);
      if (auto cone = detail::cone_family(s.ideal_basis, symmetric_part(s.a), tol, "cone <Ax,x> = 0", to_original))
        out.push_back(std::move(*cone));
      break;
    }
    case AlgebraCase::CenterAtLeastTwo4D: {
      const Subspace z = center(a);
      add_span(FamilyKind::Subspace, "centre", z.basis);
      const Subspace perp = orthogonal_complement(a, derived_algebra(a));
      add_span(FamilyKind::Subspace, "orthogonal complement of g'", perp.basis);
      break;
    }
    case AlgebraCase::CenterOne4D: {
      const CenterSplit4D cs = center_split_4d(a);
      add_span(FamilyKind::Axis, "centre", {cs.e4});
      const SymmetricEigen eig = symmetric_eigen(cs.s);
      // Group eigenvalues into clusters of equal value.
      std::vector<std::vector<std::size_t>> clusters;
      for (std::size_t k = 0; k < 3; ++k) {
        if (!clusters.empty() && std::abs(eig.values[clusters.back().front()] - eig.values[k]) <= tol)
          clusters.back().push_back(k);
        else
          clusters.push_back({k});
      }
      for (const auto& cl : clusters) {
        const double lambda = eig.values[cl.front()];
        std::vector<Vector> span;
        Vector l_in(3);
        for (std::size_t k : cl) {
          const Vector v = eig.vectors.col(k);
          span.push_back(cs.from_m(v, 0.0));
          l_in += dot(v, cs.l) * v;
        }
        std::string label = "eigen-branch mu=" + format_double(lambda);
        if (norm(l_in) <= tol) {
          // (S - lambda) x = -x4 l is solvable: x = -x4 (S - lambda)^+ l plus eigenspace.
          Vector p(3);
          for (std::size_t k = 0; k < 3; ++k) {
            if (std::find(cl.begin(), cl.end(), k) != cl.end()) continue;
            const Vector v = eig.vectors.col(k);
            p -= (dot(v, cs.l) / (eig.values[k] - lambda)) * v;
          }
          Vector offset = cs.from_m(p, 1.0);
          span.push_back(offset / norm(offset));
          label += " with x4";
        }
        const Subspace sub = canonical_subspace(a, span, 1e-8);
        add_span(sub.dim() == 1 ? FamilyKind::Axis : FamilyKind::Subspace, label, sub.basis);
      }
      if (norm(cs.l) > tol) {
        StationaryFamily f{FamilyKind::MuCurve, "mu-curve x = -x4 (S - mu)^-1 l", {}, cs.s, cs.l, {}, {}};
        for (const auto& v : cs.m_basis) f.basis.push_back(to_original(v));
        f.basis.push_back(to_original(cs.e4));
        const double lo = eig.values[2] - 2.0, hi = eig.values[0] + 2.0;
        for (std::size_t g = 0; g < kMuGridPoints; ++g) {
          const double mu = lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(kMuGridPoints - 1);
          bool near = false;
          for (std::size_t k = 0; k < 3; ++k) near = near || std::abs(mu - eig.values[k]) <= tol;
          if (!near) f.grid.push_back(mu);
        }
        f.sample = [cs, grid = f.grid, to_original](std::uint64_t seed) {
          const double mu = grid[seed % grid.size()];
          const double x4 = ((seed / grid.size()) % 2 == 0) ? 1.0 : -1.0;
          const Vector x = inverse(cs.s - mu * Matrix::identity(3)) * (-x4 * cs.l);
          Vector v = cs.from_m(x, x4);
          std::mt19937_64 rng(detail::mix_seed(seed));
          v *= detail::sample_radius(rng) / norm(v);
          return to_original(v);
        };
        out.push_back(std::move(f));
      }
      break;
    }
    case AlgebraCase::Centerless4D: {
      const IdealSplit s = codim1_split(a);
      add_span(FamilyKind::Axis, "normal axis e1", {s.e1});
      if (auto cone = detail::cone_family(s.ideal_basis, symmetric_part(s.a), tol, "cone <Ax,x> = 0", to_original))
        out.push_back(std::move(*cone));
      break;
    }
    default: throw UnsupportedCase("enumerate_stationary: no stationary-set description for " + to_string(kind));
  }
  return out;
}

struct Witnesses {
  std::optional<Vector> stable;
  std::optional<Vector> unstable;
};

/// Search the stationary families for a nonzero stable point and an unstable
/// one; the unstable witness is absent only for abelian or bi-invariant algebras.
inline Witnesses find_stable_and_unstable(const MetricLieAlgebra& alg, std::size_t budget = 256) {
  const auto families = enumerate_stationary(alg);
  const bool exempt = is_abelian(alg) || is_biinvariant(alg);
  Witnesses w;
  for (std::size_t seed = 0; seed < budget; ++seed) {
    for (const auto& f : families) {
      const Vector x = f.sample(seed);
      if (norm(alg, x) <= alg.tolerance()) continue;
      const StabilityVerdict v = classify_point(alg, x);
      if (v.status == Status::Stable && !w.stable) w.stable = x;
      if (v.status == Status::Unstable && !w.unstable) w.unstable = x;
    }
    if (w.stable && (w.unstable || exempt)) break;
  }
  if (!w.stable) throw SearchExhausted("find_stable_and_unstable: no nonzero stable stationary point found");
  if (!w.unstable && !exempt) throw SearchExhausted("find_stable_and_unstable: no unstable stationary point found");
  return w;
}

}  // namespace geovec
