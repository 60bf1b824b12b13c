#pragma once

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "geovec/algebra.hpp"
#include "geovec/classify.hpp"
#include "geovec/io.hpp"
#include "geovec/normal_forms.hpp"
#include "geovec/probe.hpp"

namespace geovec {

namespace detail {

// JSON has no inf/nan; keep them readable as strings.
inline json number_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline json vector_json(const Vector& v) {
  json a = json::array();
  for (double x : v) a.push_back(number_json(x));
  return a;
}

inline json matrix_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vector_json(m.row(r)));
  return a;
}

inline std::string point_text(const Vector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << std::setprecision(4) << v[i];
  os << ")";
  return os.str();
}

}  // namespace detail

/// Serialize with 17 significant digits.
inline std::string dump_json(const json& doc) {
  std::ostringstream os;
  os << std::setprecision(17) << doc.dump(2);
  return os.str();
}

inline json to_json(const StabilityVerdict& v) {
  json c = json::object();
  for (const auto& [k, x] : v.certificates) c[k] = detail::number_json(x);
  return {{"status", to_string(v.status)}, {"rule", v.rule}, {"marginal", v.marginal}, {"certificates", c}};
}

inline json to_json(const ValidationReport& r) {
  return {{"passed", r.passed},
          {"tolerance", r.tolerance},
          {"max_antisymmetry_residual", r.max_antisymmetry_residual},
          {"max_jacobi_residual", r.max_jacobi_residual},
          {"max_gram_asymmetry", r.max_gram_asymmetry},
          {"min_gram_eigenvalue", r.min_gram_eigenvalue},
          {"failures", r.failures}};
}

inline json to_json(const ProbeReport& r) {
  json dev = json::array();
  for (double d : r.max_deviation) dev.push_back(detail::number_json(d));
  json doc{{"point", detail::vector_json(r.point)},
           {"epsilons", r.epsilons},
           {"max_deviation", dev},
           {"verdict", to_string(r.verdict)},
           {"worst_direction", detail::vector_json(r.worst_direction)},
           {"seed", r.seed},
           {"close_factor", r.close_factor},
           {"far_threshold", r.far_threshold},
           {"horizon", r.horizon},
           {"step", r.step},
           {"directions", r.directions},
           {"notes", r.notes}};
  doc["deviation_slope"] = r.deviation_slope ? json(*r.deviation_slope) : json(nullptr);
  return doc;
}

inline void write_probe_table(std::ostream& out, const ProbeReport& r) {
  out << std::left << std::setw(12) << "eps" << std::setw(16) << "max_dev" << std::setw(16) << "max_dev/eps" << "\n";
  for (std::size_t i = 0; i < r.epsilons.size(); ++i)
    out << std::setw(12) << r.epsilons[i] << std::setw(16) << r.max_deviation[i] << std::setw(16)
        << r.max_deviation[i] / r.epsilons[i] << "\n";
  out << "verdict: " << to_string(r.verdict) << "  (close <= " << r.close_factor << " eps, far >= " << r.far_threshold
      << ", T = " << r.horizon << ", h = " << r.step << ", seed = " << r.seed << ")\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
}

inline json to_json(const AgreementReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json dev = json::array();
    for (double d : r.max_deviation) dev.push_back(detail::number_json(d));
    rows.push_back({{"entry", r.entry},
                    {"point", detail::vector_json(r.point)},
                    {"expected", to_string(r.expected)},
                    {"theorem", to_string(r.theorem)},
                    {"rule", r.rule},
                    {"probe", to_string(r.probe)},
                    {"max_deviation", dev},
                    {"deviation_slope", r.deviation_slope ? json(*r.deviation_slope) : json(nullptr)},
                    {"outcome", to_string(r.outcome)},
                    {"detail", r.detail}});
  }
  return {{"rows", rows},
          {"agree", rep.agree},
          {"disagree", rep.disagree},
          {"inconclusive", rep.inconclusive},
          {"not_applicable", rep.not_applicable},
          {"agreement_fraction", rep.fraction()}};
}

inline void write_agreement_table(std::ostream& out, const AgreementReport& rep) {
  out << std::left << std::setw(24) << "entry" << std::setw(30) << "point" << std::setw(12) << "theorem"
      << std::setw(10) << "rule" << std::setw(14) << "probe" << std::setw(14) << "outcome" << "slope\n";
  auto row_line = [&](const AgreementRow& r) {
    out << std::setw(24) << r.entry << std::setw(30) << detail::point_text(r.point) << std::setw(12)
        << to_string(r.theorem) << std::setw(10) << r.rule << std::setw(14) << to_string(r.probe) << std::setw(14)
        << to_string(r.outcome);
    if (r.deviation_slope) out << std::setprecision(3) << *r.deviation_slope << std::setprecision(6);
    out << "\n";
  };
  for (const auto& r : rep.rows)
    if (r.outcome != Outcome::Inconclusive) row_line(r);
  out << "\ninconclusive rows:\n";
  for (const auto& r : rep.rows)
    if (r.outcome == Outcome::Inconclusive) row_line(r);
  out << "\nagree " << rep.agree << ", disagree " << rep.disagree << ", inconclusive " << rep.inconclusive << ", n/a "
      << rep.not_applicable << "; agreement on decisive rows " << rep.fraction() * 100.0 << "%\n";
}

/// Detected case plus the adapted frame used by the classifier, in orthonormal
/// coordinates.
inline json normal_form_json(const MetricLieAlgebra& alg) {
  const OrthonormalFrame frame = orthonormalized(alg);
  const MetricLieAlgebra& a = frame.algebra;
  const AlgebraCase kind = detect_case(a);
  json doc{{"case", to_string(kind)},
           {"unimodular", is_unimodular(a)},
           {"biinvariant", is_biinvariant(a)},
           {"center_dim", center(a).dim()}};
  if (!a.has_identity_gram() || alg.gram() != Matrix::identity(alg.dim()))
    doc["orthonormal_basis"] = detail::matrix_json(frame.basis);
  try {
    switch (kind) {
      case AlgebraCase::Unimodular3D: {
        const MilnorFrame mf = milnor_frame(a);
        json basis = json::array();
        for (const auto& b : mf.basis) basis.push_back(detail::vector_json(b));
        doc["milnor"] = {{"lambda", mf.lambda}, {"basis", basis}};
        break;
      }
      case AlgebraCase::NonAbelian2D:
      case AlgebraCase::NonUnimodular3D:
      case AlgebraCase::Centerless4D: {
        const IdealSplit s = codim1_split(a);
        json basis = json::array();
        for (const auto& b : s.ideal_basis) basis.push_back(detail::vector_json(b));
        doc["ideal_split"] = {{"e1", detail::vector_json(s.e1)}, {"ideal_basis", basis}, {"A", detail::matrix_json(s.a)}};
        break;
      }
      case AlgebraCase::CenterOne4D: {
        const CenterSplit4D cs = center_split_4d(a);
        json basis = json::array();
        for (const auto& b : cs.m_basis) basis.push_back(detail::vector_json(b));
        doc["center_split"] = {{"e4", detail::vector_json(cs.e4)},
                               {"m_basis", basis},
                               {"S", detail::matrix_json(cs.s)},
                               {"l", detail::vector_json(cs.l)}};
        break;
      }
      default: break;
    }
  } catch (const Error& e) {
    doc["normal_form_error"] = e.what();
  }
  return doc;
}

}  // namespace geovec
