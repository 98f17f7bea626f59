#include "circrank/verify.hpp"

#include <cmath>

#include "circrank/error.hpp"

namespace circrank {

using nlohmann::json;

bool VerificationReport::verdict() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

namespace {

std::string graph_text(const MatrixGraph& g) {
  if (const auto* c = std::get_if<CirculantGraph>(&g)) return c->to_string();
  const auto& p = std::get<PatternReport>(g);
  return std::string("non-circulant pattern") + (p.symmetric ? "" : " (asymmetric)");
}

CheckResult graph_check(const CMatrixd& m, const CirculantGraph& expected, const Tolerance& tol) {
  const MatrixGraph found = graph_of_matrix(m, tol);
  const auto* c = std::get_if<CirculantGraph>(&found);
  CheckResult r{"graph", c && *c == expected, 0.0, tol.zero_eps, {}};
  r.detail = "expected " + expected.to_string() + ", found " + graph_text(found);
  // Residual: how far the weakest edge entry or strongest non-edge entry is from the threshold.
  const double scale = max_abs_entry(m);
  double weakest_edge = 1.0, strongest_gap = 0.0;
  if (scale > 0)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (i == j) continue;
        const double v = std::abs(m(i, j)) / scale;
        if (expected.adjacent(static_cast<int>(i), static_cast<int>(j))) weakest_edge = std::min(weakest_edge, v);
        else strongest_gap = std::max(strongest_gap, v);
      }
  r.residual = strongest_gap;
  r.detail += "; min edge entry " + decimal(weakest_edge) + ", max non-edge entry " + decimal(strongest_gap);
  return r;
}

CheckResult psd_check(const CMatrixd& m, const Tolerance& tol) {
  const auto ev = hermitian_eigenvalues(m);
  const double top = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  const double worst = ev.size() ? ev.minCoeff() : 0.0;
  CheckResult r{"psd", is_psd(m, tol), top > 0 ? std::max(0.0, -worst) / top : 0.0, tol.rank_eps, {}};
  r.detail = "min eigenvalue " + decimal(worst) + ", max |eigenvalue| " + decimal(top);
  return r;
}

CheckResult rank_check(const CMatrixd& m, int claimed, const Tolerance& tol) {
  const int rank = rank_with_tol(m, tol);
  CheckResult r{"rank", rank == claimed, static_cast<double>(std::abs(rank - claimed)), 0.0, {}};
  r.detail = "claimed " + std::to_string(claimed) + ", measured " + std::to_string(rank);
  return r;
}

CheckResult circulant_check(const CMatrixd& m, const Tolerance& tol) {
  const double dev = circulant_deviation(m);
  return {"circulant", dev <= tol.zero_eps, dev, tol.zero_eps, "max relative deviation along wrapped diagonals"};
}

}  // namespace

VerificationReport verify_certificate(const CertificateBundle& b, const Tolerance& tol) {
  tol.validate();
  VerificationReport report;
  const NonnegPolynomial& p = b.polynomial;
  if (p.n() != b.graph.n()) throw Error(ErrorKind::DimensionMismatch, "polynomial n differs from graph n");

  const double min_coeff = p.n() ? p.coeffs().minCoeff() : 0.0;
  report.checks.push_back({"nonnegative", min_coeff >= 0.0, std::max(0.0, -min_coeff), 0.0, "min coefficient " + decimal(min_coeff)});

  {
    const ConditionReport cond = b.mode == Mode::RealWeight ? check_condition_R_weight(p, b.graph.connection(), tol)
                                                            : check_condition_C(p, b.graph.connection(), tol);
    CheckResult r{"condition", cond.holds, 0.0, tol.zero_eps * p.value_at_one(), {}};
    for (const auto& rc : cond.roots)
      if (rc.in_connection == false) r.residual = std::max(r.residual, rc.measured);
    if (const auto j = cond.first_failure()) {
      const auto& rc = cond.roots[static_cast<std::size_t>(*j - 1)];
      r.detail = "fails at root j=" + std::to_string(*j) + ": |value| " + decimal(rc.measured) +
                 (rc.in_connection ? " vanishes but j is in S" : " does not vanish but j is not in S");
    } else {
      r.detail = b.mode == Mode::RealWeight ? "Re p(w^j) = 0 exactly off S" : "p(w^j) = 0 exactly off S";
    }
    if (b.mode == Mode::RealBalanced && !is_balanced(ncv(p), tol)) {
      r.pass = false;
      r.detail += "; normalized coefficient vector is not balanced";
    }
    report.checks.push_back(std::move(r));
  }

  const CMatrixd m = matrix_of(b.mode, p);
  report.checks.push_back({"rebuild", m.allFinite(), 0.0, 0.0,
                           b.mode == Mode::Complex ? "Gram matrix of the U_n-orbit of ncv(p)"
                                                   : "Gram matrix of the A_n-orbit of ncv(p)"});
  report.checks.push_back(circulant_check(m, tol));
  report.checks.push_back(psd_check(m, tol));

  if (b.mode != Mode::Complex) {
    const double scale = std::max(max_abs_entry(m), 1e-300);
    CheckResult r{"real", true, 0.0, tol.zero_eps, {}};
    if (b.mode == Mode::RealBalanced) {
      const CMatrixd mu = matrix_of(Mode::Complex, p);
      r.residual = max_abs_entry(CMatrixd(m - mu)) / scale;
      r.detail = "A_n-orbit Gram equals U_n-orbit Gram (so it is real)";
    } else {
      r.residual = max_abs_entry(Eigen::MatrixXd(m.imag())) / scale;
      r.detail = "imaginary parts of the A_n-orbit Gram";
    }
    r.pass = r.residual <= tol.zero_eps;
    report.checks.push_back(std::move(r));
  }

  report.checks.push_back(graph_check(m, b.graph, tol));
  report.checks.push_back(rank_check(m, b.claimed_rank, tol));
  return report;
}

VerificationReport verify_certificate_json(const json& j, const Tolerance& tol) {
  // Peek at raw coefficients before the typed parse, which rejects negatives.
  double min_coeff = 0.0;
  try {
    for (const auto& c : j.at("polynomial").at("coeffs")) min_coeff = std::min(min_coeff, parse_decimal(c));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("certificate bundle: ") + e.what());
  }
  if (min_coeff < 0.0) {
    VerificationReport report;
    report.checks.push_back({"nonnegative", false, -min_coeff, 0.0, "min coefficient " + decimal(min_coeff)});
    for (const char* name : {"condition", "rebuild", "circulant", "psd", "graph", "rank"})
      report.checks.push_back({name, false, 0.0, 0.0, "skipped: coefficients are not nonnegative"});
    return report;
  }
  return verify_certificate(bundle_from_json(j), tol);
}

VerificationReport verify_matrix_claim(const CMatrixd& m, const CirculantGraph& g, const MatrixClaims& claims,
                                       const Tolerance& tol) {
  tol.validate();
  if (m.rows() != g.n() || m.cols() != g.n())
    throw Error(ErrorKind::DimensionMismatch, "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                                  " but graph has " + std::to_string(g.n()) + " vertices");
  VerificationReport report;
  const double scale = std::max(max_abs_entry(m), 1e-300);
  const double herm = hermitian_residual(m) / scale;
  report.checks.push_back({"hermitian", herm <= tol.zero_eps, herm, tol.zero_eps, "max |m_ij - conj(m_ji)| / max|m|"});
  report.checks.push_back(graph_check(m, g, tol));
  if (claims.circulant) {
    CheckResult r = circulant_check(m, tol);
    if (!*claims.circulant) {
      r.pass = !r.pass;
      r.detail = "claimed NOT circulant; " + r.detail;
    }
    report.checks.push_back(std::move(r));
  }
  if (claims.psd) {
    CheckResult r = psd_check(m, tol);
    if (!*claims.psd) {
      r.pass = !r.pass;
      r.name = "not-psd";
    }
    report.checks.push_back(std::move(r));
  }
  if (claims.rank) report.checks.push_back(rank_check(m, *claims.rank, tol));
  return report;
}

json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"residual", decimal(c.residual)},
                      {"threshold", decimal(c.threshold)},
                      {"detail", c.detail}});
  return {{"verdict", r.verdict() ? "pass" : "fail"}, {"checks", checks}};
}

}  // namespace circrank
