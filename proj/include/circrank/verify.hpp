#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "circrank/algebra.hpp"
#include "circrank/certificate.hpp"
#include "circrank/graph.hpp"

namespace circrank {

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool verdict() const;
  /// First failing check, if any.
  const CheckResult* first_failure() const;
};

/// Re-derives everything from (graph, mode, polynomial, claimed_rank) alone:
/// nonnegativity, vanishing condition, rebuilt Gram matrix, circulant structure, PSD,
/// realness (real modes), graph pattern, and exact rank.
VerificationReport verify_certificate(const CertificateBundle& bundle, const Tolerance& tol = {});

/// Same, starting from bundle JSON. Negative coefficients fail the nonnegativity check
/// (remaining checks are then reported as skipped) instead of raising a parse error.
VerificationReport verify_certificate_json(const nlohmann::json& bundle, const Tolerance& tol = {});

struct MatrixClaims {
  std::optional<bool> psd;
  std::optional<bool> circulant;
  std::optional<int> rank;
};

/// Checks the graph of `m` against g, Hermitian symmetry, and each requested claim.
/// Throws DimensionMismatch when m is not g.n() × g.n().
VerificationReport verify_matrix_claim(const CMatrixd& m, const CirculantGraph& g, const MatrixClaims& claims,
                                       const Tolerance& tol = {});

nlohmann::json to_json(const VerificationReport& r);

}  // namespace circrank
