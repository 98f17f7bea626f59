#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "circrank/algebra.hpp"
#include "circrank/graph.hpp"
#include "circrank/polycert.hpp"

namespace circrank {

/// Which vanishing condition a certificate realizes, and which orbit generator rebuilds it.
///   Complex:    p(w^j) = 0 ⟺ j ∉ S, Hermitian Gram of the U_n-orbit.
///   RealBalanced: same condition with balanced ncv(p), real Gram of the A_n-orbit.
///   RealWeight: Re p(w^j) = 0 ⟺ j ∉ S, real Gram of the A_n-orbit; rank is the weight.
enum class Mode { Complex, RealBalanced, RealWeight };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view text);

struct Construction {
  std::string name;
  nlohmann::json parameters = nlohmann::json::object();
};

struct CertificateBundle {
  CirculantGraph graph;
  Mode mode = Mode::Complex;
  NonnegPolynomial polynomial;
  int claimed_rank = 0;
  Construction construction;
  std::uint64_t seed = 0;
};

/// The orbit whose Gram matrix the certificate stands for: U_n for Complex, A_n otherwise.
Representation<std::complex<double>> representation_of(Mode mode, const NonnegPolynomial& p);

/// Gram matrix of representation_of(mode, p).
CMatrixd matrix_of(Mode mode, const NonnegPolynomial& p);

/// Rank predicted by the polynomial: term count, or weight of ncv(p) in RealWeight mode.
int predicted_rank(Mode mode, const NonnegPolynomial& p);

// Serialization. Reals are written as decimal strings with 17 significant digits;
// readers accept either strings or JSON numbers.
std::string decimal(double v);
double parse_decimal(const nlohmann::json& j);

nlohmann::json to_json(const NonnegPolynomial& p);
NonnegPolynomial polynomial_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CertificateBundle& b);
CertificateBundle bundle_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CirculantMatrix<double>& c);
CirculantMatrix<double> circulant_from_json(const nlohmann::json& j);

/// Row-major [[re, im], ...] rows.
nlohmann::json dense_to_json(const CMatrixd& m);
CMatrixd dense_from_json(const nlohmann::json& j);

}  // namespace circrank
