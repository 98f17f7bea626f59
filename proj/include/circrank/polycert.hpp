#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "circrank/algebra.hpp"
#include "circrank/graph.hpp"

namespace circrank {

/// Polynomial with nonnegative real coefficients, stored reduced mod z^n − 1:
/// coeffs(i) is the coefficient of z^i, i = 0..n−1.
class NonnegPolynomial {
 public:
  NonnegPolynomial() = default;
  /// Throws NotNonnegative if any coefficient is negative or not finite.
  explicit NonnegPolynomial(Eigen::VectorXd coeffs);

  int n() const noexcept { return static_cast<int>(coeffs_.size()); }
  const Eigen::VectorXd& coeffs() const noexcept { return coeffs_; }
  double operator[](int i) const { return coeffs_(i); }

  int term_count() const;
  std::vector<int> support() const;
  double value_at_one() const { return coeffs_.sum(); }
  bool is_zero() const { return term_count() == 0; }

 private:
  Eigen::VectorXd coeffs_;
};

/// Normalized coefficient vector: coordinatewise square root of the coefficients.
struct CoefficientVector {
  Eigen::VectorXd x;
  int n() const noexcept { return static_cast<int>(x.size()); }
};

/// Folds coefficients of any degree: coeffs[i] = Σ_k raw[i + kn].
NonnegPolynomial reduce_mod(std::span<const double> raw, int n);

CoefficientVector ncv(const NonnegPolynomial& p);

/// Inverse of ncv. Throws NotNonnegative on a negative coordinate.
NonnegPolynomial poly_of_vector(const CoefficientVector& v);

/// p(w^j) = Σ_k coeffs[k] w^{jk}.
std::complex<double> eval_at_root(const NonnegPolynomial& p, long long j);

/// Product of two polynomials, reduced mod z^n − 1 (both must share n).
NonnegPolynomial multiply_mod(const NonnegPolynomial& a, const NonnegPolynomial& b);

/// Cyclic shift: z^s p(z) mod z^n − 1.
NonnegPolynomial shift(const NonnegPolynomial& p, int s);

/// One root's diagnostic for a vanishing-pattern check.
struct RootCheck {
  int j = 0;
  std::complex<double> value;  // p(w^j)
  double measured = 0.0;       // |p(w^j)| or |Re p(w^j)|
  double threshold = 0.0;      // zero_eps * p(1)
  bool in_connection = false;  // j ∈ S
  bool vanishes = false;
  bool ok() const { return vanishes != in_connection; }
};

struct ConditionReport {
  bool holds = true;
  std::vector<RootCheck> roots;  // j = 1..n−1

  /// Smallest j whose check failed.
  std::optional<int> first_failure() const;
};

/// p(w^j) = 0 ⟺ j ∉ S for every j = 1..n−1.
ConditionReport check_condition_C(const NonnegPolynomial& p, const ConnectionSet& s, const Tolerance& tol = {});

/// Re p(w^j) = 0 ⟺ j ∉ S for every j = 1..n−1.
ConditionReport check_condition_R_weight(const NonnegPolynomial& p, const ConnectionSet& s, const Tolerance& tol = {});

/// Exponents j ∈ {1..n−1} with |p(w^j)| below zero_eps · p(1).
std::vector<int> vanishing_set(const NonnegPolynomial& p, const Tolerance& tol = {});

/// |{i : i ∈ supp(x) or n−i ∈ supp(x)}|.
int weight(const CoefficientVector& v);

/// x_i = x_{n−i} for i = 1..n−1, within zero_eps.
bool is_balanced(const CoefficientVector& v, const Tolerance& tol = {});

}  // namespace circrank
