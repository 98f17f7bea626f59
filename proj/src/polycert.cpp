#include "circrank/polycert.hpp"

#include <cmath>
#include <string>

#include "circrank/error.hpp"

namespace circrank {

NonnegPolynomial::NonnegPolynomial(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 1) throw Error(ErrorKind::InvalidOrder, "polynomial needs n >= 1");
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
    if (!std::isfinite(coeffs_(i)) || coeffs_(i) < 0.0)
      throw Error(ErrorKind::NotNonnegative,
                  "coefficient of z^" + std::to_string(i) + " is " + std::to_string(coeffs_(i)));
}

int NonnegPolynomial::term_count() const { return static_cast<int>((coeffs_.array() > 0.0).count()); }

std::vector<int> NonnegPolynomial::support() const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i)
    if (coeffs_(i) > 0.0) out.push_back(i);
  return out;
}

NonnegPolynomial reduce_mod(std::span<const double> raw, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidOrder, "modulus degree must be >= 1");
  Eigen::VectorXd folded = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < raw.size(); ++i) folded(static_cast<Eigen::Index>(i % n)) += raw[i];
  return NonnegPolynomial(std::move(folded));
}

CoefficientVector ncv(const NonnegPolynomial& p) { return {p.coeffs().cwiseSqrt()}; }

NonnegPolynomial poly_of_vector(const CoefficientVector& v) {
  for (Eigen::Index i = 0; i < v.x.size(); ++i)
    if (!(v.x(i) >= 0.0))
      throw Error(ErrorKind::NotNonnegative, "coordinate " + std::to_string(i) + " is negative");
  return NonnegPolynomial(v.x.cwiseAbs2());
}

std::complex<double> eval_at_root(const NonnegPolynomial& p, long long j) {
  const int n = p.n();
  const long long jr = ((j % n) + n) % n;
  std::complex<double> acc{};
  for (int k = 0; k < n; ++k)
    if (p[k] != 0.0) acc += p[k] * root_of_unity(n, jr * k);
  return acc;
}

NonnegPolynomial multiply_mod(const NonnegPolynomial& a, const NonnegPolynomial& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::DimensionMismatch, "polynomials reduced mod different z^n - 1");
  const int n = a.n();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out((i + j) % n) += a[i] * b[j];
  return NonnegPolynomial(std::move(out));
}

NonnegPolynomial shift(const NonnegPolynomial& p, int s) {
  const int n = p.n();
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out(((i + s) % n + n) % n) = p[i];
  return NonnegPolynomial(std::move(out));
}

std::optional<int> ConditionReport::first_failure() const {
  for (const auto& r : roots)
    if (!r.ok()) return r.j;
  return std::nullopt;
}

namespace {

template <class Measure>
ConditionReport check_pattern(const NonnegPolynomial& p, const ConnectionSet& s, const Tolerance& tol, Measure measure) {
  if (s.n() != p.n())
    throw Error(ErrorKind::DimensionMismatch, "connection set and polynomial have different n");
  const double threshold = tol.zero_eps * p.value_at_one();
  ConditionReport report;
  for (int j = 1; j < p.n(); ++j) {
    RootCheck rc;
    rc.j = j;
    rc.value = eval_at_root(p, j);
    rc.measured = measure(rc.value);
    rc.threshold = threshold;
    rc.in_connection = s.contains(j);
    rc.vanishes = rc.measured < threshold || rc.measured == 0.0;
    report.holds = report.holds && rc.ok();
    report.roots.push_back(rc);
  }
  return report;
}

}  // namespace

ConditionReport check_condition_C(const NonnegPolynomial& p, const ConnectionSet& s, const Tolerance& tol) {
  return check_pattern(p, s, tol, [](std::complex<double> v) { return std::abs(v); });
}

ConditionReport check_condition_R_weight(const NonnegPolynomial& p, const ConnectionSet& s, const Tolerance& tol) {
  return check_pattern(p, s, tol, [](std::complex<double> v) { return std::abs(v.real()); });
}

std::vector<int> vanishing_set(const NonnegPolynomial& p, const Tolerance& tol) {
  const double threshold = tol.zero_eps * p.value_at_one();
  std::vector<int> out;
  for (int j = 1; j < p.n(); ++j) {
    const double m = std::abs(eval_at_root(p, j));
    if (m < threshold || m == 0.0) out.push_back(j);
  }
  return out;
}

int weight(const CoefficientVector& v) {
  const int n = v.n();
  int w = 0;
  for (int i = 0; i < n; ++i)
    if (v.x(i) != 0.0 || v.x((n - i) % n) != 0.0) ++w;
  return w;
}

bool is_balanced(const CoefficientVector& v, const Tolerance& tol) {
  const int n = v.n();
  for (int i = 1; i < n; ++i)
    if (std::abs(v.x(i) - v.x(n - i)) >= tol.zero_eps) return false;
  return true;
}

}  // namespace circrank
