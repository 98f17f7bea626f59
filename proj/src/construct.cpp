#include "circrank/construct.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/SVD>

#include "circrank/error.hpp"

namespace circrank {

RootSet RootSet::make(int n, std::vector<int> exponents) {
  if (n < 1) throw Error(ErrorKind::InvalidOrder, "root set needs n >= 1");
  std::set<int> s(exponents.begin(), exponents.end());
  for (int j : s) {
    if (j <= 0 || j >= n)
      throw Error(ErrorKind::InvalidArgument, "root exponent " + std::to_string(j) + " outside 1.." + std::to_string(n - 1));
    if (!s.contains(n - j))
      throw Error(ErrorKind::InvalidArgument, "root set is not self-conjugate: missing " + std::to_string(n - j));
  }
  RootSet r;
  r.n_ = n;
  r.exponents_.assign(s.begin(), s.end());
  return r;
}

RootSet RootSet::complement_of(const ConnectionSet& s) {
  std::vector<int> w;
  for (int j = 1; j < s.n(); ++j)
    if (!s.contains(j)) w.push_back(j);
  return make(s.n(), std::move(w));
}

NonnegPolynomial consecutive_polynomial(int n, int k) {
  if (k < 1 || k >= n / 2)
    throw Error(ErrorKind::InvalidArgument,
                "consecutive polynomial needs 1 <= k < floor(n/2); got n=" + std::to_string(n) + ", k=" + std::to_string(k));
  // Pair (z − w^j)(z − w^{n−j}) = z² − 2cos(2πj/n) z + 1; the middle root −1 gives (z + 1).
  std::vector<double> poly{1.0};
  auto multiply = [&poly](std::initializer_list<double> factor) {
    std::vector<double> out(poly.size() + factor.size() - 1, 0.0);
    std::size_t a = 0;
    for (double f : factor) {
      for (std::size_t i = 0; i < poly.size(); ++i) out[i + a] += poly[i] * f;
      ++a;
    }
    poly = std::move(out);
  };
  for (int j = k + 1; 2 * j < n; ++j) multiply({1.0, -2.0 * root_of_unity(n, j).real(), 1.0});
  if (n % 2 == 0) multiply({1.0, 1.0});
  return reduce_mod(poly, n);
}

NonnegPolynomial shifted_real_polynomial(int n, int k) {
  if (n % 2 == 0) throw Error(ErrorKind::ParityUnsupported, "shifted real polynomial needs odd n, got " + std::to_string(n));
  return shift(consecutive_polynomial(n, k), k + (n + 1) / 2);
}

namespace {

Eigen::MatrixXd caratheodory_points(const RootSet& w) {
  const int n = w.n();
  std::vector<int> pairs;
  bool minus_one = false;
  for (int j : w.exponents()) {
    if (2 * j == n) minus_one = true;
    else if (2 * j < n) pairs.push_back(j);
  }
  const int d = static_cast<int>(w.size());
  Eigen::MatrixXd v(d, n);
  for (int i = 0; i < n; ++i) {
    int row = 0;
    if (minus_one) v(row++, i) = (i % 2 == 0) ? 1.0 : -1.0;
    for (int j : pairs) {
      const auto a = root_of_unity(n, static_cast<long long>(j) * i);
      v(row++, i) = a.real();
      v(row++, i) = a.imag();
    }
  }
  return v;
}

}  // namespace

NonnegPolynomial caratheodory_polynomial(const RootSet& w, std::span<const int> order) {
  const int n = w.n();
  if (w.size() == 0) {
    Eigen::VectorXd one = Eigen::VectorXd::Zero(n);
    one(0) = 1.0;
    return NonnegPolynomial(std::move(one));
  }
  std::vector<int> active;
  if (order.empty()) {
    active.resize(static_cast<std::size_t>(n));
    std::iota(active.begin(), active.end(), 0);
  } else {
    active.assign(order.begin(), order.end());
    std::vector<int> check = active;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < n; ++i)
      if (static_cast<int>(check.size()) != n || check[static_cast<std::size_t>(i)] != i)
        throw Error(ErrorKind::InvalidArgument, "elimination order must be a permutation of 0..n-1");
  }

  const Eigen::MatrixXd points = caratheodory_points(w);
  const int d = static_cast<int>(points.rows());
  Eigen::VectorXd b = Eigen::VectorXd::Ones(n);

  // Each step: an affine dependence λ among the first d+2 active points (Σλ_i v_i = 0, Σλ_i = 0),
  // then b ← b − tλ with t the largest step keeping b ≥ 0. One weight reaches zero per step.
  while (static_cast<int>(active.size()) > d + 1) {
    const int m = d + 2;
    Eigen::MatrixXd lifted(d + 1, m);
    for (int c = 0; c < m; ++c) {
      lifted.col(c).head(d) = points.col(active[static_cast<std::size_t>(c)]);
      lifted(d, c) = 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(lifted, Eigen::ComputeFullV);
    Eigen::VectorXd lambda = svd.matrixV().col(m - 1);
    if (lambda.maxCoeff() < -lambda.minCoeff()) lambda = -lambda;

    int hit = -1;
    double step = std::numeric_limits<double>::infinity();
    for (int c = 0; c < m; ++c) {
      if (lambda(c) <= 1e-12) continue;
      const int idx = active[static_cast<std::size_t>(c)];
      const double t = b(idx) / lambda(c);
      if (t < step || (t == step && idx < active[static_cast<std::size_t>(hit)])) {
        step = t;
        hit = c;
      }
    }
    if (hit < 0) throw Error(ErrorKind::ConstructionFailed, "Caratheodory pivot breakdown: no positive dependence");

    for (int c = 0; c < m; ++c) {
      const int idx = active[static_cast<std::size_t>(c)];
      b(idx) = (c == hit) ? 0.0 : std::max(0.0, b(idx) - step * lambda(c));
    }
    std::erase_if(active, [&b](int idx) { return b(idx) == 0.0; });
  }
  b /= b.sum();
  return NonnegPolynomial(std::move(b));
}

NonnegPolynomial caratheodory_polynomial(const RootSet& w, std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(w.n()));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return caratheodory_polynomial(w, order);
}

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

// Attempt 0 uses the natural elimination order; later attempts shuffle it.
NonnegPolynomial caratheodory_attempt(const RootSet& w, int attempt, std::uint64_t seed) {
  if (attempt == 0) return caratheodory_polynomial(w);
  return caratheodory_polynomial(w, seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace

CertificateBundle prime_certificate(const CirculantGraph& g, std::uint64_t seed) {
  const int n = g.n();
  if (!is_prime(n)) throw Error(ErrorKind::UnsupportedFamily, g.to_string() + " does not have prime order");
  const RootSet w = RootSet::complement_of(g.connection());
  const int target = n - g.degree();
  std::vector<int> last_zeros;
  for (int attempt = 0; attempt < kCaratheodoryAttempts; ++attempt) {
    NonnegPolynomial p = caratheodory_attempt(w, attempt, seed);
    if (p.term_count() == target && check_condition_C(p, g.connection()).holds) {
      CertificateBundle b;
      b.graph = g;
      b.mode = Mode::Complex;
      b.polynomial = std::move(p);
      b.claimed_rank = target;
      b.construction = {"prime", {{"attempt", attempt}, {"roots_removed", w.exponents()}}};
      b.seed = seed;
      return b;
    }
    last_zeros = vanishing_set(p);
  }
  throw Error(ErrorKind::ConstructionFailed, "prime certificate for " + g.to_string() + " failed after " +
                                                 std::to_string(kCaratheodoryAttempts) + " attempts; last vanishing set " +
                                                 join(last_zeros));
}

CertificateBundle caratheodory_certificate(const CirculantGraph& g, std::uint64_t seed) {
  const RootSet w = RootSet::complement_of(g.connection());
  std::vector<int> last_zeros;
  for (int attempt = 0; attempt < kCaratheodoryAttempts; ++attempt) {
    NonnegPolynomial p = caratheodory_attempt(w, attempt, seed);
    if (check_condition_C(p, g.connection()).holds) {
      CertificateBundle b;
      b.graph = g;
      b.mode = Mode::Complex;
      b.claimed_rank = p.term_count();
      b.polynomial = std::move(p);
      b.construction = {"caratheodory", {{"attempt", attempt}, {"roots_removed", w.exponents()}}};
      b.seed = seed;
      return b;
    }
    last_zeros = vanishing_set(p);
  }
  throw Error(ErrorKind::ConstructionFailed, "Caratheodory polynomial for " + g.to_string() +
                                                 " keeps extra zeros; last vanishing set " + join(last_zeros) +
                                                 " vs required " + join(w.exponents()));
}

namespace {

NonnegPolynomial constant_one(int n) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  c(0) = 1.0;
  return NonnegPolynomial(std::move(c));
}

int require_consecutive(const CirculantGraph& g) {
  const auto k = is_consecutive(g);
  if (!k) throw Error(ErrorKind::UnsupportedFamily, g.to_string() + " is not a consecutive circulant");
  return *k;
}

}  // namespace

CertificateBundle consecutive_certificate(const CirculantGraph& g) {
  const int k = require_consecutive(g);
  CertificateBundle b;
  b.graph = g;
  b.mode = Mode::Complex;
  b.claimed_rank = g.n() - g.degree();
  if (g.is_complete()) {
    b.polynomial = constant_one(g.n());
    b.construction = {"complete", {{"k", k}, {"lower_bound", mr_lower_bound(g)}}};
  } else {
    b.polynomial = consecutive_polynomial(g.n(), k);
    b.construction = {"consecutive", {{"k", k}, {"lower_bound", mr_lower_bound(g)}}};
  }
  return b;
}

CertificateBundle real_consecutive_certificate(const CirculantGraph& g) {
  const int k = require_consecutive(g);
  if (g.n() % 2 == 0)
    throw Error(ErrorKind::ParityUnsupported, "real consecutive certificate needs odd n; " + g.to_string());
  CertificateBundle b;
  b.graph = g;
  b.mode = Mode::RealBalanced;
  b.claimed_rank = g.n() - g.degree();
  if (g.is_complete()) {
    b.polynomial = constant_one(g.n());
    b.construction = {"complete", {{"k", k}, {"lower_bound", mr_lower_bound(g)}}};
  } else {
    b.polynomial = shifted_real_polynomial(g.n(), k);
    b.construction = {"real-consecutive", {{"k", k}, {"shift", k + (g.n() + 1) / 2}, {"lower_bound", mr_lower_bound(g)}}};
  }
  return b;
}

std::vector<CertificateBundle> rank_spectrum_consecutive(const CirculantGraph& g) {
  const int k = require_consecutive(g);
  if (g.is_complete()) throw Error(ErrorKind::UnsupportedFamily, "rank spectrum needs a non-complete graph");
  const int n = g.n();
  Eigen::VectorXd factor_coeffs = Eigen::VectorXd::Zero(n);
  factor_coeffs(0) = 2.0;
  factor_coeffs(1) = 1.0;
  const NonnegPolynomial factor(factor_coeffs);  // z + 2

  std::vector<CertificateBundle> out;
  NonnegPolynomial p = consecutive_polynomial(n, k);
  for (int m = 0; m <= 2 * k; ++m) {
    if (m > 0) p = multiply_mod(p, factor);
    CertificateBundle b;
    b.graph = g;
    b.mode = Mode::Complex;
    b.polynomial = p;
    b.claimed_rank = p.term_count();
    b.construction = {"spectrum", {{"k", k}, {"power_of_z_plus_2", m}}};
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace circrank
