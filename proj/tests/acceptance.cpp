// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "circrank/algebra.hpp"
#include "circrank/construct.hpp"
#include "circrank/polycert.hpp"
#include "circrank/search.hpp"
#include "circrank/verify.hpp"

using namespace circrank;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> body;
};

// Accumulates failures without stopping at the first one.
struct Tally {
  long long checks = 0, failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& extra = {}) const {
    std::ostringstream os;
    os << checks - failures << "/" << checks << " checks";
    if (!extra.empty()) os << ", " << extra;
    if (failures) os << "; first failure: " << first;
    return {failures == 0, os.str()};
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Eigen::VectorXd random_sparse(std::mt19937_64& rng, int n, double density) {
  std::uniform_real_distribution<double> u(0.1, 2.0), coin(0, 1);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    if (coin(rng) < density) x(i) = u(rng);
  return x;
}

// ---- 1. worked examples ----

Outcome search_pair(const char* graph, int want_c, int want_r) {
  const auto g = CirculantGraph::parse(graph);
  const auto c = min_terms_search(g, Mode::Complex);
  const auto r = min_terms_search(g, Mode::RealBalanced);
  Tally t;
  t.expect(c.k == want_c, "mscr = " + std::to_string(c.k));
  t.expect(r.k == want_r, "mscrREAL = " + std::to_string(r.k));
  t.expect(verify_certificate(c.certificate).verdict(), "complex certificate verifies");
  t.expect(verify_certificate(r.certificate).verdict(), "real certificate verifies");
  return t.outcome("mscr=" + std::to_string(c.k) + " mscrREAL=" + std::to_string(r.k));
}

Outcome rank3_matrix() {
  const auto c = CirculantMatrix<double>::from_real_row(Eigen::Vector<double, 6>(1, 0, -2, 3, -2, 0));
  const CMatrixd m = c.realize();
  MatrixClaims claims;
  claims.circulant = true;
  claims.rank = 3;
  claims.psd = false;
  Tally t;
  t.expect(verify_matrix_claim(m, CirculantGraph::parse("C(6,{2,3,4})"), claims).verdict(), "claims hold");
  std::vector<double> ev;
  for (double e : hermitian_eigenvalues(m))
    if (std::abs(e) > 1e-8) ev.push_back(e);
  std::sort(ev.begin(), ev.end());
  t.expect(ev.size() == 3, "three nonzero eigenvalues");
  if (ev.size() == 3)
    t.expect(std::abs(ev[0] + 6) < 1e-8 && std::abs(ev[1] - 6) < 1e-8 && std::abs(ev[2] - 6) < 1e-8, "eigenvalues {6,6,-6}");
  return t.outcome();
}

Outcome c10_consecutive() {
  const auto b = consecutive_certificate(CirculantGraph::parse("C(10,{1,2,3})"));
  const auto r = verify_certificate(b);
  Tally t;
  t.expect(b.claimed_rank == 4, "claimed rank 4");
  t.expect(r.verdict(), "verifies as a PSD circulant");
  return t.outcome("rank " + std::to_string(b.claimed_rank));
}

// ---- 2. theorem sweeps ----

Outcome sweep_consecutive_complex() {
  Tally t;
  for (int n = 3; n <= 14; ++n)
    for (const auto& g : consecutive_circulants(n)) {
      const int want = n - g.degree();
      const auto r = min_terms_search(g, Mode::Complex);
      t.expect(r.k == want, g.to_string() + " search k=" + std::to_string(r.k));
      t.expect(verify_certificate(r.certificate).verdict(), g.to_string() + " search certificate");
      const auto b = consecutive_certificate(g);
      t.expect(b.claimed_rank == want && verify_certificate(b).verdict(), g.to_string() + " construction");
    }
  return t.outcome();
}

Outcome sweep_prime() {
  Tally t;
  int witnesses = 0;
  for (int p : {3, 5, 7, 11, 13})
    for (const auto& g : all_circulants(p)) {
      const int want = p - g.degree();
      const auto r = min_terms_search(g, Mode::Complex);
      t.expect(r.k == want, g.to_string() + " search k=" + std::to_string(r.k));
      const auto b = prime_certificate(g, 0);
      t.expect(b.claimed_rank == want && verify_certificate(b).verdict(), g.to_string() + " prime certificate");
      // A k-term witness vanishes on at most k-1 of the p-th roots.
      for (const auto* w : {&r.certificate.polynomial, &b.polynomial}) {
        ++witnesses;
        t.expect(static_cast<int>(vanishing_set(*w).size()) <= w->term_count() - 1, g.to_string() + " term bound");
      }
    }
  return t.outcome(std::to_string(witnesses) + " witnesses checked");
}

Outcome sweep_consecutive_real() {
  Tally t;
  for (int n = 3; n <= 13; n += 2)
    for (const auto& g : consecutive_circulants(n)) {
      const auto c = min_terms_search(g, Mode::Complex);
      const auto r = min_terms_search(g, Mode::RealBalanced);
      t.expect(r.k == n - g.degree(), g.to_string() + " balanced k=" + std::to_string(r.k));
      t.expect(r.k >= c.k, g.to_string() + " monotone");
      t.expect(verify_certificate(r.certificate).verdict(), g.to_string() + " certificate");
      if (!g.is_complete()) {
        const auto b = real_consecutive_certificate(g);
        t.expect(b.claimed_rank == n - g.degree() && verify_certificate(b).verdict(), g.to_string() + " construction");
      }
    }
  return t.outcome();
}

// ---- 3. numerical suites ----

Outcome fourier_suite() {
  Tally t;
  double worst_u = 0, worst_d = 0;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 64; ++n) {
    const CMatrixd f = fourier_matrix(n);
    const double u = max_abs_entry(CMatrixd(f * f.adjoint() - CMatrixd::Identity(n, n)));
    CVectord row(n);
    for (int k = 0; k < n; ++k) row(k) = {g(rng), g(rng)};
    const double d = diagonalization_residual(CirculantMatrix<double>{row});
    worst_u = std::max(worst_u, u);
    worst_d = std::max(worst_d, d);
    t.expect(u < 1e-9, "unitarity n=" + std::to_string(n));
    t.expect(d < 1e-9, "diagonalization n=" + std::to_string(n));
  }
  return t.outcome("max unitarity residual " + fmt(worst_u) + ", max diagonalization residual " + fmt(worst_d));
}

Outcome gram_spectral_suite() {
  Tally t;
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  double worst = 0;
  for (int n = 3; n <= 16; ++n) {
    const CMatrixd f = fourier_matrix(n);
    const CMatrixd u = u_matrix(n);
    const Eigen::MatrixXd a = a_matrix(n);
    for (int rep = 0; rep < 200; ++rep) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x(i) = g(rng);
      const CMatrixd mu = gram(orbit(u, x));
      const CMatrixd ma = gram(orbit(a, x));
      Eigen::VectorXcd want_u(n), want_a(n);
      for (int j = 0; j < n; ++j) {
        want_u(j) = n * x(j) * x(j);
        want_a(j) = 0.5 * n * (x(j) * x(j) + x((n - j) % n) * x((n - j) % n));
      }
      const double scale = n * x.squaredNorm();
      const double ru = max_abs_entry(CMatrixd(f.adjoint() * mu * f - CMatrixd(want_u.asDiagonal()))) / scale;
      const double ra = max_abs_entry(CMatrixd(f.adjoint() * ma * f - CMatrixd(want_a.asDiagonal()))) / scale;
      worst = std::max({worst, ru, ra});
      t.expect(ru < 1e-8, "U-orbit identity n=" + std::to_string(n));
      t.expect(ra < 1e-8, "A-orbit identity n=" + std::to_string(n));
    }
  }
  return t.outcome("max relative residual " + fmt(worst));
}

Outcome rank_support_suite() {
  Tally t;
  std::mt19937_64 rng(3);
  for (int n = 3; n <= 16; ++n) {
    const CMatrixd u = u_matrix(n);
    const Eigen::MatrixXd a = a_matrix(n);
    for (int rep = 0; rep < 200; ++rep) {
      Eigen::VectorXd x = random_sparse(rng, n, 0.15 + 0.7 * (rep % 10) / 10.0);
      if (x.isZero()) x(rng() % n) = 1;
      int support = 0;
      for (int i = 0; i < n; ++i) support += x(i) != 0;
      t.expect(rank_with_tol(gram(orbit(u, x))) == support, "U-orbit rank n=" + std::to_string(n));
      t.expect(rank_with_tol(gram(orbit(a, x))) == weight(CoefficientVector{x}), "A-orbit rank n=" + std::to_string(n));
    }
  }
  return t.outcome();
}

Outcome real_part_suite() {
  Tally t;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int n = 3; n <= 16; ++n) {
    const CMatrixd u = u_matrix(n);
    const Eigen::MatrixXd a = a_matrix(n);
    for (int rep = 0; rep < 200; ++rep) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x(i) = g(rng);
      const double scale = x.squaredNorm();
      const CMatrixd ma = gram(orbit(a, x));
      const CMatrixd mu = gram(orbit(u, x));
      t.expect(max_abs_entry(CMatrixd(ma - CMatrixd(mu.real().cast<std::complex<double>>()))) < 1e-8 * scale,
               "A-Gram = Re(U-Gram) n=" + std::to_string(n));
      // Balance x and the two Gram matrices coincide.
      Eigen::VectorXd b(n);
      for (int i = 0; i < n; ++i) b(i) = std::abs(x(i)) + std::abs(x((n - i) % n));
      t.expect(is_balanced(CoefficientVector{b}), "balanced vector");
      t.expect(max_abs_entry(CMatrixd(gram(orbit(a, b)) - gram(orbit(u, b)))) < 1e-8 * b.squaredNorm(),
               "balanced equality n=" + std::to_string(n));
    }
  }
  return t.outcome();
}

Outcome caratheodory_suite() {
  Tally t;
  std::mt19937_64 rng(5);
  double worst = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 19);
    std::vector<int> w;
    for (int j = 1; j <= n / 2; ++j)
      if (rng() % 2) {
        w.push_back(j);
        if (n - j != j) w.push_back(n - j);
      }
    const auto roots = RootSet::make(n, w);
    const auto p = caratheodory_polynomial(roots, rng());
    t.expect(p.term_count() <= static_cast<int>(roots.size()) + 1, "term count n=" + std::to_string(n));
    double r = 0;
    for (int j : roots.exponents()) r = std::max(r, std::abs(eval_at_root(p, j)) / p.value_at_one());
    worst = std::max(worst, r);
    t.expect(r < 1e-8, "vanishing residual n=" + std::to_string(n));
  }
  return t.outcome("max residual " + fmt(worst));
}

// ---- 4. oracle cross-validation ----

Outcome oracle_suite() {
  Tally t;
  long long supports = 0, sampled = 0;
  for (int n = 3; n <= 8; ++n)
    for (const auto& g : all_circulants(n))
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) > 4) continue;
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
          if ((mask >> i) & 1u) s.push_back(i);
        bool symmetric = true;
        for (int i : s) symmetric = symmetric && ((mask >> ((n - i) % n)) & 1u);
        for (Mode mode : {Mode::Complex, Mode::RealBalanced}) {
          if (mode == Mode::RealBalanced && !symmetric) continue;
          ++supports;
          const auto o = sampling_oracle(g, s, mode, 32, mask * 131 + n);
          if (!o) continue;
          ++sampled;
          const auto v = support_feasibility(g, s, mode);
          t.expect(v.status == SupportStatus::Achieves, g.to_string() + " support mask " + std::to_string(mask));
        }
      }
  return t.outcome(std::to_string(supports) + " supports, " + std::to_string(sampled) + " with sampled witnesses");
}

// ---- 5. soundness ----

Outcome mutation_suite() {
  Tally t;
  std::mt19937_64 rng(6);
  std::vector<CertificateBundle> base;
  for (int n = 4; n <= 12; ++n)
    for (const auto& g : consecutive_circulants(n))
      if (!g.is_complete()) {
        base.push_back(consecutive_certificate(g));
        if (n % 2) base.push_back(real_consecutive_certificate(g));
      }
  for (int p : {5, 7, 11})
    for (const auto& g : all_circulants(p))
      if (!g.is_complete()) base.push_back(prime_certificate(g, 0));
  for (const auto& b : base) t.expect(verify_certificate(b).verdict(), "unmutated " + b.graph.to_string());
  for (int rep = 0; rep < 100; ++rep) {
    CertificateBundle b = base[rng() % base.size()];
    Eigen::VectorXd c = b.polynomial.coeffs();
    const int i = static_cast<int>(rng() % c.size());
    c(i) += (c(i) > 1e-3 && rng() % 2) ? -1e-3 : 1e-3;
    b.polynomial = NonnegPolynomial(c);
    t.expect(!verify_certificate(b).verdict(), "mutation of " + b.graph.to_string() + " accepted");
  }
  return t.outcome(std::to_string(base.size()) + " base certificates, 100 mutations");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1a", "C4: mscr = 2, mscrREAL = 3", 1, [] { return search_pair("C(4,{1,3})", 2, 3); }},
      {"1b", "C5: mscr = mscrREAL = 3", 1, [] { return search_pair("C(5,{1,4})", 3, 3); }},
      {"1c", "C(6,{2,3,4}): mscr = mscrREAL = 4", 5, [] { return search_pair("C(6,{2,3,4})", 4, 4); }},
      {"1d", "row (1,0,-2,3,-2,0): circulant, graph C(6,{2,3,4}), rank 3, not PSD", 1, rank3_matrix},
      {"1e", "C(10,{1,2,3}) consecutive certificate has rank 4", 1, c10_consecutive},
      {"2a", "consecutive circulants n = 3..14: complex search = n - |S|", 600, sweep_consecutive_complex},
      {"2b", "prime order p <= 13, all S: search and construction = p - |S|", 600, sweep_prime},
      {"2c", "odd consecutive n <= 13: balanced search = n - |S|", 600, sweep_consecutive_real},
      {"3a", "Fourier unitarity and circulant diagonalization, n <= 64", 60, fourier_suite},
      {"3b", "U- and A-orbit Gram spectral identities, 200 vectors per n = 3..16", 60, gram_spectral_suite},
      {"3c", "rank = support (U) and rank = weight (A), 200 sparse vectors per n", 60, rank_support_suite},
      {"3d", "A-Gram = Re(U-Gram); balanced vectors give equal Grams", 60, real_part_suite},
      {"3e", "Caratheodory on 100 random root sets, n <= 20", 60, caratheodory_suite},
      {"4", "sampling oracle witness implies LP achieves, |support| <= 4, n <= 8", 600, oracle_suite},
      {"5", "100 perturbed certificates all rejected", 60, mutation_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail += "; over time budget of " + fmt(c.budget_seconds) + " s";
    }
    failed += !o.pass;
    std::printf("[%s] %-3s %s (%s s) -- %s\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(), fmt(secs).c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
