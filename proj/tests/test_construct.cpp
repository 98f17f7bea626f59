#include <doctest.h>

#include <numbers>
#include <random>

#include "circrank/construct.hpp"
#include "circrank/error.hpp"
#include "circrank/verify.hpp"
#include "oracles.hpp"

using namespace circrank;

namespace {
std::set<int> nonvanishing(const NonnegPolynomial& p) {
  return oracle::nonvanishing(std::vector<double>(p.coeffs().data(), p.coeffs().data() + p.n()));
}
std::set<int> residues(const CirculantGraph& g) { return {g.residues().begin(), g.residues().end()}; }
}  // namespace

TEST_CASE("consecutive polynomial") {
  for (int n = 3; n <= 16; ++n)
    for (int k = 1; k < n / 2; ++k) {
      std::vector<int> r;
      for (int i = 1; i <= k; ++i) r.push_back(i);
      const auto p = consecutive_polynomial(n, k);
      CHECK(p.term_count() == n - 2 * k);
      CHECK(nonvanishing(p) == residues(CirculantGraph::make(n, r)));
    }
  CHECK_THROWS_AS(consecutive_polynomial(6, 3), Error);
  CHECK_THROWS_AS(consecutive_polynomial(5, 2), Error);
  CHECK_THROWS_AS(consecutive_polynomial(6, 0), Error);
}

TEST_CASE("shifted real polynomial is balanced") {
  const auto p = shifted_real_polynomial(5, 1);
  const Eigen::Vector<double, 5> want(2 * std::cos(std::numbers::pi / 5), 1, 0, 0, 1);
  CHECK((p.coeffs() - want).cwiseAbs().maxCoeff() < 1e-12);
  for (int n = 3; n <= 15; n += 2)
    for (int k = 1; k < n / 2; ++k) CHECK(is_balanced(ncv(shifted_real_polynomial(n, k))));
  try {
    shifted_real_polynomial(6, 1);
    FAIL("even n accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParityUnsupported);
  }
}

TEST_CASE("root sets") {
  CHECK_THROWS_AS(RootSet::make(6, {1}), Error);
  CHECK_THROWS_AS(RootSet::make(6, {0}), Error);
  CHECK(RootSet::make(6, {5, 1, 3}).exponents() == std::vector<int>{1, 3, 5});
  CHECK(RootSet::complement_of(CirculantGraph::make(6, {2}).connection()).exponents() == std::vector<int>{1, 3, 5});
}

TEST_CASE("Caratheodory polynomial: vanishes on W with at most |W|+1 terms") {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 14; ++n)
    for (const auto& g : all_circulants(n)) {
      const RootSet w = RootSet::complement_of(g.connection());
      const auto p = caratheodory_polynomial(w, rng());
      CHECK(p.term_count() <= static_cast<int>(w.size()) + 1);
      const auto nv = nonvanishing(p);
      for (int j : w.exponents()) CHECK(nv.count(j) == 0);
      // For prime n a polynomial with fewer than n terms cannot vanish anywhere else.
      if (is_prime(n)) CHECK(nv == residues(g));
    }
  CHECK(caratheodory_polynomial(RootSet::make(5, {})).term_count() == 1);
}

TEST_CASE("Caratheodory order must be a permutation") {
  const auto w = RootSet::make(5, {1, 4});
  const std::vector<int> bad{0, 1, 1, 2, 3};
  CHECK_THROWS_AS(caratheodory_polynomial(w, std::span<const int>(bad)), Error);
}

TEST_CASE("prime certificate") {
  for (int p : {3, 5, 7, 11})
    for (const auto& g : all_circulants(p)) {
      const auto b = prime_certificate(g, 1);
      CHECK(b.claimed_rank == p - g.degree());
      CHECK(b.construction.name == "prime");
      CHECK(verify_certificate(b).verdict());
    }
  try {
    prime_certificate(CirculantGraph::make(6, {1}));
    FAIL("composite accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedFamily);
  }
}

TEST_CASE("consecutive certificates") {
  const auto b = consecutive_certificate(CirculantGraph::make(10, {1, 2, 3}));
  CHECK(b.claimed_rank == 4);
  CHECK(b.construction.parameters.at("k") == 3);
  CHECK(verify_certificate(b).verdict());
  CHECK(consecutive_certificate(CirculantGraph::make(6, {1, 2, 3})).claimed_rank == 1);
  CHECK(verify_certificate(consecutive_certificate(CirculantGraph::make(6, {1, 2, 3}))).verdict());
  const auto r = real_consecutive_certificate(CirculantGraph::make(9, {1, 2}));
  CHECK(r.mode == Mode::RealBalanced);
  CHECK(verify_certificate(r).verdict());
  CHECK_THROWS_AS(consecutive_certificate(CirculantGraph::make(10, {2})), Error);
}

TEST_CASE("rank spectrum covers n - |S| .. n") {
  const auto g = CirculantGraph::make(7, {1, 2});
  const auto all = rank_spectrum_consecutive(g);
  std::vector<int> ranks;
  for (const auto& b : all) {
    CHECK(verify_certificate(b).verdict());
    ranks.push_back(b.claimed_rank);
  }
  CHECK(ranks == std::vector<int>{3, 4, 5, 6, 7});
}
