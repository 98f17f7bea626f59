#include <doctest.h>

#include <random>

#include "circrank/construct.hpp"
#include "circrank/error.hpp"
#include "circrank/verify.hpp"

using namespace circrank;
using nlohmann::json;

namespace {
const CheckResult& check(const VerificationReport& r, std::string_view name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::logic_error("no check named " + std::string(name));
}
}  // namespace

TEST_CASE("checks run in the documented order") {
  const auto r = verify_certificate(real_consecutive_certificate(CirculantGraph::make(5, {1})));
  std::vector<std::string> names;
  for (const auto& c : r.checks) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"nonnegative", "condition", "rebuild", "circulant", "psd", "real", "graph", "rank"});
  CHECK(r.verdict());
  CHECK(verify_certificate(consecutive_certificate(CirculantGraph::make(4, {1}))).verdict());
}

TEST_CASE("z^4+z^2+1 fails the condition at j=2") {
  CertificateBundle b;
  b.graph = CirculantGraph::make(6, {2, 3});
  b.polynomial = NonnegPolynomial(Eigen::Vector<double, 6>(1, 0, 1, 0, 1, 0));
  b.claimed_rank = 3;
  const auto r = verify_certificate(b);
  CHECK_FALSE(r.verdict());
  REQUIRE(r.first_failure());
  CHECK(r.first_failure()->name == "condition");
  CHECK(r.first_failure()->detail.find("j=2") != std::string::npos);
  // The rebuilt matrix has the wrong pattern too, consistent with the condition check.
  CHECK_FALSE(check(r, "graph").pass);
}

TEST_CASE("rank is two-sided") {
  auto b = consecutive_certificate(CirculantGraph::make(10, {1, 2, 3}));
  b.claimed_rank = 5;
  CHECK_FALSE(check(verify_certificate(b), "rank").pass);
  b.claimed_rank = 3;
  CHECK_FALSE(check(verify_certificate(b), "rank").pass);
}

TEST_CASE("balanced mode rejects an unbalanced vector") {
  auto b = consecutive_certificate(CirculantGraph::make(5, {1}));
  b.mode = Mode::RealBalanced;
  const auto r = verify_certificate(b);
  CHECK_FALSE(check(r, "condition").pass);
}

TEST_CASE("negative coefficients fail instead of throwing") {
  json j = to_json(consecutive_certificate(CirculantGraph::make(6, {1})));
  j["polynomial"]["coeffs"][0] = "-0.5";
  const auto r = verify_certificate_json(j);
  CHECK_FALSE(r.verdict());
  CHECK(r.checks.front().name == "nonnegative");
  CHECK_THROWS_AS(verify_certificate_json(json{{"graph", "C(3,{})"}}), Error);
}

TEST_CASE("JSON round trip preserves the verdict") {
  const auto b = prime_certificate(CirculantGraph::make(7, {1, 3}), 0);
  const auto back = bundle_from_json(json::parse(to_json(b).dump()));
  CHECK(back.polynomial.coeffs() == b.polynomial.coeffs());
  CHECK(back.graph == b.graph);
  CHECK(to_json(verify_certificate(back)).dump() == to_json(verify_certificate(b)).dump());
}

TEST_CASE("matrix claims") {
  const auto c = CirculantMatrix<double>::from_real_row(Eigen::Vector<double, 6>(1, 0, -2, 3, -2, 0));
  const CMatrixd m = c.realize();
  const auto g = CirculantGraph::make(6, {2, 3});
  CHECK(verify_matrix_claim(m, g, {std::nullopt, true, 3}).verdict());
  CHECK_FALSE(verify_matrix_claim(m, g, {true, std::nullopt, std::nullopt}).verdict());
  CHECK(verify_matrix_claim(m, g, {false, std::nullopt, std::nullopt}).verdict());

  const CMatrixd ones = CMatrixd::Ones(5, 5);
  CHECK(verify_matrix_claim(ones, CirculantGraph::make(5, {1, 2}), {true, true, 1}).verdict());
  CHECK_FALSE(verify_matrix_claim(CMatrixd::Identity(3, 3), CirculantGraph::make(3, {1}), {}).verdict());
  CHECK_THROWS_AS(verify_matrix_claim(ones, CirculantGraph::make(4, {1}), {}), Error);
}

TEST_CASE("perturbing one coefficient by 1e-3 is always caught") {
  std::mt19937_64 rng(99);
  std::vector<CertificateBundle> base;
  for (int n = 4; n <= 11; ++n)
    for (const auto& g : consecutive_circulants(n))
      if (!g.is_complete()) base.push_back(consecutive_certificate(g));
  for (int p : {5, 7})
    for (const auto& g : all_circulants(p))
      if (!g.is_complete()) base.push_back(prime_certificate(g));
  for (int rep = 0; rep < 200; ++rep) {
    CertificateBundle b = base[rng() % base.size()];
    Eigen::VectorXd c = b.polynomial.coeffs();
    const int i = static_cast<int>(rng() % c.size());
    c(i) += (c(i) > 1e-3 && rng() % 2) ? -1e-3 : 1e-3;
    b.polynomial = NonnegPolynomial(c);
    CHECK_FALSE(verify_certificate(b).verdict());
  }
}
