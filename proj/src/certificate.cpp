#include "circrank/certificate.hpp"

#include <cstdio>

#include "circrank/error.hpp"

namespace circrank {

using nlohmann::json;

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Complex: return "C";
    case Mode::RealBalanced: return "R-balanced";
    case Mode::RealWeight: return "R-weight";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "C" || text == "complex") return Mode::Complex;
  if (text == "R-balanced" || text == "balanced") return Mode::RealBalanced;
  if (text == "R-weight" || text == "weight") return Mode::RealWeight;
  throw Error(ErrorKind::Parse, "unknown mode \"" + std::string(text) + "\"");
}

Representation<std::complex<double>> representation_of(Mode mode, const NonnegPolynomial& p) {
  const Eigen::VectorXd x = ncv(p).x;
  if (mode == Mode::Complex) return orbit(u_matrix(p.n()), x.cast<std::complex<double>>());
  return orbit(a_matrix(p.n()), x).cast<std::complex<double>>();
}

CMatrixd matrix_of(Mode mode, const NonnegPolynomial& p) { return gram(representation_of(mode, p)); }

int predicted_rank(Mode mode, const NonnegPolynomial& p) {
  return mode == Mode::RealWeight ? weight(ncv(p)) : p.term_count();
}

std::string decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_decimal(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "not a decimal: \"" + s + "\"");
    }
    if (used != s.size()) throw Error(ErrorKind::Parse, "not a decimal: \"" + s + "\"");
    return v;
  }
  throw Error(ErrorKind::Parse, "expected a decimal string or number");
}

json to_json(const NonnegPolynomial& p) {
  json coeffs = json::array();
  for (int i = 0; i < p.n(); ++i) coeffs.push_back(decimal(p[i]));
  return {{"n", p.n()}, {"coeffs", coeffs}};
}

NonnegPolynomial polynomial_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& c = j.at("coeffs");
    if (!c.is_array() || static_cast<int>(c.size()) != n)
      throw Error(ErrorKind::Parse, "polynomial coeffs must be an array of length n");
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = parse_decimal(c[static_cast<std::size_t>(i)]);
    return NonnegPolynomial(std::move(v));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("polynomial: ") + e.what());
  }
}

json to_json(const CertificateBundle& b) {
  return {{"graph", b.graph.to_string()},
          {"mode", std::string(to_string(b.mode))},
          {"polynomial", to_json(b.polynomial)},
          {"claimed_rank", b.claimed_rank},
          {"construction", {{"name", b.construction.name}, {"parameters", b.construction.parameters}}},
          {"seed", b.seed}};
}

CertificateBundle bundle_from_json(const json& j) {
  try {
    CertificateBundle b;
    b.graph = CirculantGraph::parse(j.at("graph").get<std::string>());
    b.mode = parse_mode(j.at("mode").get<std::string>());
    b.polynomial = polynomial_from_json(j.at("polynomial"));
    b.claimed_rank = j.at("claimed_rank").get<int>();
    if (j.contains("construction")) {
      const auto& c = j.at("construction");
      b.construction.name = c.value("name", std::string{});
      if (c.contains("parameters")) b.construction.parameters = c.at("parameters");
    }
    b.seed = j.value("seed", std::uint64_t{0});
    if (b.polynomial.n() != b.graph.n())
      throw Error(ErrorKind::Parse, "polynomial n differs from graph n");
    return b;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("certificate bundle: ") + e.what());
  }
}

namespace {

json complex_pair(std::complex<double> z) { return json::array({decimal(z.real()), decimal(z.imag())}); }

std::complex<double> complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Parse, "expected [re, im]");
  return {parse_decimal(j[0]), parse_decimal(j[1])};
}

}  // namespace

json to_json(const CirculantMatrix<double>& c) {
  json row = json::array();
  for (int k = 0; k < c.n(); ++k) row.push_back(complex_pair(c.first_row(k)));
  return {{"n", c.n()}, {"first_row", row}};
}

CirculantMatrix<double> circulant_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& row = j.at("first_row");
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw Error(ErrorKind::Parse, "first_row must have n entries");
    CirculantMatrix<double> c{CVectord(n)};
    for (int k = 0; k < n; ++k) c.first_row(k) = complex_from(row[static_cast<std::size_t>(k)]);
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("circulant: ") + e.what());
  }
}

json dense_to_json(const CMatrixd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) r.push_back(complex_pair(m(i, k)));
    rows.push_back(std::move(r));
  }
  return rows;
}

CMatrixd dense_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, "dense matrix must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  CMatrixd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = j[static_cast<std::size_t>(i)];
    if (!r.is_array() || static_cast<Eigen::Index>(r.size()) != n)
      throw Error(ErrorKind::Parse, "dense matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from(r[static_cast<std::size_t>(k)]);
  }
  return m;
}

}  // namespace circrank
