#pragma once

// Circulant linear algebra over complex or real scalars.
//
// Inner products are conjugate-linear in the SECOND argument:
//   <u, v> = sum_k u_k * conj(v_k),
// so the Gram matrix of the U_n-orbit of a real x has entries
//   <U^i x, U^j x> = sum_k x_k^2 * w^{k(i-j)},   w = exp(2 pi i / n).
// With this convention gram(orbit(U_n, x)) = F_n * n diag(x^2) * F_n^*, and the
// conjugate-first Gram matrix (V^* V) is F_n^* * n diag(x^2) * F_n.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "circrank/error.hpp"
#include "circrank/graph.hpp"

namespace circrank {

template <class Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <class Real>
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CMatrixd = CMatrix<double>;
using CVectord = CVector<double>;

/// A representation is stored column-wise: column i is the vector assigned to vertex i.
template <class Scalar>
using Representation = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct Tolerance {
  double zero_eps = 1e-9;  // absolute, applied after normalizing to max|entry| = 1
  double rank_eps = 1e-9;  // relative to the largest eigenvalue magnitude

  void validate() const {
    if (!(zero_eps >= 0.0) || !(rank_eps >= 0.0))
      throw Error(ErrorKind::InvalidArgument, "tolerances must be nonnegative");
  }
};

/// w^k with w = exp(2 pi i / n); k is reduced mod n first so large exponents stay accurate.
template <class Real = double>
std::complex<Real> root_of_unity(int n, long long k) {
  const long long m = ((k % n) + n) % n;
  if (m == 0) return {Real(1), Real(0)};
  if (2 * m == n) return {Real(-1), Real(0)};
  if (4 * m == n) return {Real(0), Real(1)};
  if (4 * m == 3LL * n) return {Real(0), Real(-1)};
  const Real theta = Real(2) * std::numbers::pi_v<Real> * Real(m) / Real(n);
  return {std::cos(theta), std::sin(theta)};
}

/// (F_n)_{ij} = w^{ij} / sqrt(n).
template <class Real = double>
CMatrix<Real> fourier_matrix(int n) {
  CMatrix<Real> f(n, n);
  const Real scale = Real(1) / std::sqrt(Real(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f(i, j) = scale * root_of_unity<Real>(n, static_cast<long long>(i) * j);
  return f;
}

/// U_n = diag(1, w, ..., w^{n-1}).
template <class Real = double>
CMatrix<Real> u_matrix(int n) {
  CMatrix<Real> u = CMatrix<Real>::Zero(n, n);
  for (int i = 0; i < n; ++i) u(i, i) = root_of_unity<Real>(n, i);
  return u;
}

/// Real analogue of U_n: 1 at (0,0), the rotation by 2j pi/n on indices {j, n-j}
/// for 1 <= j < n/2, and -1 at (n/2, n/2) when n is even.
template <class Real = double>
RMatrix<Real> a_matrix(int n) {
  RMatrix<Real> a = RMatrix<Real>::Zero(n, n);
  a(0, 0) = Real(1);
  for (int j = 1; 2 * j < n; ++j) {
    const auto w = root_of_unity<Real>(n, j);
    a(j, j) = w.real();
    a(j, n - j) = -w.imag();
    a(n - j, j) = w.imag();
    a(n - j, n - j) = w.real();
  }
  if (n % 2 == 0 && n >= 2) a(n / 2, n / 2) = Real(-1);
  return a;
}

/// Columns x, Gx, G^2 x, ..., G^{n-1} x where n = gen.rows().
template <class Derived, class VecDerived>
Representation<typename Derived::Scalar> orbit(const Eigen::MatrixBase<Derived>& gen,
                                               const Eigen::MatrixBase<VecDerived>& x) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = gen.rows();
  if (gen.cols() != n || x.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "orbit generator and vector sizes differ");
  Representation<Scalar> out(n, n);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = x.template cast<Scalar>();
  for (Eigen::Index i = 0; i < n; ++i) {
    out.col(i) = v;
    v = gen * v;
  }
  return out;
}

/// Gram matrix with entry (i,j) = <v_i, v_j> (conjugate on the second argument).
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> gram(const Eigen::MatrixBase<Derived>& rep) {
  return rep.transpose() * rep.conjugate();
}

/// Gram matrix of a list of vectors; throws DimensionMismatch when sizes differ.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gram(std::span<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> vectors) {
  if (vectors.empty()) return {};
  const Eigen::Index dim = vectors.front().size();
  Representation<Scalar> rep(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim)
      throw Error(ErrorKind::DimensionMismatch, "representation vectors have different dimensions");
    rep.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return gram(rep);
}

/// Circulant matrix given by its first row: entry (i,j) = first_row[(j - i) mod n].
template <class Real = double>
struct CirculantMatrix {
  CVector<Real> first_row;

  int n() const { return static_cast<int>(first_row.size()); }

  CMatrix<Real> realize() const {
    const int m = n();
    CMatrix<Real> out(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out(i, j) = first_row(((j - i) % m + m) % m);
    return out;
  }

  bool is_hermitian(Real eps = Real(1e-12)) const {
    const int m = n();
    for (int k = 0; k < m; ++k)
      if (std::abs(first_row(k) - std::conj(first_row((m - k) % m))) > eps) return false;
    return true;
  }

  template <class Derived>
  static CirculantMatrix from_real_row(const Eigen::MatrixBase<Derived>& row) {
    return CirculantMatrix{row.template cast<std::complex<Real>>()};
  }
};

/// Diagonal of F_n^* C F_n in index order: lambda_j = sum_k c_k w^{jk}.
template <class Real>
CVector<Real> diagonalize_circulant(const CirculantMatrix<Real>& c) {
  const int n = c.n();
  CVector<Real> out(n);
  for (int j = 0; j < n; ++j) {
    std::complex<Real> acc{};
    for (int k = 0; k < n; ++k) acc += c.first_row(k) * root_of_unity<Real>(n, static_cast<long long>(j) * k);
    out(j) = acc;
  }
  return out;
}

/// max |off-diagonal entry of F^* C F| / max(1, max|C_ij|).
template <class Real>
Real diagonalization_residual(const CirculantMatrix<Real>& c) {
  const int n = c.n();
  const CMatrix<Real> f = fourier_matrix<Real>(n);
  CMatrix<Real> d = f.adjoint() * c.realize() * f;
  d.diagonal().setZero();
  const Real scale = std::max(Real(1), c.first_row.cwiseAbs().maxCoeff());
  return d.cwiseAbs().maxCoeff() / scale;
}

template <class Derived>
auto max_abs_entry(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  return m.size() == 0 ? Real(0) : Real(m.cwiseAbs().maxCoeff());
}

/// max |m_ij - conj(m_ji)|.
template <class Derived>
auto hermitian_residual(const Eigen::MatrixBase<Derived>& m) {
  return max_abs_entry(m - m.adjoint());
}

/// Largest deviation of an entry from the first-row value on its wrapped diagonal,
/// relative to max|entry| (0 for the zero matrix).
template <class Derived>
auto circulant_deviation(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  const Eigen::Index n = m.rows();
  const Real scale = max_abs_entry(m);
  if (scale == Real(0)) return Real(0);
  Real worst(0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) worst = std::max<Real>(worst, std::abs(m(i, j) - m(0, ((j - i) % n + n) % n)));
  return worst / scale;
}

/// Eigenvalues (ascending) of a Hermitian matrix; only the lower triangle is read.
template <class Derived>
auto hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() == 0) return RVector<Real>();
  Eigen::SelfAdjointEigenSolver<Mat> solver(Mat(m), Eigen::EigenvaluesOnly);
  return RVector<Real>(solver.eigenvalues());
}

template <class Derived>
int rank_with_tol(const Eigen::MatrixBase<Derived>& m, const Tolerance& tol = {}) {
  const auto ev = hermitian_eigenvalues(m);
  if (ev.size() == 0) return 0;
  const auto top = ev.cwiseAbs().maxCoeff();
  if (top == 0) return 0;
  return static_cast<int>((ev.array().abs() > tol.rank_eps * top).count());
}

template <class Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& m, const Tolerance& tol = {}) {
  const auto ev = hermitian_eigenvalues(m);
  if (ev.size() == 0) return true;
  const auto top = ev.cwiseAbs().maxCoeff();
  return ev.minCoeff() >= -tol.rank_eps * top;
}

/// Off-diagonal zero/nonzero pattern that is not the pattern of a circulant graph.
struct PatternReport {
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> adjacency;
  bool symmetric = true;
};

using MatrixGraph = std::variant<CirculantGraph, PatternReport>;

/// Graph of a matrix: {i,j} is an edge iff |a_ij| > zero_eps after scaling so max|entry| = 1.
template <class Derived>
MatrixGraph graph_of_matrix(const Eigen::MatrixBase<Derived>& m, const Tolerance& tol = {}) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n || n == 0) throw Error(ErrorKind::DimensionMismatch, "graph_of_matrix needs a nonempty square matrix");
  const auto scale = max_abs_entry(m);
  PatternReport pattern;
  pattern.adjacency.setConstant(n, n, false);
  if (scale > 0)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) pattern.adjacency(i, j) = std::abs(m(i, j)) / scale > tol.zero_eps;

  pattern.symmetric = (pattern.adjacency == pattern.adjacency.transpose()).all();
  bool circulant = pattern.symmetric;
  for (Eigen::Index i = 0; circulant && i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (pattern.adjacency(i, j) != pattern.adjacency(0, ((j - i) % n + n) % n)) {
        circulant = false;
        break;
      }
  if (!circulant) return pattern;

  std::vector<int> residues;
  for (Eigen::Index d = 1; d < n; ++d)
    if (pattern.adjacency(0, d)) residues.push_back(static_cast<int>(d));
  return CirculantGraph::make(static_cast<int>(n), residues);
}

}  // namespace circrank
