#include "circrank/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "circrank/error.hpp"

namespace circrank {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

// Tableau layout: rows 0..m-1 are constraints, row m is the reduced-cost row.
// Columns 0..cols-1 are variables, column `cols` is the right-hand side.
// The objective row stores reduced costs; its rhs holds -(current objective).
class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis, const SimplexOptions& opt)
      : t_(std::move(t)), basis_(std::move(basis)), opt_(opt) {}

  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  Eigen::MatrixXd& data() { return t_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = static_cast<int>(c);
  }

  // Runs Bland's rule over columns [0, active_cols). Returns Optimal, Unbounded or NumericalFailure.
  LpStatus run(Eigen::Index active_cols, int& iterations) {
    const Eigen::Index m = rows();
    const Eigen::Index rhs = cols();
    while (true) {
      if (++iterations > opt_.max_iterations) return LpStatus::NumericalFailure;
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < active_cols; ++j)
        if (t_(m, j) < -opt_.pivot_eps) {
          enter = j;
          break;
        }
      if (enter < 0) return LpStatus::Optimal;

      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= opt_.pivot_eps) continue;
        const double ratio = t_(i, rhs) / a;
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && leave >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
      if (!t_.allFinite()) return LpStatus::NumericalFailure;
    }
  }

  void drop_row(Eigen::Index r) {
    const Eigen::Index last = t_.rows() - 1;
    for (Eigen::Index i = r; i < last; ++i) t_.row(i) = t_.row(i + 1);
    t_.conservativeResize(last, Eigen::NoChange);
    basis_.erase(basis_.begin() + r);
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  SimplexOptions opt_;
};

struct PhaseOne {
  LpStatus status;
  Tableau tableau;
  Eigen::Index vars;
  int iterations = 0;
};

PhaseOne phase_one(const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq, const SimplexOptions& opt) {
  const Eigen::Index m = a_eq.rows();
  const Eigen::Index nv = a_eq.cols();
  if (b_eq.size() != m) throw Error(ErrorKind::DimensionMismatch, "simplex: rhs size differs from row count");

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, nv + m + 1);
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b_eq(i) < 0 ? -1.0 : 1.0;
    t.row(i).head(nv) = sign * a_eq.row(i);
    t(i, nv + i) = 1.0;
    t(i, nv + m) = sign * b_eq(i);
    basis[static_cast<std::size_t>(i)] = static_cast<int>(nv + i);
  }
  // Reduced costs of the artificial-sum objective with the artificials basic.
  for (Eigen::Index i = 0; i < m; ++i) {
    t.row(m).head(nv) -= t.row(i).head(nv);
    t(m, nv + m) -= t(i, nv + m);
  }

  PhaseOne p1{LpStatus::Optimal, Tableau(std::move(t), std::move(basis), opt), nv};
  const LpStatus s = p1.tableau.run(nv + m, p1.iterations);
  if (s != LpStatus::Optimal) {
    p1.status = LpStatus::NumericalFailure;
    return p1;
  }
  auto& tab = p1.tableau.data();
  const double infeasibility = -tab(tab.rows() - 1, tab.cols() - 1);
  const double scale = std::max(1.0, b_eq.cwiseAbs().maxCoeff());
  if (infeasibility > opt.feasibility_eps * scale) {
    p1.status = LpStatus::Infeasible;
    return p1;
  }

  // Drive artificials out of the basis; rows where that is impossible are redundant.
  for (Eigen::Index r = 0; r < p1.tableau.rows();) {
    if (p1.tableau.basis()[static_cast<std::size_t>(r)] < nv) {
      ++r;
      continue;
    }
    Eigen::Index col = -1;
    double best = opt.pivot_eps;
    for (Eigen::Index j = 0; j < nv; ++j)
      if (std::abs(tab(r, j)) > best) {
        best = std::abs(tab(r, j));
        col = j;
      }
    if (col >= 0) {
      p1.tableau.pivot(r, col);
      ++r;
    } else {
      p1.tableau.drop_row(r);
    }
  }
  return p1;
}

Eigen::VectorXd extract(Tableau& tab, Eigen::Index nv) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(nv);
  auto& t = tab.data();
  for (Eigen::Index i = 0; i < tab.rows(); ++i) {
    const int b = tab.basis()[static_cast<std::size_t>(i)];
    if (b < nv) x(b) = std::max(0.0, t(i, t.cols() - 1));
  }
  return x;
}

}  // namespace

LpResult find_feasible(const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq, const SimplexOptions& options) {
  PhaseOne p1 = phase_one(a_eq, b_eq, options);
  LpResult out;
  out.status = p1.status;
  if (p1.status == LpStatus::Optimal) out.x = extract(p1.tableau, p1.vars);
  return out;
}

LpResult minimize(const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq, const Eigen::VectorXd& cost,
                  const SimplexOptions& options) {
  const Eigen::Index nv = a_eq.cols();
  if (cost.size() != nv) throw Error(ErrorKind::DimensionMismatch, "simplex: cost size differs from column count");
  PhaseOne p1 = phase_one(a_eq, b_eq, options);
  LpResult out;
  out.status = p1.status;
  if (p1.status != LpStatus::Optimal) return out;

  // Phase two: discard artificial columns, install the real objective.
  auto& tab = p1.tableau;
  Eigen::MatrixXd& t = tab.data();
  const Eigen::Index m = tab.rows();
  Eigen::MatrixXd t2(m + 1, nv + 1);
  t2.topLeftCorner(m, nv) = t.topLeftCorner(m, nv);
  t2.col(nv).head(m) = t.col(t.cols() - 1).head(m);
  t2.row(m).head(nv) = cost.transpose();
  t2(m, nv) = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const int b = tab.basis()[static_cast<std::size_t>(i)];
    const double cb = cost(b);
    if (cb != 0.0) t2.row(m) -= cb * t2.row(i);
  }
  Tableau phase2(std::move(t2), tab.basis(), options);
  int iterations = p1.iterations;
  out.status = phase2.run(nv, iterations);
  if (out.status != LpStatus::Optimal) return out;
  out.x = extract(phase2, nv);
  out.objective = cost.dot(out.x);
  return out;
}

}  // namespace circrank
