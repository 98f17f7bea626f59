#include "circrank/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/SVD>

#include "circrank/error.hpp"

namespace circrank {

using nlohmann::json;

std::string_view to_string(SupportStatus s) {
  switch (s) {
    case SupportStatus::Achieves: return "achieves";
    case SupportStatus::Infeasible: return "infeasible";
    case SupportStatus::ForcedVanishing: return "forced-vanishing";
    case SupportStatus::Undetermined: return "undetermined";
  }
  return "?";
}

bool satisfies_mode(const NonnegPolynomial& p, const CirculantGraph& g, Mode mode, const Tolerance& tol) {
  if (p.is_zero()) return false;
  switch (mode) {
    case Mode::Complex: return check_condition_C(p, g.connection(), tol).holds;
    case Mode::RealBalanced: return is_balanced(ncv(p), tol) && check_condition_C(p, g.connection(), tol).holds;
    case Mode::RealWeight: return check_condition_R_weight(p, g.connection(), tol).holds;
  }
  return false;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t support_seed(std::uint64_t seed, const std::vector<int>& support) {
  std::uint64_t h = splitmix64(seed);
  for (int i : support) h = splitmix64(h ^ static_cast<std::uint64_t>(i + 1));
  return h;
}

void validate_support(int n, const std::vector<int>& support, Mode mode) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] >= n)
      throw Error(ErrorKind::InvalidArgument, "support index " + std::to_string(support[i]) + " outside 0..n-1");
    if (i && support[i] <= support[i - 1])
      throw Error(ErrorKind::InvalidArgument, "support must be strictly increasing");
  }
  if (mode == Mode::RealBalanced)
    for (int i : support)
      if (!std::binary_search(support.begin(), support.end(), (n - i) % n))
        throw Error(ErrorKind::InvalidArgument, "balanced-mode support must be closed under i -> n-i");
}

// Equalities p(w^j) = 0 (or Re p(w^j) = 0) for one j from each conjugate pair outside S,
// plus b_i = b_{n−i} in balanced mode. Columns follow `support`.
Eigen::MatrixXd vanishing_rows(const CirculantGraph& g, const std::vector<int>& support, Mode mode) {
  const int n = g.n();
  const auto m = static_cast<Eigen::Index>(support.size());
  std::vector<Eigen::RowVectorXd> rows;
  for (int j = 1; 2 * j <= n; ++j) {
    if (g.connection().contains(j)) continue;
    Eigen::RowVectorXd re(m), im(m);
    for (Eigen::Index c = 0; c < m; ++c) {
      const auto w = root_of_unity(n, static_cast<long long>(j) * support[static_cast<std::size_t>(c)]);
      re(c) = w.real();
      im(c) = w.imag();
    }
    rows.push_back(re);
    if (mode != Mode::RealWeight && 2 * j != n) rows.push_back(im);
  }
  if (mode == Mode::RealBalanced) {
    for (Eigen::Index c = 0; c < m; ++c) {
      const int i = support[static_cast<std::size_t>(c)];
      const int mirror = (n - i) % n;
      if (i >= mirror) continue;
      const auto it = std::lower_bound(support.begin(), support.end(), mirror);
      Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(m);
      r(c) = 1.0;
      r(it - support.begin()) = -1.0;
      rows.push_back(r);
    }
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m);
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = rows[r];
  return out;
}

NonnegPolynomial expand(int n, const std::vector<int>& support, const Eigen::VectorXd& b) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  const double total = b.sum();
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double v = b(static_cast<Eigen::Index>(i)) / total;
    c(support[i]) = v > 1e-12 ? v : 0.0;
  }
  return NonnegPolynomial(std::move(c));
}

}  // namespace

SupportVerdict support_feasibility(const CirculantGraph& g, const std::vector<int>& support, Mode mode,
                                   const SearchOptions& options) {
  const int n = g.n();
  validate_support(n, support, mode);
  SupportVerdict verdict;
  verdict.support = support;
  if (support.empty()) {
    verdict.status = SupportStatus::Infeasible;
    verdict.note = "empty support";
    return verdict;
  }

  const auto m = static_cast<Eigen::Index>(support.size());
  const Eigen::MatrixXd vanish = vanishing_rows(g, support, mode);
  Eigen::MatrixXd a(vanish.rows() + 1, m);
  a.row(0).setOnes();
  a.bottomRows(vanish.rows()) = vanish;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(a.rows());
  rhs(0) = 1.0;

  const LpResult feasible = find_feasible(a, rhs, options.lp);
  if (feasible.status == LpStatus::Infeasible) {
    verdict.status = SupportStatus::Infeasible;
    return verdict;
  }
  if (feasible.status != LpStatus::Optimal) {
    verdict.note = std::string("phase one: ") + to_string(feasible.status);
    return verdict;
  }

  std::vector<Eigen::VectorXd> points{feasible.x};
  const double eps = options.tol.zero_eps;
  bool forced = false;
  for (int j = 1; 2 * j <= n; ++j) {
    if (!g.connection().contains(j)) continue;
    Eigen::VectorXd re(m), im(m);
    for (Eigen::Index c = 0; c < m; ++c) {
      const auto w = root_of_unity(n, static_cast<long long>(j) * support[static_cast<std::size_t>(c)]);
      re(c) = w.real();
      im(c) = w.imag();
    }
    RootOptimum opt;
    opt.j = j;
    auto optimize = [&](const Eigen::VectorXd& objective, double sign, double& slot) -> bool {
      const LpResult r = minimize(a, rhs, sign * objective, options.lp);
      if (r.status != LpStatus::Optimal) {
        verdict.note = "root " + std::to_string(j) + ": " + to_string(r.status);
        return false;
      }
      slot = objective.dot(r.x);
      points.push_back(r.x);
      return true;
    };
    if (!optimize(re, -1.0, opt.re_max) || !optimize(re, 1.0, opt.re_min)) return verdict;
    const bool check_imag = mode != Mode::RealWeight && 2 * j != n;
    if (check_imag && (!optimize(im, -1.0, opt.im_max) || !optimize(im, 1.0, opt.im_min))) return verdict;
    verdict.diagnostics.push_back(opt);
    const bool re_zero = opt.re_max < eps && opt.re_min > -eps;
    const bool im_zero = !check_imag || (opt.im_max < eps && opt.im_min > -eps);
    if (re_zero && im_zero) forced = true;
  }
  if (forced) {
    verdict.status = SupportStatus::ForcedVanishing;
    return verdict;
  }

  std::mt19937_64 rng(support_seed(options.seed, support));
  std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
  for (int attempt = 0; attempt < options.witness_retries; ++attempt) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    for (const auto& pt : points) b += weight_dist(rng) * pt;
    NonnegPolynomial p = expand(n, support, b);
    if (satisfies_mode(p, g, mode, options.tol)) {
      verdict.status = SupportStatus::Achieves;
      verdict.witness = std::move(p);
      return verdict;
    }
  }
  verdict.note = "no witness passed the condition check after " + std::to_string(options.witness_retries) + " draws";
  return verdict;
}

namespace {

void combinations(int n, int k, int first, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == k) {
    out.push_back(current);
    return;
  }
  for (int i = first; i <= n - (k - static_cast<int>(current.size())); ++i) {
    current.push_back(i);
    combinations(n, k, i + 1, current, out);
    current.pop_back();
  }
}

// Orbits of i ↦ n−i on {0..n−1}.
std::vector<std::vector<int>> mirror_orbits(int n) {
  std::vector<std::vector<int>> orbits{{0}};
  for (int j = 1; 2 * j < n; ++j) orbits.push_back({j, n - j});
  if (n % 2 == 0 && n >= 2) orbits.push_back({n / 2});
  return orbits;
}

}  // namespace

std::vector<std::vector<int>> supports_at_level(int n, int k, Mode mode) {
  std::vector<std::vector<int>> out;
  if (k < 1 || k > n) return out;
  if (mode == Mode::Complex) {
    std::vector<int> current{0};
    combinations(n, k, 1, current, out);
    return out;
  }
  const auto orbits = mirror_orbits(n);
  const auto count = orbits.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << count); ++mask) {
    int size = 0;
    for (std::size_t o = 0; o < count; ++o)
      if (mask & (std::size_t{1} << o)) size += static_cast<int>(orbits[o].size());
    if (size != k) continue;
    if (mode == Mode::RealBalanced) {
      std::vector<int> s;
      for (std::size_t o = 0; o < count; ++o)
        if (mask & (std::size_t{1} << o)) s.insert(s.end(), orbits[o].begin(), orbits[o].end());
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
      continue;
    }
    // Weight mode: each chosen pair orbit contributes {j}, {n−j} or both.
    std::vector<std::vector<int>> partial{{}};
    for (std::size_t o = 0; o < count; ++o) {
      if (!(mask & (std::size_t{1} << o))) continue;
      std::vector<std::vector<int>> choices;
      if (orbits[o].size() == 1) choices = {orbits[o]};
      else choices = {{orbits[o][0]}, {orbits[o][1]}, orbits[o]};
      std::vector<std::vector<int>> next;
      for (const auto& base : partial)
        for (const auto& c : choices) {
          auto s = base;
          s.insert(s.end(), c.begin(), c.end());
          next.push_back(std::move(s));
        }
      partial = std::move(next);
    }
    for (auto& s : partial) {
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<SupportVerdict> evaluate_batch(const CirculantGraph& g, const std::vector<std::vector<int>>& supports,
                                           std::size_t begin, std::size_t end, Mode mode, const SearchOptions& options) {
  std::vector<SupportVerdict> out(end - begin);
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1 || end - begin < 2) {
    for (std::size_t i = begin; i < end; ++i) out[i - begin] = support_feasibility(g, supports[i], mode, options);
    return out;
  }
  std::atomic<std::size_t> next{begin};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < end; i = next++) {
      try {
        out[i - begin] = support_feasibility(g, supports[i], mode, options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

SearchResult min_terms_search(const CirculantGraph& g, Mode mode, const SearchOptions& options) {
  const int n = g.n();
  if (n > options.cap)
    throw Error(ErrorKind::CapExceeded, g.to_string() + " exceeds the search cap n <= " + std::to_string(options.cap));
  SearchResult result;
  result.graph = g;
  result.mode = mode;
  bool undetermined_below = false;
  const std::size_t batch = static_cast<std::size_t>(std::max(32, 8 * std::max(1, options.jobs)));

  for (int k = 1; k <= n; ++k) {
    const auto supports = supports_at_level(n, k, mode);
    bool undetermined_here = false;
    for (std::size_t begin = 0; begin < supports.size(); begin += batch) {
      const std::size_t end = std::min(supports.size(), begin + batch);
      auto verdicts = evaluate_batch(g, supports, begin, end, mode, options);
      for (std::size_t i = 0; i < verdicts.size(); ++i) {
        ++result.supports_examined;
        auto& v = verdicts[i];
        if (v.status == SupportStatus::Undetermined) {
          undetermined_here = true;
          result.notes.push_back("undetermined support at k=" + std::to_string(k) + ": " + v.note);
        }
        if (v.status != SupportStatus::Achieves) continue;

        result.k = k;
        result.certified_optimal = !undetermined_below;
        const int rank = predicted_rank(mode, *v.witness);
        if (rank != k) {
          result.certified_optimal = false;
          result.notes.push_back("witness rank " + std::to_string(rank) + " differs from level " + std::to_string(k));
        }
        CertificateBundle& cert = result.certificate;
        cert.graph = g;
        cert.mode = mode;
        cert.polynomial = std::move(*v.witness);
        cert.claimed_rank = rank;
        cert.construction = {"search", {{"support", v.support}, {"supports_examined", result.supports_examined}}};
        cert.seed = options.seed;
        if (options.progress) options.progress({k, result.supports_examined, true});
        return result;
      }
    }
    undetermined_below = undetermined_below || undetermined_here;
    if (options.progress) options.progress({k, result.supports_examined, false});
  }
  throw Error(ErrorKind::Internal, "no certificate found for " + g.to_string() + " up to k = n");
}

std::optional<NonnegPolynomial> sampling_oracle(const CirculantGraph& g, const std::vector<int>& support, Mode mode,
                                                int samples, std::uint64_t seed, const Tolerance& tol) {
  const int n = g.n();
  validate_support(n, support, mode);
  if (support.empty()) return std::nullopt;
  const auto m = static_cast<Eigen::Index>(support.size());

  // Equations built directly from the vanishing pattern, without pair reduction.
  std::vector<Eigen::RowVectorXd> rows;
  for (int j = 1; j < n; ++j) {
    if (g.connection().contains(j)) continue;
    Eigen::RowVectorXd re(m), im(m);
    for (Eigen::Index c = 0; c < m; ++c) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) * support[static_cast<std::size_t>(c)] / n;
      re(c) = std::cos(theta);
      im(c) = std::sin(theta);
    }
    rows.push_back(re);
    if (mode != Mode::RealWeight) rows.push_back(im);
  }
  if (mode == Mode::RealBalanced)
    for (Eigen::Index c = 0; c < m; ++c)
      for (Eigen::Index d = 0; d < m; ++d)
        if (c < d && (support[static_cast<std::size_t>(c)] + support[static_cast<std::size_t>(d)]) % n == 0) {
          Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(m);
          r(c) = 1.0;
          r(d) = -1.0;
          rows.push_back(r);
        }

  Eigen::MatrixXd basis;
  if (rows.empty()) {
    basis = Eigen::MatrixXd::Identity(m, m);
  } else {
    Eigen::MatrixXd e(static_cast<Eigen::Index>(rows.size()), m);
    for (std::size_t r = 0; r < rows.size(); ++r) e.row(static_cast<Eigen::Index>(r)) = rows[r];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-9 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cutoff) ++rank;
    if (rank == m) return std::nullopt;
    basis = svd.matrixV().rightCols(m - rank);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd coeffs(basis.cols());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = gauss(rng);
    Eigen::VectorXd y = basis * coeffs;
    if (y.sum() < 0) y = -y;
    const double scale = y.cwiseAbs().maxCoeff();
    if (scale == 0.0 || y.minCoeff() < -1e-12 * scale) continue;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) c(support[static_cast<std::size_t>(i)]) = std::max(0.0, y(i)) / y.sum();
    NonnegPolynomial p(std::move(c));
    if (satisfies_mode(p, g, mode, tol)) return p;
  }
  return std::nullopt;
}

ParameterReport parameter_report(const CirculantGraph& g, const SearchOptions& options) {
  ParameterReport r;
  r.graph = g;
  const SearchResult complex = min_terms_search(g, Mode::Complex, options);
  const SearchResult balanced = min_terms_search(g, Mode::RealBalanced, options);
  r.mscr = complex.k;
  r.mscr_real = balanced.k;
  r.certified_optimal = complex.certified_optimal && balanced.certified_optimal;
  if (g.n() <= 12) {
    const SearchResult weighted = min_terms_search(g, Mode::RealWeight, options);
    r.mscr_real_weight = weighted.k;
    r.certified_optimal = r.certified_optimal && weighted.certified_optimal;
  }

  std::vector<std::string> problems;
  if (r.mscr > r.mscr_real) problems.push_back("mscr > mscrREAL");
  if (r.mscr_real_weight && *r.mscr_real_weight != r.mscr_real)
    problems.push_back("weight-mode and balanced-mode searches disagree");

  const int s = g.degree();
  if (is_prime(g.n())) {
    r.prime_formula = g.n() - s;
    if (r.mscr != *r.prime_formula) problems.push_back("prime-order formula p-|S| disagrees with search");
  }
  if (const auto k = is_consecutive(g)) {
    r.consecutive_formula = g.n() - s;
    r.zero_forcing = s;
    r.mr_lower_bound = g.n() - s;
    if (r.mscr != *r.consecutive_formula) problems.push_back("consecutive formula n-|S| disagrees with search");
    if (g.n() % 2 == 1 && r.mscr_real != *r.consecutive_formula)
      problems.push_back("odd consecutive formula for mscrREAL disagrees with search");
    if (r.mscr_real > r.mscr) r.notes.push_back("mscrREAL exceeds mscr (even-order consecutive circulant)");
  }
  if (g.is_complete() && r.mscr != 1) problems.push_back("complete graph must have mscr = 1");
  if (g.is_edgeless() && r.mscr != g.n()) problems.push_back("edgeless graph must have mscr = n");

  if (!problems.empty()) {
    std::string msg = g.to_string() + ":";
    for (const auto& p : problems) msg += " " + p + ";";
    throw Error(ErrorKind::Internal, msg);
  }
  return r;
}

json to_json(const SupportVerdict& v) {
  json diag = json::array();
  for (const auto& d : v.diagnostics)
    diag.push_back({{"j", d.j},
                    {"re_max", decimal(d.re_max)},
                    {"re_min", decimal(d.re_min)},
                    {"im_max", decimal(d.im_max)},
                    {"im_min", decimal(d.im_min)}});
  json out = {{"support", v.support}, {"status", std::string(to_string(v.status))}, {"diagnostics", diag}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

json to_json(const SearchResult& r) {
  json out = {{"graph", r.graph.to_string()},
              {"mode", std::string(to_string(r.mode))},
              {"k", r.k},
              {"certificate", to_json(r.certificate)},
              {"certified_optimal", r.certified_optimal},
              {"supports_examined", r.supports_examined}};
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

json to_json(const ParameterReport& r) {
  json out = {{"graph", r.graph.to_string()},
              {"mscr", r.mscr},
              {"mscr_real", r.mscr_real},
              {"certified_optimal", r.certified_optimal}};
  auto put = [&out](const char* key, const std::optional<int>& v) {
    if (v) out[key] = *v;
  };
  put("mscr_real_weight", r.mscr_real_weight);
  put("prime_formula", r.prime_formula);
  put("consecutive_formula", r.consecutive_formula);
  put("zero_forcing", r.zero_forcing);
  put("mr_lower_bound", r.mr_lower_bound);
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

}  // namespace circrank
