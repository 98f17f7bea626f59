#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "circrank/algebra.hpp"
#include "circrank/certificate.hpp"
#include "circrank/graph.hpp"
#include "circrank/polycert.hpp"
#include "circrank/simplex.hpp"

namespace circrank {

enum class SupportStatus { Achieves, Infeasible, ForcedVanishing, Undetermined };

std::string_view to_string(SupportStatus s);

/// LP optima of Re/Im p(w^j) over the feasibility polytope, for one representative j ∈ S.
struct RootOptimum {
  int j = 0;
  double re_max = 0.0, re_min = 0.0, im_max = 0.0, im_min = 0.0;
};

struct SupportVerdict {
  std::vector<int> support;
  SupportStatus status = SupportStatus::Undetermined;
  std::optional<NonnegPolynomial> witness;
  std::vector<RootOptimum> diagnostics;
  std::string note;
};

struct SearchProgress {
  int k = 0;
  long long supports_examined = 0;
  bool found = false;
};

struct SearchOptions {
  int cap = 20;
  std::uint64_t seed = 0;
  int jobs = 1;
  int witness_retries = 16;
  Tolerance tol;
  SimplexOptions lp;
  std::function<void(const SearchProgress&)> progress;
};

/// Decides whether a nonnegative polynomial supported on `support` (normalized p(1) = 1) can
/// realize the mode's vanishing pattern for g. Non-achieving verdicts come only from LP
/// infeasibility or forced vanishing, never from failed witness sampling.
SupportVerdict support_feasibility(const CirculantGraph& g, const std::vector<int>& support, Mode mode,
                                   const SearchOptions& options = {});

/// Supports visited at level k, in lexicographic order. Complex mode lists only supports
/// containing 0 (multiplying by z^s preserves every |p(w^j)|); balanced mode lists supports
/// closed under i ↦ n−i of size k; weight mode lists supports of weight k.
std::vector<std::vector<int>> supports_at_level(int n, int k, Mode mode);

struct SearchResult {
  CirculantGraph graph;
  Mode mode = Mode::Complex;
  int k = 0;
  CertificateBundle certificate;
  bool certified_optimal = true;
  long long supports_examined = 0;
  std::vector<std::string> notes;
};

/// Smallest k admitting a certificate: mscr(G) for Complex, mscrREAL(G) otherwise.
/// Deterministic for a fixed seed regardless of options.jobs.
SearchResult min_terms_search(const CirculantGraph& g, Mode mode, const SearchOptions& options = {});

/// Independent cross-check: random combinations of a null-space basis of the vanishing
/// equalities on `support`, keeping the first nonnegative one that passes the mode's check.
std::optional<NonnegPolynomial> sampling_oracle(const CirculantGraph& g, const std::vector<int>& support, Mode mode,
                                                int samples, std::uint64_t seed, const Tolerance& tol = {});

/// Passes the mode's condition: check_condition_C, plus balance for RealBalanced, or
/// check_condition_R_weight for RealWeight.
bool satisfies_mode(const NonnegPolynomial& p, const CirculantGraph& g, Mode mode, const Tolerance& tol = {});

struct ParameterReport {
  CirculantGraph graph;
  int mscr = 0;
  int mscr_real = 0;
  std::optional<int> mscr_real_weight;  // weight-mode search, when n is small enough
  std::optional<int> prime_formula;      // p − |S|
  std::optional<int> consecutive_formula;  // n − |S|
  std::optional<int> zero_forcing;       // Z(G) = |S|
  std::optional<int> mr_lower_bound;
  bool certified_optimal = true;
  std::vector<std::string> notes;
};

/// Runs complex and balanced searches, compares them with every applicable theorem and checks
/// mscr ≤ mscrREAL. Throws Error(Internal) on any disagreement.
ParameterReport parameter_report(const CirculantGraph& g, const SearchOptions& options = {});

nlohmann::json to_json(const SupportVerdict& v);
nlohmann::json to_json(const SearchResult& r);
nlohmann::json to_json(const ParameterReport& r);

}  // namespace circrank
