#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace circrank {

/// Negation-closed residue set S ⊆ {1,…,n−1} defining the circulant graph C(n,S).
class ConnectionSet {
 public:
  ConnectionSet() = default;

  int n() const noexcept { return n_; }
  const std::vector<int>& residues() const noexcept { return residues_; }
  std::size_t size() const noexcept { return residues_.size(); }
  bool contains(int r) const;

  /// Residues that were added only to complete the negation closure.
  const std::vector<int>& added_by_closure() const noexcept { return added_; }

  friend bool operator==(const ConnectionSet& a, const ConnectionSet& b) {
    return a.n_ == b.n_ && a.residues_ == b.residues_;
  }

 private:
  friend class CirculantGraph;
  int n_ = 0;
  std::vector<int> residues_;
  std::vector<int> added_;
};

/// C(n,S): vertices 0..n−1, {i,j} an edge iff (i−j) mod n ∈ S.
class CirculantGraph {
 public:
  /// Reduces every raw residue mod n and completes the negation closure.
  /// Throws Error(InvalidOrder) for n < 1 and Error(InvalidLoop) for a residue ≡ 0.
  static CirculantGraph make(int n, std::span<const int> raw);
  static CirculantGraph make(int n, std::initializer_list<int> raw) {
    return make(n, std::span<const int>(raw.begin(), raw.size()));
  }

  /// Parses the canonical text form "C(n,{r1,r2,...})". Negative residues are accepted.
  static CirculantGraph parse(std::string_view text);

  int n() const noexcept { return connection_.n_; }
  const ConnectionSet& connection() const noexcept { return connection_; }
  const std::vector<int>& residues() const noexcept { return connection_.residues_; }
  int degree() const noexcept { return static_cast<int>(connection_.residues_.size()); }

  bool adjacent(int i, int j) const;
  bool is_complete() const noexcept { return degree() == n() - 1; }
  bool is_edgeless() const noexcept { return connection_.residues_.empty(); }

  /// "C(n,{r1,r2,...})", residues ascending.
  std::string to_string() const;

  friend bool operator==(const CirculantGraph& a, const CirculantGraph& b) {
    return a.connection_ == b.connection_;
  }

 private:
  ConnectionSet connection_;
};

/// k when S = {±1,…,±k} (1 ≤ k ≤ ⌊n/2⌋); the edgeless graph is not consecutive.
std::optional<int> is_consecutive(const CirculantGraph& g);

/// Z(G) = |S| for a consecutive circulant. Throws UnsupportedFamily otherwise.
int zero_forcing_consecutive(const CirculantGraph& g);

/// n − Z(G), a lower bound on mr(G) over any field. Consecutive circulants only.
int mr_lower_bound(const CirculantGraph& g);

bool is_prime(int n);

/// Every negation-closed S ⊆ {1,…,n−1}, including ∅ and the complete set.
std::vector<CirculantGraph> all_circulants(int n);

/// Every consecutive circulant on n vertices, k = 1..⌊n/2⌋.
std::vector<CirculantGraph> consecutive_circulants(int n);

}  // namespace circrank
