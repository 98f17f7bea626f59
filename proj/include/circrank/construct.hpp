#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "circrank/certificate.hpp"
#include "circrank/graph.hpp"
#include "circrank/polycert.hpp"

namespace circrank {

/// Self-conjugate set of exponents j ∈ {1..n−1} naming the roots w^j a polynomial must vanish on.
class RootSet {
 public:
  /// Throws InvalidArgument unless every j is in 1..n−1 and n−j is present with j.
  static RootSet make(int n, std::vector<int> exponents);

  /// {1..n−1} \ S.
  static RootSet complement_of(const ConnectionSet& s);

  int n() const noexcept { return n_; }
  const std::vector<int>& exponents() const noexcept { return exponents_; }
  std::size_t size() const noexcept { return exponents_.size(); }

 private:
  int n_ = 1;
  std::vector<int> exponents_;
};

/// ∏_{j=k+1}^{n−k−1} (z − w^j), expanded with real quadratic factors. Requires 1 ≤ k < ⌊n/2⌋.
NonnegPolynomial consecutive_polynomial(int n, int k);

/// z^{k+(n+1)/2} · consecutive_polynomial(n, k) mod z^n − 1, for odd n. Its ncv is balanced.
NonnegPolynomial shifted_real_polynomial(int n, int k);

/// Carathéodory reduction of the uniform combination Σ v_i = 0, where v_i stacks the real and
/// imaginary parts of α^i over one root α from each conjugate pair of w (and (−1)^i when −1 ∈ w).
/// Points are eliminated in `order` (a permutation of 0..n−1; empty means 0..n−1).
/// The result has at most |w|+1 terms and vanishes on w; it may vanish elsewhere too.
NonnegPolynomial caratheodory_polynomial(const RootSet& w, std::span<const int> order = {});

/// Same, with the elimination order shuffled by a generator seeded with `seed`.
NonnegPolynomial caratheodory_polynomial(const RootSet& w, std::uint64_t seed);

/// mscr(C(p,S)) = p − |S| certificate for prime p.
/// Throws UnsupportedFamily for composite n, ConstructionFailed when no attempt passes.
CertificateBundle prime_certificate(const CirculantGraph& g, std::uint64_t seed = 0);

/// Carathéodory certificate for any circulant: vanishes off S with at most n−|S| terms.
/// Throws ConstructionFailed if every attempt has extra zeros inside S.
CertificateBundle caratheodory_certificate(const CirculantGraph& g, std::uint64_t seed = 0);

/// Rank n−|S| certificate for a consecutive circulant (all-ones matrix when complete).
CertificateBundle consecutive_certificate(const CirculantGraph& g);

/// Real rank n−|S| certificate for a consecutive circulant of odd order.
CertificateBundle real_consecutive_certificate(const CirculantGraph& g);

/// Certificates of every rank n−2k..n, from the consecutive polynomial times (z+2)^m.
std::vector<CertificateBundle> rank_spectrum_consecutive(const CirculantGraph& g);

/// Attempts made by prime_certificate / caratheodory_certificate before giving up.
inline constexpr int kCaratheodoryAttempts = 8;

}  // namespace circrank
