#pragma once

// Exact combinatorics behind the limiting moments: edge pairings of a
// 2k-gon, the genus of the glued surface, Harer-Zagier counts eps_g(k),
// the c(k, r) coefficients and the closed-form moments M_{2k;m}.

#include <cstdint>
#include <functional>
#include <vector>

#include "bcirc/core.hpp"

namespace bcirc {

inline constexpr unsigned kMaxEnumerationK = 8;
inline constexpr unsigned kMaxClosedFormK = 64;

/// Fixed-point-free involution on the 2k edges of a polygon. Edge s joins
/// vertices s and s+1 (mod 2k); everything here is 0-based.
class Pairing {
 public:
  explicit Pairing(std::vector<std::uint8_t> partner);

  unsigned half_size() const noexcept { return static_cast<unsigned>(partner_.size() / 2); }
  std::size_t edges() const noexcept { return partner_.size(); }
  std::size_t partner(std::size_t edge) const { return partner_.at(edge); }
  const std::vector<std::uint8_t>& partners() const noexcept { return partner_; }

 private:
  std::vector<std::uint8_t> partner_;
};

/// Calls `visit` once per pairing of 2k edges, (2k-1)!! calls in total.
/// Requires 1 <= k <= kMaxEnumerationK.
void for_each_pairing(unsigned k, const std::function<void(const Pairing&)>& visit);
std::vector<Pairing> enumerate_pairings(unsigned k);

/// Genus of the orientable surface obtained by gluing each edge to its
/// partner with opposite orientation: 2g = k + 1 - v.
unsigned genus(const Pairing& p);

/// Number of pairings per genus g = 0..floor(k/2), by exhaustive enumeration.
std::vector<BigInt> genus_histogram(unsigned k);

/// eps_g(k) for g = 0..floor(k/2) from the (x/2)/tanh(x/2) generating series.
std::vector<BigInt> epsilon_table(unsigned k);

/// Coefficient in 1 + 2 sum_k c(k, r) x^{k+1} = ((1 + x) / (1 - x))^r.
Rational c_coeff(unsigned k, unsigned r);

/// M_{2k;m} = m^{-(k+1)} (2k-1)!! c(k, m).
Rational limiting_moment(unsigned k, unsigned m);
/// The same moment as sum_g eps_g(k) m^{-2g}.
Rational limiting_moment_by_genus(unsigned k, unsigned m);

BigInt catalan(unsigned k);

/// Bernoulli numbers B_0..B_n (B_1 = -1/2).
std::vector<Rational> bernoulli_numbers(unsigned n);

}  // namespace bcirc
