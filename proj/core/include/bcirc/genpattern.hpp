#pragma once

// Moments of generalized-pattern block circulant ensembles: zone bookkeeping,
// the finite-N exact trace expansion, the opposite-orientation pairing count
// and the closed-form fourth moment.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bcirc/core.hpp"
#include "bcirc/moments.hpp"

namespace bcirc {

enum class Area { I, II };

struct ZoneId {
  int zone = 1;  // 1..4
  Area area() const noexcept { return (zone == 1 || zone == 3) ? Area::I : Area::II; }
};

/// Zone of entry (i, j), 1-based, from the sign and size of j - i. The
/// main diagonal (j == i) is zone 1.
ZoneId classify_zone(std::size_t n, std::size_t i, std::size_t j);

enum class MomentMethod { FiniteExact, PairingCount, Analytic, Simulated };

struct PatternMomentResult {
  unsigned order = 0;  // moment order (2k for even moments)
  Pattern pattern = Pattern::all_distinct(1);
  std::size_t n = 0;
  std::optional<Rational> exact;
  double value = 0.0;
  double standard_error = 0.0;  // Simulated only
  MomentMethod method = MomentMethod::Analytic;
};

inline constexpr std::size_t kMaxFiniteExactN = 16;
inline constexpr unsigned kMaxFiniteExactOrder = 6;
inline constexpr std::size_t kMaxPairingCountN = 360;
inline constexpr unsigned kMaxPairingCountK = 3;

/// E[M_order(N)] = N^{-(order/2+1)} sum over all index tuples of E[a_{i1 i2} ... a_{in i1}],
/// by full enumeration. Requires N <= 16, order <= 6, m | N.
Rational pattern_moment_finite_exact(const Pattern& pattern, std::size_t n, unsigned order,
                                     EntryDistribution dist = {});

/// eta(sigma): index tuples with i_{s+1} - i_s = -(i_{t+1} - i_t) mod N and
/// equal link keys for every pair (s, t) of the opposite-orientation pairing.
BigInt pairing_eta(const Pattern& pattern, std::size_t n, const Pairing& sigma);

/// Same count by direct enumeration of i_1 and one difference per pair
/// (N^{k+1} tuples). Used to cross-check pairing_eta.
BigInt pairing_eta_bruteforce(const Pattern& pattern, std::size_t n, const Pairing& sigma);

/// N^{-(k+1)} sum_sigma eta(sigma). Requires k <= 3, N <= 360, m | N.
PatternMomentResult pattern_moment_pairing_count(const Pattern& pattern, std::size_t n, unsigned k);

/// 2 + sum_r (nu_r / m)^3.
Rational fourth_moment_analytic(const Pattern& pattern);

/// Monte Carlo averages of the empirical moments of orders 2, 4, ..., 2 k_max
/// over `trials` samples of the generalized ensemble.
std::vector<PatternMomentResult> simulate_pattern_moments(const Pattern& pattern, std::size_t n,
                                                          std::size_t trials, unsigned k_max,
                                                          std::uint64_t seed = 0,
                                                          unsigned threads = 1);

}  // namespace bcirc
