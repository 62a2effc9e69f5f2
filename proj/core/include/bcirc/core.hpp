#pragma once

// Shared domain types for the block-circulant spectral lab: symbol patterns,
// entry distributions, ensemble descriptions, dense symmetric matrices and the
// reproducible random stream every sampler draws from.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace bcirc {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Bad user input or an unsatisfiable configuration (e.g. m does not divide N).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical invariant failed at runtime (non-integral genus, Jacobi
/// failing to converge, ...). Indicates a bug rather than bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Upper bound on N for dense storage.
inline constexpr std::size_t kMaxDimension = 4096;

/// One period of a wrapped diagonal. Symbols are small non-negative ids;
/// equal ids mean the same independent variable within a diagonal.
class Pattern {
 public:
  explicit Pattern(std::vector<int> symbols);

  /// Parses "abab" style strings; each distinct character is one symbol.
  static Pattern parse(std::string_view text);
  /// The standard m-block circulant period (d_1, ..., d_m).
  static Pattern all_distinct(std::size_t m);

  std::size_t period() const noexcept { return symbols_.size(); }
  int symbol(std::size_t slot) const { return symbols_.at(slot); }
  std::span<const int> symbols() const noexcept { return symbols_; }

  /// Occurrence count of each symbol; values sum to period().
  std::map<int, std::size_t> frequencies() const;
  bool is_all_distinct() const;
  std::string to_string() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<int> symbols_;
};

enum class DistributionKind { Gaussian, Rademacher, Uniform };

/// Mean-zero, unit-variance entry law. Uniform is scaled to [-sqrt(3), sqrt(3)].
struct EntryDistribution {
  DistributionKind kind = DistributionKind::Gaussian;

  static EntryDistribution parse(std::string_view name);
  std::string name() const;
  friend bool operator==(const EntryDistribution&, const EntryDistribution&) = default;
};

enum class EnsembleKind { BlockCirculant, BlockToeplitz, GeneralizedCirculant };

EnsembleKind parse_ensemble_kind(std::string_view name);
std::string ensemble_kind_name(EnsembleKind kind);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::BlockCirculant;
  std::size_t n = 0;
  std::size_t m = 1;
  std::optional<Pattern> pattern;  // GeneralizedCirculant only
  EntryDistribution dist{};
  std::uint64_t seed = 0;

  static EnsembleSpec block_circulant(std::size_t n, std::size_t m, std::uint64_t seed = 0);
  static EnsembleSpec block_toeplitz(std::size_t n, std::size_t m, std::uint64_t seed = 0);
  static EnsembleSpec generalized(std::size_t n, Pattern pattern, std::uint64_t seed = 0);

  /// Throws ConfigError unless m | N, N <= kMaxDimension and the pattern
  /// length matches m.
  void validate() const;

  /// Period pattern used for slot lookup (all-distinct unless generalized).
  Pattern effective_pattern() const;
  bool is_circulant() const noexcept { return kind != EnsembleKind::BlockToeplitz; }
};

/// Dense row-major real symmetric matrix, 0-based storage.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n);

  /// Builds from a full row-major array; throws std::invalid_argument if the
  /// data is not exactly symmetric.
  static SymmetricMatrix from_dense(std::size_t n, std::vector<double> data);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v);

  std::span<const double> data() const noexcept { return data_; }
  double frobenius_norm() const;
  double trace() const;

  /// Variable id of entry (i, j), 0-based; present for ensemble samples.
  bool has_link() const noexcept { return static_cast<bool>(link_); }
  std::uint32_t link_id(std::size_t i, std::size_t j) const { return (*link_)[i * n_ + j]; }
  void attach_link(std::shared_ptr<const std::vector<std::uint32_t>> link) { link_ = std::move(link); }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
  std::shared_ptr<const std::vector<std::uint32_t>> link_;
};

/// Reproducible random stream. The engine seed is a splitmix64 mix of
/// (seed, stream), so trial t draws the same values regardless of how many
/// other trials run or in which order.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  double gaussian() { return normal_(engine_); }
  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

double sample_value(EntryDistribution dist, RandomStream& rng);

/// m_{2j} = E[X^{2j}] as an exact rational.
Rational even_moment(EntryDistribution dist, unsigned j);

/// E[X^d] for any d >= 0; odd moments vanish for every supported law.
Rational moment(EntryDistribution dist, unsigned d);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);
/// (2k - 1)!!, with (-1)!! = 1.
BigInt odd_double_factorial(unsigned k);

/// Correctly rounded when numerator and denominator fit in a double's
/// mantissa; mpq_get_d alone truncates.
inline double to_double(const Rational& q) {
  if (mpz_sizeinbase(q.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(q.get_den_mpz_t(), 2) <= 53)
    return q.get_num().get_d() / q.get_den().get_d();
  return q.get_d();
}

}  // namespace bcirc
