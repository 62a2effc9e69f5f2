#include "bcirc/core.hpp"

#include <cmath>
#include <set>

namespace bcirc {

Pattern::Pattern(std::vector<int> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw ConfigError("pattern must have length >= 1");
  for (int s : symbols_)
    if (s < 0) throw ConfigError("pattern symbols must be non-negative ids");
}

Pattern Pattern::parse(std::string_view text) {
  std::map<char, int> ids;
  std::vector<int> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '{' || c == '}') continue;
    auto [it, inserted] = ids.try_emplace(c, static_cast<int>(ids.size()));
    symbols.push_back(it->second);
  }
  if (symbols.empty()) throw ConfigError("empty pattern string");
  return Pattern(std::move(symbols));
}

Pattern Pattern::all_distinct(std::size_t m) {
  if (m == 0) throw ConfigError("period m must be >= 1");
  std::vector<int> symbols(m);
  for (std::size_t e = 0; e < m; ++e) symbols[e] = static_cast<int>(e);
  return Pattern(std::move(symbols));
}

std::map<int, std::size_t> Pattern::frequencies() const {
  std::map<int, std::size_t> freq;
  for (int s : symbols_) ++freq[s];
  return freq;
}

bool Pattern::is_all_distinct() const {
  return std::set<int>(symbols_.begin(), symbols_.end()).size() == symbols_.size();
}

std::string Pattern::to_string() const {
  // Relabel by first appearance so "abab" round-trips.
  std::map<int, char> names;
  std::string out;
  for (int s : symbols_) {
    auto [it, inserted] = names.try_emplace(s, static_cast<char>('a' + names.size()));
    out.push_back(it->second);
  }
  return out;
}

EntryDistribution EntryDistribution::parse(std::string_view name) {
  if (name == "gaussian" || name == "normal") return {DistributionKind::Gaussian};
  if (name == "rademacher" || name == "sign") return {DistributionKind::Rademacher};
  if (name == "uniform") return {DistributionKind::Uniform};
  throw ConfigError("unknown distribution '" + std::string(name) + "'");
}

std::string EntryDistribution::name() const {
  switch (kind) {
    case DistributionKind::Gaussian: return "gaussian";
    case DistributionKind::Rademacher: return "rademacher";
    case DistributionKind::Uniform: return "uniform";
  }
  return "gaussian";
}

EnsembleKind parse_ensemble_kind(std::string_view name) {
  if (name == "circulant" || name == "block-circulant") return EnsembleKind::BlockCirculant;
  if (name == "toeplitz" || name == "block-toeplitz") return EnsembleKind::BlockToeplitz;
  if (name == "pattern" || name == "generalized") return EnsembleKind::GeneralizedCirculant;
  throw ConfigError("unknown ensemble kind '" + std::string(name) + "'");
}

std::string ensemble_kind_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::BlockCirculant: return "circulant";
    case EnsembleKind::BlockToeplitz: return "toeplitz";
    case EnsembleKind::GeneralizedCirculant: return "pattern";
  }
  return "circulant";
}

EnsembleSpec EnsembleSpec::block_circulant(std::size_t n, std::size_t m, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::BlockCirculant;
  spec.n = n;
  spec.m = m;
  spec.seed = seed;
  return spec;
}

EnsembleSpec EnsembleSpec::block_toeplitz(std::size_t n, std::size_t m, std::uint64_t seed) {
  EnsembleSpec spec = block_circulant(n, m, seed);
  spec.kind = EnsembleKind::BlockToeplitz;
  return spec;
}

EnsembleSpec EnsembleSpec::generalized(std::size_t n, Pattern pattern, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::GeneralizedCirculant;
  spec.n = n;
  spec.m = pattern.period();
  spec.pattern = std::move(pattern);
  spec.seed = seed;
  return spec;
}

void EnsembleSpec::validate() const {
  if (m == 0) throw ConfigError("period m must be >= 1");
  if (n == 0) throw ConfigError("dimension N must be >= 1");
  if (n > kMaxDimension)
    throw ConfigError("N = " + std::to_string(n) + " exceeds the dense limit " +
                      std::to_string(kMaxDimension));
  if (n % m != 0)
    throw ConfigError("m = " + std::to_string(m) + " does not divide N = " + std::to_string(n));
  if (kind == EnsembleKind::GeneralizedCirculant) {
    if (!pattern) throw ConfigError("generalized ensemble requires a pattern");
    if (pattern->period() != m) throw ConfigError("pattern length must equal m");
  }
}

Pattern EnsembleSpec::effective_pattern() const {
  if (kind == EnsembleKind::GeneralizedCirculant && pattern) return *pattern;
  return Pattern::all_distinct(m);
}

SymmetricMatrix::SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

SymmetricMatrix SymmetricMatrix::from_dense(std::size_t n, std::vector<double> data) {
  if (data.size() != n * n) throw std::invalid_argument("dense data size is not n*n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (data[i * n + j] != data[j * n + i])
        throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
  SymmetricMatrix out;
  out.n_ = n;
  out.data_ = std::move(data);
  return out;
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double v) {
  data_[i * n_ + j] = v;
  data_[j * n_ + i] = v;
}

double SymmetricMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return std::sqrt(sum);
}

double SymmetricMatrix::trace() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) sum += data_[i * n_ + i];
  return sum;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

double sample_value(EntryDistribution dist, RandomStream& rng) {
  switch (dist.kind) {
    case DistributionKind::Gaussian:
      return rng.gaussian();
    case DistributionKind::Rademacher:
      return (rng.bits() >> 63) ? 1.0 : -1.0;
    case DistributionKind::Uniform:
      return std::sqrt(3.0) * (2.0 * rng.uniform01() - 1.0);
  }
  return 0.0;
}

Rational even_moment(EntryDistribution dist, unsigned j) {
  switch (dist.kind) {
    case DistributionKind::Gaussian:
      return Rational(odd_double_factorial(j));
    case DistributionKind::Rademacher:
      return Rational(1);
    case DistributionKind::Uniform: {
      // E[U^{2j}] for U uniform on [-sqrt3, sqrt3] is 3^j / (2j + 1).
      BigInt pow3;
      mpz_ui_pow_ui(pow3.get_mpz_t(), 3, j);
      Rational q(pow3, BigInt(2 * j + 1));
      q.canonicalize();
      return q;
    }
  }
  return Rational(0);
}

Rational moment(EntryDistribution dist, unsigned d) {
  if (d % 2 == 1) return Rational(0);
  return even_moment(dist, d / 2);
}

BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return BigInt(0);
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt odd_double_factorial(unsigned k) {
  if (k == 0) return BigInt(1);
  BigInt out;
  mpz_2fac_ui(out.get_mpz_t(), 2 * k - 1);
  return out;
}

}  // namespace bcirc
