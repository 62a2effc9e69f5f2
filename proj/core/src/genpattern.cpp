#include "bcirc/genpattern.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "bcirc/ensembles.hpp"
#include "bcirc/parallel.hpp"
#include "bcirc/spectra.hpp"

namespace bcirc {
namespace {

void require_divides(const Pattern& pattern, std::size_t n) {
  if (n == 0 || n % pattern.period() != 0)
    throw ConfigError("pattern length " + std::to_string(pattern.period()) + " does not divide N = " +
                      std::to_string(n));
}

BigInt pow_ui(std::size_t base, unsigned e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

// Walks a closed index tuple for one pairing. x[s] is the step i_{s+1} - i_s
// (mod N) of edge s; leads hold the free steps, followers mirror them.
class PairingWalker {
 public:
  PairingWalker(const Pattern& pattern, std::size_t n, const Pairing& sigma)
      : n_(n), sigma_(sigma), links_(EnsembleSpec::generalized(n, pattern)) {
    for (std::size_t s = 0; s < sigma.edges(); ++s)
      if (s < sigma.partner(s)) leads_.push_back(s);
    steps_.assign(sigma.edges(), 0);
    index_.assign(sigma.edges() + 1, 0);
  }

  const std::vector<std::size_t>& leads() const noexcept { return leads_; }

  // i1 is 1-based; lead_steps[p] is the step of leads()[p].
  bool admissible(std::size_t i1, const std::vector<std::size_t>& lead_steps) {
    for (std::size_t p = 0; p < leads_.size(); ++p) {
      const std::size_t s = leads_[p];
      steps_[s] = lead_steps[p];
      steps_[sigma_.partner(s)] = (n_ - lead_steps[p]) % n_;
    }
    index_[0] = i1 - 1;
    for (std::size_t s = 0; s < steps_.size(); ++s) index_[s + 1] = (index_[s] + steps_[s]) % n_;

    bool ok = true;
    for (std::size_t s : leads_) {
      const std::size_t t = sigma_.partner(s);
      const std::size_t x = steps_[s];
      if (x != 0 && 2 * x != n_) {
        const ZoneId zs = classify_zone(n_, index_[s] + 1, index_[s + 1] + 1);
        const ZoneId zt = classify_zone(n_, index_[t] + 1, index_[t + 1] + 1);
        if (zs.area() == zt.area())
          throw InvariantViolation("paired entries in the same area for N = " + std::to_string(n_));
      }
      if (links_.id(index_[s], index_[s + 1]) != links_.id(index_[t], index_[t + 1])) ok = false;
    }
    return ok;
  }

 private:
  std::size_t n_;
  const Pairing& sigma_;
  LinkMap links_;
  std::vector<std::size_t> leads_;
  std::vector<std::size_t> steps_;
  std::vector<std::size_t> index_;
};

}  // namespace

ZoneId classify_zone(std::size_t n, std::size_t i, std::size_t j) {
  if (n == 0 || n % 2 != 0) throw ConfigError("classify_zone requires even N");
  if (i < 1 || i > n || j < 1 || j > n) throw std::out_of_range("classify_zone index out of range");
  const long d = static_cast<long>(j) - static_cast<long>(i);
  const long half = static_cast<long>(n / 2);
  if (d >= 0 && d <= half - 1) return {1};
  if (d >= half) return {2};
  if (-d >= half) return {3};
  return {4};
}

Rational pattern_moment_finite_exact(const Pattern& pattern, std::size_t n, unsigned order,
                                     EntryDistribution dist) {
  require_divides(pattern, n);
  if (order < 1) throw ConfigError("moment order must be >= 1");
  if (n > kMaxFiniteExactN || order > kMaxFiniteExactOrder)
    throw ConfigError("finite exact enumeration supports N <= " + std::to_string(kMaxFiniteExactN) +
                      " and order <= " + std::to_string(kMaxFiniteExactOrder));
  const LinkMap links(EnsembleSpec::generalized(n, pattern));

  // Tuples grouped by the multiset of variable multiplicities.
  std::map<std::vector<unsigned>, std::uint64_t> signatures;
  std::vector<unsigned> count(links.variable_count(), 0);
  std::vector<std::uint32_t> touched;
  std::vector<std::size_t> idx(order);
  int odd = 0;

  auto add = [&](std::uint32_t id) {
    if (count[id]++ == 0) touched.push_back(id);
    odd += (count[id] % 2) ? 1 : -1;
  };
  auto remove = [&](std::uint32_t id) {
    odd += (count[id] % 2) ? -1 : 1;
    if (--count[id] == 0) touched.pop_back();
  };

  // Entry p joins idx[p-1] and idx[p]; the last entry closes the cycle.
  auto recurse = [&](auto&& self, unsigned p) -> void {
    const int remaining = static_cast<int>(order - p + 1);  // entries still to add, including closure
    if (odd > remaining) return;
    if (p == order) {
      const std::uint32_t closing = links.id(idx[order - 1], idx[0]);
      add(closing);
      if (odd == 0) {
        std::vector<unsigned> sig;
        for (std::uint32_t id : touched) sig.push_back(count[id]);
        std::sort(sig.begin(), sig.end());
        ++signatures[sig];
      }
      remove(closing);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      idx[p] = i;
      const std::uint32_t id = links.id(idx[p - 1], i);
      add(id);
      self(self, p + 1);
      remove(id);
    }
  };
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    idx[0] = i0;
    recurse(recurse, 1);
  }

  Rational total(0);
  for (const auto& [sig, tuples] : signatures) {
    Rational weight(1);
    for (unsigned c : sig) weight *= moment(dist, c);
    total += weight * Rational(BigInt(static_cast<unsigned long>(tuples)));
  }
  if (total == 0) return total;
  if (order % 2 != 0) throw InvariantViolation("odd-order moment with non-zero expectation");
  Rational out = total / Rational(pow_ui(n, order / 2 + 1));
  out.canonicalize();
  return out;
}

BigInt pairing_eta(const Pattern& pattern, std::size_t n, const Pairing& sigma) {
  require_divides(pattern, n);
  const std::size_t m = pattern.period();
  PairingWalker walker(pattern, n, sigma);

  // Admissibility depends on a step x only through which side of N/2 it
  // lies and its residue mod m; group steps accordingly.
  struct StepClass {
    std::size_t representative;
    std::uint64_t size;
  };
  std::map<std::pair<int, std::size_t>, StepClass> by_key;
  for (std::size_t x = 0; x < n; ++x) {
    const int side = x == 0 ? 0 : (2 * x < n ? 1 : (2 * x == n ? 2 : 3));
    auto [it, inserted] = by_key.try_emplace({side, x % m}, StepClass{x, 0});
    it->second.size += 1;
  }
  std::vector<StepClass> classes;
  for (const auto& [key, cls] : by_key) classes.push_back(cls);

  const std::size_t k = walker.leads().size();
  const std::uint64_t per_residue = n / m;
  std::vector<std::size_t> choice(k, 0);
  std::vector<std::size_t> steps(k);
  BigInt eta(0);
  for (std::size_t residue = 0; residue < m; ++residue) {
    const std::size_t i1 = residue == 0 ? m : residue;
    std::fill(choice.begin(), choice.end(), 0);
    for (;;) {
      BigInt weight(static_cast<unsigned long>(per_residue));
      for (std::size_t p = 0; p < k; ++p) {
        steps[p] = classes[choice[p]].representative;
        weight *= static_cast<unsigned long>(classes[choice[p]].size);
      }
      if (walker.admissible(i1, steps)) eta += weight;

      std::size_t p = 0;
      while (p < k && ++choice[p] == classes.size()) choice[p++] = 0;
      if (p == k) break;
    }
  }
  return eta;
}

BigInt pairing_eta_bruteforce(const Pattern& pattern, std::size_t n, const Pairing& sigma) {
  require_divides(pattern, n);
  PairingWalker walker(pattern, n, sigma);
  const std::size_t k = walker.leads().size();
  std::vector<std::size_t> steps(k, 0);
  std::uint64_t eta = 0;
  for (std::size_t i1 = 1; i1 <= n; ++i1) {
    std::fill(steps.begin(), steps.end(), 0);
    for (;;) {
      if (walker.admissible(i1, steps)) ++eta;
      std::size_t p = 0;
      while (p < k && ++steps[p] == n) steps[p++] = 0;
      if (p == k) break;
    }
  }
  return BigInt(static_cast<unsigned long>(eta));
}

PatternMomentResult pattern_moment_pairing_count(const Pattern& pattern, std::size_t n, unsigned k) {
  require_divides(pattern, n);
  if (k < 1 || k > kMaxPairingCountK || n > kMaxPairingCountN)
    throw ConfigError("pairing count supports 1 <= k <= " + std::to_string(kMaxPairingCountK) +
                      " and N <= " + std::to_string(kMaxPairingCountN));
  BigInt total(0);
  for_each_pairing(k, [&](const Pairing& sigma) { total += pairing_eta(pattern, n, sigma); });
  Rational value(total, pow_ui(n, k + 1));
  value.canonicalize();

  PatternMomentResult out;
  out.order = 2 * k;
  out.pattern = pattern;
  out.n = n;
  out.value = to_double(value);
  out.exact = value;
  out.method = MomentMethod::PairingCount;
  return out;
}

Rational fourth_moment_analytic(const Pattern& pattern) {
  const auto m = static_cast<unsigned long>(pattern.period());
  Rational sum(2);
  for (const auto& [symbol, nu] : pattern.frequencies()) {
    Rational share(BigInt(static_cast<unsigned long>(nu)), BigInt(m));
    share.canonicalize();
    sum += share * share * share;
  }
  return sum;
}

std::vector<PatternMomentResult> simulate_pattern_moments(const Pattern& pattern, std::size_t n,
                                                          std::size_t trials, unsigned k_max,
                                                          std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw ConfigError("simulation needs at least one trial");
  if (k_max < 1) throw ConfigError("k_max must be >= 1");
  const Ensemble ensemble(EnsembleSpec::generalized(n, pattern, seed));
  auto per_trial = run_trials(trials, threads, [&](std::size_t t) {
    const SpectralMeasure s = eigs_block_circulant(ensemble.spec(), ensemble.sample(t));
    std::vector<double> moments(k_max);
    for (unsigned k = 1; k <= k_max; ++k) moments[k - 1] = empirical_moment(s, 2 * k);
    return moments;
  });

  std::vector<PatternMomentResult> out;
  for (unsigned k = 1; k <= k_max; ++k) {
    double mean = 0.0;
    for (const auto& row : per_trial) mean += row[k - 1];
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (const auto& row : per_trial) var += (row[k - 1] - mean) * (row[k - 1] - mean);
    var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;

    PatternMomentResult r;
    r.order = 2 * k;
    r.pattern = pattern;
    r.n = n;
    r.value = mean;
    r.standard_error = std::sqrt(var / static_cast<double>(trials));
    r.method = MomentMethod::Simulated;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace bcirc
