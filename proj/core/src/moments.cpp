#include "bcirc/moments.hpp"

#include <numeric>
#include <string>

namespace bcirc {
namespace {

void check_enumeration_k(unsigned k) {
  if (k < 1 || k > kMaxEnumerationK)
    throw ConfigError("pairing enumeration supports 1 <= k <= " + std::to_string(kMaxEnumerationK) +
                      ", got k = " + std::to_string(k));
}

void check_closed_form_k(unsigned k) {
  if (k > kMaxClosedFormK)
    throw ConfigError("closed forms support k <= " + std::to_string(kMaxClosedFormK));
}

using Series = std::vector<Rational>;

// Product truncated to `terms` coefficients.
Series multiply(const Series& a, const Series& b, std::size_t terms) {
  Series out(terms, Rational(0));
  for (std::size_t i = 0; i < a.size() && i < terms; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < terms; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

void pair_recursive(std::vector<std::uint8_t>& partner, std::vector<bool>& used,
                    const std::function<void(const Pairing&)>& visit) {
  const std::size_t edges = partner.size();
  std::size_t first = 0;
  while (first < edges && used[first]) ++first;
  if (first == edges) {
    visit(Pairing(partner));
    return;
  }
  used[first] = true;
  for (std::size_t other = first + 1; other < edges; ++other) {
    if (used[other]) continue;
    used[other] = true;
    partner[first] = static_cast<std::uint8_t>(other);
    partner[other] = static_cast<std::uint8_t>(first);
    pair_recursive(partner, used, visit);
    used[other] = false;
  }
  used[first] = false;
}

}  // namespace

Pairing::Pairing(std::vector<std::uint8_t> partner) : partner_(std::move(partner)) {
  if (partner_.empty() || partner_.size() % 2 != 0)
    throw std::invalid_argument("pairing needs a positive even number of edges");
  for (std::size_t s = 0; s < partner_.size(); ++s) {
    const std::size_t t = partner_[s];
    if (t >= partner_.size() || t == s || partner_[t] != s)
      throw std::invalid_argument("pairing is not a fixed-point-free involution");
  }
}

void for_each_pairing(unsigned k, const std::function<void(const Pairing&)>& visit) {
  check_enumeration_k(k);
  std::vector<std::uint8_t> partner(2 * k, 0);
  std::vector<bool> used(2 * k, false);
  pair_recursive(partner, used, visit);
}

std::vector<Pairing> enumerate_pairings(unsigned k) {
  std::vector<Pairing> out;
  for_each_pairing(k, [&](const Pairing& p) { out.push_back(p); });
  return out;
}

unsigned genus(const Pairing& p) {
  const std::size_t edges = p.edges();
  std::vector<std::size_t> parent(edges);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

  // Edge s runs s -> s+1; glued to t = partner(s) run backwards, so the
  // start of s meets the end of t and vice versa.
  for (std::size_t s = 0; s < edges; ++s) {
    const std::size_t t = p.partner(s);
    unite(s, (t + 1) % edges);
    unite((s + 1) % edges, t);
  }
  std::size_t vertices = 0;
  for (std::size_t v = 0; v < edges; ++v)
    if (find(v) == v) ++vertices;

  const long twice_g = static_cast<long>(p.half_size()) + 1 - static_cast<long>(vertices);
  if (twice_g < 0 || twice_g % 2 != 0)
    throw InvariantViolation("genus: k + 1 - v = " + std::to_string(twice_g) +
                             " is not a non-negative even integer");
  return static_cast<unsigned>(twice_g / 2);
}

std::vector<BigInt> genus_histogram(unsigned k) {
  std::vector<BigInt> hist(k / 2 + 1, BigInt(0));
  for_each_pairing(k, [&](const Pairing& p) {
    const unsigned g = genus(p);
    if (g >= hist.size()) throw InvariantViolation("genus exceeds floor(k/2)");
    hist[g] += 1;
  });
  return hist;
}

std::vector<Rational> bernoulli_numbers(unsigned n) {
  std::vector<Rational> b(n + 1, Rational(0));
  b[0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    Rational sum(0);
    for (unsigned j = 0; j < i; ++j) sum += Rational(binomial(i + 1, j)) * b[j];
    b[i] = -sum / Rational(i + 1);
    b[i].canonicalize();
  }
  return b;
}

std::vector<BigInt> epsilon_table(unsigned k) {
  if (k < 1) throw ConfigError("epsilon_table requires k >= 1");
  check_closed_form_k(k);
  const unsigned gmax = k / 2;
  const std::size_t terms = 2 * gmax + 1;

  // (x/2)/tanh(x/2) = sum_n B_{2n} x^{2n} / (2n)!
  const auto bern = bernoulli_numbers(2 * gmax);
  Series base(terms, Rational(0));
  for (unsigned n = 0; 2 * n < terms; ++n) {
    base[2 * n] = bern[2 * n] / Rational(factorial(2 * n));
    base[2 * n].canonicalize();
  }
  Series power(terms, Rational(0));
  power[0] = 1;
  for (unsigned e = 0; e < k + 1; ++e) power = multiply(power, base, terms);

  std::vector<BigInt> out;
  out.reserve(gmax + 1);
  const BigInt top = factorial(2 * k);
  for (unsigned g = 0; g <= gmax; ++g) {
    Rational value = Rational(top) / Rational(factorial(k + 1) * factorial(k - 2 * g)) * power[2 * g];
    value.canonicalize();
    if (value.get_den() != 1)
      throw InvariantViolation("epsilon_table: non-integral eps_" + std::to_string(g) + "(" +
                               std::to_string(k) + ")");
    out.push_back(value.get_num());
  }
  return out;
}

Rational c_coeff(unsigned k, unsigned r) {
  if (r < 1) throw ConfigError("c_coeff requires r >= 1");
  check_closed_form_k(k);
  // [x^n] (1 + x)^r (1 - x)^{-r} = sum_j C(r, j) C(n - j + r - 1, n - j)
  const unsigned n = k + 1;
  BigInt a(0);
  for (unsigned j = 0; j <= n && j <= r; ++j) a += binomial(r, j) * binomial(n - j + r - 1, n - j);
  Rational c(a, BigInt(2));
  c.canonicalize();
  return c;
}

Rational limiting_moment(unsigned k, unsigned m) {
  if (m < 1) throw ConfigError("limiting_moment requires m >= 1");
  check_closed_form_k(k);
  BigInt mpow;
  mpz_ui_pow_ui(mpow.get_mpz_t(), m, k + 1);
  Rational out = Rational(odd_double_factorial(k)) * c_coeff(k, m) / Rational(mpow);
  out.canonicalize();
  return out;
}

Rational limiting_moment_by_genus(unsigned k, unsigned m) {
  if (m < 1) throw ConfigError("limiting_moment requires m >= 1");
  if (k == 0) return Rational(1);
  const auto eps = epsilon_table(k);
  Rational sum(0);
  for (std::size_t g = 0; g < eps.size(); ++g) {
    BigInt mpow;
    mpz_ui_pow_ui(mpow.get_mpz_t(), m, 2 * g);
    Rational term(eps[g], mpow);
    term.canonicalize();
    sum += term;
  }
  return sum;
}

BigInt catalan(unsigned k) { return binomial(2 * k, k) / BigInt(k + 1); }

}  // namespace bcirc
