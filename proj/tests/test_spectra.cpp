#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bcirc/ensembles.hpp"
#include "bcirc/spectra.hpp"

using namespace bcirc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> random_symmetric(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a[i * n + j] = a[j * n + i] = g(gen);
  return a;
}

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
  return c;
}

double trace(const std::vector<double>& a, std::size_t n) {
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += a[i * n + i];
  return t;
}

double power_sum(const std::vector<double>& v, int p) {
  double s = 0.0;
  for (double x : v) s += std::pow(x, p);
  return s;
}

// Eigenvalues left over after greedily pairing neighbours closer than tol.
std::size_t unpaired(const std::vector<double>& sorted, double tol) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    if (i + 1 < sorted.size() && sorted[i + 1] - sorted[i] < tol) {
      i += 2;
    } else {
      ++out;
      ++i;
    }
  }
  return out;
}

double simpson_oracle(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(a + i * h);
  return s * h / 3;
}

}  // namespace

TEST_CASE("Jacobi on small known matrices") {
  auto two = jacobi_eigenvalues({2, 1, 1, 2}, 2);
  CHECK_THAT(two[0], WithinAbs(1.0, 1e-14));
  CHECK_THAT(two[1], WithinAbs(3.0, 1e-14));

  auto diag = jacobi_eigenvalues({3, 0, 0, 0, -1, 0, 0, 0, 2}, 3);
  CHECK(diag == std::vector<double>{-1, 2, 3});

  CHECK(jacobi_eigenvalues({}, 0).empty());
  CHECK(jacobi_eigenvalues({5}, 1) == std::vector<double>{5});
  CHECK(jacobi_eigenvalues(std::vector<double>(16, 0.0), 4) == std::vector<double>(4, 0.0));

  // Rank one v v^T with |v|^2 = 30.
  const std::vector<double> v{1, 2, 3, 4};
  std::vector<double> r(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i * 4 + j] = v[i] * v[j];
  auto ev = jacobi_eigenvalues(r, 4);
  CHECK_THAT(ev[3], WithinAbs(30.0, 1e-12));
  for (int i = 0; i < 3; ++i) CHECK_THAT(ev[i], WithinAbs(0.0, 1e-12));

  CHECK_THROWS_AS(jacobi_eigenvalues({1, 2, 3}, 2), std::invalid_argument);
}

TEST_CASE("Jacobi eigenvalues reproduce power sums of random matrices") {
  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 1 + gen() % 30;
    const auto a = random_symmetric(n, gen);
    const auto ev = jacobi_eigenvalues(a, n);
    REQUIRE(ev.size() == n);
    CHECK(std::is_sorted(ev.begin(), ev.end()));
    const auto a2 = multiply(a, a, n);
    const auto a3 = multiply(a2, a, n);
    INFO("n=" << n);
    const double scale = std::max(1.0, std::sqrt(trace(a2, n)));
    CHECK_THAT(power_sum(ev, 1), WithinAbs(trace(a, n), 1e-9 * scale * n));
    CHECK_THAT(power_sum(ev, 2), WithinRel(trace(a2, n), 1e-10));
    CHECK_THAT(power_sum(ev, 3), WithinAbs(trace(a3, n), 1e-9 * std::pow(scale, 3)));
  }
}

TEST_CASE("Hermitian eigenvalues match the 2x2 closed form") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 50; ++rep) {
    const double a = g(gen), d = g(gen), x = g(gen), y = g(gen);
    const std::vector<double> re{a, x, x, d};
    const std::vector<double> im{0, y, -y, 0};
    const auto ev = hermitian_eigenvalues(re, im, 2);
    REQUIRE(ev.size() == 2);
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + x * x + y * y);
    CHECK_THAT(ev[0], WithinAbs(mid - rad, 1e-12));
    CHECK_THAT(ev[1], WithinAbs(mid + rad, 1e-12));
  }
  CHECK(hermitian_eigenvalues(std::vector<double>{4.0}, std::vector<double>{0.0}, 1) == std::vector<double>{4.0});
}

TEST_CASE("block fast path agrees with dense Jacobi") {
  std::mt19937_64 gen(8);
  std::vector<EnsembleSpec> specs;
  for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{
           {48, 4}, {96, 8}, {45, 3}, {30, 1}, {31, 1}, {12, 12}, {64, 2}, {90, 5}})
    specs.push_back(EnsembleSpec::block_circulant(n, m, gen()));
  for (const char* p : {"aabb", "abba", "aab", "abcbca"})
    specs.push_back(EnsembleSpec::generalized(std::string(p).size() * 7, Pattern::parse(p), gen()));
  for (const auto& spec : specs) {
    const Ensemble e(spec);
    for (int t = 0; t < 3; ++t) {
      const auto a = e.sample(t);
      const auto dense = eigs_dense(a);
      const auto fast = eigs_block_circulant(spec, a);
      REQUIRE(fast.values.size() == spec.n);
      double worst = 0.0;
      for (std::size_t i = 0; i < spec.n; ++i) worst = std::max(worst, std::abs(dense.values[i] - fast.values[i]));
      INFO("N=" << spec.n << " m=" << spec.m);
      CHECK(worst <= 1e-8);
    }
  }
}

TEST_CASE("fast path rejects inputs without block circulant structure") {
  const auto t = EnsembleSpec::block_toeplitz(12, 3);
  CHECK_THROWS_AS(eigs_block_circulant(t, build_matrix(t)), std::invalid_argument);
  const auto c = EnsembleSpec::block_circulant(12, 3);
  CHECK_THROWS_AS(eigs_block_circulant(c, build_matrix(EnsembleSpec::block_circulant(12, 4))), std::invalid_argument);
  CHECK_THROWS_AS(eigs_block_circulant(c, build_matrix(EnsembleSpec::block_circulant(6, 3))), std::invalid_argument);
}

TEST_CASE("trace identities on ensemble samples") {
  std::mt19937_64 gen(21);
  for (auto spec : {EnsembleSpec::block_toeplitz(40, 4, gen()), EnsembleSpec::block_circulant(60, 3, gen()),
                    EnsembleSpec::generalized(40, Pattern::parse("aabb"), gen())}) {
    const auto a = build_matrix(spec);
    const auto s = spec.is_circulant() ? eigs_block_circulant(spec, a) : eigs_dense(a);
    const double rn = std::sqrt(static_cast<double>(spec.n));
    CHECK_THAT(power_sum(s.values, 1) * rn, WithinAbs(a.trace(), 1e-8 * a.frobenius_norm()));
    CHECK_THAT(power_sum(s.values, 2) * rn * rn, WithinRel(a.frobenius_norm() * a.frobenius_norm(), 1e-8));
    // Second empirical moment is (1/N^2) sum a_ij^2.
    const double f = a.frobenius_norm();
    CHECK_THAT(empirical_moment(s, 2), WithinRel(f * f / (rn * rn * rn * rn), 1e-10));
  }
}

TEST_CASE("block circulant eigenvalues pair up except on the real blocks") {
  for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{
           {64, 1}, {63, 1}, {60, 2}, {62, 2}, {60, 3}, {63, 3}, {64, 4}, {60, 4}}) {
    const auto spec = EnsembleSpec::block_circulant(n, m, 1234);
    const auto s = eigs_block_circulant(spec, build_matrix(spec));
    const std::size_t q = n / m;
    INFO("N=" << n << " m=" << m);
    CHECK(unpaired(s.values, 1e-8 * std::sqrt(static_cast<double>(n))) == (q % 2 ? m : 2 * m));
  }
}

TEST_CASE("empirical moments") {
  SpectralMeasure s{4, {-1.0, -0.5, 0.5, 1.0}};
  CHECK(empirical_moment(s, 1) == 0.0);
  CHECK(empirical_moment(s, 3) == 0.0);
  CHECK(empirical_moment(s, 2) == 0.625);
  CHECK_THROWS_AS(empirical_moment(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_moment(SpectralMeasure{}, 2), std::invalid_argument);
}

TEST_CASE("histogram normalization") {
  const std::vector<double> one{0.01};
  const Histogram h = histogram(one, 10, -1.0, 1.0);
  CHECK(h.bins() == 10);
  CHECK(h.density[5] == 1.0 / h.bin_width());
  CHECK(h.center(5) == Catch::Approx(0.1));

  std::mt19937_64 gen(4);
  std::normal_distribution<double> g;
  std::vector<double> xs(5000);
  for (double& x : xs) x = g(gen);
  const Histogram full = histogram(xs, 61, -10.0, 10.0);
  double mass = 0.0;
  for (double d : full.density) mass += d * full.bin_width();
  CHECK_THAT(mass, WithinAbs(1.0, 1e-12));

  const std::vector<double> mixed{0.5, 5.0, -7.0, 1.0};
  const Histogram clipped = histogram(mixed, 2, 0.0, 1.0);
  CHECK(clipped.out_of_range == 3);
  CHECK(clipped.density[1] == 0.25 / 0.5);

  CHECK_THROWS_AS(histogram({}, 10), std::invalid_argument);
  CHECK_THROWS_AS(histogram(one, 0), std::invalid_argument);
  CHECK_THROWS_AS(histogram(one, 5, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("central spacings") {
  SpectralMeasure s;
  s.n = 11;
  for (int i = 0; i < 11; ++i) s.values.push_back(i * i * 0.1);
  const auto all = central_spacings(s, 5);
  CHECK(all.zero_count == 0);
  CHECK(all.spacings.size() == 4);
  double mean = 0.0;
  for (double x : all.spacings) mean += x;
  CHECK_THAT(mean / 4, WithinAbs(1.0, 1e-14));
  // Window around the median (index 5): indices 3..7, gaps 0.7, 0.9, 1.1, 1.3.
  CHECK_THAT(all.spacings.front(), WithinAbs(0.7, 1e-12));
  CHECK_THAT(all.spacings.back(), WithinAbs(1.3, 1e-12));

  SpectralMeasure pairs{6, {-1, -1, 0, 0, 2, 2}};
  const auto p = central_spacings(pairs, 5);
  CHECK(p.zero_count == 2);
  CHECK(p.spacings.size() == 2);
  CHECK(p.zero_fraction() == 0.5);

  CHECK_THROWS_AS(central_spacings(s, 1), std::invalid_argument);
  CHECK_THROWS_AS(central_spacings(s, 11), std::invalid_argument);
}

TEST_CASE("symmetric circulant spacings have half their mass at zero") {
  const Ensemble e(EnsembleSpec::block_circulant(256, 1, 6));
  std::size_t zeros = 0, total = 0;
  for (int t = 0; t < 20; ++t) {
    const auto s = central_spacings(eigs_block_circulant(e.spec(), e.sample(t)), 40);
    zeros += s.zero_count;
    total += s.total();
  }
  CHECK_THAT(static_cast<double>(zeros) / total, WithinAbs(0.5, 0.05));
}

TEST_CASE("reference spacing laws") {
  CHECK(reference_spacing_density(SpacingReference::Exponential, 0.0) == 1.0);
  CHECK(reference_spacing_density(SpacingReference::GoeSurmise, 0.0) == 0.0);
  CHECK_THROWS_AS(reference_spacing_density(SpacingReference::GoeSurmise, -0.1), std::invalid_argument);
  for (auto kind : {SpacingReference::Exponential, SpacingReference::GoeSurmise}) {
    auto f = [kind](double s) { return reference_spacing_density(kind, s); };
    const double hi = kind == SpacingReference::Exponential ? 60.0 : 12.0;
    CHECK_THAT(simpson_oracle(f, 0, hi, 20000), WithinAbs(1.0, 1e-8));
    CHECK_THAT(simpson_oracle([&](double s) { return s * f(s); }, 0, hi, 20000), WithinAbs(1.0, 1e-8));
    for (double s : {0.3, 1.0, 2.5})
      CHECK_THAT(reference_spacing_cdf(kind, s), WithinAbs(simpson_oracle(f, 0, s, 2000), 1e-10));
  }
}

TEST_CASE("Kolmogorov-Smirnov distance") {
  std::vector<double> quantiles;
  const int n = 400;
  for (int i = 0; i < n; ++i) quantiles.push_back(-std::log1p(-(i + 0.5) / n));
  auto expo = [](double s) { return reference_spacing_cdf(SpacingReference::Exponential, s); };
  CHECK_THAT(ks_distance(quantiles, expo), WithinAbs(0.5 / n, 1e-12));
  CHECK(ks_distance({100.0}, expo) == Catch::Approx(1.0));
  CHECK_THROWS_AS(ks_distance({}, expo), std::invalid_argument);
}
