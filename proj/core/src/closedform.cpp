#include "bcirc/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "bcirc/moments.hpp"

namespace bcirc {
namespace {

// Cancellation in the alternating polynomials costs about 1.5 m bits.
mp_bitcnt_t precision_for(unsigned m) { return 64 + 2 * static_cast<mp_bitcnt_t>(m); }

struct SignedLog {
  int sign = 0;  // -1, 0, +1
  double log_abs = 0.0;
};

SignedLog signed_log(const mpf_class& v) {
  const int sign = sgn(v);
  if (sign == 0) return {};
  long exponent = 0;
  const double mantissa = mpf_get_d_2exp(&exponent, v.get_mpf_t());
  return {sign, std::log(std::abs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2};
}

double scaled(const mpf_class& v, double log_scale) {
  const SignedLog l = signed_log(v);
  if (l.sign == 0) return 0.0;
  return l.sign * std::exp(l.log_abs + log_scale);
}

mpf_class horner(const std::vector<mpf_class>& coeffs, const mpf_class& y, mp_bitcnt_t prec) {
  mpf_class acc(0, prec);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
  return acc;
}

std::vector<mpf_class> to_mpf(const std::vector<Rational>& q, mp_bitcnt_t prec) {
  std::vector<mpf_class> out;
  out.reserve(q.size());
  for (const auto& c : q) out.emplace_back(c, prec);
  return out;
}

std::vector<Rational> derivative(const std::vector<Rational>& p) {
  if (p.size() <= 1) return {Rational(0)};
  std::vector<Rational> d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  return d;
}

struct LaguerreModel {
  unsigned m;
  mp_bitcnt_t prec;
  std::vector<mpf_class> l0, l1, l2;

  explicit LaguerreModel(unsigned m_) : m(m_), prec(precision_for(m_)) {
    const auto c0 = laguerre_coefficients(m);
    const auto c1 = derivative(c0);
    const auto c2 = derivative(c1);
    l0 = to_mpf(c0, prec);
    l1 = to_mpf(c1, prec);
    l2 = to_mpf(c2, prec);
  }
};

const LaguerreModel& laguerre_model(unsigned m) {
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<LaguerreModel>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<LaguerreModel>(m);
  return *slot;
}

}  // namespace

DensityModel::DensityModel(unsigned m) : m_(m), precision_(precision_for(m)) {
  if (m < 1) throw ConfigError("density requires m >= 1");
  exact_.reserve(m);
  for (unsigned r = 0; r < m; ++r) {
    Rational inner(0);
    for (unsigned s = 0; r + s + 1 <= m; ++s) {
      Rational term(binomial(m, r + s + 1) * factorial(2 * r + 2 * s),
                    factorial(r + s) * factorial(s));
      term.canonicalize();
      BigInt two_pow = BigInt(1) << s;
      Rational half_pow(BigInt(s % 2 ? -1 : 1), two_pow);
      half_pow.canonicalize();
      inner += term * half_pow;
    }
    Rational coeff = inner / Rational(factorial(2 * r));
    coeff.canonicalize();
    exact_.push_back(coeff);
  }
  coeffs_ = to_mpf(exact_, precision_);
}

double DensityModel::operator()(double x) const {
  mpf_class y(x, precision_);
  y = y * y * m_;
  const mpf_class poly = horner(coeffs_, y, precision_);
  const double md = static_cast<double>(m_);
  const double log_scale = -0.5 * md * x * x - 0.5 * std::log(2.0 * std::numbers::pi * md);
  return scaled(poly, log_scale);
}

const DensityModel& density_model(unsigned m) {
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<DensityModel>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<DensityModel>(m);
  return *slot;
}

double density(unsigned m, double x) { return density_model(m)(x); }

std::vector<Rational> laguerre_coefficients(unsigned m) {
  if (m < 1) throw ConfigError("phi requires m >= 1");
  std::vector<Rational> c(m);
  for (unsigned i = 0; i < m; ++i) {
    Rational q(binomial(m, m - 1 - i), factorial(i));
    q.canonicalize();
    c[i] = (i % 2) ? Rational(-q) : q;
  }
  return c;
}

PhiValue phi_with_derivatives(unsigned m, double t) {
  const LaguerreModel& lm = laguerre_model(m);
  const mp_bitcnt_t prec = lm.prec;
  const mpf_class tt(t, prec);
  const mpf_class md(m, prec);
  const mpf_class u = tt * tt / md;
  const mpf_class l0 = horner(lm.l0, u, prec);
  const mpf_class l1 = horner(lm.l1, u, prec);
  const mpf_class l2 = horner(lm.l2, u, prec);

  // phi = (1/m) e^{-t^2/2m} L(u) with u = t^2 / m.
  const mpf_class a = tt / md;  // t/m
  const mpf_class first = -a * l0 + 2 * a * l1;
  const mpf_class second = (a * a - 1 / md) * l0 + (2 / md - 4 * a * a) * l1 + 4 * a * a * l2;

  const double log_scale = -t * t / (2.0 * m) - std::log(static_cast<double>(m));
  return {scaled(l0, log_scale), scaled(first, log_scale), scaled(second, log_scale)};
}

double phi(unsigned m, double t) { return phi_with_derivatives(m, t).value; }

double phi_moment_series(unsigned m, double t, unsigned terms) {
  double sum = 0.0;
  double power = 1.0;  // (-t^2)^k / (2k)!
  for (unsigned k = 0; k <= terms; ++k) {
    if (k > 0) power *= -t * t / (static_cast<double>(2 * k - 1) * static_cast<double>(2 * k));
    sum += power * to_double(limiting_moment(k, m));
  }
  return sum;
}

double phi_ode_residual(unsigned m, double t) {
  const PhiValue p = phi_with_derivatives(m, t);
  const double r = t / m;
  return t * p.d2 + 3.0 * p.d1 + t * (4.0 - r * r) * p.value;
}

double wigner_density(double x) {
  if (std::abs(x) > 2.0) return 0.0;
  return std::sqrt(std::max(0.0, 1.0 - 0.25 * x * x)) / std::numbers::pi;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("uniform_grid: bad range or step");
  const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

double sup_distance_to_wigner(unsigned m, std::span<const double> grid) {
  const DensityModel& model = density_model(m);
  double sup = 0.0;
  for (double x : grid) sup = std::max(sup, std::abs(model(x) - wigner_density(x)));
  return sup;
}

double sup_distance_to_wigner(unsigned m) {
  const auto grid = uniform_grid(-3.0, 3.0, 0.01);
  return sup_distance_to_wigner(m, grid);
}

double simpson(const std::function<double(double)>& f, double a, double b, std::size_t intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 2) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + static_cast<double>(i) * h);
  return sum * h / 3.0;
}

double density_moment_quadrature(unsigned m, unsigned order, std::size_t intervals) {
  const DensityModel& model = density_model(m);
  return simpson([&](double x) { return std::pow(x, order) * model(x); }, -8.0, 8.0, intervals);
}

double phi_numeric_transform_check(unsigned m, std::span<const double> xgrid) {
  if (m < 1 || m > kMaxTransformCheckM)
    throw ConfigError("phi_numeric_transform_check supports 1 <= m <= " +
                      std::to_string(kMaxTransformCheckM));
  // phi is even, so f(x) = (1/pi) int_0^T cos(t x) phi(t) dt.
  const double t_max = 40.0 * std::sqrt(static_cast<double>(m));
  auto intervals = static_cast<std::size_t>(std::ceil(t_max / 0.01));
  if (intervals % 2) ++intervals;
  const double h = t_max / static_cast<double>(intervals);

  std::vector<double> t(intervals + 1);
  std::vector<double> weighted(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    t[i] = static_cast<double>(i) * h;
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    weighted[i] = w * h / 3.0 * phi(m, t[i]);
  }

  const DensityModel& model = density_model(m);
  double worst = 0.0;
  for (double x : xgrid) {
    double sum = 0.0;
    for (std::size_t i = 0; i <= intervals; ++i) sum += weighted[i] * std::cos(t[i] * x);
    worst = std::max(worst, std::abs(sum / std::numbers::pi - model(x)));
  }
  return worst;
}

double phi_numeric_transform_check(unsigned m) {
  const auto grid = uniform_grid(-4.0, 4.0, 0.05);
  return phi_numeric_transform_check(m, grid);
}

}  // namespace bcirc
