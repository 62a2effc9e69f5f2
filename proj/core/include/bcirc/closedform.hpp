#pragma once

// Closed-form limiting spectral law of the m-block circulant ensemble: the
// characteristic function phi_m, the density f_m, the semicircle comparison
// density and convergence diagnostics.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "bcirc/core.hpp"

namespace bcirc {

/// f_m(x) = exp(-m x^2 / 2) / sqrt(2 pi m) * sum_r p_r (m x^2)^r.
///
/// The p_r alternate in sign and lose roughly 0.45 m decimal digits to
/// cancellation, so the polynomial is evaluated in GMP floats sized by m and
/// combined with the Gaussian factor in log space.
class DensityModel {
 public:
  explicit DensityModel(unsigned m);

  unsigned period() const noexcept { return m_; }
  /// p_0 .. p_{m-1}, exact.
  const std::vector<Rational>& coefficients() const noexcept { return exact_; }
  double operator()(double x) const;

 private:
  unsigned m_;
  mp_bitcnt_t precision_;
  std::vector<Rational> exact_;
  std::vector<mpf_class> coeffs_;
};

/// Shared, lazily built model per m (thread-safe).
const DensityModel& density_model(unsigned m);

double density(unsigned m, double x);

struct PhiValue {
  double value = 0.0;
  double d1 = 0.0;  // d/dt
  double d2 = 0.0;  // d^2/dt^2
};

/// phi_m(t) = (1/m) exp(-t^2 / 2m) L^{(1)}_{m-1}(t^2 / m), with analytic
/// first and second derivatives.
PhiValue phi_with_derivatives(unsigned m, double t);
double phi(unsigned m, double t);

/// Coefficients of L^{(1)}_{m-1}(x) = sum_i C(m, m-1-i) (-x)^i / i!.
std::vector<Rational> laguerre_coefficients(unsigned m);

/// sum_{k=0}^{terms} (-t^2)^k M_{2k;m} / (2k)!, the moment series of phi_m.
double phi_moment_series(unsigned m, double t, unsigned terms = 20);

/// t phi'' + 3 phi' + t (4 - (t/m)^2) phi.
double phi_ode_residual(unsigned m, double t);

/// (1/pi) sqrt(1 - (x/2)^2) on |x| <= 2, else 0.
double wigner_density(double x);

std::vector<double> uniform_grid(double lo, double hi, double step);

/// max over the grid of |f_m(x) - f_Wig(x)|.
double sup_distance_to_wigner(unsigned m, std::span<const double> grid);
/// Same on the default grid [-3, 3], step 0.01.
double sup_distance_to_wigner(unsigned m);

/// Composite Simpson rule; `intervals` is rounded up to an even number.
double simpson(const std::function<double(double)>& f, double a, double b, std::size_t intervals);

/// Quadrature of x^order f_m(x) over [-8, 8].
double density_moment_quadrature(unsigned m, unsigned order, std::size_t intervals = 3200);

inline constexpr unsigned kMaxTransformCheckM = 32;

/// Numerically inverts phi_m with the cosine transform truncated at
/// |t| <= 40 sqrt(m) and returns max |inverse - f_m| over the x grid.
double phi_numeric_transform_check(unsigned m, std::span<const double> xgrid);
/// Same on x in [-4, 4], step 0.05.
double phi_numeric_transform_check(unsigned m);

}  // namespace bcirc
