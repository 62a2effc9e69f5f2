#include <algorithm>
#include <cmath>
#include <string>

#include "bcirc/spectra.hpp"

namespace bcirc {

std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n, double rel_tol) {
  if (a.size() != n * n) throw std::invalid_argument("jacobi: data size is not n*n");
  std::vector<double> eig(n);
  if (n == 0) return eig;

  double largest = 0.0;
  for (double v : a) {
    if (!std::isfinite(v)) throw std::invalid_argument("jacobi: matrix has non-finite entries");
    largest = std::max(largest, std::abs(v));
  }
  if (largest == 0.0) return eig;
  // Power-of-two rescaling keeps the sums of squares in range and is exact.
  const int exponent = std::ilogb(largest);
  for (double& v : a) v = std::ldexp(v, -exponent);

  double total = 0.0;
  for (double v : a) total += v * v;
  const double threshold = rel_tol * std::sqrt(total);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a[p * n + q] * a[p * n + q];
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (off_norm() > threshold) {
    if (++sweep > kMaxSweeps)
      throw InvariantViolation("jacobi: no convergence after " + std::to_string(kMaxSweeps) +
                               " sweeps (n = " + std::to_string(n) + ")");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // Rutishauser's formulation: t = tan(phi) with |phi| <= pi/4.
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          const double new_rp = arp - s * (arq + tau * arp);
          const double new_rq = arq + s * (arp - tau * arq);
          a[r * n + p] = new_rp;
          a[p * n + r] = new_rp;
          a[r * n + q] = new_rq;
          a[q * n + r] = new_rq;
        }
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    eig[i] = std::ldexp(a[i * n + i], exponent);
    if (!std::isfinite(eig[i])) throw InvariantViolation("jacobi: non-finite eigenvalue");
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> hermitian_eigenvalues(std::span<const double> re, std::span<const double> im,
                                          std::size_t m) {
  if (m == 1) return {re[0]};
  const std::size_t w = 2 * m;
  std::vector<double> big(w * w);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double x = re[i * m + j];
      const double y = im[i * m + j];
      big[i * w + j] = x;
      big[(i + m) * w + (j + m)] = x;
      big[i * w + (j + m)] = -y;
      big[(i + m) * w + j] = y;
    }
  }
  std::vector<double> doubled = jacobi_eigenvalues(std::move(big), w);
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = doubled[2 * i];
  return out;
}

}  // namespace bcirc
