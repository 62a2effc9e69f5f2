#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bcirc/core.hpp"

namespace bcirc {

/// Sorted normalized eigenvalues lambda_i / sqrt(N) of one N x N matrix.
struct SpectralMeasure {
  std::size_t n = 0;
  std::vector<double> values;
};

/// Eigenvalues of a dense real symmetric matrix by cyclic Jacobi sweeps,
/// stopping once the off-diagonal Frobenius norm is <= rel_tol * ||A||_F.
/// `a` is row-major n x n and is consumed. Result is ascending, unnormalized.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n,
                                       double rel_tol = 1e-12);

/// Eigenvalues of an m x m Hermitian matrix X + iY via the real symmetric
/// embedding [[X, -Y], [Y, X]], which doubles every eigenvalue.
std::vector<double> hermitian_eigenvalues(std::span<const double> re, std::span<const double> im,
                                          std::size_t m);

SpectralMeasure eigs_dense(const SymmetricMatrix& matrix);

/// Fast path for m-block circulant samples (standard or generalized pattern):
/// the spectrum is the union over t of eig(sum_j B_j w^{jt}), w = exp(2 pi i m / N).
SpectralMeasure eigs_block_circulant(const EnsembleSpec& spec, const SymmetricMatrix& matrix);

/// (1/N) sum (lambda_i / sqrt N)^order.
double empirical_moment(const SpectralMeasure& s, unsigned order);

struct Histogram {
  double lo = -3.0;
  double hi = 3.0;
  std::vector<double> density;  // per-bin density, normalized by total sample count
  std::size_t samples = 0;
  std::size_t out_of_range = 0;

  std::size_t bins() const noexcept { return density.size(); }
  double bin_width() const { return (hi - lo) / static_cast<double>(density.size()); }
  double center(std::size_t b) const { return lo + (static_cast<double>(b) + 0.5) * bin_width(); }
};

inline constexpr std::size_t kDefaultBins = 61;
inline constexpr double kDefaultHistogramLo = -3.0;
inline constexpr double kDefaultHistogramHi = 3.0;

/// Density histogram over [lo, hi). Samples outside the range count towards
/// the normalization but land in no bin.
Histogram histogram(std::span<const double> samples, std::size_t bins = kDefaultBins,
                    double lo = kDefaultHistogramLo, double hi = kDefaultHistogramHi);

/// Consecutive gaps among the `count` eigenvalues nearest the median.
struct SpacingSample {
  std::vector<double> spacings;  // non-degenerate gaps, rescaled to mean 1
  std::size_t zero_count = 0;    // gaps below the dedup tolerance
  std::size_t total() const noexcept { return spacings.size() + zero_count; }
  double zero_fraction() const {
    return total() ? static_cast<double>(zero_count) / static_cast<double>(total()) : 0.0;
  }
};

/// Default dedup tolerance 1e-8 * sqrt(N) applies when `dedup_tolerance` is empty.
SpacingSample central_spacings(const SpectralMeasure& s, std::size_t count,
                               std::optional<double> dedup_tolerance = std::nullopt);

enum class SpacingReference { Exponential, GoeSurmise };

double reference_spacing_density(SpacingReference kind, double s);
double reference_spacing_cdf(SpacingReference kind, double s);

/// sup |F_emp - F| for a continuous reference CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

}  // namespace bcirc
