#include "bcirc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bcirc {

SpectralMeasure eigs_dense(const SymmetricMatrix& matrix) {
  const std::size_t n = matrix.size();
  const auto data = matrix.data();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (data[i * n + j] != data[j * n + i])
        throw std::invalid_argument("eigs_dense: matrix is not symmetric");

  SpectralMeasure out;
  out.n = n;
  out.values = jacobi_eigenvalues(std::vector<double>(data.begin(), data.end()), n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& v : out.values) v *= scale;
  return out;
}

SpectralMeasure eigs_block_circulant(const EnsembleSpec& spec, const SymmetricMatrix& matrix) {
  if (!spec.is_circulant())
    throw std::invalid_argument("eigs_block_circulant: ensemble kind is not block circulant");
  spec.validate();
  const std::size_t n = spec.n;
  const std::size_t m = spec.m;
  if (matrix.size() != n) throw std::invalid_argument("eigs_block_circulant: dimension mismatch");
  const std::size_t q = n / m;

  // Block row (B_0, ..., B_{q-1}) and a structural check that block (r, c)
  // equals B_{(c - r) mod q}.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = i / m;
    const std::size_t a = i % m;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t c = j / m;
      const std::size_t b = j % m;
      const std::size_t shift = (c + q - r) % q;
      if (matrix(i, j) != matrix(a, shift * m + b))
        throw std::invalid_argument("eigs_block_circulant: matrix is not " + std::to_string(m) +
                                    "-block circulant");
    }
  }

  std::vector<double> cos_table(q);
  std::vector<double> sin_table(q);
  for (std::size_t k = 0; k < q; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q);
    cos_table[k] = std::cos(angle);
    sin_table[k] = std::sin(angle);
  }

  SpectralMeasure out;
  out.n = n;
  out.values.reserve(n);
  std::vector<double> re(m * m);
  std::vector<double> im(m * m);
  for (std::size_t t = 0; t < q; ++t) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a; b < m; ++b) {
        double sr = 0.0;
        double si = 0.0;
        for (std::size_t j = 0; j < q; ++j) {
          const double v = matrix(a, j * m + b);
          const std::size_t k = (j * t) % q;
          sr += v * cos_table[k];
          si += v * sin_table[k];
        }
        re[a * m + b] = sr;
        im[a * m + b] = si;
        re[b * m + a] = sr;
        im[b * m + a] = -si;
      }
      im[a * m + a] = 0.0;
    }
    for (double v : hermitian_eigenvalues(re, im, m)) out.values.push_back(v);
  }

  std::sort(out.values.begin(), out.values.end());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& v : out.values) v *= scale;
  return out;
}

double empirical_moment(const SpectralMeasure& s, unsigned order) {
  if (order == 0) throw std::invalid_argument("empirical_moment: order must be >= 1");
  if (s.values.empty()) throw std::invalid_argument("empirical_moment: empty spectrum");
  double sum = 0.0;
  for (double v : s.values) {
    double p = 1.0;
    for (unsigned e = 0; e < order; ++e) p *= v;
    sum += p;
  }
  return sum / static_cast<double>(s.values.size());
}

Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi) {
  if (bins == 0) throw std::invalid_argument("histogram: bins must be >= 1");
  if (!(hi > lo)) throw std::invalid_argument("histogram: empty range");
  if (samples.empty()) throw std::invalid_argument("histogram: empty sample");

  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.samples = samples.size();
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : samples) {
    if (!(x >= lo && x < hi)) {
      ++h.out_of_range;
      continue;
    }
    auto b = static_cast<std::size_t>((x - lo) / width);
    counts[std::min(b, bins - 1)] += 1;
  }
  h.density.resize(bins);
  const double norm = 1.0 / (static_cast<double>(samples.size()) * width);
  for (std::size_t b = 0; b < bins; ++b) h.density[b] = static_cast<double>(counts[b]) * norm;
  return h;
}

SpacingSample central_spacings(const SpectralMeasure& s, std::size_t count,
                               std::optional<double> dedup_tolerance) {
  if (count < 2) throw std::invalid_argument("central_spacings: count must be >= 2");
  if (count >= s.values.size())
    throw std::invalid_argument("central_spacings: count must be < N");
  const double tol = dedup_tolerance.value_or(1e-8 * std::sqrt(static_cast<double>(s.n)));

  // Window of `count` sorted values centred on the median position.
  const std::size_t size = s.values.size();
  const std::size_t mid = size / 2;
  std::size_t start = mid >= count / 2 ? mid - count / 2 : 0;
  start = std::min(start, size - count);

  SpacingSample out;
  for (std::size_t i = start + 1; i < start + count; ++i) {
    const double gap = s.values[i] - s.values[i - 1];
    if (gap < tol)
      ++out.zero_count;
    else
      out.spacings.push_back(gap);
  }
  if (!out.spacings.empty()) {
    double mean = 0.0;
    for (double g : out.spacings) mean += g;
    mean /= static_cast<double>(out.spacings.size());
    for (double& g : out.spacings) g /= mean;
  }
  return out;
}

double reference_spacing_density(SpacingReference kind, double s) {
  if (s < 0.0) throw std::invalid_argument("reference_spacing_density: s must be >= 0");
  switch (kind) {
    case SpacingReference::Exponential:
      return std::exp(-s);
    case SpacingReference::GoeSurmise:
      return 0.5 * std::numbers::pi * s * std::exp(-0.25 * std::numbers::pi * s * s);
  }
  return 0.0;
}

double reference_spacing_cdf(SpacingReference kind, double s) {
  if (s <= 0.0) return 0.0;
  switch (kind) {
    case SpacingReference::Exponential:
      return -std::expm1(-s);
    case SpacingReference::GoeSurmise:
      return -std::expm1(-0.25 * std::numbers::pi * s * s);
  }
  return 0.0;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

}  // namespace bcirc
