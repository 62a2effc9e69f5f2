#pragma once

// Plot-ready CSV output: UTF-8, header row, '.' decimal separator, LF line
// endings, shortest round-trip formatting of doubles.

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bcirc/core.hpp"
#include "bcirc/spectra.hpp"

namespace bcirc {

/// Locale-independent shortest representation that parses back exactly.
std::string format_double(double v);
/// "p/q" (or "p" when q == 1).
std::string format_rational(const Rational& q);

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header);
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);

  /// Cells are written verbatim; the count must match the header.
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
  std::size_t columns_;
};

void write_eigenvalues_csv(std::ostream& os, std::span<const double> values);
void write_histogram_csv(std::ostream& os, const Histogram& h);
void write_spacings_csv(std::ostream& os, std::span<const double> spacings);

}  // namespace bcirc
