#include "bcirc/io.hpp"

#include <array>
#include <charconv>
#include <ostream>
#include <stdexcept>

namespace bcirc {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

CsvWriter::CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header)
    : os_(os), columns_(header.size()) {
  bool first = true;
  for (auto h : header) {
    if (!first) os_ << ',';
    os_ << h;
    first = false;
  }
  os_ << '\n';
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::logic_error("CsvWriter: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
  os_ << '\n';
}

void write_eigenvalues_csv(std::ostream& os, std::span<const double> values) {
  CsvWriter csv(os, {"eigenvalue"});
  for (double v : values) csv.row({format_double(v)});
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  CsvWriter csv(os, {"bin_center", "density"});
  for (std::size_t b = 0; b < h.bins(); ++b) csv.row({format_double(h.center(b)), format_double(h.density[b])});
}

void write_spacings_csv(std::ostream& os, std::span<const double> spacings) {
  CsvWriter csv(os, {"spacing"});
  for (double s : spacings) csv.row({format_double(s)});
}

}  // namespace bcirc
