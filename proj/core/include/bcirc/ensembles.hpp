#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "bcirc/core.hpp"

namespace bcirc {

/// Canonical identifier of an entry's equivalence class: the (folded)
/// diagonal plus the symbol read from the slot that owns the entry.
struct LinkKey {
  std::size_t diagonal = 0;
  int symbol = 0;

  friend auto operator<=>(const LinkKey&, const LinkKey&) = default;
};

/// Link key of entry (i, j), 1-based indices.
///
/// Circulant kinds: with d = (j - i) mod N the key is (d, slot(i)) for
/// d < N/2, (N - d, slot(j)) for d > N/2. On the d = N/2 diagonal symmetry
/// ties slot(i) to slot(i + N/2); the symbol is the smallest one in the
/// connected component of those ties. Toeplitz: d = j - i unwrapped, keyed by
/// the row index of the upper-triangle copy. slot(e) = pattern[e mod m].
LinkKey link_key(const EnsembleSpec& spec, std::size_t i, std::size_t j);

/// Dense table of variable ids for every entry, numbered by first appearance
/// in a row-major scan of the upper triangle.
class LinkMap {
 public:
  explicit LinkMap(const EnsembleSpec& spec);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t variable_count() const noexcept { return count_; }
  /// 0-based indices.
  std::uint32_t id(std::size_t i, std::size_t j) const { return (*ids_)[i * n_ + j]; }
  const std::shared_ptr<const std::vector<std::uint32_t>>& ids() const noexcept { return ids_; }

 private:
  std::size_t n_ = 0;
  std::size_t count_ = 0;
  std::shared_ptr<const std::vector<std::uint32_t>> ids_;
};

/// A validated ensemble with its link map cached; sample(t) is the t-th
/// reproducible draw.
class Ensemble {
 public:
  explicit Ensemble(EnsembleSpec spec);

  const EnsembleSpec& spec() const noexcept { return spec_; }
  const LinkMap& links() const noexcept { return links_; }
  SymmetricMatrix sample(std::uint64_t trial = 0) const;

 private:
  EnsembleSpec spec_;
  LinkMap links_;
};

/// One sample from stream 0 of spec.seed.
SymmetricMatrix build_matrix(const EnsembleSpec& spec);

std::size_t count_free_parameters(const EnsembleSpec& spec);

/// Row-major CSV with a c1..cN header row, shortest round-trip digits.
void write_matrix_csv(std::ostream& os, const SymmetricMatrix& m);
/// Reads the format written by write_matrix_csv (square, symmetric); the
/// header row is optional.
SymmetricMatrix read_matrix_csv(std::istream& is);

nlohmann::json to_json(const EnsembleSpec& spec);
EnsembleSpec ensemble_spec_from_json(const nlohmann::json& j);

}  // namespace bcirc
