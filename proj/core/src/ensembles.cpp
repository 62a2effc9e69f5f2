#include "bcirc/ensembles.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace bcirc {
namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// On the N/2 diagonal entry (i, i+N/2) equals entry (i+N/2, i), which ties
// pattern[e] to pattern[e + N/2]. Each slot gets the smallest symbol in its
// connected component of those ties.
std::vector<int> half_diagonal_symbols(const Pattern& pattern, std::size_t n) {
  const std::size_t m = pattern.period();
  const auto symbols = pattern.symbols();
  const int max_symbol = *std::max_element(symbols.begin(), symbols.end());
  std::vector<int> parent(static_cast<std::size_t>(max_symbol) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  const std::size_t shift = (n / 2) % m;
  for (std::size_t s = 0; s < m; ++s) {
    int a = find_root(parent, symbols[s]);
    int b = find_root(parent, symbols[(s + shift) % m]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> out(m);
  for (std::size_t e = 0; e < m; ++e) out[e] = find_root(parent, symbols[e]);
  return out;
}

struct KeyContext {
  EnsembleKind kind;
  std::size_t n;
  Pattern pattern;
  std::vector<int> half;

  explicit KeyContext(const EnsembleSpec& spec)
      : kind(spec.kind), n(spec.n), pattern(spec.effective_pattern()),
        half(half_diagonal_symbols(pattern, spec.n)) {}

  LinkKey operator()(std::size_t i, std::size_t j) const {
    const std::size_t m = pattern.period();
    auto slot = [&](std::size_t idx) { return pattern.symbol(idx % m); };
    if (kind == EnsembleKind::BlockToeplitz) {
      if (j >= i) return {j - i, slot(i)};
      return {i - j, slot(j)};
    }
    const std::size_t d = (j + n - i) % n;
    if (2 * d < n) return {d, slot(i)};
    if (2 * d > n) return {n - d, slot(j)};
    return {d, half[i % m]};
  }
};

}  // namespace

LinkKey link_key(const EnsembleSpec& spec, std::size_t i, std::size_t j) {
  const std::size_t n = spec.n;
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::out_of_range("link_key index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside 1.." + std::to_string(n));
  if (spec.m == 0 || n % spec.m != 0)
    throw ConfigError("m = " + std::to_string(spec.m) + " does not divide N = " + std::to_string(n));
  return KeyContext(spec)(i, j);
}

LinkMap::LinkMap(const EnsembleSpec& spec) : n_(spec.n) {
  spec.validate();
  auto ids = std::make_shared<std::vector<std::uint32_t>>(n_ * n_);
  const KeyContext key_of(spec);
  std::map<LinkKey, std::uint32_t> numbering;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      const LinkKey key = key_of(i + 1, j + 1);
      auto [it, inserted] = numbering.try_emplace(key, static_cast<std::uint32_t>(numbering.size()));
      (*ids)[i * n_ + j] = it->second;
      (*ids)[j * n_ + i] = it->second;
    }
  }
  count_ = numbering.size();
  ids_ = std::move(ids);
}

Ensemble::Ensemble(EnsembleSpec spec) : spec_(std::move(spec)), links_(spec_) {}

SymmetricMatrix Ensemble::sample(std::uint64_t trial) const {
  RandomStream rng(spec_.seed, trial);
  std::vector<double> values(links_.variable_count());
  for (double& v : values) v = sample_value(spec_.dist, rng);

  const std::size_t n = spec_.n;
  SymmetricMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.set(i, j, values[links_.id(i, j)]);
  out.attach_link(links_.ids());
  return out;
}

SymmetricMatrix build_matrix(const EnsembleSpec& spec) { return Ensemble(spec).sample(0); }

std::size_t count_free_parameters(const EnsembleSpec& spec) {
  return LinkMap(spec).variable_count();
}

void write_matrix_csv(std::ostream& os, const SymmetricMatrix& m) {
  const std::size_t n = m.size();
  std::string line;
  for (std::size_t j = 0; j < n; ++j) line += (j ? ",c" : "c") + std::to_string(j + 1);
  os << line << '\n';
  std::array<char, 32> buf{};
  for (std::size_t i = 0; i < n; ++i) {
    line.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j) line += ',';
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), m(i, j));
      line.append(buf.data(), res.ptr);
    }
    os << line << '\n';
  }
}

SymmetricMatrix read_matrix_csv(std::istream& is) {
  std::vector<double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  bool first_line = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    // Optional header row of column names.
    if (first_line && (std::isalpha(static_cast<unsigned char>(line.front())) || line.front() == '"')) {
      first_line = false;
      continue;
    }
    first_line = false;
    std::size_t count = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      const char* lo = b == std::string::npos ? cell.data() : cell.data() + b;
      const char* hi = e == std::string::npos ? cell.data() : cell.data() + e + 1;
      if (lo < hi && *lo == '+') ++lo;
      double v = 0.0;
      const auto res = std::from_chars(lo, hi, v);
      if (res.ec != std::errc{} || res.ptr != hi || lo == hi)
        throw ConfigError("matrix CSV: cannot parse '" + cell + "' on row " + std::to_string(rows + 1));
      if (!std::isfinite(v)) throw ConfigError("matrix CSV: non-finite entry on row " + std::to_string(rows + 1));
      data.push_back(v);
      ++count;
    }
    if (rows == 0) cols = count;
    if (count != cols) throw ConfigError("matrix CSV: ragged row " + std::to_string(rows + 1));
    ++rows;
  }
  if (rows == 0 || rows != cols) throw ConfigError("matrix CSV must be square and non-empty");
  try {
    return SymmetricMatrix::from_dense(rows, std::move(data));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("matrix CSV: ") + e.what());
  }
}

nlohmann::json to_json(const EnsembleSpec& spec) {
  nlohmann::json j;
  j["kind"] = ensemble_kind_name(spec.kind);
  j["N"] = spec.n;
  j["m"] = spec.m;
  j["pattern"] = spec.pattern ? nlohmann::json(spec.pattern->to_string()) : nlohmann::json(nullptr);
  j["dist"] = spec.dist.name();
  j["seed"] = spec.seed;
  return j;
}

EnsembleSpec ensemble_spec_from_json(const nlohmann::json& j) {
  try {
    EnsembleSpec spec;
    spec.kind = parse_ensemble_kind(j.at("kind").get<std::string>());
    spec.n = j.at("N").get<std::size_t>();
    spec.m = j.at("m").get<std::size_t>();
    if (j.contains("pattern") && !j.at("pattern").is_null())
      spec.pattern = Pattern::parse(j.at("pattern").get<std::string>());
    if (j.contains("dist")) spec.dist = EntryDistribution::parse(j.at("dist").get<std::string>());
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("ensemble spec JSON: ") + e.what());
  }
}

}  // namespace bcirc
