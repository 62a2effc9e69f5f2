#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "bcirc/closedform.hpp"
#include "bcirc/core.hpp"
#include "bcirc/ensembles.hpp"
#include "bcirc/genpattern.hpp"
#include "bcirc/io.hpp"
#include "bcirc/moments.hpp"
#include "bcirc/parallel.hpp"
#include "bcirc/spectra.hpp"

namespace bcirc::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
};

struct Result {
  Table table;
  json statistics = json::object();
};

std::string cell_text(const json& v) {
  if (v.is_null()) return {};
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_csv(std::ostream& os, const Table& t) {
  CsvWriter csv(os, t.header);
  std::vector<std::string> cells;
  for (const auto& row : t.rows) {
    cells.clear();
    for (const auto& v : row) cells.push_back(cell_text(v));
    csv.row(cells);
  }
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.header[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  return {{"columns", t.header}, {"rows", std::move(rows)}};
}

unsigned worker_count(const RunConfig& c) {
  if (c.threads > 0) return c.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

EnsembleSpec make_spec(const RunConfig& c) {
  const EnsembleKind kind = parse_ensemble_kind(c.kind);
  EnsembleSpec spec;
  switch (kind) {
    case EnsembleKind::BlockCirculant:
      spec = EnsembleSpec::block_circulant(c.n, c.m, c.seed);
      break;
    case EnsembleKind::BlockToeplitz:
      spec = EnsembleSpec::block_toeplitz(c.n, c.m, c.seed);
      break;
    case EnsembleKind::GeneralizedCirculant: {
      if (c.pattern.empty()) throw ConfigError("--kind pattern needs --pattern");
      Pattern p = Pattern::parse(c.pattern);
      if (p.period() != c.m)
        throw ConfigError("pattern '" + c.pattern + "' has length " + std::to_string(p.period()) +
                          " but m = " + std::to_string(c.m));
      spec = EnsembleSpec::generalized(c.n, std::move(p), c.seed);
      break;
    }
  }
  spec.dist = EntryDistribution::parse(c.dist);
  spec.validate();
  return spec;
}

SpectralMeasure solve(const RunConfig& c, const EnsembleSpec& spec, const SymmetricMatrix& mat) {
  if (c.solver == "dense") return eigs_dense(mat);
  if (c.solver == "block" || c.solver == "auto") {
    if (spec.is_circulant()) return eigs_block_circulant(spec, mat);
    if (c.solver == "block") throw ConfigError("--solver block needs a circulant ensemble");
    return eigs_dense(mat);
  }
  throw ConfigError("unknown solver '" + c.solver + "' (dense, block, auto)");
}

void require_trials(const RunConfig& c) {
  if (c.trials == 0) throw ConfigError("--trials must be at least 1");
}

std::optional<Rational> theory_moment(const EnsembleSpec& spec, unsigned order) {
  if (order % 2) return Rational(0);
  const unsigned k = order / 2;
  if (spec.kind == EnsembleKind::BlockCirculant) return limiting_moment(k, static_cast<unsigned>(spec.m));
  if (spec.kind == EnsembleKind::GeneralizedCirculant) {
    if (order == 2) return Rational(1);
    if (order == 4) return fourth_moment_analytic(*spec.pattern);
    if (spec.pattern->is_all_distinct()) return limiting_moment(k, static_cast<unsigned>(spec.m));
  }
  return std::nullopt;
}

Result cmd_simulate(const RunConfig& c) {
  require_trials(c);
  if (c.bins == 0) throw ConfigError("--bins must be at least 1");
  if (!(c.hi > c.lo)) throw ConfigError("--hi must exceed --lo");
  if (c.k_max < 1) throw ConfigError("--k-max must be at least 1");
  const Ensemble ensemble(make_spec(c));
  const unsigned orders = 2 * c.k_max;

  struct Trial {
    std::vector<double> values;
    std::vector<double> moments;
  };
  auto trials = run_trials(c.trials, worker_count(c), [&](std::size_t t) {
    Trial out;
    SpectralMeasure s = solve(c, ensemble.spec(), ensemble.sample(t));
    for (unsigned o = 1; o <= orders; ++o) out.moments.push_back(empirical_moment(s, o));
    out.values = std::move(s.values);
    return out;
  });

  std::vector<double> pooled;
  pooled.reserve(c.trials * c.n);
  for (const auto& t : trials) pooled.insert(pooled.end(), t.values.begin(), t.values.end());
  const Histogram h = histogram(pooled, c.bins, c.lo, c.hi);

  Result r;
  r.table.header = {"bin_center", "density", "f_m", "f_wig"};
  const auto& model = density_model(static_cast<unsigned>(c.m));
  for (std::size_t b = 0; b < h.bins(); ++b) {
    const double x = h.center(b);
    r.table.rows.push_back({x, h.density[b], model(x), wigner_density(x)});
  }

  json moments = json::array();
  for (unsigned o = 1; o <= orders; ++o) {
    double mean = 0.0;
    for (const auto& t : trials) mean += t.moments[o - 1];
    mean /= static_cast<double>(c.trials);
    double var = 0.0;
    for (const auto& t : trials) var += (t.moments[o - 1] - mean) * (t.moments[o - 1] - mean);
    var = c.trials > 1 ? var / static_cast<double>(c.trials - 1) : 0.0;
    json row = {{"order", o}, {"mean", mean}, {"standard_error", std::sqrt(var / static_cast<double>(c.trials))}};
    if (auto th = theory_moment(ensemble.spec(), o)) {
      row["theory"] = to_double(*th);
      row["theory_exact"] = format_rational(*th);
    } else {
      row["theory"] = nullptr;
    }
    moments.push_back(std::move(row));
  }
  r.statistics = {{"eigenvalues", h.samples},
                  {"out_of_range", h.out_of_range},
                  {"normalization", "lambda/sqrt(N)"},
                  {"moments", std::move(moments)}};
  return r;
}

Result cmd_density(const RunConfig& c) {
  if (c.m_list.empty()) throw ConfigError("-m needs at least one period");
  for (unsigned m : c.m_list)
    if (m < 1) throw ConfigError("periods must be >= 1");
  const auto grid = uniform_grid(c.lo, c.hi, c.step);

  Result r;
  r.table.header = {"x"};
  for (unsigned m : c.m_list) r.table.header.push_back("f_" + std::to_string(m));
  r.table.header.push_back("f_wig");
  for (double x : grid) {
    std::vector<json> row{x};
    for (unsigned m : c.m_list) row.emplace_back(density(m, x));
    row.emplace_back(wigner_density(x));
    r.table.rows.push_back(std::move(row));
  }
  json sup = json::object();
  for (unsigned m : c.m_list) sup[std::to_string(m)] = sup_distance_to_wigner(m, grid);
  r.statistics = {{"sup_distance_to_wigner", std::move(sup)}};
  return r;
}

Result cmd_moments(const RunConfig& c) {
  if (c.k_max < 1 || c.k_max > kMaxClosedFormK)
    throw ConfigError("--k-max must be in [1, " + std::to_string(kMaxClosedFormK) + "]");
  Result r;
  if (c.what == "moments") {
    if (c.m < 1) throw ConfigError("-m must be >= 1");
    r.table.header = {"k", "order", "m", "exact", "moment"};
    for (unsigned k = 1; k <= c.k_max; ++k) {
      const Rational q = limiting_moment(k, static_cast<unsigned>(c.m));
      r.table.rows.push_back({k, 2 * k, c.m, format_rational(q), to_double(q)});
    }
  } else if (c.what == "epsilon") {
    r.table.header = {"k", "g", "epsilon"};
    for (unsigned k = 1; k <= c.k_max; ++k) {
      const auto eps = epsilon_table(k);
      for (std::size_t g = 0; g < eps.size(); ++g) r.table.rows.push_back({k, g, eps[g].get_str()});
    }
  } else {
    throw ConfigError("--what must be 'moments' or 'epsilon'");
  }
  return r;
}

Result cmd_pairings(const RunConfig& c) {
  if (c.k < 1 || c.k > kMaxEnumerationK)
    throw ConfigError("-k must be in [1, " + std::to_string(kMaxEnumerationK) + "]");
  const auto counted = genus_histogram(c.k);
  const auto formula = epsilon_table(c.k);
  if (counted != formula)
    throw InvariantViolation("genus histogram disagrees with the generating-series table at k = " +
                             std::to_string(c.k));
  Result r;
  r.table.header = {"g", "count", "epsilon_formula"};
  BigInt total(0);
  for (std::size_t g = 0; g < counted.size(); ++g) {
    r.table.rows.push_back({g, counted[g].get_str(), formula[g].get_str()});
    total += counted[g];
  }
  if (total != odd_double_factorial(c.k)) throw InvariantViolation("pairing total is not (2k-1)!!");
  r.statistics = {{"pairings", total.get_str()}, {"catalan", catalan(c.k).get_str()}};
  return r;
}

Result cmd_pattern_moments(const RunConfig& c) {
  if (c.pattern.empty()) throw ConfigError("pattern-moments needs --pattern");
  if (c.k_max < 1) throw ConfigError("--k-max must be at least 1");
  const Pattern pattern = Pattern::parse(c.pattern);
  if (c.n == 0 || c.n % pattern.period() != 0)
    throw ConfigError("pattern length " + std::to_string(pattern.period()) + " does not divide N = " +
                      std::to_string(c.n));

  std::vector<PatternMomentResult> simulated;
  if (c.trials > 0)
    simulated = simulate_pattern_moments(pattern, c.n, c.trials, c.k_max, c.seed, worker_count(c));

  Result r;
  r.table.header = {"k",         "order",         "analytic", "finite_exact", "pairing_count",
                    "simulated", "standard_error", "N",        "trials"};
  for (unsigned k = 1; k <= c.k_max; ++k) {
    std::vector<json> row{k, 2 * k};
    if (k == 1)
      row.emplace_back(1.0);
    else if (k == 2)
      row.emplace_back(to_double(fourth_moment_analytic(pattern)));
    else if (pattern.is_all_distinct())
      row.emplace_back(to_double(limiting_moment(k, static_cast<unsigned>(pattern.period()))));
    else
      row.emplace_back(nullptr);
    if (c.n <= kMaxFiniteExactN && 2 * k <= kMaxFiniteExactOrder)
      row.emplace_back(to_double(pattern_moment_finite_exact(pattern, c.n, 2 * k, EntryDistribution::parse(c.dist))));
    else
      row.emplace_back(nullptr);
    if (k <= kMaxPairingCountK && c.n <= kMaxPairingCountN)
      row.emplace_back(pattern_moment_pairing_count(pattern, c.n, k).value);
    else
      row.emplace_back(nullptr);
    if (!simulated.empty()) {
      row.emplace_back(simulated[k - 1].value);
      row.emplace_back(simulated[k - 1].standard_error);
    } else {
      row.emplace_back(nullptr);
      row.emplace_back(nullptr);
    }
    row.emplace_back(c.n);
    row.emplace_back(c.trials);
    r.table.rows.push_back(std::move(row));
  }
  r.statistics = {{"pattern", pattern.to_string()}, {"N", c.n}};
  return r;
}

Result cmd_spacings(const RunConfig& c) {
  require_trials(c);
  const Ensemble ensemble(make_spec(c));
  auto per_trial = run_trials(c.trials, worker_count(c), [&](std::size_t t) {
    return central_spacings(solve(c, ensemble.spec(), ensemble.sample(t)), c.central);
  });
  std::vector<double> pooled;
  std::size_t zeros = 0;
  for (const auto& s : per_trial) {
    pooled.insert(pooled.end(), s.spacings.begin(), s.spacings.end());
    zeros += s.zero_count;
  }
  Result r;
  r.table.header = {"spacing"};
  for (double s : pooled) r.table.rows.push_back({s});
  const std::size_t total = pooled.size() + zeros;
  json stats = {{"nonzero_spacings", pooled.size()},
                {"zero_spacings", zeros},
                {"zero_fraction", total ? static_cast<double>(zeros) / static_cast<double>(total) : 0.0}};
  if (!pooled.empty()) {
    stats["ks_exponential"] =
        ks_distance(pooled, [](double s) { return reference_spacing_cdf(SpacingReference::Exponential, s); });
    stats["ks_goe_surmise"] =
        ks_distance(pooled, [](double s) { return reference_spacing_cdf(SpacingReference::GoeSurmise, s); });
  }
  r.statistics = std::move(stats);
  return r;
}

Result cmd_generate(const RunConfig& c) {
  const Ensemble ensemble(make_spec(c));
  const SymmetricMatrix mat = ensemble.sample(c.trial);
  Result r;
  for (std::size_t j = 0; j < c.n; ++j) r.table.header.push_back("c" + std::to_string(j + 1));
  for (std::size_t i = 0; i < c.n; ++i) {
    std::vector<json> row;
    row.reserve(c.n);
    for (std::size_t j = 0; j < c.n; ++j) row.emplace_back(mat(i, j));
    r.table.rows.push_back(std::move(row));
  }
  r.statistics = {{"ensemble", to_json(ensemble.spec())},
                  {"trial", c.trial},
                  {"free_parameters", ensemble.links().variable_count()}};
  return r;
}

Result cmd_eigs(const RunConfig& c) {
  SpectralMeasure s;
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw ConfigError("cannot open input matrix '" + c.input + "'");
    if (c.solver == "block") throw ConfigError("--solver block needs a generated ensemble, not --input");
    s = eigs_dense(read_matrix_csv(in));
  } else {
    const Ensemble ensemble(make_spec(c));
    s = solve(c, ensemble.spec(), ensemble.sample(c.trial));
  }
  Result r;
  r.table.header = {"eigenvalue"};
  for (double v : s.values) r.table.rows.push_back({v});
  r.statistics = {{"count", s.values.size()}, {"normalization", "lambda/sqrt(N)"}};
  return r;
}

Result dispatch(const RunConfig& c) {
  static const std::map<std::string, Result (*)(const RunConfig&)> table{
      {"simulate", cmd_simulate}, {"density", cmd_density},   {"moments", cmd_moments},
      {"pairings", cmd_pairings}, {"pattern-moments", cmd_pattern_moments},
      {"spacings", cmd_spacings}, {"generate", cmd_generate}, {"eigs", cmd_eigs}};
  const auto it = table.find(c.subcommand);
  if (it == table.end()) throw ConfigError("unknown subcommand '" + c.subcommand + "'");
  return it->second(c);
}

std::optional<fs::path> resolve_output(const RunConfig& c) {
  if (!c.output.empty()) return fs::path(c.output);
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir)
    return fs::path(dir) / (c.subcommand + (c.format == "json" ? ".json" : ".csv"));
  return std::nullopt;
}

void open_for_write(std::ofstream& f, const fs::path& p) {
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  f.open(p, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
}

}  // namespace

json to_json(const RunConfig& c) {
  return {{"subcommand", c.subcommand},
          {"kind", c.kind},
          {"N", c.n},
          {"m", c.m},
          {"pattern", c.pattern},
          {"dist", c.dist},
          {"seed", c.seed},
          {"trials", c.trials},
          {"bins", c.bins},
          {"lo", c.lo},
          {"hi", c.hi},
          {"step", c.step},
          {"k_max", c.k_max},
          {"k", c.k},
          {"central", c.central},
          {"m_list", c.m_list},
          {"what", c.what},
          {"solver", c.solver},
          {"input", c.input},
          {"trial", c.trial},
          {"output", c.output},
          {"format", c.format},
          {"threads", c.threads}};
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig c;
  auto get = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(field);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("run config field '") + key + "': " + e.what());
    }
  };
  get("subcommand", c.subcommand);
  get("kind", c.kind);
  get("N", c.n);
  get("m", c.m);
  get("pattern", c.pattern);
  get("dist", c.dist);
  get("seed", c.seed);
  get("trials", c.trials);
  get("bins", c.bins);
  get("lo", c.lo);
  get("hi", c.hi);
  get("step", c.step);
  get("k_max", c.k_max);
  get("k", c.k);
  get("central", c.central);
  get("m_list", c.m_list);
  get("what", c.what);
  get("solver", c.solver);
  get("input", c.input);
  get("trial", c.trial);
  get("output", c.output);
  get("format", c.format);
  get("threads", c.threads);
  if (c.subcommand.empty()) throw ConfigError("run config has no subcommand");
  return c;
}

void execute(const RunConfig& config, std::ostream& out) {
  if (config.format != "csv" && config.format != "json")
    throw ConfigError("--format must be csv or json");
  const Result result = dispatch(config);
  const auto path = resolve_output(config);

  RunConfig recorded = config;
  if (path) recorded.output = path->string();
  json manifest = {{"tool", "bcirc"},
                   {"version", kVersion},
                   {"config", to_json(recorded)},
                   {"statistics", result.statistics}};

  auto emit = [&](std::ostream& os, bool embed_manifest) {
    if (config.format == "csv") {
      write_csv(os, result.table);
      return;
    }
    json doc = table_json(result.table);
    if (embed_manifest) doc["manifest"] = manifest;
    os << doc.dump(2) << '\n';
  };

  if (!path) {
    emit(out, true);
    return;
  }
  std::ofstream data;
  open_for_write(data, *path);
  emit(data, false);
  manifest["data"] = path->filename().string();
  std::ofstream mf;
  open_for_write(mf, fs::path(path->string() + ".manifest.json"));
  mf << manifest.dump(2) << '\n';
}

namespace {

void add_ensemble_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--kind", c.kind, "circulant | toeplitz | pattern")->capture_default_str();
  sub->add_option("-N,--size", c.n, "matrix dimension N")->capture_default_str();
  sub->add_option("-m,--period", c.m, "block period m (must divide N)")->capture_default_str();
  sub->add_option("--pattern", c.pattern, "symbol pattern, e.g. abab (implies --kind pattern)");
  sub->add_option("--dist", c.dist, "gaussian | rademacher | uniform")->capture_default_str();
  sub->add_option("--seed", c.seed, "base seed")->capture_default_str();
}

void add_solver_option(CLI::App* sub, RunConfig& c) {
  sub->add_option("--solver", c.solver, "dense | block | auto")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bcirc: spectra of block circulant random matrix ensembles"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  std::string output;
  std::string format = "csv";
  std::optional<unsigned> threads;
  app.add_option("-o,--output", output, "output file (manifest goes to FILE.manifest.json); default stdout or $" +
                                            std::string(kOutputDirEnv));
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--threads", threads, "worker threads for trial loops (0 = all cores)");

  std::map<std::string, RunConfig> configs;
  auto make = [&](const std::string& name, const std::string& help) {
    RunConfig& c = configs[name];
    c.subcommand = name;
    return std::pair<CLI::App*, RunConfig&>{app.add_subcommand(name, help), c};
  };

  {
    auto [sub, c] = make("simulate", "pooled eigenvalue histogram with f_m and semicircle overlays");
    add_ensemble_options(sub, c);
    add_solver_option(sub, c);
    sub->add_option("--trials", c.trials)->capture_default_str();
    sub->add_option("--bins", c.bins)->capture_default_str();
    sub->add_option("--lo", c.lo)->capture_default_str();
    sub->add_option("--hi", c.hi)->capture_default_str();
    sub->add_option("--k-max", c.k_max, "report empirical moments up to order 2k")->capture_default_str();
  }
  {
    auto [sub, c] = make("density", "closed-form densities f_m on a grid");
    sub->add_option("-m,--periods", c.m_list, "comma-separated periods")->delimiter(',')->capture_default_str();
    sub->add_option("--lo", c.lo)->capture_default_str();
    sub->add_option("--hi", c.hi)->capture_default_str();
    sub->add_option("--step", c.step)->capture_default_str();
  }
  {
    auto [sub, c] = make("moments", "exact limiting moments M_{2k;m} or eps_g(k) tables");
    sub->add_option("-m,--period", c.m)->capture_default_str();
    sub->add_option("--k-max", c.k_max)->capture_default_str();
    sub->add_option("--what", c.what, "moments | epsilon")->capture_default_str();
  }
  {
    auto [sub, c] = make("pairings", "genus histogram of all pairings of a 2k-gon");
    sub->add_option("-k", c.k, "half the polygon size")->capture_default_str();
  }
  {
    auto [sub, c] = make("pattern-moments", "moments of a generalized-pattern circulant ensemble");
    c.kind = "pattern";
    c.n = 240;
    c.k_max = 3;
    c.trials = 0;
    sub->add_option("--pattern", c.pattern, "symbol pattern, e.g. aabb")->required();
    sub->add_option("-N,--size", c.n)->capture_default_str();
    sub->add_option("--k-max", c.k_max)->capture_default_str();
    sub->add_option("--trials", c.trials, "Monte Carlo trials (0 = skip simulation)")->capture_default_str();
    sub->add_option("--seed", c.seed)->capture_default_str();
    sub->add_option("--dist", c.dist)->capture_default_str();
  }
  {
    auto [sub, c] = make("spacings", "pooled nearest-neighbour spacings of central eigenvalues");
    c.n = 1024;
    c.m = 1;
    c.trials = 100;
    add_ensemble_options(sub, c);
    add_solver_option(sub, c);
    sub->add_option("--trials", c.trials)->capture_default_str();
    sub->add_option("--central", c.central, "eigenvalues kept around the median")->capture_default_str();
  }
  {
    auto [sub, c] = make("generate", "one sampled matrix as CSV");
    c.n = 8;
    add_ensemble_options(sub, c);
    sub->add_option("--trial", c.trial, "trial index of the draw")->capture_default_str();
  }
  {
    auto [sub, c] = make("eigs", "normalized eigenvalues of one sample or an input matrix");
    add_ensemble_options(sub, c);
    add_solver_option(sub, c);
    sub->add_option("--trial", c.trial)->capture_default_str();
    sub->add_option("--input", c.input, "read a symmetric matrix CSV instead of sampling");
  }
  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "re-run the configuration stored in a manifest");
  replay->add_option("manifest", manifest_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config;
    if (replay->parsed()) {
      std::ifstream in(manifest_path);
      if (!in) throw ConfigError("cannot open manifest '" + manifest_path + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
      }
      config = run_config_from_json(j.contains("config") ? j.at("config") : j);
      config.output = output;
      if (app.get_option("--format")->count() > 0) config.format = format;
    } else {
      const auto subs = app.get_subcommands();
      CLI::App* sub = subs.front();
      config = configs.at(sub->get_name());
      if (sub->get_option_no_throw("--pattern") && sub->count("--pattern") > 0) {
        if (sub->get_option_no_throw("--kind") && sub->count("--kind") == 0) config.kind = "pattern";
        if (sub->get_option_no_throw("--period") && sub->count("--period") == 0)
          config.m = Pattern::parse(config.pattern).period();
      }
      config.output = output;
      config.format = format;
    }
    if (threads) config.threads = *threads;
    execute(config, out);
    return kExitOk;
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    err << "bcirc: " << (code == kExitInvariant ? "invariant violated: " : code == kExitUsage ? "" : "error: ")
        << e.what() << '\n';
    return code;
  }
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const InvariantViolation*>(&e)) return kExitInvariant;
  if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e) ||
      dynamic_cast<const json::exception*>(&e))
    return kExitUsage;
  return 1;
}

}  // namespace bcirc::cli
