#include "npspace/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>

#include "npspace/catalog.hpp"
#include "npspace/errors.hpp"
#include "npspace/io.hpp"
#include "npspace/level_table.hpp"
#include "npspace/npnorm.hpp"
#include "npspace/oracle.hpp"
#include "npspace/random.hpp"

namespace npspace::cli {

namespace {

using io::json;

struct SearchOptions {
  int max_level = 0;  // 0: command default
  int restarts = OptBudget{}.restarts;
  std::uint64_t seed = 0;

  OptBudget budget() const {
    OptBudget b;
    b.restarts = restarts;
    b.seed = seed;
    return b;
  }
};

void add_search_options(CLI::App& cmd, SearchOptions& opts) {
  cmd.add_option("--max-level", opts.max_level, "Highest level n to compute")->check(CLI::PositiveNumber);
  cmd.add_option("--restarts", opts.restarts, "Optimizer restarts per level")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", opts.seed, "Seed for every random choice");
}

// Input problems surface as parse errors whatever layer detects them.
MapPtr load_input(const std::string& spec) {
  try {
    return io::load_map(spec);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(spec + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Levels up to the codomain size suffice for stabilization.
LevelNormTable table_for(const MapPtr& map, const SearchOptions& opts, int fallback) {
  const int levels = opts.max_level > 0 ? opts.max_level : std::max(fallback, map->codomain()->ambient_dim());
  return build_level_table(map, levels, opts.budget());
}

std::string summary(const NpResult& r) {
  std::ostringstream os;
  os << "p=" << io::format_double(r.p) << " lo=" << io::format_double17(r.bracket.lo)
     << " hi=" << io::format_double17(r.bracket.hi) << " verdict=" << to_string(r.verdict) << " K=" << r.truncation;
  if (r.divergence_proof) os << "\n" << *r.divergence_proof;
  return os.str();
}

struct GridSpec {
  double a = 0.0;
  double b = 0.0;
  double step = 0.0;
};

GridSpec parse_grid(const std::string& text) {
  static const std::regex pattern(R"(^\s*([^:]+):([^:]+):([^:]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw ParseError("--p-grid expects a:b:step, got '" + text + "'");
  GridSpec g;
  try {
    g.a = std::stod(m[1]);
    g.b = std::stod(m[2]);
    g.step = std::stod(m[3]);
  } catch (const std::exception&) {
    throw ParseError("--p-grid expects numbers, got '" + text + "'");
  }
  if (!(g.step > 0.0) || g.b < g.a || g.a < 1.0) throw ParseError("--p-grid needs 1 <= a <= b and step > 0");
  return g;
}

double parse_synthetic(const std::string& text) {
  static const std::regex pattern(R"(^\s*n\s*\^\s*([-+0-9.eE]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw ParseError("--synthetic expects \"n^alpha\", got '" + text + "'");
  try {
    return std::stod(m[1]);
  } catch (const std::exception&) {
    throw ParseError("--synthetic exponent is not a number: '" + text + "'");
  }
}

// verify suites -------------------------------------------------------------

json axioms_suite(std::uint64_t seed, int samples, bool& ok) {
  const std::vector<SpacePtr> spaces = {
      full_matrix_space(2),
      full_matrix_space(3),
      random_subspace(2, 2, derive_seed(seed, {2, 0}), "random 2-dim subspace of M2"),
      random_subspace(3, 2, derive_seed(seed, {2, 1}), "random 2-dim subspace of M3"),
  };
  json reports = json::array();
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const AxiomReport r = verify_axioms(spaces[i], samples, derive_seed(seed, {1, i}));
    ok = ok && r.passed();
    reports.push_back(io::axiom_report_to_json(r));
  }
  return reports;
}

json inclusions_suite(std::uint64_t seed, const OptBudget& budget, bool& ok) {
  constexpr std::pair<double, double> kPairs[] = {{2.1, 3.0}, {2.5, 4.0}, {3.0, 5.0}};
  std::vector<MapPtr> maps;
  for (const auto& e : list_entries()) maps.push_back(e.map);
  for (std::uint64_t i = 0; i < 20; ++i) {
    maps.push_back(random_map(2, derive_seed(seed, {3, i}), "random_M2_" + std::to_string(i)));
  }
  json reports = json::array();
  for (const auto& map : maps) {
    const LevelNormTable table = build_level_table(map, map->codomain()->ambient_dim(), budget);
    for (const auto& [p, q] : kPairs) {
      const InclusionReport r = inclusion_check(table, p, q, std::nullopt, 1e-8);
      ok = ok && r.passed();
      json j = io::inclusion_to_json(r);
      j["map"] = map->label();
      reports.push_back(std::move(j));
    }
  }
  return reports;
}

json bounds_suite(std::uint64_t seed, const OptBudget& budget, int trials, int oracle_level, bool& ok) {
  json reports = json::array();
  for (const auto& e : list_entries()) {
    const LevelNormTable table = build_level_table(e.map, 4, budget);
    const double hi1 = table.bracket(1).hi;
    bool growth = true;
    bool monotone = true;
    bool closed_form = true;
    for (const auto& l : table.entries) {
      growth = growth && l.optimizer_value <= l.level * hi1 + 1e-9;
      if (l.level > 1) monotone = monotone && table.entries[l.level - 2].bracket.lo <= l.bracket.lo;
      if (e.has_closed_form()) {
        const double v = e.expected_level_norms(l.level);
        closed_form = closed_form && l.bracket.lo <= v + 1e-9 && v <= l.bracket.hi + 1e-9;
      }
    }
    const CrossReport cross = cross_validate(table, trials, derive_seed(seed, {4}), oracle_level);
    const bool passed = growth && monotone && closed_form && cross.passed();
    ok = ok && passed;
    reports.push_back({{"map", e.name},
                       {"passed", passed},
                       {"growth_bound", growth},
                       {"monotone", monotone},
                       {"closed_form", closed_form},
                       {"table", io::table_to_json(table)},
                       {"oracle", io::cross_report_to_json(cross)}});
  }
  return reports;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Level norms, N^p norms and index of linear maps between operator spaces", "npspace"};
  app.require_subcommand(1);

  // levels
  SearchOptions levels_opts;
  std::string levels_map;
  std::string levels_out;
  std::string levels_witness;
  auto* levels = app.add_subcommand("levels", "Bracket ||phi_n|| for n = 1..N");
  levels->add_option("map", levels_map, "Map file or catalog:<name>")->required();
  add_search_options(*levels, levels_opts);
  levels->add_option("--out", levels_out, "CSV path; the JSON table goes next to it with extension .json");
  levels->add_option("--witness", levels_witness, "Write the lower-bound witnesses to this JSON file");

  // npnorm
  SearchOptions np_opts;
  std::string np_map;
  double np_p = 0.0;
  long np_k = -1;
  std::string np_out;
  bool np_strict = false;
  auto* npnorm = app.add_subcommand("npnorm", "Certified bracket for the N^p norm and membership verdict");
  npnorm->add_option("map", np_map, "Map file or catalog:<name>")->required();
  npnorm->add_option("--p", np_p, "Exponent p >= 1")->required();
  npnorm->add_option("--K", np_k, "Truncation level (default max(64, 4s))")->check(CLI::NonNegativeNumber);
  add_search_options(*npnorm, np_opts);
  npnorm->add_option("--out", np_out, "Write the result as JSON");
  npnorm->add_flag("--strict", np_strict, "Exit 4 when membership is undecided");

  // index
  SearchOptions index_opts;
  std::string index_map;
  std::string index_synthetic;
  int index_levels = 16;
  std::string index_out;
  auto* index = app.add_subcommand("index", "Estimate the index r of a map or of a synthetic sequence");
  auto* index_map_opt = index->add_option("map", index_map, "Map file or catalog:<name>");
  index->add_option("--synthetic", index_synthetic, "Sequence n^alpha instead of a map")->excludes(index_map_opt);
  index->add_option("--levels", index_levels, "Length of the synthetic sequence")->check(CLI::Range(3, 1 << 20));
  add_search_options(*index, index_opts);
  index->add_option("--out", index_out, "Write the estimate as JSON");

  // verify
  std::string verify_suite;
  std::uint64_t verify_seed = 0;
  int verify_samples = 200;
  int verify_trials = 200;
  int verify_oracle_level = 3;
  int verify_restarts = OptBudget{}.restarts;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Run a property suite; nonzero exit on any failure");
  verify->add_option("--suite", verify_suite, "axioms, inclusions or bounds")
      ->required()
      ->check(CLI::IsMember({"axioms", "inclusions", "bounds"}));
  verify->add_option("--seed", verify_seed, "Seed for every random choice");
  verify->add_option("--samples", verify_samples, "Samples per axiom check")->check(CLI::PositiveNumber);
  verify->add_option("--trials", verify_trials, "Oracle samples per level (bounds)")->check(CLI::PositiveNumber);
  verify->add_option("--oracle-level", verify_oracle_level, "Highest level checked by the oracle (bounds)")
      ->check(CLI::Range(1, 4));
  verify->add_option("--restarts", verify_restarts, "Optimizer restarts per level")->check(CLI::PositiveNumber);
  verify->add_option("--out", verify_out, "Write the report to this file instead of stdout");

  // plotdata
  SearchOptions plot_opts;
  std::string plot_map;
  std::string plot_grid;
  long plot_k = -1;
  std::string plot_out;
  auto* plotdata = app.add_subcommand("plotdata", "CSV p,lo,hi of the N^p norm over a grid of p");
  plotdata->add_option("map", plot_map, "Map file or catalog:<name>")->required();
  plotdata->add_option("--p-grid", plot_grid, "Grid a:b:step")->required();
  plotdata->add_option("--K", plot_k, "Truncation level")->check(CLI::NonNegativeNumber);
  add_search_options(*plotdata, plot_opts);
  plotdata->add_option("--out", plot_out, "Write the CSV here instead of stdout");

  // export / catalog
  std::string export_map;
  std::string export_out;
  auto* exporter = app.add_subcommand("export", "Write a map (for instance a catalog entry) as JSON");
  exporter->add_option("map", export_map, "Map file or catalog:<name>")->required();
  exporter->add_option("--out", export_out, "Output path (default stdout)");
  auto* catalog = app.add_subcommand("catalog", "List the built-in maps");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (levels->parsed()) {
      const MapPtr map = load_input(levels_map);
      const LevelNormTable table = build_level_table(map, levels_opts.max_level > 0 ? levels_opts.max_level : 4,
                                                     levels_opts.budget());
      const std::string csv = io::table_to_csv(table);
      if (levels_out.empty()) {
        out << csv;
      } else {
        std::filesystem::path json_path(levels_out);
        json_path.replace_extension(json_path.extension() == ".json" ? ".table.json" : ".json");
        write_file(levels_out, csv);
        write_file(json_path, dump(io::table_to_json(table)));
      }
      if (!levels_witness.empty()) {
        json witnesses = json::array();
        for (const auto& e : table.entries) {
          if (e.witness) witnesses.push_back(io::witness_to_json(*e.witness, level_norm(amplify(*map, *e.witness))));
        }
        write_file(levels_witness, dump(witnesses));
      }
      return kOk;
    }

    if (npnorm->parsed()) {
      const NpParameter p(np_p);
      const MapPtr map = load_input(np_map);
      const LevelNormTable table = table_for(map, np_opts, 1);
      const NpResult r = np_norm(table, p, np_k >= 0 ? std::optional<long>(np_k) : std::nullopt);
      out << summary(r) << "\n";
      if (!np_out.empty()) write_file(np_out, dump(io::np_result_to_json(r)));
      return np_strict && r.verdict == Verdict::unknown ? kUnknownVerdict : kOk;
    }

    if (index->parsed()) {
      IndexEstimate est;
      if (!index_synthetic.empty()) {
        const double alpha = parse_synthetic(index_synthetic);
        std::vector<std::pair<int, double>> seq;
        for (int n = 1; n <= index_levels; ++n) seq.emplace_back(n, std::pow(static_cast<double>(n), alpha));
        est = index_estimate(seq);
      } else if (!index_map.empty()) {
        est = index_estimate(table_for(load_input(index_map), index_opts, 4));
      } else {
        throw ParseError("index needs a map or --synthetic");
      }
      out << "r_hat=" << io::format_double17(est.r_hat) << " alpha_hat=" << io::format_double17(est.alpha_hat)
          << " window=" << est.fit_first << ".." << est.fit_last << (est.stabilized ? " stabilized" : "") << "\n";
      if (!index_out.empty()) write_file(index_out, dump(io::index_to_json(est)));
      return kOk;
    }

    if (verify->parsed()) {
      OptBudget budget;
      budget.restarts = verify_restarts;
      budget.seed = verify_seed;
      bool ok = true;
      json results;
      if (verify_suite == "axioms") {
        results = axioms_suite(verify_seed, verify_samples, ok);
      } else if (verify_suite == "inclusions") {
        results = inclusions_suite(verify_seed, budget, ok);
      } else {
        results = bounds_suite(verify_seed, budget, verify_trials, verify_oracle_level, ok);
      }
      const json report = {{"suite", verify_suite}, {"seed", verify_seed}, {"passed", ok}, {"results", results}};
      if (verify_out.empty()) {
        out << dump(report);
      } else {
        write_file(verify_out, dump(report));
        out << "suite " << verify_suite << ": " << (ok ? "passed" : "FAILED") << "\n";
      }
      return ok ? kOk : kFailure;
    }

    if (plotdata->parsed()) {
      const GridSpec grid = parse_grid(plot_grid);
      const MapPtr map = load_input(plot_map);
      const LevelNormTable table = table_for(map, plot_opts, 1);
      std::ostringstream csv;
      csv << "p,lo,hi\n";
      const long count = std::lround(std::floor((grid.b - grid.a) / grid.step + 1e-9));
      for (long i = 0; i <= count; ++i) {
        const double p = grid.a + static_cast<double>(i) * grid.step;
        const NpResult r = np_norm(table, NpParameter(p), plot_k >= 0 ? std::optional<long>(plot_k) : std::nullopt);
        csv << io::format_double(p) << ',' << io::format_double17(r.bracket.lo) << ','
            << io::format_double17(r.bracket.hi) << '\n';
      }
      if (plot_out.empty()) {
        out << csv.str();
      } else {
        write_file(plot_out, csv.str());
      }
      return kOk;
    }

    if (exporter->parsed()) {
      const std::string text = dump(io::map_to_json(*load_input(export_map)));
      if (export_out.empty()) {
        out << text;
      } else {
        write_file(export_out, text);
      }
      return kOk;
    }

    if (catalog->parsed()) {
      for (const auto& e : list_entries()) out << e.name << "\t" << e.description << "\n";
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariantViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace npspace::cli
