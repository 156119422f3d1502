// entk: classify tether corpora, compute workspace maps, run the implication
// matrix, render and generate scenarios.
//
// Exit codes: 0 success, 1 usage or input error, 2 per-scenario evaluation
// errors, 3 a marked implication was violated.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "entk/entk.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitScenario = 2;
constexpr int kExitViolation = 3;

struct Options {
  std::string corpus;
  std::string out = "out";
  std::string scenario;
  int def = 9;
  std::optional<double> d_max;
  std::string delta;
  std::string beta_mode;
  std::optional<int> safe_base;
  int resolution = entk::kDefaultResolution;
  int trials = 1000;
  int count = 50;
  std::uint64_t seed = entk::kDefaultSeed;
  int threads = 0;
};

int thread_count(const Options& o) {
  if (o.threads > 0) return o.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

entk::ParamOverrides overrides(const Options& o) {
  entk::ParamOverrides ov;
  ov.d_max = o.d_max;
  if (!o.delta.empty()) {
    if (o.delta == "inf") {
      ov.delta = std::numeric_limits<double>::infinity();
    } else {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(o.delta, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != o.delta.size()) throw entk::Error("bad-params", "--delta must be a number or \"inf\"");
      ov.delta = v;
    }
  }
  if (!o.beta_mode.empty()) ov.beta_mode = o.beta_mode == "off" ? entk::BetaMode::Off : entk::BetaMode::LenSubpath;
  ov.safe_base = o.safe_base;
  entk::DefinitionParams probe;
  ov.apply(probe);
  return ov;
}

int cmd_classify(const Options& o) {
  const auto files = entk::corpus_files(o.corpus);
  if (files.empty()) throw entk::Error("empty-corpus", "no scenario files in " + o.corpus);
  const auto results = entk::classify_files(files, overrides(o), thread_count(o));
  const auto rows = entk::rows_of(results);
  const fs::path out = o.out;
  entk::write_file(out / "verdicts.csv", entk::verdicts_csv(rows));
  entk::write_file(out / "verdicts.md", entk::verdicts_markdown(rows));
  for (const auto& r : results)
    if (r.scenario) entk::write_file(out / "renders" / (r.row.id + ".svg"), entk::render_svg(*r.scenario));
  for (const auto& r : rows)
    if (!r.error.empty()) std::cerr << r.id << ": " << r.error << "\n";
  std::cout << rows.size() << " scenarios classified into " << (out / "verdicts.csv").string() << "\n";
  return entk::any_errors(rows) ? kExitScenario : kExitOk;
}

int cmd_map(const Options& o) {
  entk::Scenario s = entk::load_scenario_file(o.scenario);
  overrides(o).apply(s.params);
  const auto eff = entk::effective_environment(s);
  const entk::Environment env{eff.bounds, eff.obstacles};
  const entk::NEMap m = entk::map_for_definition(o.def, env, s.focus_tether().anchor(), s.params.d_max, o.resolution);
  const fs::path dir = fs::path(o.out) / "maps";
  const std::string stem = s.id + "-def" + std::to_string(o.def);
  entk::write_file(dir / (stem + ".pgm"), entk::map_to_pgm(m));
  entk::write_file(dir / (stem + ".json"), entk::map_to_json(m));
  entk::write_file(dir / (stem + ".svg"), entk::render_svg(s, &m));
  std::cout << m.count() << " of " << m.width * m.height << " cells non-entangled, written to "
            << (dir / (stem + ".pgm")).string() << "\n";
  return kExitOk;
}

int cmd_matrix(const Options& o) {
  entk::GenParams gp;
  gp.seed = o.seed;
  overrides(o).apply(gp.params);
  const auto r = entk::run_matrix(gp, o.trials, thread_count(o));
  const fs::path out = o.out;
  entk::write_file(out / "matrix.md", entk::matrix_markdown(r));
  entk::write_file(out / "matrix.json", entk::matrix_json(r));
  std::cout << r.generated << " of " << r.trials << " trials generated, " << r.marked_violations()
            << " marked violations, " << r.witnessed_unmarked_pairs() << " unmarked pairs witnessed"
            << (r.low_power() ? " (low power)" : "") << "\n";
  return r.marked_violations() > 0 ? kExitViolation : kExitOk;
}

int cmd_render(const Options& o) {
  const entk::Scenario s = entk::load_scenario_file(o.scenario);
  const fs::path path = fs::path(o.out) / "renders" / (s.id + ".svg");
  entk::write_file(path, entk::render_svg(s));
  std::cout << path.string() << "\n";
  return kExitOk;
}

int cmd_generate(const Options& o) {
  entk::GenParams gp;
  gp.seed = o.seed;
  overrides(o).apply(gp.params);
  const fs::path dir = fs::path(o.out) / "scenarios";
  int written = 0;
  for (int i = 0; i < o.count; ++i) {
    try {
      const entk::Scenario s = entk::random_scenario(gp, static_cast<std::uint64_t>(i));
      entk::write_file(dir / (s.id + ".json"), entk::render_scenario(s));
      ++written;
    } catch (const entk::Error& e) {
      std::cerr << "gen-" << i << ": " << e.what() << "\n";
    }
  }
  std::cout << written << " scenarios written to " << dir.string() << "\n";
  return written == o.count ? kExitOk : kExitScenario;
}

// ENTK_<NAME> for option --name; dashes become underscores.
std::string env_name(const std::string& long_name) {
  std::string out = "ENTK_";
  for (char c : long_name) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Environment values are appended after the command line so that, with
// last-value-wins options, they override flags of the same name.
std::vector<std::string> with_environment(const CLI::App& app, std::vector<std::string> args) {
  const CLI::App* sub = nullptr;
  for (const auto& a : args)
    if (!a.empty() && a[0] != '-') {
      for (const auto* s : app.get_subcommands([](const CLI::App*) { return true; }))
        if (s->get_name() == a) sub = s;
      break;
    }
  if (!sub) return args;
  for (const auto* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
    const std::string name = opt->get_lnames().front();
    if (const char* v = std::getenv(env_name(name).c_str())) {
      args.push_back("--" + name);
      args.push_back(v);
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Entanglement analysis of tethered robot configurations"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto add_params = [&](CLI::App* c) {
    c->add_option("--d-max", o.d_max, "maximum straight move for the safe-region definition")->check(CLI::NonNegativeNumber);
    c->add_option("--delta", o.delta, "Frechet tolerance for the relaxed definition (number or inf)");
    c->add_option("--beta-mode", o.beta_mode, "local homotopy strengthening")
        ->check(CLI::IsMember({"off", "len-subpath"}));
    c->add_option("--safe-base", o.safe_base, "base definition of the safe region")->check(CLI::IsMember({6, 7}));
  };
  auto add_threads = [&](CLI::App* c) {
    c->add_option("--threads", o.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  };

  auto* classify = app.add_subcommand("classify", "classify every scenario of a corpus");
  classify->add_option("--corpus", o.corpus, "corpus directory")->required();
  classify->add_option("--out", o.out, "output directory");
  add_params(classify);
  add_threads(classify);

  auto* map = app.add_subcommand("map", "non-entangled workspace map of one scenario");
  map->add_option("scenario", o.scenario, "scenario file")->required();
  map->add_option("--def", o.def, "definition (1, 2, 4, 6, 7, 8, 9)")->check(CLI::Range(1, entk::kDefinitionCount));
  map->add_option("--resolution", o.resolution, "cells per side")->check(CLI::PositiveNumber);
  map->add_option("--out", o.out, "output directory");
  add_params(map);

  auto* matrix = app.add_subcommand("matrix", "randomized check of the implication matrix");
  matrix->add_option("--trials", o.trials, "number of generated scenarios")->check(CLI::PositiveNumber);
  matrix->add_option("--seed", o.seed, "generator seed");
  matrix->add_option("--out", o.out, "output directory");
  add_params(matrix);
  add_threads(matrix);

  auto* render = app.add_subcommand("render", "SVG drawing of one scenario");
  render->add_option("scenario", o.scenario, "scenario file")->required();
  render->add_option("--out", o.out, "output directory");

  auto* generate = app.add_subcommand("generate", "write random scenarios");
  generate->add_option("--count", o.count, "number of scenarios")->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", o.seed, "generator seed");
  generate->add_option("--out", o.out, "output directory");
  add_params(generate);

  std::vector<std::string> args(argv + 1, argv + argc);
  args = with_environment(app, std::move(args));
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*classify) return cmd_classify(o);
    if (*map) return cmd_map(o);
    if (*matrix) return cmd_matrix(o);
    if (*render) return cmd_render(o);
    if (*generate) return cmd_generate(o);
  } catch (const entk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
