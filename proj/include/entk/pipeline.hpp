#pragma once

// Corpus classification shared by the command-line tool and the tests.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "entk/definitions.hpp"
#include "entk/environment.hpp"
#include "entk/error.hpp"
#include "entk/report.hpp"
#include "entk/scenario_io.hpp"

namespace entk {

/// Definition parameters forced onto every scenario of a run.
struct ParamOverrides {
  std::optional<double> d_max;
  std::optional<double> delta;
  std::optional<BetaMode> beta_mode;
  std::optional<int> safe_base;

  void apply(DefinitionParams& p) const {
    if (d_max) p.d_max = *d_max;
    if (delta) p.delta = *delta;
    if (beta_mode) p.beta_mode = *beta_mode;
    if (safe_base) p.safe_base = *safe_base;
    p.validate();
  }
};

struct ClassifiedScenario {
  ClassifiedRow row;
  std::optional<Scenario> scenario;  // empty when loading failed
};

inline ClassifiedScenario classify_file(const std::filesystem::path& path, const ParamOverrides& ov) {
  ClassifiedScenario out;
  out.row.id = path.stem().string();
  try {
    Scenario s = load_scenario_file(path);
    ov.apply(s.params);
    out.row.id = s.id;
    out.row.verdicts = evaluate_all(s);
    out.scenario = std::move(s);
  } catch (const Error& e) {
    out.row.error = e.what();
  }
  return out;
}

/// Classifies every file on `threads` workers. Results are sorted by scenario
/// id, then by file name, so the output does not depend on scheduling.
inline std::vector<ClassifiedScenario> classify_files(const std::vector<std::filesystem::path>& files,
                                                      const ParamOverrides& ov, int threads) {
  std::vector<ClassifiedScenario> out(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < files.size(); k = next++) out[k] = classify_file(files[k], ov);
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<std::size_t> idx(files.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (out[a].row.id != out[b].row.id) return out[a].row.id < out[b].row.id;
    return files[a].filename() < files[b].filename();
  });
  std::vector<ClassifiedScenario> sorted;
  sorted.reserve(out.size());
  for (std::size_t i : idx) sorted.push_back(std::move(out[i]));
  return sorted;
}

inline std::vector<ClassifiedRow> rows_of(const std::vector<ClassifiedScenario>& cs) {
  std::vector<ClassifiedRow> rows;
  rows.reserve(cs.size());
  for (const auto& c : cs) rows.push_back(c.row);
  return rows;
}

inline bool any_errors(const std::vector<ClassifiedRow>& rows) {
  return std::any_of(rows.begin(), rows.end(),
                     [](const ClassifiedRow& r) { return !r.error.empty() || has_errors(r.verdicts); });
}

}  // namespace entk
