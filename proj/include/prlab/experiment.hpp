#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "prlab/asymptotics.hpp"
#include "prlab/error.hpp"
#include "prlab/generators.hpp"
#include "prlab/graph.hpp"
#include "prlab/metrics.hpp"
#include "prlab/pagerank.hpp"
#include "prlab/seed.hpp"
#include "prlab/spectral.hpp"

namespace prlab {

enum class Family { kErLog7, kChungLuGeometric, kPowerLaw, kErUnitPreference, kSbmEqual };

constexpr std::string_view to_string(Family f) {
  switch (f) {
    case Family::kErLog7: return "er_log7";
    case Family::kChungLuGeometric: return "chung_lu_geometric";
    case Family::kPowerLaw: return "power_law";
    case Family::kErUnitPreference: return "er_unit_preference";
    case Family::kSbmEqual: return "sbm_equal";
  }
  return "unknown";
}

inline Family parse_family(std::string_view s) {
  for (auto f : {Family::kErLog7, Family::kChungLuGeometric, Family::kPowerLaw,
                 Family::kErUnitPreference, Family::kSbmEqual}) {
    if (to_string(f) == s) return f;
  }
  throw Error(ErrorCode::kScenarioInvalid, "unknown family '" + std::string(s) + "'");
}

struct Preference {
  enum class Kind { kUniform, kUnit, kSetC1 };
  Kind kind = Kind::kUniform;
  std::size_t vertex = 0;

  friend bool operator==(const Preference&, const Preference&) = default;
};

/// What to do with a draw that is disconnected or has an isolated vertex.
enum class ComponentPolicy {
  /// Draw again, up to resample_limit times.
  kResample,
  /// Keep the largest connected component. Needed for families whose
  /// smallest expected degrees are O(1) and are never connected.
  kGiant,
};

/// One experiment recipe swept over graph sizes.
struct Scenario {
  std::string name;
  Family family = Family::kErLog7;
  std::vector<std::size_t> n_grid;
  std::size_t replicates = 5;
  double alpha = 0.85;
  std::uint64_t base_seed = 1;
  std::map<std::string, double> family_params;
  std::optional<Preference> preference;
  std::size_t resample_limit = 5;
  std::optional<ComponentPolicy> component_policy;
  double spectral_tol = 1e-4;
  /// 0 skips the spectral estimate (its CSV columns stay empty).
  std::size_t spectral_max_iter = 300;

  const std::string& id() const { return name; }

  /// Family constants with defaults filled in; unknown keys are rejected.
  std::map<std::string, double> resolved_params() const {
    std::map<std::string, double> out;
    switch (family) {
      case Family::kErLog7: out = {{"C", 1e-3}}; break;
      case Family::kErUnitPreference: out = {{"C", 1e-3}, {"k", 0.0}}; break;
      case Family::kChungLuGeometric: out = {{"c", 4.0}, {"ratio", 7.0}}; break;
      case Family::kPowerLaw:
        out = {{"beta", 4.0}, {"d_exponent", 1.0 / 6.0}, {"m_exponent", 1.0 / 3.0}};
        break;
      case Family::kSbmEqual: out = {{"p", 0.1}, {"q", 0.01}}; break;
    }
    for (const auto& [key, value] : family_params) {
      if (!out.contains(key)) {
        throw Error(ErrorCode::kScenarioInvalid, "family " + std::string(to_string(family)) +
                                                     " has no parameter '" + key + "'");
      }
      out[key] = value;
    }
    return out;
  }

  Preference resolved_preference() const {
    if (preference) return *preference;
    if (family == Family::kErUnitPreference) {
      return {Preference::Kind::kUnit,
              static_cast<std::size_t>(resolved_params().at("k"))};
    }
    return {};
  }

  ComponentPolicy resolved_policy() const {
    if (component_policy) return *component_policy;
    return family == Family::kPowerLaw ? ComponentPolicy::kGiant : ComponentPolicy::kResample;
  }

  void validate() const;
};

/// Edge probability of the er_log7 family: C log(n)^7 / n (natural log).
inline double er_log7_probability(double c, std::size_t n) {
  const double nd = static_cast<double>(n);
  return c * std::pow(std::log(nd), 7.0) / nd;
}

inline void Scenario::validate() const {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kScenarioInvalid, "scenario '" + name + "': " + why);
  };
  if (name.empty()) fail("empty name");
  if (n_grid.empty()) fail("n_grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 4) fail("sizes must be at least 4");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) fail("n_grid must be strictly increasing");
  }
  if (replicates < 1) fail("replicates must be >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) fail("alpha must lie in [0, 1)");
  if (!(spectral_tol > 0.0)) fail("spectral_tol must be positive");
  const auto params = resolved_params();
  const auto pref = resolved_preference();
  for (std::size_t n : n_grid) {
    if (pref.kind == Preference::Kind::kUnit && pref.vertex >= n) fail("unit vertex out of range");
    switch (family) {
      case Family::kErLog7:
      case Family::kErUnitPreference: {
        const double p = er_log7_probability(params.at("C"), n);
        if (!(p > 0.0 && p <= 1.0)) {
          fail("C gives p = " + std::to_string(p) + " outside (0, 1] at n = " +
               std::to_string(n));
        }
        break;
      }
      case Family::kChungLuGeometric: {
        const double mean = params.at("c") * std::cbrt(static_cast<double>(n));
        const double ratio = params.at("ratio");
        if (!(mean > 1.0) || !(ratio > 1.0)) fail("need c n^(1/3) > 1 and ratio > 1");
        // Weights lie in [mean/3, ratio mean/3], so this keeps every draw
        // admissible (max w^2 <= sum w).
        if (ratio * ratio * mean / 3.0 > static_cast<double>(n)) {
          fail("weights may be inadmissible at n = " + std::to_string(n) +
               "; need ratio^2 c n^(1/3) / 3 <= n");
        }
        break;
      }
      case Family::kPowerLaw:
        if (!(params.at("beta") > 2.0)) fail("beta must exceed 2");
        break;
      case Family::kSbmEqual: {
        if (n % 2 != 0) fail("sbm_equal needs even n");
        SbmParams{n / 2, n, params.at("p"), params.at("q")}.validate();
        break;
      }
    }
  }
  if (family != Family::kSbmEqual && pref.kind == Preference::Kind::kSetC1) {
    fail("set(C1) preference needs the sbm_equal family");
  }
}

/// One (scenario, n, replicate) run. Absent optionals become empty CSV
/// fields.
struct ExperimentRecord {
  std::string scenario;
  std::size_t n = 0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  bool connected = false;
  std::size_t resamples = 0;
  std::optional<double> tv;
  std::optional<double> l1;
  std::optional<double> max_rel;
  std::optional<double> lambda2_abs;
  std::optional<double> gap;
  std::optional<double> degree_ratio;
  std::optional<double> concentration_stat;
  std::optional<std::size_t> pr_iters;
  std::optional<std::int64_t> wall_millis;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/// Scenario id of the rows that compare sbm_equal runs against the plain
/// degree mixture instead of the community-aware approximation.
inline std::string mixture_id(const std::string& scenario) { return scenario + ":mixture"; }

/// Seed of one record: the stream is the replicate index, the base mixes the
/// scenario seed with n.
inline Seed record_seed(const Scenario& s, std::size_t n, std::size_t replicate) {
  return Seed{Seed::mix(s.base_seed ^ Seed::mix(static_cast<std::uint64_t>(n))),
              static_cast<std::uint64_t>(replicate)};
}

namespace detail {

struct Draw {
  Graph graph;
  /// Expected degree of each kept vertex.
  std::vector<double> expected_degree;
};

inline Draw draw_graph(const Scenario& s, const std::map<std::string, double>& params,
                       std::size_t n, const Seed& graph_seed, const Seed& weight_seed) {
  switch (s.family) {
    case Family::kErLog7:
    case Family::kErUnitPreference: {
      const double p = er_log7_probability(params.at("C"), n);
      return {gen_er(n, p, graph_seed), std::vector<double>(n, p * static_cast<double>(n - 1))};
    }
    case Family::kChungLuGeometric: {
      const double mean = params.at("c") * std::cbrt(static_cast<double>(n));
      const auto w = geometric_clipped_weights(n, mean, params.at("ratio"), weight_seed);
      return {gen_chung_lu(w, graph_seed), {w.values().begin(), w.values().end()}};
    }
    case Family::kPowerLaw: {
      const double nd = static_cast<double>(n);
      const auto w = power_law_weights(n, params.at("beta"), std::pow(nd, params.at("d_exponent")),
                                       std::pow(nd, params.at("m_exponent")));
      return {gen_chung_lu(w, graph_seed), {w.values().begin(), w.values().end()}};
    }
    case Family::kSbmEqual: {
      const SbmParams sbm{n / 2, n, params.at("p"), params.at("q")};
      const auto w = sbm_expected_degrees(sbm);
      return {gen_sbm(sbm, graph_seed), {w.values().begin(), w.values().end()}};
    }
  }
  throw Error(ErrorCode::kScenarioInvalid, "unknown family");
}

inline ProbabilityVector make_preference(const Preference& pref, std::size_t n) {
  switch (pref.kind) {
    case Preference::Kind::kUniform: return preference_uniform(n);
    case Preference::Kind::kUnit: return preference_unit(n, pref.vertex);
    case Preference::Kind::kSetC1: {
      std::vector<std::size_t> members(n / 2);
      for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
      return preference_set(n, members);
    }
  }
  throw Error(ErrorCode::kScenarioInvalid, "unknown preference");
}

}  // namespace detail

/// Runs one (n, replicate) cell. Returns the main record, plus for
/// sbm_equal the comparison against the plain mixture.
inline std::vector<ExperimentRecord> run_record(const Scenario& s, std::size_t n,
                                                std::size_t replicate) {
  const auto started = std::chrono::steady_clock::now();
  const auto params = s.resolved_params();
  const auto policy = s.resolved_policy();
  const Seed seed = record_seed(s, n, replicate);

  ExperimentRecord rec;
  rec.scenario = s.id();
  rec.n = n;
  rec.replicate = replicate;
  rec.seed = seed.base;
  rec.alpha = s.alpha;

  std::optional<detail::Draw> kept;
  for (std::size_t attempt = 0; attempt <= s.resample_limit; ++attempt) {
    auto draw = detail::draw_graph(s, params, n, seed.derive(2 * attempt),
                                   seed.derive(2 * attempt + 1));
    if (policy == ComponentPolicy::kGiant && !is_connected(draw.graph)) {
      auto giant = largest_component(draw.graph);
      std::vector<double> expected(giant.vertices.size());
      for (std::size_t k = 0; k < giant.vertices.size(); ++k) {
        expected[k] = draw.expected_degree[giant.vertices[k]];
      }
      draw = {std::move(giant.graph), std::move(expected)};
    }
    if (draw.graph.n() >= 2 && is_connected(draw.graph)) {
      kept = std::move(draw);
      break;
    }
    ++rec.resamples;
  }

  std::vector<ExperimentRecord> out;
  if (!kept) {
    rec.resamples = s.resample_limit;
    out.push_back(rec);
    if (s.family == Family::kSbmEqual) {
      out.push_back(rec);
      out.back().scenario = mixture_id(s.id());
    }
    return out;
  }
  rec.connected = true;

  const Graph& g = kept->graph;
  const auto v = detail::make_preference(s.resolved_preference(), g.n());
  const auto pr = pagerank_power(g, v, PageRankConfig{s.alpha, 1e-12, 0});
  rec.pr_iters = pr.iterations;

  double worst = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    worst = std::max(worst, std::abs(g.degree(i) / kept->expected_degree[i] - 1.0));
  }
  rec.concentration_stat = worst;
  rec.degree_ratio = static_cast<double>(g.max_degree()) / g.min_degree();
  if (s.spectral_max_iter > 0) {
    const auto spec =
        second_eigenvalue_magnitude(g, s.spectral_tol, s.spectral_max_iter, seed.derive(1u << 20));
    rec.lambda2_abs = spec.lambda2_abs;
    rec.gap = spec.gap;
  }

  auto fill_errors = [](ExperimentRecord& r, const ErrorReport& e) {
    r.tv = e.tv;
    r.l1 = e.l1;
    r.max_rel = e.max_rel;
  };
  const auto mixture = asymptotic_mixture(g, v, s.alpha);
  if (s.family == Family::kSbmEqual) {
    const auto sbm = sbm_equal_closed_form(n, params.at("p"), params.at("q"), v, s.alpha);
    fill_errors(rec, error_report(pr.pi, sbm));
    ExperimentRecord vs_mixture = rec;
    vs_mixture.scenario = mixture_id(s.id());
    fill_errors(vs_mixture, error_report(pr.pi, mixture));
    out.push_back(rec);
    out.push_back(vs_mixture);
  } else {
    fill_errors(rec, error_report(pr.pi, mixture));
    out.push_back(rec);
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  for (auto& r : out) r.wall_millis = elapsed.count();
  return out;
}

/// Runs every (n, replicate) cell of a scenario on `threads` workers.
/// Output is sorted by (scenario id, n, replicate) with the main rows first,
/// independent of scheduling. A cell that throws yields a failed record.
inline std::vector<ExperimentRecord> run_scenario(const Scenario& s, std::size_t threads = 1) {
  s.validate();
  struct Cell {
    std::size_t n;
    std::size_t replicate;
  };
  std::vector<Cell> cells;
  for (std::size_t n : s.n_grid) {
    for (std::size_t r = 0; r < s.replicates; ++r) cells.push_back({n, r});
  }
  std::vector<std::vector<ExperimentRecord>> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        results[i] = run_record(s, cells[i].n, cells[i].replicate);
      } catch (const Error&) {
        ExperimentRecord failed;
        failed.scenario = s.id();
        failed.n = cells[i].n;
        failed.replicate = cells[i].replicate;
        failed.seed = record_seed(s, cells[i].n, cells[i].replicate).base;
        failed.alpha = s.alpha;
        results[i] = {failed};
        if (s.family == Family::kSbmEqual) {
          results[i].push_back(failed);
          results[i].back().scenario = mixture_id(s.id());
        }
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, cells.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<ExperimentRecord> main_rows, extra_rows;
  for (auto& cell : results) {
    for (auto& r : cell) (r.scenario == s.id() ? main_rows : extra_rows).push_back(std::move(r));
  }
  auto by_cell = [](const ExperimentRecord& a, const ExperimentRecord& b) {
    return std::pair(a.n, a.replicate) < std::pair(b.n, b.replicate);
  };
  std::stable_sort(main_rows.begin(), main_rows.end(), by_cell);
  std::stable_sort(extra_rows.begin(), extra_rows.end(), by_cell);
  main_rows.insert(main_rows.end(), std::make_move_iterator(extra_rows.begin()),
                   std::make_move_iterator(extra_rows.end()));
  return main_rows;
}

/// Odd count: middle order statistic; even: mean of the two middle values.
inline double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidParams, "median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size() / 2;
  return values.size() % 2 == 1 ? values[k] : 0.5 * (values[k - 1] + values[k]);
}

}  // namespace prlab
