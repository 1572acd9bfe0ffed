// Acceptance gate: runs each numbered criterion and prints one PASS/FAIL
// line per criterion. With arguments, runs only the listed criteria.
// Exit status is nonzero if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prlab/prlab.hpp"
#include "support.hpp"

namespace {

using namespace prlab;
using prlab::testing::complete_graph;
using prlab::testing::cycle_graph;
using prlab::testing::path_graph;
using prlab::testing::random_connected_graph;
using prlab::testing::random_probability_vector;
using prlab::testing::star_graph;

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      notes.push_back("violated: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
  void add(const TrendCheck& c) {
    notes.push_back(std::string(c.passed ? "ok   " : "FAIL ") + c.name + "  [" + c.detail + "]");
    passed = passed && c.passed;
  }
};

double linf(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

// Experiment sweeps are shared between criteria within one process.
const std::vector<ExperimentRecord>& sweep(const std::string& name) {
  static std::map<std::string, std::vector<ExperimentRecord>> cache;
  static const auto scenarios = load_config(std::filesystem::path(PRLAB_CONFIG_DIR) / "acceptance.json");
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  for (const auto& s : scenarios) {
    if (s.name == name) return cache[name] = run_scenario(s);
  }
  throw Error(ErrorCode::kScenarioInvalid, "no acceptance scenario " + name);
}

Outcome exactness_endpoints() {
  Outcome out;
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    const auto g = random_connected_graph(n, 0.05, rng);
    const auto v = random_probability_vector(n, rng);
    const auto pr = pagerank_power(g, v, {0.0, 1e-12, 0});
    worst = std::max(worst, linf(pr.pi.values(), v.values()));
    std::vector<double> d_over_vol(n);
    for (std::size_t i = 0; i < n; ++i) {
      d_over_vol[i] = static_cast<double>(g.degree(i)) / static_cast<double>(g.volume());
    }
    worst = std::max(worst, linf(stationary_distribution(g).values(), d_over_vol));
    worst = std::max(worst, linf(asymptotic_mixture(g, v, 0.0).values(), v.values()));
    worst = std::max(worst, linf(asymptotic_mixture(g, v, 1.0).values(), d_over_vol));
  }
  out.note("max deviation " + num(worst));
  out.require(worst <= 1e-14, "endpoint deviation <= 1e-14");
  return out;
}

Outcome oracle_equivalence() {
  Outcome out;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> a(0.0, 0.99);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    const auto g = random_connected_graph(n, 0.02 + 0.1 * (trial % 3), rng);
    const auto v = random_probability_vector(n, rng);
    const double alpha = a(rng);
    const auto power = pagerank_power(g, v, {alpha, 1e-14, 0});
    out.require(power.converged, "power iteration converged");
    const auto dense = pagerank_dense_oracle(g, v, alpha);
    worst = std::max(worst, l1_distance(power.pi.values(), dense.values()));
  }
  out.note("max L1 " + num(worst));
  out.require(worst <= 1e-10, "L1 <= 1e-10");
  return out;
}

Outcome woodbury_identity() {
  Outcome out;
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 * (1 + rng() % 5000);
    const double p = 0.001 + 0.999 * u(rng);
    const double q = p * u(rng);
    const double alpha = 0.99 * u(rng);
    const auto v = random_probability_vector(n, rng);
    const auto closed = sbm_equal_closed_form(n, p, q, v, alpha);
    const auto iterated = sbm_asymptotic({n / 2, n, p, q}, v, alpha);
    worst = std::max(worst, linf(closed.values(), iterated.values()));
  }
  out.note("max Linf " + num(worst));
  out.require(worst <= 1e-12, "Linf <= 1e-12");
  return out;
}

Outcome hand_values() {
  Outcome out;
  const auto g = path_graph(3);
  const auto v = preference_uniform(3);
  const auto pi = pagerank_power(g, v, {0.5, 1e-15, 0}).pi;
  const auto pibar = asymptotic_mixture(g, v, 0.5);
  const std::vector<double> pi_want{5.0 / 18, 4.0 / 9, 5.0 / 18};
  const std::vector<double> pibar_want{7.0 / 24, 5.0 / 12, 7.0 / 24};
  out.note("pi dev " + num(linf(pi.values(), pi_want)) + ", pibar dev " +
           num(linf(pibar.values(), pibar_want)));
  out.require(linf(pi.values(), pi_want) <= 1e-15, "pi = (5/18, 4/9, 5/18)");
  out.require(linf(pibar.values(), pibar_want) <= 1e-15, "pibar = (7/24, 5/12, 7/24)");
  const double tv = error_report(pi, pibar).tv;
  out.note("tv - 1/36 = " + num(tv - 1.0 / 36));
  out.require(std::abs(tv - 1.0 / 36) <= 1e-15, "tv = 1/36");
  return out;
}

Outcome spectral_oracle() {
  Outcome out;
  std::vector<std::pair<std::string, Graph>> corpus;
  corpus.emplace_back("K4", complete_graph(4));
  corpus.emplace_back("P3", path_graph(3));
  for (std::size_t n : {2u, 7u, 20u, 100u}) corpus.emplace_back("K" + std::to_string(n), complete_graph(n));
  for (std::size_t n : {5u, 16u, 40u, 64u}) corpus.emplace_back("P" + std::to_string(n), path_graph(n));
  for (std::size_t n : {4u, 5u, 9u, 16u, 33u, 64u}) {
    corpus.emplace_back("C" + std::to_string(n), cycle_graph(n));
  }
  for (std::size_t n : {4u, 10u, 50u}) corpus.emplace_back("S" + std::to_string(n), star_graph(n));
  std::mt19937_64 rng(505);
  for (int k = 0; k < 6; ++k) {
    const std::size_t n = 30 + rng() % 480;
    corpus.emplace_back("tree+" + std::to_string(n), random_connected_graph(n, 0.01 * (k % 3), rng));
  }
  for (std::uint64_t s = 0; corpus.size() < 36; ++s) {
    Graph g;
    std::string label;
    switch (s % 3) {
      case 0:
        g = gen_er(512, 0.05, Seed{50, s});
        label = "er512";
        break;
      case 1:
        g = gen_chung_lu(geometric_clipped_weights(400, 30.0, 7.0, Seed{51, s}), Seed{52, s});
        label = "cl400";
        break;
      default:
        g = gen_sbm({128, 256, 0.2, 0.02}, Seed{53, s});
        label = "sbm256";
        break;
    }
    if (is_connected(g)) corpus.emplace_back(label, std::move(g));
  }

  double worst = 0.0;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& [label, g] = corpus[k];
    const auto r = second_eigenvalue_magnitude(g, 1e-13, 2'000'000, Seed{55, k});
    const double dense = second_magnitude(dense_spectrum_oracle(g));
    const double dev = std::abs(r.lambda2_abs - dense);
    if (dev > 1e-6) out.note(label + ": power " + num(r.lambda2_abs) + " dense " + num(dense));
    worst = std::max(worst, dev);
  }
  const auto k4 = second_eigenvalue_magnitude(complete_graph(4), 1e-13, 2'000'000, Seed{});
  const auto p3 = second_eigenvalue_magnitude(path_graph(3), 1e-13, 2'000'000, Seed{});
  out.note(std::to_string(corpus.size()) + " graphs, max deviation " + num(worst) + ", K4 " +
           num(k4.lambda2_abs) + ", P3 " + num(p3.lambda2_abs));
  out.require(corpus.size() >= 30, "corpus of >= 30 graphs");
  out.require(worst <= 1e-6, "agreement within 1e-6");
  out.require(std::abs(k4.lambda2_abs - 1.0 / 3) <= 1e-6, "K4 -> 1/3");
  out.require(std::abs(p3.lambda2_abs - 1.0) <= 1e-6, "P3 -> 1");
  return out;
}

Outcome decay_trend() {
  Outcome out;
  for (const char* name : {"er_log7", "chung_lu_geometric"}) {
    const auto& records = sweep(name);
    out.add(check_success_rate(records, name));
    out.add(check_strictly_decreasing(records, name, Metric::kTv));
    out.add(check_strictly_decreasing(records, name, Metric::kMaxRel));
    out.add(check_strictly_decreasing(records, name, Metric::kLambda2));
  }
  return out;
}

Outcome unit_preference_counterexample() {
  Outcome out;
  const auto& unit = sweep("er_unit_preference");
  out.add(check_success_rate(unit, "er_unit_preference"));
  out.add(check_end_ratio(unit, "er_unit_preference", Metric::kMaxRel, 0.5, false));
  for (const char* name : {"er_log7", "chung_lu_geometric"}) {
    out.add(check_end_ratio(sweep(name), name, Metric::kMaxRel, 1.0 / 3.0, true));
  }
  return out;
}

Outcome power_law_boundary() {
  Outcome out;
  const auto& records = sweep("power_law");
  out.add(check_success_rate(records, "power_law"));
  for (const auto& c : check_slow_decay(records, "power_law")) out.add(c);
  return out;
}

Outcome sbm_trend() {
  Outcome out;
  const auto& uniform = sweep("sbm_equal");
  out.add(check_success_rate(uniform, "sbm_equal"));
  out.add(check_strictly_decreasing(uniform, "sbm_equal", Metric::kTv));
  const auto& c1 = sweep("sbm_equal_c1");
  out.add(check_success_rate(c1, "sbm_equal_c1"));
  out.add(check_pointwise_smaller(c1, "sbm_equal_c1", mixture_id("sbm_equal_c1")));
  return out;
}

Outcome concentration_certificates() {
  Outcome out;
  const std::size_t n = 4096;
  const double log_n = std::log(static_cast<double>(n));
  int degree_ok = 0, cl_ok = 0, sbm_ok = 0;
  std::vector<double> degree_ratio, cl_ratio, sbm_ratio;
  const SbmParams sbm{n / 2, n, 0.1, 0.01};
  const double sbm_bound = 5.0 * std::sqrt(log_n * sbm.w_max()) / sbm.w_min();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto w_big = geometric_clipped_weights(n, 60.0 * log_n, 7.0, Seed{1000, s});
    const double degree_bound = 4.0 * std::sqrt(log_n / w_big.min());
    const double stat = degree_concentration_stat(gen_chung_lu(w_big, Seed{1001, s}), w_big);
    degree_ratio.push_back(stat / degree_bound);
    if (stat <= degree_bound) ++degree_ok;

    const double w_bar = 120.0;
    const auto w = geometric_clipped_weights(n, w_bar, 7.0, Seed{1002, s});
    const double scale = 2.0 / std::sqrt(w_bar);
    const double norm =
        chung_lu_deviation_norm(gen_chung_lu(w, Seed{1003, s}), w, 1e-6, 5000, Seed{1004, s}).value;
    cl_ratio.push_back(norm / scale);
    if (norm >= scale && norm <= 3.0 * scale) ++cl_ok;

    const double dev = sbm_deviation_norm(gen_sbm(sbm, Seed{1005, s}), sbm, 1e-6, 5000,
                                          Seed{1006, s}).value;
    sbm_ratio.push_back(dev / sbm_bound);
    if (dev <= sbm_bound) ++sbm_ok;
  }
  auto range = [](const std::vector<double>& x) {
    return "[" + num(*std::min_element(x.begin(), x.end())) + ", " +
           num(*std::max_element(x.begin(), x.end())) + "]";
  };
  out.note("degree stat / bound in " + range(degree_ratio) + ", " + std::to_string(degree_ok) + "/10");
  out.note("Chung-Lu norm / (2/sqrt(w)) in " + range(cl_ratio) + ", " + std::to_string(cl_ok) + "/10");
  out.note("SBM norm / bound in " + range(sbm_ratio) + ", " + std::to_string(sbm_ok) + "/10");
  out.require(degree_ok >= 9, "degree concentration in >= 9/10 seeds");
  out.require(cl_ok >= 9, "Chung-Lu deviation window in >= 9/10 seeds");
  out.require(sbm_ok >= 9, "SBM deviation bound in >= 9/10 seeds");
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome out;
  const auto base = std::filesystem::temp_directory_path() / "prlab_determinism";
  std::filesystem::remove_all(base);
  const std::string config = (std::filesystem::path(PRLAB_CONFIG_DIR) / "smoke.json").string();
  std::vector<std::string> csv;
  for (const char* run : {"a", "b"}) {
    const auto dir = base / run;
    const std::string cmd = std::string("\"") + PRLAB_CLI_PATH + "\" run --config \"" + config +
                            "\" --out-dir \"" + dir.string() + "\" --threads 2 2>/dev/null";
    const int status = std::system(cmd.c_str());
    out.require(status == 0, "prlab run exited 0 (" + std::to_string(status) + ")");
    csv.push_back(slurp(dir / "results.csv"));
  }
  out.note("csv bytes " + std::to_string(csv[0].size()));
  out.require(!csv[0].empty(), "CSV written");
  out.require(csv[0] == csv[1], "byte-identical CSV");
  std::filesystem::remove_all(base);
  return out;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "exactness endpoints", 1.0, exactness_endpoints},
      {2, "power iteration vs dense resolvent", 10.0, oracle_equivalence},
      {3, "closed form vs fixed point (equal communities)", 10.0, woodbury_identity},
      {4, "hand values on P3", 1.0, hand_values},
      {5, "deflated power iteration vs dense spectrum", 30.0, spectral_oracle},
      {6, "decay of tv, max_rel and lambda2 in n", 600.0, decay_trend},
      {7, "unit preference does not converge", 600.0, unit_preference_counterexample},
      {8, "power-law slow decay", 600.0, power_law_boundary},
      {9, "SBM trend and community correction", 600.0, sbm_trend},
      {10, "concentration certificates", 300.0, concentration_certificates},
      {11, "deterministic reruns", 600.0, determinism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.passed = false;
      outcome.note(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) {
      outcome.passed = false;
      outcome.note("runtime " + num(seconds) + " s exceeds " + num(c.limit_seconds) + " s");
    }
    for (const auto& n : outcome.notes) std::cout << "    " << n << '\n';
    std::cout << (outcome.passed ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title
              << " (" << num(seconds) << " s)" << std::endl;
    all = all && outcome.passed;
  }
  return all ? 0 : 1;
}
