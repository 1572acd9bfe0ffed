#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "prlab/error.hpp"
#include "prlab/experiment.hpp"
#include "prlab/io.hpp"

namespace prlab {

inline constexpr std::string_view kCsvHeader =
    "scenario,n,replicate,seed,alpha,connected,resamples,tv,l1,max_rel,lambda2_abs,gap,"
    "degree_ratio,concentration_stat,pr_iters,wall_millis";

namespace detail {

inline std::string field(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string();
}

template <class Int>
std::string field(const std::optional<Int>& x) {
  return x ? std::to_string(*x) : std::string();
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

inline std::uint64_t parse_unsigned(const std::string& s) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::kParseError, "not an unsigned integer: '" + s + "'");
  }
  return x;
}

inline std::optional<double> optional_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace detail

/// Scenario ids never contain commas, so no quoting is needed. Timings are
/// written only when `with_timings` is set; otherwise the column is empty so
/// reruns are byte-identical.
inline void emit_csv(std::ostream& out, const std::vector<ExperimentRecord>& records,
                     bool with_timings = false) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    if (r.scenario.find(',') != std::string::npos) {
      throw Error(ErrorCode::kIoError, "scenario id contains a comma: " + r.scenario);
    }
    out << r.scenario << ',' << r.n << ',' << r.replicate << ',' << r.seed << ','
        << format_double(r.alpha) << ',' << (r.connected ? 1 : 0) << ',' << r.resamples << ','
        << detail::field(r.tv) << ',' << detail::field(r.l1) << ',' << detail::field(r.max_rel)
        << ',' << detail::field(r.lambda2_abs) << ',' << detail::field(r.gap) << ','
        << detail::field(r.degree_ratio) << ',' << detail::field(r.concentration_stat) << ','
        << detail::field(r.pr_iters) << ','
        << (with_timings ? detail::field(r.wall_millis) : std::string()) << '\n';
  }
}

inline void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path,
                     bool with_timings = false) {
  if (records.empty()) throw Error(ErrorCode::kInvalidParams, "no records to write");
  auto out = detail::open_out(path);
  emit_csv(out, records, with_timings);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

inline std::vector<ExperimentRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::kParseError, "missing or unexpected CSV header");
  }
  std::vector<ExperimentRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 16) {
      throw Error(ErrorCode::kParseError, "CSV line " + std::to_string(line_no) + ": " +
                                              std::to_string(f.size()) + " fields");
    }
    ExperimentRecord r;
    r.scenario = f[0];
    r.n = detail::parse_unsigned(f[1]);
    r.replicate = detail::parse_unsigned(f[2]);
    r.seed = detail::parse_unsigned(f[3]);
    r.alpha = parse_double(f[4]);
    if (f[5] != "0" && f[5] != "1") throw Error(ErrorCode::kParseError, "connected flag");
    r.connected = f[5] == "1";
    r.resamples = detail::parse_unsigned(f[6]);
    r.tv = detail::optional_double(f[7]);
    r.l1 = detail::optional_double(f[8]);
    r.max_rel = detail::optional_double(f[9]);
    r.lambda2_abs = detail::optional_double(f[10]);
    r.gap = detail::optional_double(f[11]);
    r.degree_ratio = detail::optional_double(f[12]);
    r.concentration_stat = detail::optional_double(f[13]);
    if (!f[14].empty()) r.pr_iters = detail::parse_unsigned(f[14]);
    if (!f[15].empty()) {
      std::int64_t ms = 0;
      auto [ptr, ec] = std::from_chars(f[15].data(), f[15].data() + f[15].size(), ms);
      if (ec != std::errc{} || ptr != f[15].data() + f[15].size()) {
        throw Error(ErrorCode::kParseError, "wall_millis");
      }
      r.wall_millis = ms;
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<ExperimentRecord> parse_csv(const std::string& path) {
  auto in = detail::open_in(path);
  return parse_csv(in);
}

enum class Metric { kTv, kL1, kMaxRel, kLambda2 };

constexpr std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kTv: return "tv";
    case Metric::kL1: return "l1";
    case Metric::kMaxRel: return "max_rel";
    case Metric::kLambda2: return "lambda2_abs";
  }
  return "unknown";
}

inline std::optional<double> metric_value(const ExperimentRecord& r, Metric m) {
  switch (m) {
    case Metric::kTv: return r.tv;
    case Metric::kL1: return r.l1;
    case Metric::kMaxRel: return r.max_rel;
    case Metric::kLambda2: return r.lambda2_abs;
  }
  return std::nullopt;
}

/// Per-n summary of one scenario id.
struct GridPoint {
  std::size_t n = 0;
  std::size_t records = 0;
  std::size_t succeeded = 0;
  /// Median over records carrying the metric; absent when none do.
  std::optional<double> median;
  /// Records that succeeded but had no value for the metric.
  std::size_t dropped = 0;

  double success_rate() const {
    return records == 0 ? 0.0 : static_cast<double>(succeeded) / static_cast<double>(records);
  }
};

/// Grid points of `scenario` in increasing n.
inline std::vector<GridPoint> summarize(const std::vector<ExperimentRecord>& records,
                                        const std::string& scenario, Metric metric) {
  std::map<std::size_t, std::pair<GridPoint, std::vector<double>>> by_n;
  for (const auto& r : records) {
    if (r.scenario != scenario) continue;
    auto& [point, values] = by_n[r.n];
    point.n = r.n;
    ++point.records;
    if (!r.connected) continue;
    ++point.succeeded;
    if (const auto x = metric_value(r, metric)) {
      values.push_back(*x);
    } else {
      ++point.dropped;
    }
  }
  std::vector<GridPoint> out;
  for (auto& [n, entry] : by_n) {
    if (!entry.second.empty()) entry.first.median = median(entry.second);
    out.push_back(entry.first);
  }
  return out;
}

/// Scenario ids in order of first appearance.
inline std::vector<std::string> scenario_ids(const std::vector<ExperimentRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) {
    if (std::find(out.begin(), out.end(), r.scenario) == out.end()) out.push_back(r.scenario);
  }
  return out;
}

/// Plain-text log-log series: a "series" line naming scenario and metric,
/// then "log10(n) log10(median)" pairs, blank-line separated. Rows without
/// the metric are left out and counted in the trailing comment. Zero
/// medians have no logarithm and are skipped the same way.
inline void emit_loglog(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "# log10(n) log10(median error) per scenario and metric\n";
  std::size_t dropped_rows = 0;
  std::size_t zero_medians = 0;
  for (const auto& id : scenario_ids(records)) {
    for (Metric m : {Metric::kTv, Metric::kMaxRel}) {
      out << "\nseries scenario=" << id << " metric=" << to_string(m) << '\n';
      for (const auto& point : summarize(records, id, m)) {
        dropped_rows += point.dropped;
        if (!point.median) continue;
        if (!(*point.median > 0.0)) {
          ++zero_medians;
          continue;
        }
        out << format_double(std::log10(static_cast<double>(point.n))) << ' '
            << format_double(std::log10(*point.median)) << '\n';
      }
    }
  }
  out << "\n# dropped rows (metric absent): " << dropped_rows << '\n';
  if (zero_medians > 0) out << "# zero medians skipped: " << zero_medians << '\n';
}

inline void emit_loglog(const std::vector<ExperimentRecord>& records, const std::string& path) {
  if (records.empty()) throw Error(ErrorCode::kInvalidParams, "no records to write");
  auto out = detail::open_out(path);
  emit_loglog(out, records);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

struct TrendCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline std::string medians_text(const std::vector<GridPoint>& points) {
  std::ostringstream s;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) s << ' ';
    s << points[i].n << ':' << (points[i].median ? format_double(*points[i].median) : "-");
  }
  return s.str();
}

inline bool all_present(const std::vector<GridPoint>& points) {
  for (const auto& p : points) {
    if (!p.median) return false;
  }
  return !points.empty();
}

inline std::size_t decreasing_steps(const std::vector<GridPoint>& points, bool strict) {
  std::size_t count = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double a = *points[i - 1].median, b = *points[i].median;
    if (strict ? b < a : b <= a) ++count;
  }
  return count;
}

}  // namespace detail

/// Every (n) cell of `id` kept a graph in at least 90% of replicates.
inline TrendCheck check_success_rate(const std::vector<ExperimentRecord>& records,
                                     const std::string& id) {
  const auto points = summarize(records, id, Metric::kTv);
  TrendCheck c{id + " success >= 90%", !points.empty(), ""};
  std::ostringstream s;
  for (const auto& p : points) {
    s << p.n << ':' << p.succeeded << '/' << p.records << ' ';
    if (p.success_rate() < 0.9) c.passed = false;
  }
  c.detail = s.str();
  return c;
}

/// Median of `metric` strictly decreasing across consecutive n.
inline TrendCheck check_strictly_decreasing(const std::vector<ExperimentRecord>& records,
                                            const std::string& id, Metric metric) {
  const auto points = summarize(records, id, metric);
  TrendCheck c{id + " median " + std::string(to_string(metric)) + " strictly decreasing", false,
               detail::medians_text(points)};
  c.passed = detail::all_present(points) &&
             detail::decreasing_steps(points, true) + 1 == points.size();
  return c;
}

/// Median of `metric` at the largest n divided by the smallest-n median is
/// at most `ratio` (drop) or at least `ratio` (persistence).
inline TrendCheck check_end_ratio(const std::vector<ExperimentRecord>& records,
                                  const std::string& id, Metric metric, double ratio,
                                  bool at_most) {
  const auto points = summarize(records, id, metric);
  TrendCheck c;
  c.name = id + " median " + std::string(to_string(metric)) + (at_most ? " last/first <= " : " last/first >= ") +
           format_double(ratio);
  c.detail = detail::medians_text(points);
  if (!detail::all_present(points) || *points.front().median <= 0.0) return c;
  const double r = *points.back().median / *points.front().median;
  c.detail += " ratio=" + format_double(r);
  c.passed = at_most ? r <= ratio : r >= ratio;
  return c;
}

/// Slow-decay pattern of heavy-tailed degrees: max_rel does not decrease
/// monotonically to below 0.1, while tv is non-increasing on at least three
/// quarters of the consecutive steps.
inline std::vector<TrendCheck> check_slow_decay(const std::vector<ExperimentRecord>& records,
                                                const std::string& id) {
  std::vector<TrendCheck> out;
  const auto rel = summarize(records, id, Metric::kMaxRel);
  TrendCheck no_conv{id + " median max_rel not monotone to < 0.1", false,
                     detail::medians_text(rel)};
  if (detail::all_present(rel)) {
    const bool monotone = detail::decreasing_steps(rel, true) + 1 == rel.size();
    no_conv.passed = !(monotone && *rel.back().median < 0.1);
  }
  out.push_back(no_conv);

  const auto tv = summarize(records, id, Metric::kTv);
  TrendCheck slow{id + " median tv non-increasing on >= 3/4 of steps", false,
                  detail::medians_text(tv)};
  if (detail::all_present(tv) && tv.size() >= 2) {
    const std::size_t steps = tv.size() - 1;
    const std::size_t needed = (3 * steps + 3) / 4;
    slow.passed = detail::decreasing_steps(tv, false) >= needed;
  }
  out.push_back(slow);
  return out;
}

/// At every n, median tv of `better` is strictly below median tv of `worse`.
inline TrendCheck check_pointwise_smaller(const std::vector<ExperimentRecord>& records,
                                          const std::string& better, const std::string& worse) {
  const auto a = summarize(records, better, Metric::kTv);
  const auto b = summarize(records, worse, Metric::kTv);
  TrendCheck c{better + " median tv < " + worse + " median tv at every n", false,
               detail::medians_text(a) + " vs " + detail::medians_text(b)};
  if (!detail::all_present(a) || !detail::all_present(b) || a.size() != b.size()) return c;
  c.passed = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].n != b[i].n || !(*a[i].median < *b[i].median)) c.passed = false;
  }
  return c;
}

/// The trend expectations attached to each family.
inline std::vector<TrendCheck> check_scenario(const Scenario& s,
                                              const std::vector<ExperimentRecord>& records) {
  std::vector<TrendCheck> out{check_success_rate(records, s.id())};
  switch (s.family) {
    case Family::kErLog7:
    case Family::kChungLuGeometric:
      out.push_back(check_strictly_decreasing(records, s.id(), Metric::kTv));
      out.push_back(check_strictly_decreasing(records, s.id(), Metric::kMaxRel));
      out.push_back(check_strictly_decreasing(records, s.id(), Metric::kLambda2));
      out.push_back(check_end_ratio(records, s.id(), Metric::kMaxRel, 1.0 / 3.0, true));
      break;
    case Family::kErUnitPreference:
      out.push_back(check_end_ratio(records, s.id(), Metric::kMaxRel, 0.5, false));
      break;
    case Family::kPowerLaw: {
      auto slow = check_slow_decay(records, s.id());
      out.insert(out.end(), slow.begin(), slow.end());
      break;
    }
    case Family::kSbmEqual:
      out.push_back(check_strictly_decreasing(records, s.id(), Metric::kTv));
      if (s.resolved_preference().kind == Preference::Kind::kSetC1) {
        out.push_back(check_pointwise_smaller(records, s.id(), mixture_id(s.id())));
      }
      break;
  }
  return out;
}

}  // namespace prlab
