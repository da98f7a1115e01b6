#pragma once

// Text, CSV, JSON and SVG emitters used by the command-line tool. Every
// emitter is byte-deterministic for a fixed input.

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nnadv/adversarial.hpp"
#include "nnadv/instance.hpp"
#include "nnadv/optimum.hpp"
#include "nnadv/sweep.hpp"
#include "nnadv/tour.hpp"

namespace nnadv {

/// 12 significant digits; NaN becomes an empty field.
inline std::string format_number(double value) {
  if (std::isnan(value)) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

inline std::string format_number(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

inline constexpr const char* kCsvHeader =
    "k,n,metric,policy,start,open_len,closed_len,opt,ratio_open,ratio_closed,chain,lower_bound,upper_bound";

inline std::string csv_row(const SweepRow& r) {
  std::ostringstream out;
  out << (r.k ? std::to_string(*r.k) : "") << ',' << r.n << ',' << r.metric << ',' << r.policy << ',' << r.start
      << ',' << format_number(r.open_length) << ',' << format_number(r.closed_length) << ','
      << format_number(r.opt_length) << ',' << format_number(r.ratio_open) << ',' << format_number(r.ratio_closed)
      << ',' << format_number(r.chain) << ',' << format_number(r.lower_bound) << ','
      << format_number(r.upper_bound);
  return out.str();
}

inline std::string csv_row(const RatioRow& r, std::size_t start) {
  std::ostringstream out;
  out << (r.k ? std::to_string(*r.k) : "") << ',' << r.n << ',' << r.metric << ",adversarial," << start << ','
      << format_number(r.nnr_open_length) << ',' << format_number(r.nnr_closed_length) << ','
      << format_number(r.opt_length) << ',' << format_number(r.ratio_open) << ',' << format_number(r.ratio_closed)
      << ',' << format_number(r.chain_value) << ',' << format_number(r.lower_bound) << ','
      << format_number(r.upper_bound);
  return out.str();
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kCsvHeader) + '\n';
  for (const auto& r : rows) out += csv_row(r) + '\n';
  return out;
}

inline nlohmann::json optional_json(const std::optional<double>& v) {
  return v && !std::isnan(*v) ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::string sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"k", r.k ? nlohmann::json(*r.k) : nlohmann::json(nullptr)},
                   {"n", r.n},
                   {"metric", r.metric},
                   {"policy", r.policy},
                   {"start", r.start},
                   {"open_len", r.open_length},
                   {"closed_len", r.closed_length},
                   {"opt", optional_json(r.opt_length)},
                   {"ratio_open", optional_json(r.ratio_open)},
                   {"ratio_closed", optional_json(r.ratio_closed)},
                   {"chain", optional_json(r.chain)},
                   {"lower_bound", r.lower_bound},
                   {"upper_bound", r.upper_bound},
                   {"weak_valid", r.weak_valid}});
  }
  return out.dump(2) + '\n';
}

/// Outcome of certifying one (k, metric) cell. `row` is present only when
/// every sub-check passed.
struct CertifyCell {
  int k = 0;
  std::string metric;
  CertificationReport report;
  std::optional<RatioRow> row;
  std::string error;

  bool passed() const { return row.has_value() && report.passed() && error.empty(); }
};

inline CertifyCell certify_cell(int k, const MetricSpec& metric, const std::optional<TourPath>& tour = std::nullopt) {
  CertifyCell cell;
  cell.k = k;
  cell.metric = metric.name();
  try {
    cell.row = theorem_row(k, metric, tour);
    cell.report = cell.row->certification;
  } catch (const CertificationFailed& failure) {
    cell.report = failure.report();
  } catch (const Error& e) {
    cell.error = e.what();
  }
  return cell;
}

inline std::string verdict_word(bool ok) { return ok ? "pass" : "FAIL"; }

inline std::string certify_text(const std::vector<CertifyCell>& cells) {
  std::ostringstream out;
  for (const auto& c : cells) {
    out << "k=" << c.k << " metric=" << c.metric;
    if (!c.error.empty()) {
      out << " ERROR " << c.error << '\n';
      continue;
    }
    const auto& r = c.report;
    out << " (a)=" << verdict_word(r.permutation) << " (b)=" << verdict_word(r.endpoints)
        << " (c)=" << verdict_word(r.length) << " (d)=" << verdict_word(r.nnr);
    if (c.row) {
      const RatioRow& row = *c.row;
      out << " n=" << row.n << " length=" << row.open_exact << " closed=" << format_number(row.nnr_closed_length)
          << " opt=" << row.opt_exact << " ratio=" << format_number(row.ratio_open)
          << " chain=" << format_number(row.chain_value) << " lower=" << format_number(row.lower_bound)
          << " upper=" << format_number(row.upper_bound) << " tie_steps=" << r.verdict.ties.size();
    } else {
      if (r.permutation) out << " length=" << format_number(r.measured.value());
      if (r.verdict.failed_step) out << " step=" << *r.verdict.failed_step;
      for (const auto& f : r.failures) out << " | " << f;
    }
    out << '\n';
  }
  return out.str();
}

inline std::string certify_csv(const std::vector<CertifyCell>& cells) {
  std::string out = std::string(kCsvHeader) + '\n';
  for (const auto& c : cells) {
    if (c.row) out += csv_row(*c.row, 0) + '\n';
  }
  return out;
}

inline std::string certify_json(const std::vector<CertifyCell>& cells) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : cells) {
    const auto& r = c.report;
    nlohmann::json j = {{"k", c.k},
                        {"metric", c.metric},
                        {"passed", c.passed()},
                        {"permutation", r.permutation},
                        {"endpoints", r.endpoints},
                        {"length", r.length},
                        {"nnr", r.nnr},
                        {"predicted_length", predicted_length(c.k)},
                        {"failures", r.failures}};
    if (r.verdict.failed_step) j["failed_step"] = *r.verdict.failed_step;
    if (!c.error.empty()) j["error"] = c.error;
    nlohmann::json ties = nlohmann::json::array();
    for (const auto& t : r.verdict.ties) {
      if (t.tie_set.size() > 1) ties.push_back({{"step", t.step}, {"tie_set", t.tie_set}});
    }
    j["tie_steps"] = ties.size();
    if (c.row) {
      const RatioRow& row = *c.row;
      j["n"] = row.n;
      j["open_len"] = row.open_exact;
      j["closed_len"] = row.nnr_closed_length;
      j["opt"] = row.opt_exact;
      j["ratio_open"] = row.ratio_open;
      j["ratio_closed"] = row.ratio_closed;
      j["chain"] = row.chain_value;
      j["lower_bound"] = row.lower_bound;
      j["upper_bound"] = row.upper_bound;
    }
    rows.push_back(std::move(j));
  }
  nlohmann::json out = {
      {"lower_bound_expression", "(log2(n) - 1) / 4"},
      {"lower_bound_note",
       "the weaker form log2(n)/4 - 1 is also implied; the table reports the stronger (log2(n) - 1)/4"},
      {"rows", rows}};
  return out.dump(2) + '\n';
}

inline std::string instance_json(const Instance& instance) {
  nlohmann::json cities = nlohmann::json::array();
  for (const ScaledPoint& p : instance.cities()) cities.push_back({p.x, p.y});
  nlohmann::json out = {{"n", instance.size()},
                        {"scale", instance.scale()},
                        {"metric", instance.metric().name()},
                        {"landmarks", {{"l", instance.landmark_l()}, {"m", instance.landmark_m()}}},
                        {"cities", cities}};
  out["k"] = instance.family_k() ? nlohmann::json(*instance.family_k()) : nlohmann::json(nullptr);
  if (instance.metric().is_graphic()) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : instance.metric().graph().graph().edges()) edges.push_back({a, b});
    out["edges"] = edges;
  }
  return out.dump(2) + '\n';
}

/// Cities as dots, the tour as arrows, landmarks labelled `l` and `m`.
inline std::string render_svg(const Instance& instance, const TourPath& tour) {
  check_tour(instance, tour);
  const double s = static_cast<double>(instance.scale());
  double max_x = 0, max_y = 0;
  for (const ScaledPoint& p : instance.cities()) {
    max_x = std::max(max_x, static_cast<double>(p.x) / s);
    max_y = std::max(max_y, static_cast<double>(p.y) / s);
  }
  const double unit = max_x <= 24 ? 60.0 : 1440.0 / max_x;
  const double margin = 40.0;
  auto px = [&](const ScaledPoint& p) { return margin + static_cast<double>(p.x) / s * unit; };
  auto py = [&](const ScaledPoint& p) { return margin + (max_y - static_cast<double>(p.y) / s) * unit; };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(2 * margin + max_x * unit) << "\" height=\""
      << num(2 * margin + max_y * unit) << "\">\n";
  out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
         "markerHeight=\"6\" orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"blue\"/></marker></defs>\n";
  for (const ScaledPoint& p : instance.cities()) {
    out << "<circle class=\"city\" cx=\"" << num(px(p)) << "\" cy=\"" << num(py(p)) << "\" r=\"4\"/>\n";
  }
  auto edge = [&](std::size_t a, std::size_t b) {
    const ScaledPoint& pa = instance.city(a);
    const ScaledPoint& pb = instance.city(b);
    double x1 = px(pa), y1 = py(pa), x2 = px(pb), y2 = py(pb);
    const double len = std::hypot(x2 - x1, y2 - y1);
    if (len > 16) {
      const double ux = (x2 - x1) / len, uy = (y2 - y1) / len;
      x1 += 6 * ux, y1 += 6 * uy, x2 -= 6 * ux, y2 -= 6 * uy;
    }
    out << "<line class=\"edge\" x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\""
        << num(y2) << "\" stroke=\"blue\" marker-end=\"url(#arrow)\"/>\n";
  };
  for (std::size_t i = 1; i < tour.size(); ++i) edge(tour.order[i - 1], tour.order[i]);
  if (tour.closed && tour.size() > 1) edge(tour.order.back(), tour.order.front());
  const ScaledPoint& l = instance.city(instance.landmark_l());
  const ScaledPoint& m = instance.city(instance.landmark_m());
  out << "<text class=\"landmark\" x=\"" << num(px(l) - 20) << "\" y=\"" << num(py(l) + 5) << "\">l</text>\n";
  out << "<text class=\"landmark\" x=\"" << num(px(m) - 4) << "\" y=\"" << num(py(m) - 12) << "\">m</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace nnadv
