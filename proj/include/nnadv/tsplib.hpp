#pragma once

// TSPLIB-style instance files.
//
// L1, L2 and L-infinity instances are written with MAN_2D, EUC_2D and MAX_2D
// node coordinates. Graphic instances are written as an EXPLICIT full matrix
// of hop counts, with the coordinates in DISPLAY_DATA_SECTION. The COMMENT
// line carries `k=<int> l=<idx> m=<idx> scale=<S>` so that landmarks, family
// level and the lattice scale survive a round trip.
//
// Coordinates are printed as decimals of x / S. They are exact when S has no
// prime factors besides 2 and 5; otherwise enough digits are printed for the
// scale in the COMMENT to recover x by rounding.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nnadv/error.hpp"
#include "nnadv/instance.hpp"
#include "nnadv/metric.hpp"

namespace nnadv {

namespace detail {

using Int128 = __int128;

inline Int128 pow10(int e) {
  Int128 v = 1;
  while (e-- > 0) v *= 10;
  return v;
}

inline std::string int128_to_string(Int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  if (negative) v = -v;
  std::string out;
  while (v > 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return negative ? "-" + out : out;
}

/// Fractional digits needed to print x / scale exactly, or nullopt when the
/// expansion does not terminate.
inline std::optional<int> terminating_digits(std::int64_t scale) {
  int twos = 0, fives = 0;
  while (scale % 2 == 0) scale /= 2, ++twos;
  while (scale % 5 == 0) scale /= 5, ++fives;
  if (scale != 1) return std::nullopt;
  return std::max(twos, fives);
}

inline std::string format_scaled(std::int64_t value, std::int64_t scale) {
  int digits = 0;
  Int128 numerator = 0;
  if (auto exact = terminating_digits(scale)) {
    digits = *exact;
    numerator = static_cast<Int128>(value) * (pow10(digits) / scale);
  } else {
    digits = static_cast<int>(std::to_string(scale).size()) + 3;
    const Int128 scaled = static_cast<Int128>(value) * pow10(digits);
    const Int128 half = scale / 2;
    numerator = scaled >= 0 ? (scaled + half) / scale : -((-scaled + half) / scale);
  }
  if (digits == 0) return int128_to_string(numerator);
  const bool negative = numerator < 0;
  std::string body = int128_to_string(negative ? -numerator : numerator);
  if (static_cast<int>(body.size()) <= digits) body.insert(0, static_cast<std::size_t>(digits) - body.size() + 1, '0');
  body.insert(body.size() - static_cast<std::size_t>(digits), 1, '.');
  while (body.back() == '0') body.pop_back();
  if (body.back() == '.') body.pop_back();
  return negative ? "-" + body : body;
}

/// A decimal literal as numerator / 10^digits.
struct Decimal {
  Int128 numerator = 0;
  int digits = 0;
};

inline Decimal parse_decimal(const std::string& text) {
  Decimal d;
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  bool any = false, in_fraction = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' && !in_fraction) {
      in_fraction = true;
    } else if (c >= '0' && c <= '9') {
      if (d.digits > 30) throw ParseError("coordinate '" + text + "' has too many digits");
      d.numerator = d.numerator * 10 + (c - '0');
      if (in_fraction) ++d.digits;
      any = true;
    } else {
      throw ParseError("malformed coordinate '" + text + "'");
    }
  }
  if (!any) throw ParseError("malformed coordinate '" + text + "'");
  if (negative) d.numerator = -d.numerator;
  return d;
}

inline std::int64_t decimal_to_lattice(const Decimal& d, std::int64_t scale) {
  const Int128 scaled = d.numerator * scale;
  const Int128 denom = pow10(d.digits);
  const Int128 half = denom / 2;
  const Int128 q = scaled >= 0 ? (scaled + half) / denom : -((-scaled + half) / denom);
  return static_cast<std::int64_t>(q);
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

inline std::string tsplib_weight_type(const MetricSpec& metric) {
  if (metric.is_graphic()) return "EXPLICIT";
  if (metric.p() == 1.0) return "MAN_2D";
  if (metric.p() == 2.0) return "EUC_2D";
  if (metric.p() == kInfinity) return "MAX_2D";
  throw Error("metric " + metric.name() + " has no TSPLIB edge weight type");
}

inline std::string export_instance(const Instance& instance, const std::string& name = {}) {
  const std::string weight_type = tsplib_weight_type(instance.metric());
  std::ostringstream out;
  const std::string title =
      !name.empty() ? name : instance.family_k() ? "G" + std::to_string(*instance.family_k()) : "grid";
  out << "NAME: " << title << '\n';
  out << "COMMENT:";
  if (instance.family_k()) out << " k=" << *instance.family_k();
  out << " l=" << instance.landmark_l() << " m=" << instance.landmark_m() << " scale=" << instance.scale() << '\n';
  out << "TYPE: TSP\n";
  out << "DIMENSION: " << instance.size() << '\n';
  out << "EDGE_WEIGHT_TYPE: " << weight_type << '\n';
  auto coordinates = [&] {
    for (std::size_t i = 0; i < instance.size(); ++i) {
      const ScaledPoint p = instance.city(i);
      out << (i + 1) << ' ' << detail::format_scaled(p.x, instance.scale()) << ' '
          << detail::format_scaled(p.y, instance.scale()) << '\n';
    }
  };
  if (instance.metric().is_graphic()) {
    out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
    out << "DISPLAY_DATA_TYPE: TWOD_DISPLAY\n";
    out << "EDGE_WEIGHT_SECTION\n";
    for (std::size_t i = 0; i < instance.size(); ++i) {
      const SourceView view = instance.from(i);
      for (std::size_t j = 0; j < instance.size(); ++j) out << (j ? " " : "") << *view.to(j).exact;
      out << '\n';
    }
    out << "DISPLAY_DATA_SECTION\n";
  } else {
    out << "NODE_COORD_SECTION\n";
  }
  coordinates();
  out << "EOF\n";
  return out.str();
}

inline Instance import_instance(const std::string& text) {
  std::istringstream in(text);
  std::map<std::string, std::string> header;
  std::vector<std::string> coord_lines;
  std::vector<std::int64_t> matrix;
  std::string line;
  enum class Section { header, coords, weights } section = Section::header;
  std::optional<std::size_t> dimension;

  while (std::getline(in, line)) {
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (t == "EOF") break;
    if (t == "NODE_COORD_SECTION" || t == "DISPLAY_DATA_SECTION") {
      section = Section::coords;
      continue;
    }
    if (t == "EDGE_WEIGHT_SECTION") {
      section = Section::weights;
      continue;
    }
    if (section == Section::header || t.find(':') != std::string::npos) {
      const auto colon = t.find(':');
      if (colon == std::string::npos) throw ParseError("malformed header line '" + t + "'");
      header[detail::trim(std::string_view(t).substr(0, colon))] = detail::trim(std::string_view(t).substr(colon + 1));
      section = Section::header;
      continue;
    }
    if (section == Section::coords) {
      coord_lines.push_back(t);
    } else {
      std::istringstream fields(t);
      std::string token;
      while (fields >> token) {
        try {
          std::size_t used = 0;
          matrix.push_back(std::stoll(token, &used));
          if (used != token.size()) throw ParseError("bad weight");
        } catch (const std::exception&) {
          throw ParseError("malformed edge weight '" + token + "'");
        }
      }
    }
  }

  if (!header.count("DIMENSION")) throw ParseError("missing DIMENSION");
  try {
    dimension = static_cast<std::size_t>(std::stoull(header["DIMENSION"]));
  } catch (const std::exception&) {
    throw ParseError("malformed DIMENSION");
  }
  const std::size_t n = *dimension;
  if (header.count("TYPE") && header["TYPE"] != "TSP") throw ParseError("unsupported TYPE " + header["TYPE"]);

  std::optional<int> k;
  std::size_t landmark_l = 0, landmark_m = 0;
  std::optional<std::int64_t> scale;
  {
    std::istringstream fields(header["COMMENT"]);
    std::string token;
    while (fields >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = token.substr(0, eq), value = token.substr(eq + 1);
      try {
        if (key == "k") k = std::stoi(value);
        if (key == "l") landmark_l = std::stoull(value);
        if (key == "m") landmark_m = std::stoull(value);
        if (key == "scale") scale = std::stoll(value);
      } catch (const std::exception&) {
        throw ParseError("malformed COMMENT field '" + token + "'");
      }
    }
  }

  const std::string weight_type = header["EDGE_WEIGHT_TYPE"];
  MetricSpec metric = MetricSpec::l2();
  if (weight_type == "EUC_2D") {
    metric = MetricSpec::l2();
  } else if (weight_type == "MAN_2D") {
    metric = MetricSpec::l1();
  } else if (weight_type == "MAX_2D") {
    metric = MetricSpec::linf();
  } else if (weight_type == "EXPLICIT") {
    metric = MetricSpec::graphic();
    if (header.count("EDGE_WEIGHT_FORMAT") && header["EDGE_WEIGHT_FORMAT"] != "FULL_MATRIX") {
      throw ParseError("unsupported EDGE_WEIGHT_FORMAT " + header["EDGE_WEIGHT_FORMAT"]);
    }
  } else {
    throw ParseError("unknown EDGE_WEIGHT_TYPE '" + weight_type + "'");
  }

  if (coord_lines.size() != n) throw ParseError("expected " + std::to_string(n) + " coordinate lines");
  std::vector<std::size_t> ids(n);
  std::vector<detail::Decimal> xs(n), ys(n);
  int max_digits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::istringstream fields(coord_lines[i]);
    std::string id, x, y, extra;
    if (!(fields >> id >> x >> y) || (fields >> extra)) throw ParseError("malformed coordinate line '" + coord_lines[i] + "'");
    std::size_t node = 0;
    try {
      node = std::stoull(id);
    } catch (const std::exception&) {
      throw ParseError("malformed node id '" + id + "'");
    }
    if (node < 1 || node > n) throw ParseError("node id " + id + " out of range");
    ids[i] = node - 1;
    xs[i] = detail::parse_decimal(x);
    ys[i] = detail::parse_decimal(y);
    max_digits = std::max({max_digits, xs[i].digits, ys[i].digits});
  }
  if (!scale) {
    if (max_digits > 18) throw ParseError("coordinates are too precise");
    scale = static_cast<std::int64_t>(detail::pow10(max_digits));
  }
  if (*scale < 1) throw ParseError("scale must be positive");
  std::vector<ScaledPoint> cities(n);
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[ids[i]]) throw ParseError("duplicate node id " + std::to_string(ids[i] + 1));
    seen[ids[i]] = 1;
    cities[ids[i]] = {detail::decimal_to_lattice(xs[i], *scale), detail::decimal_to_lattice(ys[i], *scale)};
  }

  if (metric.is_graphic()) {
    if (matrix.size() != n * n) throw ParseError("EDGE_WEIGHT_SECTION must hold a full n x n matrix");
    UnitGraph graph(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (matrix[i * n + i] != 0) throw ParseError("explicit matrix has a non-zero diagonal");
      for (std::size_t j = i + 1; j < n; ++j) {
        if (matrix[i * n + j] != matrix[j * n + i]) {
          throw ParseError("explicit matrix is not symmetric at (" + std::to_string(i + 1) + ", " +
                           std::to_string(j + 1) + ")");
        }
        if (matrix[i * n + j] == 1) graph.add_edge(i, j);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto hops = graph.bfs(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (hops[j] != matrix[i * n + j]) throw ParseError("explicit matrix is not the hop metric of its unit edges");
      }
    }
    metric = MetricSpec::graphic(std::move(graph));
  }
  if (landmark_l >= n || landmark_m >= n) throw ParseError("landmark index out of range");
  try {
    return Instance(std::move(cities), *scale, std::move(metric), landmark_l, landmark_m, k);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace nnadv
