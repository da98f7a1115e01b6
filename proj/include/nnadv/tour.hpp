#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nnadv/error.hpp"
#include "nnadv/instance.hpp"

namespace nnadv {

/// Ordered sequence of distinct city indices. A closed tour returns from the
/// last city to the first.
struct TourPath {
  std::vector<std::size_t> order;
  bool closed = false;

  std::size_t size() const { return order.size(); }
  bool empty() const { return order.empty(); }

  friend bool operator==(const TourPath&, const TourPath&) = default;
};

/// A sum of distances in lattice units. `exact` survives only while every
/// summand was an exact integer.
struct Length {
  std::optional<std::int64_t> exact = 0;
  double approx = 0.0;
  std::int64_t scale = 1;

  double value() const {
    return (exact ? static_cast<double>(*exact) : approx) / static_cast<double>(scale);
  }

  Length& operator+=(const DistanceValue& d) {
    exact = (exact && d.exact) ? std::optional<std::int64_t>(*exact + *d.exact) : std::nullopt;
    approx += d.approx;
    scale = d.scale;
    return *this;
  }
};

/// Throws if the tour repeats a city, leaves the instance, or is marked
/// closed without covering every city.
inline void check_tour(const Instance& instance, const TourPath& tour) {
  std::vector<char> seen(instance.size(), 0);
  for (std::size_t c : tour.order) {
    if (c >= instance.size()) throw Error("tour city " + std::to_string(c) + " is out of range");
    if (seen[c]) throw Error("tour visits city " + std::to_string(c) + " twice");
    seen[c] = 1;
  }
  if (tour.closed && tour.size() != instance.size()) throw Error("closed tour must visit every city");
}

/// Sum of consecutive step lengths, plus the closing edge for closed tours.
inline Length tour_length(const Instance& instance, const TourPath& tour) {
  Length total;
  total.scale = instance.scale();
  for (std::size_t i = 1; i < tour.size(); ++i) total += instance.distance(tour.order[i - 1], tour.order[i]);
  if (tour.closed && tour.size() > 1) total += instance.distance(tour.order.back(), tour.order.front());
  return total;
}

// Tour interchange format: a `CLOSED` or `OPEN` header, then one city index
// per line. `#` starts a comment; blank lines are ignored.

inline void write_tour(std::ostream& out, const TourPath& tour, const std::string& comment = {}) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << (tour.closed ? "CLOSED" : "OPEN") << '\n';
  for (std::size_t c : tour.order) out << c << '\n';
}

inline std::string format_tour(const TourPath& tour, const std::string& comment = {}) {
  std::ostringstream out;
  write_tour(out, tour, comment);
  return out.str();
}

inline TourPath read_tour(std::istream& in) {
  TourPath tour;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    std::string extra;
    if (fields >> extra) throw ParseError("tour line " + std::to_string(line_no) + ": expected one token");
    if (!have_header) {
      if (token == "CLOSED") {
        tour.closed = true;
      } else if (token != "OPEN") {
        throw ParseError("tour must start with CLOSED or OPEN");
      }
      have_header = true;
      continue;
    }
    std::size_t consumed = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(token, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != token.size() || token.front() == '-') {
      throw ParseError("tour line " + std::to_string(line_no) + ": '" + token + "' is not a city index");
    }
    tour.order.push_back(static_cast<std::size_t>(value));
  }
  if (!have_header) throw ParseError("tour must start with CLOSED or OPEN");
  return tour;
}

inline TourPath parse_tour(const std::string& text) {
  std::istringstream in(text);
  return read_tour(in);
}

}  // namespace nnadv
