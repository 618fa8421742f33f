#include "lipkit/interval.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <sstream>
#include <vector>

#include "lipkit/error.hpp"

namespace lipkit {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_endpoint(const std::string& tok) {
  if (tok == "inf" || tok == "+inf") return std::numeric_limits<double>::infinity();
  if (tok == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_argument, "bad interval endpoint '" + tok + "'");
  }
  if (used != tok.size()) throw Error(ErrorCode::invalid_argument, "bad interval endpoint '" + tok + "'");
  return v;
}

bool parse_openness(const std::string& tok) {
  if (tok == "open") return true;
  if (tok == "closed") return false;
  throw Error(ErrorCode::invalid_argument, "interval endpoint kind must be open or closed, got '" + tok + "'");
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

bool Interval::lo_finite() const noexcept { return std::isfinite(lo); }
bool Interval::hi_finite() const noexcept { return std::isfinite(hi); }

bool Interval::contains(double v) const noexcept {
  if (std::isnan(v)) return false;
  const bool above = lo_open || !lo_finite() ? v > lo : v >= lo;
  const bool below = hi_open || !hi_finite() ? v < hi : v <= hi;
  return above && below;
}

Interval Interval::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 2 && parts.size() != 4) {
    throw Error(ErrorCode::invalid_argument,
                "interval must look like lo,hi or lo,hi,open|closed,open|closed; got '" + std::string(text) + "'");
  }
  Interval out;
  out.lo = parse_endpoint(parts[0]);
  out.hi = parse_endpoint(parts[1]);
  out.lo_open = parts.size() == 4 ? parse_openness(parts[2]) : false;
  out.hi_open = parts.size() == 4 ? parse_openness(parts[3]) : false;
  if (!out.lo_finite()) out.lo_open = true;
  if (!out.hi_finite()) out.hi_open = true;
  if (std::isnan(out.lo) || std::isnan(out.hi)) throw Error(ErrorCode::invalid_argument, "interval endpoint is NaN");
  return out;
}

std::string Interval::to_string() const {
  return std::string(lo_open ? "(" : "[") + format_number(lo) + ", " + format_number(hi) + (hi_open ? ")" : "]");
}

}  // namespace lipkit
