#pragma once

// Distribution files and CSV output.

#include <cerrno>
#include <cmath>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ehlin/distribution.hpp"

namespace ehlin {

/// Malformed or inconsistent input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request that cannot be carried out as stated (bad names, missing options).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const std::string buf(s);
  char* end = nullptr;
  errno = 0;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && errno != ERANGE;
}

}  // namespace detail

/// Reads `value,probability` lines; blank lines and `#` comments are skipped.
/// Errors carry `source:line:`.
inline DiscreteDistribution parse_distribution(std::istream& in, const std::string& source) {
  std::vector<Atom> atoms;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body(line);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = detail::trim(body);
    if (body.empty()) continue;
    const auto where = source + ":" + std::to_string(line_no) + ": ";
    const auto comma = body.find(',');
    if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
      throw DataError(where + "expected `value,probability`");
    }
    Atom a;
    if (!detail::parse_double(body.substr(0, comma), a.value)) throw DataError(where + "bad value");
    if (!detail::parse_double(body.substr(comma + 1), a.prob)) throw DataError(where + "bad probability");
    if (!(a.value >= 0.0) || !std::isfinite(a.value)) throw DataError(where + "value must be finite and >= 0");
    if (!(a.prob >= 0.0 && a.prob <= 1.0)) throw DataError(where + "probability must lie in [0,1]");
    atoms.push_back(a);
  }
  if (atoms.empty()) throw DataError(source + ": no atoms");
  try {
    return DiscreteDistribution(std::move(atoms));
  } catch (const std::invalid_argument& e) {
    throw DataError(source + ": " + e.what());
  }
}

inline DiscreteDistribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open");
  return parse_distribution(in, path);
}

/// Shortest text that round-trips to the same double; `+inf`/`-inf`/`nan`
/// for non-finite values.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// CSV with an optional `# generated ...` metadata line and one header line.
class CsvWriter {
 public:
  /// `comments` are written as `# ...` lines after the metadata line; they
  /// are part of the deterministic output and ignore `meta`.
  CsvWriter(std::ostream& out, const std::vector<std::string>& header, bool meta, std::string_view command,
            const std::vector<std::string>& comments = {})
      : out_(out) {
    if (meta) {
      const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char stamp[32];
      std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      out_ << "# generated " << stamp << " by ehlin " << command << '\n';
    }
    for (const auto& line : comments) out_ << "# " << line << '\n';
    write_cells(header);
  }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    write_cells(cells);
  }

  void write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

}  // namespace ehlin
