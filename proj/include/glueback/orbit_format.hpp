#pragma once

// Line-oriented text format for orbit spaces, bundle data and matchings.
//
//   format glueback-1
//   dim 3
//   rank 3
//   vertex 0
//   simplex 0 1 2 3
//   facet F1 { (0 1 2) (0 2 3) }
//   color F1 100
//   cocycle (0 1) 010
//
// '#' starts a comment. rank defaults to dim.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "glueback/characteristic_data.hpp"
#include "glueback/corner_complex.hpp"

namespace glueback {

inline constexpr const char* kFormatVersion = "glueback-1";

class ParseError : public std::runtime_error {
public:
  ParseError(int line, std::string token, const std::string& message);
  int line() const { return line_; }
  const std::string& token() const { return token_; }

private:
  int line_;
  std::string token_;
};

struct OrbitFile {
  StratifiedComplex q;
  int rank = 0;
  /// Present when the file has any color line.
  std::optional<Coloring> coloring;
  /// Present when the file has any cocycle line.
  std::optional<Cocycle> cocycle;
};

OrbitFile parse_orbit_file(const std::string& text);

std::string emit_orbit_file(const StratifiedComplex& q, int rank, const Coloring* lambda = nullptr,
                            const Cocycle* xi = nullptr);

/// A file holding only a format line and cocycle lines over q.
Cocycle parse_bundle_file(const std::string& text, const StratifiedComplex& q, int rank);

struct MatchSpec {
  std::vector<std::pair<int, int>> pairs;
  /// Rows of sigma, top to bottom.
  std::optional<Gf2Matrix> sigma;
};

/// `pair <v1> <v2>` lines and an optional block of `sigma <row>` lines.
MatchSpec parse_match_file(const std::string& text, int rank);

}  // namespace glueback
