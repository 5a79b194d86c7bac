#include "glueback/orbit_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace glueback {

ParseError::ParseError(int line, std::string token, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message + (token.empty() ? "" : " (at '" + token + "')")),
      line_(line),
      token_(std::move(token)) {}

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

// Splits on whitespace; brackets and braces are tokens of their own.
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    Line line{number, {}};
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) line.tokens.push_back(std::move(cur));
      cur.clear();
    };
    for (char c : raw) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else if (c == '(' || c == ')' || c == '{' || c == '}') {
        flush();
        line.tokens.emplace_back(1, c);
      } else {
        cur += c;
      }
    }
    flush();
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

int to_int(const Line& line, const std::string& tok) {
  int v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || v < 0) {
    throw ParseError(line.number, tok, "expected a non-negative integer");
  }
  return v;
}

GroupElement to_element(const Line& line, const std::string& tok, int rank) {
  try {
    return GroupElement::parse(tok, rank);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line.number, tok, e.what());
  }
}

// Reads "( a b ... )" starting at tokens[pos]; advances pos.
Simplex read_tuple(const Line& line, std::size_t& pos) {
  if (pos >= line.tokens.size() || line.tokens[pos] != "(") {
    throw ParseError(line.number, pos < line.tokens.size() ? line.tokens[pos] : "", "expected '('");
  }
  ++pos;
  Simplex s;
  while (pos < line.tokens.size() && line.tokens[pos] != ")") s.push_back(to_int(line, line.tokens[pos++]));
  if (pos >= line.tokens.size()) throw ParseError(line.number, "", "missing ')'");
  ++pos;
  std::sort(s.begin(), s.end());
  return s;
}

void expect_end(const Line& line, std::size_t pos) {
  if (pos < line.tokens.size()) throw ParseError(line.number, line.tokens[pos], "unexpected token");
}

std::size_t check_format(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(1, "", "empty input, expected 'format " + std::string(kFormatVersion) + "'");
  const Line& first = lines.front();
  if (first.tokens[0] != "format") throw ParseError(first.number, first.tokens[0], "expected 'format' line first");
  if (first.tokens.size() != 2) throw ParseError(first.number, "", "format line takes one version");
  if (first.tokens[1] != kFormatVersion) {
    throw ParseError(first.number, first.tokens[1], "unsupported format version, expected " + std::string(kFormatVersion));
  }
  return 1;
}

struct CocycleLine {
  int line;
  int u, v;
  std::string bits;
};

CocycleLine read_cocycle(const Line& line) {
  std::size_t pos = 1;
  const Simplex e = read_tuple(line, pos);
  if (e.size() != 2 || e[0] == e[1]) throw ParseError(line.number, "", "cocycle edge needs two distinct vertices");
  if (pos >= line.tokens.size()) throw ParseError(line.number, "", "missing cocycle value");
  CocycleLine c{line.number, e[0], e[1], line.tokens[pos]};
  expect_end(line, pos + 1);
  return c;
}

Cocycle finish_cocycle(const std::vector<CocycleLine>& lines, const StratifiedComplex& q, int rank) {
  Cocycle xi = zero_cocycle(rank);
  std::set<std::pair<int, int>> seen;
  for (const auto& c : lines) {
    if (!q.index_of(Simplex{c.u, c.v})) {
      throw ParseError(c.line, "(" + std::to_string(c.u) + " " + std::to_string(c.v) + ")", "cocycle edge is not an edge of the complex");
    }
    if (!seen.insert({c.u, c.v}).second) throw ParseError(c.line, "", "cocycle edge given twice");
    Line l{c.line, {}};
    xi.set(c.u, c.v, to_element(l, c.bits, rank));
  }
  return xi;
}

}  // namespace

OrbitFile parse_orbit_file(const std::string& text) {
  const auto lines = tokenize(text);
  check_format(lines);
  int dim = -1;
  int rank = -1;
  std::vector<int> vertices;
  std::vector<Simplex> tops;
  std::map<Simplex, int> top_line;
  struct FacetLine {
    int line;
    FacetSpec spec;
  };
  std::vector<FacetLine> facets;
  struct ColorLine {
    int line;
    std::string name, bits;
  };
  std::vector<ColorLine> colors;
  std::vector<CocycleLine> cocycles;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& kw = line.tokens[0];
    auto need_dim = [&] {
      if (dim < 0) throw ParseError(line.number, kw, "'dim' must come first");
    };
    if (kw == "dim") {
      if (dim >= 0) throw ParseError(line.number, kw, "dim given twice");
      if (line.tokens.size() != 2) throw ParseError(line.number, "", "dim takes one value");
      dim = to_int(line, line.tokens[1]);
      if (dim < 1 || dim > 3) throw ParseError(line.number, line.tokens[1], "dimension must be 1, 2 or 3");
    } else if (kw == "rank") {
      if (rank >= 0) throw ParseError(line.number, kw, "rank given twice");
      if (line.tokens.size() != 2) throw ParseError(line.number, "", "rank takes one value");
      rank = to_int(line, line.tokens[1]);
      if (rank < 1 || rank > kMaxRank) throw ParseError(line.number, line.tokens[1], "rank out of range");
    } else if (kw == "vertex") {
      if (line.tokens.size() < 2) throw ParseError(line.number, "", "vertex needs an id");
      for (std::size_t k = 1; k < line.tokens.size(); ++k) vertices.push_back(to_int(line, line.tokens[k]));
    } else if (kw == "simplex") {
      need_dim();
      Simplex s;
      for (std::size_t k = 1; k < line.tokens.size(); ++k) s.push_back(to_int(line, line.tokens[k]));
      std::sort(s.begin(), s.end());
      if (s.size() != static_cast<std::size_t>(dim + 1)) {
        throw ParseError(line.number, "", "simplex needs " + std::to_string(dim + 1) + " vertices");
      }
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ParseError(line.number, "", "repeated vertex in simplex");
      if (!top_line.emplace(s, line.number).second) {
        throw ParseError(line.number, "", "duplicate simplex (first on line " + std::to_string(top_line.at(s)) + ")");
      }
      tops.push_back(std::move(s));
    } else if (kw == "facet") {
      need_dim();
      if (line.tokens.size() < 3) throw ParseError(line.number, "", "facet needs a name and a tuple list");
      FacetLine f{line.number, {line.tokens[1], {}}};
      std::size_t pos = 2;
      if (line.tokens[pos] != "{") throw ParseError(line.number, line.tokens[pos], "expected '{'");
      ++pos;
      while (pos < line.tokens.size() && line.tokens[pos] != "}") {
        Simplex s = read_tuple(line, pos);
        if (s.size() != static_cast<std::size_t>(dim)) {
          throw ParseError(line.number, "", "facet tuple needs " + std::to_string(dim) + " vertices");
        }
        f.spec.simplices.push_back(std::move(s));
      }
      if (pos >= line.tokens.size()) throw ParseError(line.number, "", "missing '}'");
      expect_end(line, pos + 1);
      for (const auto& g : facets) {
        if (g.spec.name == f.spec.name) throw ParseError(line.number, f.spec.name, "facet name used twice");
      }
      facets.push_back(std::move(f));
    } else if (kw == "color") {
      if (line.tokens.size() != 3) throw ParseError(line.number, "", "color takes a facet name and a bit-string");
      colors.push_back({line.number, line.tokens[1], line.tokens[2]});
    } else if (kw == "cocycle") {
      cocycles.push_back(read_cocycle(line));
    } else if (kw == "format") {
      throw ParseError(line.number, kw, "format line given twice");
    } else {
      throw ParseError(line.number, kw, "unknown keyword");
    }
  }
  if (dim < 0) throw ParseError(lines.back().number, "", "missing 'dim' line");
  if (tops.empty()) throw ParseError(lines.back().number, "", "no simplices");
  if (rank < 0) rank = dim;

  // facets are checked against the boundary of the bare complex first
  std::vector<int> extra;
  std::set<int> used;
  for (const auto& t : tops) used.insert(t.begin(), t.end());
  for (int v : vertices) {
    if (!used.count(v)) extra.push_back(v);
  }
  OrbitFile out;
  out.rank = rank;
  try {
    const StratifiedComplex bare(dim, tops, {}, extra);
    for (const auto& f : facets) {
      for (const auto& s : f.spec.simplices) {
        const auto j = bare.index_of(s);
        std::string tok = "(";
        for (std::size_t k = 0; k < s.size(); ++k) tok += (k ? " " : "") + std::to_string(s[k]);
        tok += ")";
        if (!j) throw ParseError(f.line, tok, "facet tuple is not a simplex of the complex");
        if (!bare.on_boundary(dim - 1, static_cast<std::size_t>(*j))) {
          throw ParseError(f.line, tok, "facet tuple is not on the boundary");
        }
      }
    }
    std::vector<FacetSpec> specs;
    for (auto& f : facets) specs.push_back(f.spec);
    out.q = StratifiedComplex(dim, tops, specs, extra);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines.back().number, "", e.what());
  }

  if (!colors.empty()) {
    Coloring lambda{rank, {}};
    for (const auto& c : colors) {
      Line l{c.line, {}};
      if (!out.q.facet_index(c.name)) throw ParseError(c.line, c.name, "color for unknown facet");
      if (!lambda.colors.emplace(c.name, to_element(l, c.bits, rank)).second) {
        throw ParseError(c.line, c.name, "facet colored twice");
      }
    }
    out.coloring = std::move(lambda);
  }
  if (!cocycles.empty()) out.cocycle = finish_cocycle(cocycles, out.q, rank);
  return out;
}

std::string emit_orbit_file(const StratifiedComplex& q, int rank, const Coloring* lambda, const Cocycle* xi) {
  std::ostringstream out;
  out << "format " << kFormatVersion << "\n";
  out << "dim " << q.dim() << "\n";
  out << "rank " << rank << "\n";
  for (int v : q.vertices()) out << "vertex " << v << "\n";
  for (const auto& t : q.simplices(q.dim())) {
    out << "simplex";
    for (int v : t) out << " " << v;
    out << "\n";
  }
  for (const auto& f : q.facets()) {
    out << "facet " << f.name << " {";
    for (const auto& s : f.simplices) {
      out << " (";
      for (std::size_t k = 0; k < s.size(); ++k) out << (k ? " " : "") << s[k];
      out << ")";
    }
    out << " }\n";
  }
  if (lambda) {
    for (const auto& f : q.facets()) {
      auto it = lambda->colors.find(f.name);
      if (it != lambda->colors.end()) out << "color " << f.name << " " << it->second.to_string() << "\n";
    }
  }
  if (xi) {
    for (const auto& [e, g] : xi->values) {
      if (!g.is_zero()) out << "cocycle (" << e.first << " " << e.second << ") " << g.to_string() << "\n";
    }
  }
  return out.str();
}

Cocycle parse_bundle_file(const std::string& text, const StratifiedComplex& q, int rank) {
  const auto lines = tokenize(text);
  check_format(lines);
  std::vector<CocycleLine> cocycles;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].tokens[0] != "cocycle") throw ParseError(lines[i].number, lines[i].tokens[0], "bundle files hold only cocycle lines");
    cocycles.push_back(read_cocycle(lines[i]));
  }
  return finish_cocycle(cocycles, q, rank);
}

MatchSpec parse_match_file(const std::string& text, int rank) {
  const auto lines = tokenize(text);
  check_format(lines);
  MatchSpec out;
  std::vector<GroupElement> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens[0] == "pair") {
      if (line.tokens.size() != 3) throw ParseError(line.number, "", "pair takes two vertex ids");
      out.pairs.emplace_back(to_int(line, line.tokens[1]), to_int(line, line.tokens[2]));
    } else if (line.tokens[0] == "sigma") {
      if (line.tokens.size() != 2) throw ParseError(line.number, "", "sigma takes one row");
      rows.push_back(to_element(line, line.tokens[1], rank));
    } else {
      throw ParseError(line.number, line.tokens[0], "unknown keyword");
    }
  }
  if (!rows.empty()) {
    if (rows.size() != static_cast<std::size_t>(rank)) {
      throw ParseError(lines.back().number, "", "sigma needs " + std::to_string(rank) + " rows");
    }
    const Gf2Matrix m = Gf2Matrix::from_rows(rows, rank);
    if (gf2_rank(m) != static_cast<std::size_t>(rank)) throw ParseError(lines.back().number, "", "sigma is not invertible");
    out.sigma = m;
  }
  return out;
}

}  // namespace glueback
