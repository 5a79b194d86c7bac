#pragma once

// Oracles and fixtures shared by the test binaries. The oracles avoid the
// library's own elimination code.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "glueback/catalog.hpp"
#include "glueback/cell_complex.hpp"
#include "glueback/corner_complex.hpp"
#include "glueback/glue_back.hpp"

namespace testing {

using glueback::DeltaComplex;

inline DeltaComplex delta_of(int dim, std::vector<glueback::Simplex> tops) {
  return glueback::StratifiedComplex(dim, std::move(tops), {}).delta();
}

// Rank over GF(2) of a dense 0/1 matrix, by plain Gaussian elimination on
// vectors of bytes.
inline std::size_t naive_gf2_rank(std::vector<std::vector<std::uint8_t>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && !m[p][c]) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != rank && m[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

// GF(2) Betti numbers straight from the face lists.
inline std::vector<std::size_t> naive_gf2_betti(const DeltaComplex& k) {
  const int top = k.dim();
  std::vector<std::size_t> rank(static_cast<std::size_t>(top + 2), 0);
  for (int d = 1; d <= top; ++d) {
    std::vector<std::vector<std::uint8_t>> m(k.count(d), std::vector<std::uint8_t>(k.count(d - 1), 0));
    for (std::size_t j = 0; j < k.count(d); ++j) {
      for (int f : k.faces[static_cast<std::size_t>(d)][j]) m[j][static_cast<std::size_t>(f)] ^= 1;
    }
    rank[static_cast<std::size_t>(d)] = naive_gf2_rank(m);
  }
  std::vector<std::size_t> betti;
  for (int d = 0; d <= top; ++d) {
    betti.push_back(k.count(d) - rank[static_cast<std::size_t>(d)] - rank[static_cast<std::size_t>(d + 1)]);
  }
  return betti;
}

inline glueback::BuiltManifold built(const std::string& name) {
  const auto m = glueback::make(name);
  return glueback::build(m.q, m.lambda);
}

}  // namespace testing
