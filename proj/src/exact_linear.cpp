#include "glueback/exact_linear.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace glueback {

namespace {

void check_rank(int rank) {
  if (rank < 0 || rank > kMaxRank) {
    throw std::invalid_argument("group rank " + std::to_string(rank) + " outside [0, " +
                                std::to_string(kMaxRank) + "]");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(int rank, std::uint32_t bits) : bits_(bits), rank_(rank) {
  check_rank(rank);
  if (rank < 32 && (bits >> rank) != 0) {
    throw std::invalid_argument("group element has bits beyond rank " + std::to_string(rank));
  }
}

GroupElement GroupElement::generator(int rank, int i) {
  if (i < 0 || i >= rank) throw std::invalid_argument("generator index out of range");
  return GroupElement(rank, std::uint32_t{1} << i);
}

GroupElement GroupElement::parse(std::string_view text, int expected_rank) {
  if (text.empty()) throw std::invalid_argument("empty bit-string");
  const int width = static_cast<int>(text.size());
  if (expected_rank >= 0 && width != expected_rank) {
    throw std::invalid_argument("bit-string '" + std::string(text) + "' has width " +
                                std::to_string(width) + ", expected width " +
                                std::to_string(expected_rank));
  }
  check_rank(width);
  std::uint32_t bits = 0;
  for (int i = 0; i < width; ++i) {
    const char c = text[static_cast<std::size_t>(i)];
    if (c == '1') {
      bits |= std::uint32_t{1} << i;
    } else if (c != '0') {
      throw std::invalid_argument("bit-string '" + std::string(text) + "' contains '" +
                                  std::string(1, c) + "'");
    }
  }
  return GroupElement(width, bits);
}

int GroupElement::weight() const { return std::popcount(bits_); }

std::string GroupElement::to_string() const {
  std::string out(static_cast<std::size_t>(rank_), '0');
  for (int i = 0; i < rank_; ++i) {
    if (test(i)) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

GroupElement GroupElement::operator+(const GroupElement& other) const {
  GroupElement out = *this;
  out += other;
  return out;
}

GroupElement& GroupElement::operator+=(const GroupElement& other) {
  if (other.rank_ != rank_) {
    throw std::invalid_argument("adding group elements of ranks " + std::to_string(rank_) +
                                " and " + std::to_string(other.rank_));
  }
  bits_ ^= other.bits_;
  return *this;
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(int ambient_rank) : ambient_rank_(ambient_rank) { check_rank(ambient_rank); }

Subgroup Subgroup::span(std::span<const GroupElement> generators, int ambient_rank) {
  Subgroup h(ambient_rank);
  for (const auto& g : generators) {
    if (g.rank() != ambient_rank) {
      throw std::invalid_argument("generator " + g.to_string() + " has rank " +
                                  std::to_string(g.rank()) + ", expected " +
                                  std::to_string(ambient_rank));
    }
    h.insert(g);
  }
  return h;
}

Subgroup Subgroup::whole(int ambient_rank) {
  std::vector<GroupElement> gens;
  for (int i = 0; i < ambient_rank; ++i) gens.push_back(GroupElement::generator(ambient_rank, i));
  return span(gens, ambient_rank);
}

GroupElement Subgroup::reduce(const GroupElement& g) const {
  if (g.rank() != ambient_rank_) throw std::invalid_argument("reduce: rank mismatch");
  std::uint32_t bits = g.bits();
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if ((bits >> pivots_[k]) & 1u) bits ^= basis_[k].bits();
  }
  return GroupElement(ambient_rank_, bits);
}

void Subgroup::insert(GroupElement g) {
  g = reduce(g);
  if (g.is_zero()) return;
  const int pivot = std::countr_zero(g.bits());
  // keep the basis reduced: clear the new pivot from the existing rows
  for (auto& row : basis_) {
    if (row.test(pivot)) row += g;
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, pivot);
  basis_.insert(basis_.begin() + pos, g);
}

bool Subgroup::contains(const GroupElement& g) const { return reduce(g).is_zero(); }

bool Subgroup::contains(const Subgroup& other) const {
  if (other.ambient_rank_ != ambient_rank_) return false;
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const GroupElement& g) { return contains(g); });
}

std::vector<GroupElement> Subgroup::coset_representatives() const {
  // free coordinates are the non-pivot positions; every assignment of them
  // is a distinct canonical representative
  std::vector<int> free;
  for (int i = 0; i < ambient_rank_; ++i) {
    if (!std::binary_search(pivots_.begin(), pivots_.end(), i)) free.push_back(i);
  }
  std::vector<GroupElement> reps;
  reps.reserve(std::size_t{1} << free.size());
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << free.size()); ++mask) {
    std::uint32_t bits = 0;
    for (std::size_t k = 0; k < free.size(); ++k) {
      if ((mask >> k) & 1u) bits |= std::uint32_t{1} << free[k];
    }
    reps.emplace_back(ambient_rank_, bits);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

std::vector<GroupElement> Subgroup::elements() const {
  std::vector<GroupElement> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << basis_.size()); ++mask) {
    GroupElement g = GroupElement::zero(ambient_rank_);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if ((mask >> k) & 1u) g += basis_[k];
    }
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup subgroup_span(std::span<const GroupElement> generators, int ambient_rank) {
  return Subgroup::span(generators, ambient_rank);
}

std::vector<Subgroup> subgroups_of_rank(int ambient_rank, int rank) {
  check_rank(ambient_rank);
  if (ambient_rank > 8) throw std::invalid_argument("subgroup enumeration limited to rank 8");
  std::set<std::vector<GroupElement>> seen;
  std::vector<Subgroup> out;
  // breadth-first over spans: extend every rank-r subgroup by every element
  std::vector<Subgroup> layer{Subgroup(ambient_rank)};
  for (int r = 0; r < rank; ++r) {
    std::vector<Subgroup> next;
    std::set<std::vector<GroupElement>> next_seen;
    for (const auto& h : layer) {
      for (std::uint32_t b = 1; b < (std::uint32_t{1} << ambient_rank); ++b) {
        GroupElement g(ambient_rank, b);
        if (h.contains(g)) continue;
        std::vector<GroupElement> gens = h.basis();
        gens.push_back(g);
        Subgroup bigger = Subgroup::span(gens, ambient_rank);
        if (next_seen.insert(bigger.basis()).second) next.push_back(std::move(bigger));
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.basis() < b.basis(); });
  return layer;
}

// ---------------------------------------------------------------------------
// Gf2Matrix

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
  Gf2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

Gf2Matrix Gf2Matrix::from_rows(std::span<const GroupElement> rows, int rank) {
  Gf2Matrix m(rows.size(), static_cast<std::size_t>(rank));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].rank() != rank) throw std::invalid_argument("from_rows: rank mismatch");
    for (int c = 0; c < rank; ++c) m.set(r, static_cast<std::size_t>(c), rows[r].test(c));
  }
  return m;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool value) {
  auto& w = data_[r * words_ + c / 64];
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  w = value ? (w | bit) : (w & ~bit);
}

void Gf2Matrix::add_row(std::size_t dst, std::size_t src) {
  for (std::size_t k = 0; k < words_; ++k) data_[dst * words_ + k] ^= data_[src * words_ + k];
}

void Gf2Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t k = 0; k < words_; ++k) std::swap(data_[a * words_ + k], data_[b * words_ + k]);
}

bool Gf2Matrix::row_is_zero(std::size_t r) const {
  for (std::size_t k = 0; k < words_; ++k) {
    if (data_[r * words_ + k] != 0) return false;
  }
  return true;
}

Gf2Matrix Gf2Matrix::transpose() const {
  Gf2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r, true);
    }
  }
  return t;
}

GroupElement Gf2Matrix::row_element(std::size_t r) const {
  std::uint32_t bits = 0;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (get(r, c)) bits |= std::uint32_t{1} << c;
  }
  return GroupElement(static_cast<int>(cols_), bits);
}

std::string Gf2Matrix::to_string() const {
  std::string out;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out += ' ';
    for (std::size_t c = 0; c < cols_; ++c) out += get(r, c) ? '1' : '0';
  }
  return out;
}

namespace {

// Row-reduces in place; returns pivot columns in row order.
std::vector<std::size_t> gf2_row_reduce(Gf2Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != row && m.get(r, c)) m.add_row(r, row);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t gf2_rank(Gf2Matrix m) {
  // forward elimination only; cheaper than full reduction
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(rank, p);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m.get(r, c)) m.add_row(r, rank);
    }
    ++rank;
  }
  return rank;
}

Gf2Matrix gf2_nullspace(const Gf2Matrix& m) {
  Gf2Matrix r = m;
  const auto pivots = gf2_row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free.push_back(c);
  }
  Gf2Matrix basis(free.size(), m.cols());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis.set(k, free[k], true);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (r.get(i, free[k])) basis.set(k, pivots[i], true);
    }
  }
  return basis;
}

bool gf2_solve(const Gf2Matrix& m, const std::vector<bool>& b, std::vector<bool>& x) {
  if (b.size() != m.rows()) throw std::invalid_argument("gf2_solve: size mismatch");
  Gf2Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.get(r, c));
    aug.set(r, m.cols(), b[r]);
  }
  const auto pivots = gf2_row_reduce(aug);
  x.assign(m.cols(), false);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return false;
    x[pivots[i]] = aug.get(i, m.cols());
  }
  return true;
}

GroupElement apply(const Gf2Matrix& sigma, const GroupElement& x) {
  const auto n = static_cast<std::size_t>(x.rank());
  if (sigma.rows() != n || sigma.cols() != n) throw std::invalid_argument("apply: shape mismatch");
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool parity = false;
    for (std::size_t j = 0; j < n; ++j) parity ^= (sigma.get(i, j) && x.test(static_cast<int>(j)));
    if (parity) bits |= std::uint32_t{1} << i;
  }
  return GroupElement(x.rank(), bits);
}

std::vector<Gf2Matrix> enumerate_glnq2(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_glnq2: negative n");
  if (n > 4) throw std::invalid_argument("enumerate_glnq2: n = " + std::to_string(n) + " exceeds 4");
  std::vector<Gf2Matrix> out;
  if (n == 0) {
    out.emplace_back(0, 0);
    return out;
  }
  // choose rows one at a time outside the span of the previous ones
  std::vector<GroupElement> rows;
  auto recurse = [&](auto&& self) -> void {
    if (static_cast<int>(rows.size()) == n) {
      out.push_back(Gf2Matrix::from_rows(rows, n));
      return;
    }
    const Subgroup h = Subgroup::span(rows, n);
    for (std::uint32_t b = 1; b < (std::uint32_t{1} << n); ++b) {
      GroupElement g(n, b);
      if (h.contains(g)) continue;
      rows.push_back(g);
      self(self);
      rows.pop_back();
    }
  };
  recurse(recurse);
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

using boost::multiprecision::abs;

bool find_min_nonzero(const IntMatrix& a, Eigen::Index from, Eigen::Index& pi, Eigen::Index& pj) {
  bool found = false;
  BigInt best;
  for (Eigen::Index i = from; i < a.rows(); ++i) {
    for (Eigen::Index j = from; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      BigInt v = abs(a(i, j));
      if (!found || v < best) {
        best = v;
        pi = i;
        pj = j;
        found = true;
        if (best == 1) return true;
      }
    }
  }
  return found;
}

void row_axpy(IntMatrix& a, Eigen::Index dst, Eigen::Index src, const BigInt& factor) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (a(src, j) != 0) a(dst, j) -= factor * a(src, j);
  }
}

void col_axpy(IntMatrix& a, Eigen::Index dst, Eigen::Index src, const BigInt& factor) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (a(i, src) != 0) a(i, dst) -= factor * a(i, src);
  }
}

}  // namespace

SmithForm smith_normal_form(IntMatrix a) {
  SmithForm out;
  const Eigen::Index limit = std::min(a.rows(), a.cols());
  for (Eigen::Index t = 0; t < limit; ++t) {
    Eigen::Index pi = 0, pj = 0;
    if (!find_min_nonzero(a, t, pi, pj)) break;
    a.row(t).swap(a.row(pi));
    a.col(t).swap(a.col(pj));
    for (;;) {
      bool dirty = false;
      for (Eigen::Index i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        row_axpy(a, i, t, BigInt(a(i, t) / a(t, t)));
        if (a(i, t) != 0) dirty = true;
      }
      for (Eigen::Index j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        col_axpy(a, j, t, BigInt(a(t, j) / a(t, t)));
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // a remainder smaller than the pivot survived; move it into place
        Eigen::Index bi = t, bj = t;
        BigInt best = abs(a(t, t));
        for (Eigen::Index i = t + 1; i < a.rows(); ++i) {
          if (a(i, t) != 0 && abs(a(i, t)) < best) { best = abs(a(i, t)); bi = i; bj = t; }
        }
        for (Eigen::Index j = t + 1; j < a.cols(); ++j) {
          if (a(t, j) != 0 && abs(a(t, j)) < best) { best = abs(a(t, j)); bi = t; bj = j; }
        }
        a.row(t).swap(a.row(bi));
        a.col(t).swap(a.col(bj));
        continue;
      }
      // row and column cleared; enforce divisibility of the remaining block
      bool fixed = false;
      for (Eigen::Index i = t + 1; i < a.rows() && !fixed; ++i) {
        for (Eigen::Index j = t + 1; j < a.cols(); ++j) {
          if (a(i, j) % a(t, t) != 0) {
            for (Eigen::Index k = 0; k < a.cols(); ++k) a(t, k) += a(i, k);
            fixed = true;
            break;
          }
        }
      }
      if (!fixed) break;
    }
    out.diagonal.push_back(abs(a(t, t)));
  }
  out.rank = out.diagonal.size();
  return out;
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix d = IntMatrix::Constant(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols), BigInt(0));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (const auto& [r, v] : columns[j]) d(r, static_cast<Eigen::Index>(j)) = v;
  }
  return d;
}

SmithForm smith_normal_form(const SparseIntMatrix& m) {
  // rows as maps, plus the set of live rows per column
  std::vector<std::map<int, BigInt>> rows(m.rows);
  std::vector<std::set<int>> col_rows(m.cols);
  for (std::size_t j = 0; j < m.columns.size(); ++j) {
    for (const auto& [r, v] : m.columns[j]) {
      if (v == 0) continue;
      rows[static_cast<std::size_t>(r)][static_cast<int>(j)] = v;
      col_rows[j].insert(r);
    }
  }

  std::size_t unit_pivots = 0;
  for (;;) {
    // unit entry with the smallest Markowitz cost
    int best_r = -1, best_c = -1;
    std::size_t best_cost = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        const std::size_t cost = (rows[r].size() - 1) * (col_rows[static_cast<std::size_t>(c)].size() - 1);
        if (best_r < 0 || cost < best_cost) {
          best_r = static_cast<int>(r);
          best_c = c;
          best_cost = cost;
        }
        if (cost == 0) break;
      }
      if (best_r >= 0 && best_cost == 0) break;
    }
    if (best_r < 0) break;

    const auto pr = static_cast<std::size_t>(best_r);
    const BigInt unit = rows[pr].at(best_c);
    const std::map<int, BigInt> pivot_row = rows[pr];
    const std::vector<int> targets(col_rows[static_cast<std::size_t>(best_c)].begin(),
                                   col_rows[static_cast<std::size_t>(best_c)].end());
    for (int t : targets) {
      if (t == best_r) continue;
      auto& row = rows[static_cast<std::size_t>(t)];
      const BigInt factor = row.at(best_c) * unit;  // unit is its own inverse
      for (const auto& [c, v] : pivot_row) {
        auto it = row.find(c);
        BigInt nv = (it == row.end() ? BigInt(0) : it->second) - factor * v;
        if (nv == 0) {
          if (it != row.end()) row.erase(it);
          col_rows[static_cast<std::size_t>(c)].erase(t);
        } else if (it == row.end()) {
          row.emplace(c, std::move(nv));
          col_rows[static_cast<std::size_t>(c)].insert(t);
        } else {
          it->second = std::move(nv);
        }
      }
    }
    for (const auto& [c, v] : pivot_row) col_rows[static_cast<std::size_t>(c)].erase(best_r);
    rows[pr].clear();
    ++unit_pivots;
  }

  // whatever is left has no unit entries; finish densely
  std::vector<int> live_rows, live_cols;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].empty()) live_rows.push_back(static_cast<int>(r));
  }
  for (std::size_t c = 0; c < col_rows.size(); ++c) {
    if (!col_rows[c].empty()) live_cols.push_back(static_cast<int>(c));
  }
  SmithForm out;
  out.diagonal.assign(unit_pivots, BigInt(1));
  if (!live_rows.empty()) {
    IntMatrix rest = IntMatrix::Constant(static_cast<Eigen::Index>(live_rows.size()),
                                         static_cast<Eigen::Index>(live_cols.size()), BigInt(0));
    for (std::size_t i = 0; i < live_rows.size(); ++i) {
      for (const auto& [c, v] : rows[static_cast<std::size_t>(live_rows[i])]) {
        const auto j = std::lower_bound(live_cols.begin(), live_cols.end(), c) - live_cols.begin();
        rest(static_cast<Eigen::Index>(i), j) = v;
      }
    }
    const SmithForm tail = smith_normal_form(std::move(rest));
    out.diagonal.insert(out.diagonal.end(), tail.diagonal.begin(), tail.diagonal.end());
  }
  out.rank = out.diagonal.size();
  return out;
}

BigInt determinant(IntMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  const Eigen::Index n = a.rows();
  if (n == 0) return BigInt(1);
  BigInt sign = 1;
  BigInt prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return BigInt(0);
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace glueback
