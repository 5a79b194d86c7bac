#pragma once

// Exact linear algebra over GF(2), Z and Q.
//
// Group elements of (Z2)^n are bit-vectors; subgroups are kept in reduced
// row-echelon form so that equality of subgroups is equality of bases.
// Dense integer and rational matrices are Eigen matrices over Boost
// multiprecision scalars; nothing in here ever touches floating point.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace glueback {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntMatrix = DenseMatrix<BigInt>;
using RatMatrix = DenseMatrix<Rational>;

/// Largest supported rank n of the acting group (Z2)^n.
inline constexpr int kMaxRank = 16;

/// An element of (Z2)^n. Bit i is the coefficient of the generator e_{i+1};
/// the textual form lists e_1 first, so "101" is e_1 + e_3.
class GroupElement {
public:
  GroupElement() = default;
  GroupElement(int rank, std::uint32_t bits);

  static GroupElement zero(int rank) { return GroupElement(rank, 0); }
  static GroupElement generator(int rank, int i);
  /// Parses a bit-string. A non-negative expected_rank pins the width.
  static GroupElement parse(std::string_view text, int expected_rank = -1);

  int rank() const { return rank_; }
  std::uint32_t bits() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }
  bool test(int i) const { return (bits_ >> i) & 1u; }
  int weight() const;

  std::string to_string() const;

  GroupElement operator+(const GroupElement& other) const;
  GroupElement& operator+=(const GroupElement& other);

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

private:
  std::uint32_t bits_ = 0;
  int rank_ = 0;
};

/// A subgroup of (Z2)^n held as a reduced row-echelon basis. Pivots are
/// the lowest set coordinate of each row (e_1 before e_2), and no other
/// basis row has that coordinate set.
class Subgroup {
public:
  explicit Subgroup(int ambient_rank = 0);

  static Subgroup span(std::span<const GroupElement> generators, int ambient_rank);
  static Subgroup whole(int ambient_rank);

  int ambient_rank() const { return ambient_rank_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<GroupElement>& basis() const { return basis_; }

  bool contains(const GroupElement& g) const;
  bool contains(const Subgroup& other) const;

  /// Canonical representative of the coset g + H: zero at every pivot.
  GroupElement reduce(const GroupElement& g) const;
  /// Sorted canonical coset representatives of (Z2)^n / H.
  std::vector<GroupElement> coset_representatives() const;
  std::vector<GroupElement> elements() const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;

private:
  void insert(GroupElement g);

  int ambient_rank_ = 0;
  std::vector<GroupElement> basis_;
  std::vector<int> pivots_;
};

/// Span of the given elements; all must share the ambient rank.
Subgroup subgroup_span(std::span<const GroupElement> generators, int ambient_rank);

/// Every subgroup of (Z2)^n of the given rank, in a deterministic order.
std::vector<Subgroup> subgroups_of_rank(int ambient_rank, int rank);

/// Dense bit-packed matrix over GF(2).
class Gf2Matrix {
public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);

  static Gf2Matrix identity(std::size_t n);
  /// One row per element, column j = coefficient of e_{j+1}.
  static Gf2Matrix from_rows(std::span<const GroupElement> rows, int rank);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value);
  void flip(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] ^= (std::uint64_t{1} << (c % 64)); }
  /// row(dst) += row(src)
  void add_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);
  bool row_is_zero(std::size_t r) const;

  Gf2Matrix transpose() const;
  GroupElement row_element(std::size_t r) const;

  std::string to_string() const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;
  friend bool operator<(const Gf2Matrix& a, const Gf2Matrix& b) {
    return std::tie(a.rows_, a.cols_, a.data_) < std::tie(b.rows_, b.cols_, b.data_);
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

std::size_t gf2_rank(Gf2Matrix m);

/// Rows spanning the right null space {x : m x = 0}.
Gf2Matrix gf2_nullspace(const Gf2Matrix& m);

/// Solves m x = b over GF(2); returns false when inconsistent.
bool gf2_solve(const Gf2Matrix& m, const std::vector<bool>& b, std::vector<bool>& x);

/// Applies an n x n matrix to a group element (column-vector convention:
/// output coordinate i is the parity of row i against the input).
GroupElement apply(const Gf2Matrix& sigma, const GroupElement& x);

/// All invertible n x n matrices over GF(2), each once, n <= 4.
std::vector<Gf2Matrix> enumerate_glnq2(int n);

struct SmithForm {
  /// Nonzero invariant factors d_1 | d_2 | ... | d_rank, all positive.
  std::vector<BigInt> diagonal;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(IntMatrix m);

/// Column-sparse integer matrix; used for boundary operators.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// columns[j] = sorted (row, value) pairs with nonzero values.
  std::vector<std::vector<std::pair<int, BigInt>>> columns;

  IntMatrix to_dense() const;
};

/// Invariant factors via unit-pivot sparse elimination followed by a dense
/// Smith reduction of whatever remains.
SmithForm smith_normal_form(const SparseIntMatrix& m);

/// Exact cofactor-free determinant (Bareiss); square input required.
BigInt determinant(IntMatrix m);

}  // namespace glueback
