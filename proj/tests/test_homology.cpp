#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glueback/homology.hpp"
#include "support.hpp"

using namespace glueback;
using testing::delta_of;
using testing::naive_gf2_betti;

namespace {

DeltaComplex sphere2() { return delta_of(2, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }

DeltaComplex torus7() {
  std::vector<Simplex> tops;
  for (int i = 0; i < 7; ++i) {
    Simplex a{i, (i + 1) % 7, (i + 3) % 7}, b{i, (i + 2) % 7, (i + 3) % 7};
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    tops.push_back(a);
    tops.push_back(b);
  }
  return delta_of(2, tops);
}

DeltaComplex rp2_6() {
  std::vector<Simplex> tops{{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                            {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}};
  return delta_of(2, tops);
}

using Sizes = std::vector<std::size_t>;

}  // namespace

TEST_CASE("boundary of a boundary vanishes") {
  for (const auto& k : {sphere2(), torus7(), rp2_6()}) CHECK_NOTHROW(check_boundary_squared(k));
  for (const auto& name : catalog_names()) {
    INFO(name);
    CHECK_NOTHROW(check_boundary_squared(testing::built(name).complex()));
  }
}

TEST_CASE("homology of small surfaces") {
  CHECK(gf2_betti(sphere2()) == Sizes{1, 0, 1});
  CHECK(gf2_betti(torus7()) == Sizes{1, 2, 1});
  CHECK(rational_betti(torus7()) == Sizes{1, 2, 1});
  CHECK(gf2_betti(rp2_6()) == Sizes{1, 1, 1});
  CHECK(rational_betti(rp2_6()) == Sizes{1, 0, 0});
  const auto h = integral_homology(rp2_6());
  CHECK(h.free_rank == Sizes{1, 0, 0});
  REQUIRE(h.torsion[1].size() == 1);
  CHECK(h.torsion[1][0] == 2);
  CHECK(h.torsion[2].empty());
  CHECK(homology_profile(torus7()).orientable);
  CHECK_FALSE(homology_profile(rp2_6()).orientable);
}

TEST_CASE("GF(2) Betti numbers agree with naive elimination on every model") {
  for (const auto& k : {sphere2(), torus7(), rp2_6()}) CHECK(gf2_betti(k) == naive_gf2_betti(k));
  for (const auto& name : catalog_names()) {
    INFO(name);
    const auto m = testing::built(name);
    CHECK(gf2_betti(m.complex()) == naive_gf2_betti(m.complex()));
  }
}

TEST_CASE("universal coefficients: GF(2) from integral homology") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    const auto m = testing::built(name);
    const DeltaComplex& k = m.complex();
    const auto h = integral_homology(k);
    CHECK(gf2_betti_from_integral(h) == gf2_betti(k));
    CHECK(h.free_rank == rational_betti(k));
    // alternating sums agree with the cell count
    const auto p = homology_profile(k);
    long a = 0, b = 0;
    for (std::size_t d = 0; d < p.gf2_betti.size(); ++d) {
      const long s = d % 2 == 0 ? 1 : -1;
      a += s * static_cast<long>(p.gf2_betti[d]);
      b += s * static_cast<long>(p.rational_betti[d]);
    }
    CHECK(a == p.euler);
    CHECK(b == p.euler);
    CHECK(p.euler == euler_characteristic(k));
  }
}

TEST_CASE("Poincare duality over GF(2) on closed models") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    const auto b = gf2_betti(testing::built(name).complex());
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i] == b[b.size() - 1 - i]);
  }
}

TEST_CASE("catalog profiles match the golden table") {
  for (const auto& e : expected_profiles()) {
    INFO(e.name);
    const auto p = homology_profile(testing::built(e.name).complex());
    CHECK(p.gf2_betti == e.gf2_betti);
    CHECK(p.rational_betti == e.rational_betti);
    for (std::size_t d = 0; d < p.torsion.size(); ++d) {
      std::vector<int> t;
      for (const auto& x : p.torsion[d]) t.push_back(static_cast<int>(x));
      const std::vector<int> want = d < e.torsion.size() ? e.torsion[d] : std::vector<int>{};
      CHECK(t == want);
    }
    CHECK(p.orientable == e.orientable);
  }
}

TEST_CASE("induced maps of the identity are identities") {
  const DeltaComplex k = testing::built("football").complex();
  const RationalHomology h(k);
  const CellMap id = CellMap::identity(k);
  for (int d = 0; d <= k.dim(); ++d) {
    const RatMatrix m = induced_map(h, k, id, d);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) CHECK(m(i, j) == (i == j ? 1 : 0));
    }
  }
  CHECK(lefschetz_number(k, id) == euler_characteristic(k));
}

TEST_CASE("reflections reverse the football's orientation") {
  const auto m = testing::built("football");
  const DeltaComplex& k = m.complex();
  const CellMap f = m.action(GroupElement::parse("100"));
  const RatMatrix top = induced_map(k, f, 3);
  REQUIRE(top.rows() == 1);
  CHECK(top(0, 0) == -1);
  const RatMatrix bottom = induced_map(k, f, 0);
  CHECK(bottom(0, 0) == 1);
  CHECK(lefschetz_number(k, f) == 2);
  CHECK(orientation_action(k, f) == std::vector<OrientationAction>{OrientationAction::reversing});
  CHECK(orientation_action(k, m.action(GroupElement::parse("110"))) ==
        std::vector<OrientationAction>{OrientationAction::preserving});
}

TEST_CASE("orientation action on non-orientable and disconnected models") {
  const auto klein = testing::built("klein-square");
  CHECK(orientation_action(klein.complex(), klein.action(GroupElement::parse("10"))) ==
        std::vector<OrientationAction>{OrientationAction::not_orientable});
  // the free circle action swaps the two components
  const auto circle = testing::built("circle(4)");
  const auto act = orientation_action(circle.complex(), circle.action(GroupElement::parse("1")));
  CHECK(act == std::vector<OrientationAction>(2, OrientationAction::moves_component));
}

TEST_CASE("non-chain maps are rejected") {
  const DeltaComplex k = sphere2();
  CellMap f = CellMap::identity(k);
  std::swap(f.target[0][0], f.target[0][1]);
  CHECK_THROWS_AS(check_chain_map(k, f), std::invalid_argument);
  CHECK_THROWS(induced_map(k, f, 1));
}

TEST_CASE("fixed set of a reflection separates") {
  const auto m = testing::built("football");
  const Subcomplex s = fixed_subcomplex(m, Subgroup::span(std::vector<GroupElement>{GroupElement::parse("100")}, 3));
  CHECK(separation_check(m.complex(), s) == 2);
}
