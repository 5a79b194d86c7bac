#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "glueback/catalog.hpp"
#include "glueback/characteristic_data.hpp"
#include "glueback/homology.hpp"

using namespace glueback;

namespace {

Coloring coloring(const StratifiedComplex& q, const std::vector<std::string>& bits) {
  Coloring c{static_cast<int>(bits.front().size()), {}};
  for (std::size_t i = 0; i < bits.size(); ++i) c.colors.emplace(q.facet(i).name, GroupElement::parse(bits[i]));
  return c;
}

bool independent(std::vector<std::uint32_t> v) {
  // brute force: no nonempty subset sums to zero
  for (std::uint32_t mask = 1; mask < (1u << v.size()); ++mask) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if ((mask >> i) & 1u) s ^= v[i];
    }
    if (s == 0) return false;
  }
  return true;
}

// Counts valid colorings by trying every assignment.
std::size_t brute_coloring_count(const StratifiedComplex& q, int rank) {
  const std::size_t f = q.facet_count();
  const std::uint32_t choices = (1u << rank) - 1;
  std::vector<std::uint32_t> a(f, 1);
  std::size_t count = 0;
  while (true) {
    bool ok = true;
    for (int d = 0; d < q.dim() && ok; ++d) {
      for (std::size_t j = 0; j < q.count(d) && ok; ++j) {
        std::vector<std::uint32_t> v;
        for (int id : q.facet_set(d, j)) v.push_back(a[static_cast<std::size_t>(id)]);
        ok = independent(v);
      }
    }
    if (ok) ++count;
    std::size_t i = 0;
    while (i < f && a[i] == choices) a[i++] = 1;
    if (i == f) break;
    ++a[i];
  }
  return count;
}

}  // namespace

TEST_CASE("coloring validation flags zero, dependent and missing colors") {
  const auto q = make("simplex(2)").q;
  CHECK(validate_coloring(q, coloring(q, {"10", "01", "11"})).ok());
  CHECK(validate_coloring(q, coloring(q, {"10", "00", "11"})).has(ViolationKind::coloring_zero));
  CHECK(validate_coloring(q, coloring(q, {"10", "10", "01"})).has(ViolationKind::coloring_dependent));
  Coloring missing = coloring(q, {"10", "01", "11"});
  missing.colors.erase(q.facet(0).name);
  CHECK(validate_coloring(q, missing).has(ViolationKind::coloring_missing));
  Coloring unknown = coloring(q, {"10", "01", "11"});
  unknown.colors.emplace("F9", GroupElement::parse("10"));
  CHECK_THROWS_AS(validate_coloring(q, unknown), std::invalid_argument);
  Coloring wide = coloring(q, {"10", "01", "11"});
  wide.colors.at(q.facet(0).name) = GroupElement::parse("100");
  CHECK_THROWS_AS(validate_coloring(q, wide), std::invalid_argument);
}

TEST_CASE("default colorings are the lexicographically first valid ones") {
  CHECK(first_valid_coloring(make("polygon(2)").q, 2)->by_facet(make("polygon(2)").q) ==
        coloring(make("polygon(2)").q, {"10", "01"}).by_facet(make("polygon(2)").q));
  const auto pent = make("polygon(5)");
  CHECK(pent.lambda.by_facet(pent.q) == coloring(pent.q, {"10", "01", "10", "01", "11"}).by_facet(pent.q));
  const auto sq = make("polygon(4)");
  CHECK(sq.lambda.by_facet(sq.q) == coloring(sq.q, {"10", "01", "10", "01"}).by_facet(sq.q));
  const auto tet = make("simplex(3)");
  CHECK(tet.lambda.by_facet(tet.q) == coloring(tet.q, {"100", "010", "001", "111"}).by_facet(tet.q));
}

TEST_CASE("coloring census matches brute force") {
  struct Case {
    const char* name;
    int rank;
  };
  for (const Case c : {Case{"polygon(2)", 2}, Case{"polygon(3)", 2}, Case{"polygon(4)", 2}, Case{"polygon(5)", 2},
                       Case{"simplex(3)", 3}, Case{"football", 3}, Case{"prism(3)", 3}, Case{"polygon(4)", 3}}) {
    INFO(c.name << " rank " << c.rank);
    const auto q = make(c.name).q;
    const auto census = enumerate_colorings(q, c.rank, ColoringQuotient::none);
    CHECK(census.total == brute_coloring_count(q, c.rank));
    CHECK(census.representatives.size() == census.total);
    const auto weak = enumerate_colorings(q, c.rank, ColoringQuotient::weak);
    CHECK(weak.total == census.total);
    std::size_t sum = 0;
    for (auto s : weak.orbit_sizes) sum += s;
    CHECK(sum == census.total);
  }
  CHECK(enumerate_colorings(make("simplex(3)").q, 3, ColoringQuotient::none).total == 168);
  CHECK(enumerate_colorings(make("simplex(3)").q, 3, ColoringQuotient::weak).representatives.size() == 1);
  CHECK(enumerate_colorings(make("polygon(4)").q, 2, ColoringQuotient::none).total == 18);
}

TEST_CASE("weak equivalence sees through automorphisms of the group") {
  const auto fb = make("football");
  const auto permuted = coloring(fb.q, {"011", "110", "111"});
  const auto w = weakly_equivalent(fb.q, fb.lambda, fb.q, permuted);
  REQUIRE(w);
  for (std::size_t i = 0; i < fb.q.facet_count(); ++i) {
    const auto& name = fb.q.facet(i).name;
    const auto& image = fb.q.facet(static_cast<std::size_t>(w->iso.facet_map[i])).name;
    CHECK(apply(w->sigma, permuted.colors.at(image)) == fb.lambda.colors.at(name));
  }
  // torus and Klein bottle colorings of the square are not equivalent
  const auto sq = make("polygon(4)");
  const auto kl = make("klein-square");
  CHECK_FALSE(weakly_equivalent(sq.q, sq.lambda, kl.q, kl.lambda));
}

TEST_CASE("linear extension solves sigma(from) = to") {
  const std::vector<GroupElement> from{GroupElement::parse("100"), GroupElement::parse("010"), GroupElement::parse("001")};
  const std::vector<GroupElement> to{GroupElement::parse("110"), GroupElement::parse("011"), GroupElement::parse("111")};
  const auto s = linear_extension(from, to, 3);
  REQUIRE(s);
  for (std::size_t i = 0; i < 3; ++i) CHECK(apply(*s, from[i]) == to[i]);
  const std::vector<GroupElement> bad{GroupElement::parse("110"), GroupElement::parse("011"), GroupElement::parse("101")};
  CHECK_FALSE(linear_extension(from, bad, 3));
}

TEST_CASE("normalization kills coboundaries") {
  const auto q = make("football").q;
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::map<int, GroupElement> f;
    for (int v : q.vertices()) f[v] = GroupElement(3, rng() % 8);
    Cocycle xi = zero_cocycle(3);
    for (const auto& e : q.simplices(1)) xi.set(e[0], e[1], f[e[0]] + f[e[1]]);
    CHECK(validate_cocycle(q, xi).ok());
    CHECK(normalize_cocycle(q, xi).is_zero());
    CHECK(covering_components(q, xi) == 8);
  }
  Cocycle broken = zero_cocycle(3);
  broken.set(q.simplices(1)[0][0], q.simplices(1)[0][1], GroupElement::parse("100"));
  CHECK(validate_cocycle(q, broken).has(ViolationKind::cocycle_condition));
}

TEST_CASE("bundle classes count H^1") {
  SUBCASE("football: only the trivial bundle") {
    const auto q = make("football").q;
    const auto b = enumerate_bundle_classes(q, 3);
    CHECK(b.h1_dimension == 0);
    CHECK(b.representatives.size() == 1);
  }
  SUBCASE("circle: trivial and connected double cover") {
    const auto q = make("circle(4)").q;
    const auto b = enumerate_bundle_classes(q, 1);
    REQUIRE(b.representatives.size() == 2);
    CHECK(covering_components(q, b.representatives[0]) == 2);
    CHECK(covering_components(q, b.representatives[1]) == 1);
  }
  SUBCASE("torus with rank 2: (2^2)^2 classes") {
    const auto q = make("torus").q;
    const auto b = enumerate_bundle_classes(q, 2);
    CHECK(b.h1_dimension == 2);
    CHECK(b.representatives.size() == 16);
    // monodromy rank r gives 2^(2 - r) components
    for (const auto& xi : b.representatives) {
      const auto mono = monodromy_subgroup(q, xi, q.vertices().front());
      CHECK(covering_components(q, xi) == (1 << (2 - mono.rank())));
    }
  }
}
