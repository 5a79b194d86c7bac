#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "glueback/catalog.hpp"
#include "glueback/homology.hpp"
#include "glueback/verify.hpp"
#include "support.hpp"

using namespace glueback;
using Pattern = std::vector<int>;

namespace {

// Solutions of sum (6 - k) f_k = 12 with sum k f_k even and divisible by 3,
// found by trying every count up to 12.
std::set<Pattern> brute_patterns(const std::vector<int>& sizes) {
  std::set<Pattern> out;
  Pattern f(sizes.size(), 0);
  while (true) {
    int lhs = 0, edges2 = 0;
    bool any = false;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      lhs += (6 - sizes[i]) * f[i];
      edges2 += sizes[i] * f[i];
      any = any || f[i] > 0;
    }
    if (any && lhs == 12 && edges2 % 6 == 0) out.insert(f);
    std::size_t i = 0;
    while (i < f.size() && f[i] == 12) f[i++] = 0;
    if (i == f.size()) break;
    ++f[i];
  }
  return out;
}

std::set<Pattern> as_set(const std::vector<Pattern>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("trivalent sphere patterns with 2-gons and triangles") {
  CHECK(as_set(enumerate_sphere_patterns({2, 3})) == std::set<Pattern>{{3, 0}, {0, 4}});
  CHECK(as_set(enumerate_sphere_patterns({3})) == std::set<Pattern>{{4}});
  CHECK(as_set(enumerate_sphere_patterns({2})) == std::set<Pattern>{{3}});
  for (const std::vector<int> sizes : {std::vector<int>{2, 3, 4}, {3, 4, 5}, {2, 5}, {4}}) {
    CHECK(as_set(enumerate_sphere_patterns({sizes.begin(), sizes.end()})) == brute_patterns(sizes));
  }
}

TEST_CASE("boundary classification of the catalog shapes") {
  const auto fb = classify_boundary(make("football").q);
  REQUIRE(fb.size() == 1);
  CHECK(fb[0].pattern == BoundaryPattern::football);
  const auto tet = classify_boundary(make("simplex(3)").q);
  REQUIRE(tet.size() == 1);
  CHECK(tet[0].pattern == BoundaryPattern::tetrahedron);
  CHECK(classify_boundary(make("cube").q)[0].pattern == BoundaryPattern::other);
  CHECK(std::string(to_string(BoundaryPattern::football)) == "football-pattern");
}

TEST_CASE("surface Euler formula on every 2-dimensional model") {
  for (const std::string name : {"polygon(2)", "polygon(3)", "simplex(2)", "polygon(4)", "klein-square", "polygon(5)"}) {
    INFO(name);
    const auto c = make(name);
    const auto r = check_surface_euler(c.q, c.lambda);
    CHECK(r.outcome == Outcome::pass);
    // independent count: chi of the cover against corners
    std::size_t corners = 0;
    for (const auto& p : pre_faces(c.q)) corners += p.codim == 2;
    const long chi = euler_characteristic(testing::built(name).complex());
    CHECK(chi == 4 * euler_characteristic(c.q) - static_cast<long>(corners));
  }
  CHECK(check_surface_euler(make("football").q, make("football").lambda).outcome == Outcome::not_applicable);
}

TEST_CASE("homology sphere dimension") {
  CHECK(homology_sphere_dimension(testing::built("football").complex()) == 3);
  CHECK(homology_sphere_dimension(testing::built("polygon(2)").complex()) == 2);
  CHECK_FALSE(homology_sphere_dimension(testing::built("simplex(3)").complex()));
  CHECK(homology_sphere_dimension(DeltaComplex{}) == -1);
}

TEST_CASE("Borel on the football sums three circles and four point pairs") {
  const auto m = testing::built("football");
  const auto r = check_borel(m);
  CHECK(r.outcome == Outcome::pass);
  CHECK(r.left == "3-0 = 3");
  // three ones and four zeros
  CHECK(std::count(r.right.begin(), r.right.end(), '1') == 3);
  CHECK(r.right.find("= 3") != std::string::npos);
  // fixed sets of corank-1 subgroups, counted directly
  int circles = 0, poles = 0;
  for (const auto& h : subgroups_of_rank(3, 2)) {
    const auto fix = restrict(m.complex(), fixed_subcomplex(m, h));
    const auto d = homology_sphere_dimension(fix);
    REQUIRE(d);
    circles += *d == 1;
    poles += *d == 0;
  }
  CHECK(circles == 3);
  CHECK(poles == 4);
  CHECK(check_borel(testing::built("polygon(2)")).outcome == Outcome::pass);
  CHECK(check_borel(testing::built("simplex(3)")).outcome == Outcome::not_applicable);
}

TEST_CASE("Lefschetz numbers equal Euler characteristics of fixed sets") {
  for (const std::string name : {"football", "simplex(3)", "cube", "prism(3)"}) {
    INFO(name);
    const auto reports = check_lefschetz_all(testing::built(name));
    CHECK(reports.size() == 8);
    for (const auto& r : reports) CHECK(r.outcome == Outcome::pass);
  }
}

TEST_CASE("Kobayashi on the RP^3 model reads 1 <= 1 + 0") {
  const auto m = testing::built("simplex(3)");
  const auto r = check_kobayashi(m, GroupElement::parse("100"));
  CHECK(r.outcome == Outcome::pass);
  CHECK(r.left == "1");
  CHECK(r.right == "1+0");
  // Fix = RP^2 plus a point
  const auto fix = restrict(m.complex(), fixed_subcomplex(m, Subgroup::span(std::vector<GroupElement>{GroupElement::parse("100")}, 3)));
  CHECK(testing::naive_gf2_betti(fix) == std::vector<std::size_t>{2, 1, 1});
  CHECK(check_kobayashi(m, GroupElement::parse("110")).outcome == Outcome::not_applicable);
  CHECK(check_kobayashi(testing::built("polygon(4)"), GroupElement::parse("10")).outcome == Outcome::not_applicable);
}

TEST_CASE("component counts are powers of two") {
  CHECK(check_component_counts(testing::built("circle(4)")).outcome == Outcome::pass);
  CHECK(check_component_counts(testing::built("torus")).outcome == Outcome::pass);
}

TEST_CASE("the whole suite passes on every catalog model") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    const auto c = make(name);
    for (const auto& r : run_suite(c.q, c.lambda, zero_cocycle(c.lambda.rank))) {
      INFO(r.theorem << " " << r.inputs << " " << r.detail);
      CHECK_FALSE(r.failed());
    }
  }
}
