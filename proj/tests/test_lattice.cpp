#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <numeric>

#include "fixtures.hpp"
#include "sbc/lattice.hpp"
#include "sbc/random.hpp"

using namespace sbc;

namespace {

LatticeMatrix columns(std::initializer_list<std::initializer_list<long long>> rays) {
  const int cols = static_cast<int>(rays.size());
  const int rows = static_cast<int>(rays.begin()->size());
  LatticeMatrix m(rows, cols);
  int j = 0;
  for (const auto& r : rays) {
    int i = 0;
    for (long long x : r) m(i++, j) = x;
    ++j;
  }
  return m;
}

LatticeCone cone(const LatticeMatrix& rays) { return {"c", rays.rows, rays}; }

int top(const LatticeConeComplex& cc) {
  int best = 0;
  for (int s = 0; s < cc.complex->stratum_count(); ++s)
    if (cc.complex->stratum(s).codim > cc.complex->stratum(best).codim) best = s;
  return best;
}

long long total_excess(const LatticeConeComplex& cc) {
  long long t = 0;
  for (int s = 0; s < cc.complex->stratum_count(); ++s) t += multiplicity(cc.cone(s)) - 1;
  return t;
}

long long max_multiplicity(const LatticeConeComplex& cc) {
  long long m = 1;
  for (int s = 0; s < cc.complex->stratum_count(); ++s) m = std::max(m, multiplicity(cc.cone(s)));
  return m;
}

int count_at(const LatticeConeComplex& cc, long long m) {
  int n = 0;
  for (int s = 0; s < cc.complex->stratum_count(); ++s) n += multiplicity(cc.cone(s)) == m;
  return n;
}

}  // namespace

TEST_CASE("multiplicity examples") {
  CHECK(multiplicity(cone(LatticeMatrix::identity(2))) == 1);
  CHECK(multiplicity(cone(columns({{1, 0}, {1, 2}}))) == 2);
  CHECK(multiplicity(cone(columns({{1, 0}, {1, 3}}))) == 3);
  CHECK(multiplicity(cone(columns({{1, 0, 0}, {0, 1, 0}, {1, 1, 5}}))) == 5);
  LatticeCone flat{"flat", 2, columns({{1, 0}, {2, 0}})};
  CHECK_THROWS_AS(multiplicity(flat), InputError);
}

TEST_CASE("multiplicity is the product of invariant factors") {
  Rng rng(51);
  for (int k = 0; k < 100; ++k) {
    const int dim = 2 + k % 2;
    LatticeMatrix r = random_cone(rng, dim, 20);
    auto snf = smith_normal_form(r, false);
    long long prod = 1;
    for (long long d : snf.diagonal) prod *= d;
    CHECK(multiplicity(cone(r)) == prod);
  }
}

TEST_CASE("multiplicity is invariant under unimodular changes of basis") {
  Rng rng(52);
  for (int k = 0; k < 200; ++k) {
    const int dim = 2 + k % 2;
    LatticeMatrix r = random_cone(rng, dim, 20);
    LatticeMatrix u = random_unimodular(rng, dim);
    CHECK(std::abs(determinant(u)) == 1);
    CHECK(multiplicity(cone(u * r)) == multiplicity(cone(r)));
  }
}

TEST_CASE("smoothness") {
  CHECK(is_smooth(standard_lattice(fixtures::filled_triangle())).smooth);
  LatticeConeComplex bad = cone_complex_from_rays(columns({{1, 0}, {1, 2}}));
  SmoothnessReport r = is_smooth(bad);
  CHECK_FALSE(r.smooth);
  REQUIRE(r.witness);
  CHECK(bad.complex->id(*r.witness) == "v0v1");
  CHECK(r.multiplicity == 2);

  ComplexData empty;
  empty.name = "empty";
  auto none = StratifiedComplex::make(empty);
  CHECK(is_smooth(make_lattice_complex(none, {})).smooth);
}

TEST_CASE("barycenters") {
  CHECK(barycenter(cone(LatticeMatrix::identity(2))) == LatticeVector{1, 1});
  CHECK(barycenter(cone(columns({{1, 0}, {1, 2}}))) == LatticeVector{1, 1});
  CHECK(barycenter(cone(columns({{1, 0, 0}, {0, 1, 0}, {1, 1, 4}}))) == LatticeVector{1, 1, 2});
}

TEST_CASE("face embeddings of a cone") {
  LatticeConeComplex cc = cone_complex_from_rays(columns({{1, 0}, {1, 2}}));
  CHECK(validate_lattice(cc).ok());
  const int t = top(cc);
  for (int j = 0; j < 2; ++j) {
    LatticeMatrix e = cc.face_embedding(t, j);
    CHECK(e.rows == 2);
    CHECK(e.cols == 1);
    CHECK(is_saturated(e));
  }
}

TEST_CASE("non-saturated lattice data is rejected") {
  auto e = fixtures::edge();
  std::vector<LatticeMatrix> rays(e->stratum_count(), LatticeMatrix::identity(1));
  rays[e->stratum_index("ab")] = columns({{2, 0}, {0, 1}});
  CHECK_THROWS_AS(make_lattice_complex(e, rays), InputError);
}

TEST_CASE("star at a vector") {
  LatticeConeComplex std2 = cone_complex_from_rays(LatticeMatrix::identity(2));
  LatticeStar s = star_at_vector(std2, top(std2), {1, 1});
  CHECK(validate_lattice(s.complex).ok());
  int cones = 0;
  for (int x = 0; x < s.complex.complex->stratum_count(); ++x)
    if (s.complex.complex->stratum(x).codim == 2) {
      ++cones;
      CHECK(multiplicity(s.complex.cone(x)) == 1);
    }
  CHECK(cones == 2);

  LatticeConeComplex c12 = cone_complex_from_rays(columns({{1, 0}, {1, 2}}));
  LatticeStar r = star_at_vector(c12, top(c12), {1, 1});
  CHECK(is_smooth(r.complex).smooth);

  CHECK_THROWS_AS(star_at_vector(std2, top(std2), {1, 0}), InputError);
  CHECK_THROWS_AS(star_at_vector(std2, top(std2), {2, 2}), InputError);
  CHECK_THROWS_AS(star_at_vector(std2, top(std2), {1, -1}), InputError);
}

TEST_CASE("star at a vector has the combinatorial star poset") {
  Rng rng(53);
  for (int k = 0; k < 40; ++k) {
    const int dim = 2 + k % 2;
    LatticeConeComplex cc = cone_complex_from_rays(random_cone(rng, dim, 20));
    for (int s = 0; s < cc.complex->stratum_count(); ++s) {
      LatticeStar st = star_at_vector(cc, s, barycenter(cc.cone(s)));
      std::string why;
      CHECK_MESSAGE(same_subdivision(st.subdivision, star_subdivide(cc.complex, s), &why), why);
      CHECK(st.complex.complex == st.subdivision.derived);
      CHECK(validate_lattice(st.complex).ok());
    }
  }
}

TEST_CASE("parallelepiped points") {
  auto pts = parallelepiped_points(columns({{1, 0}, {1, 2}}));
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == LatticeVector{1, 1});
  CHECK(parallelepiped_points(LatticeMatrix::identity(3)).empty());
  Rng rng(54);
  for (int k = 0; k < 60; ++k) {
    LatticeMatrix r = random_cone(rng, 2 + k % 2, 20);
    const long long m = multiplicity(cone(r));
    auto p = parallelepiped_points(r);
    CHECK(static_cast<long long>(p.size()) == m - 1);
    for (const auto& x : p)
      for (long long c : x) {
        CHECK(c >= 0);
        CHECK(c < m);
      }
  }
}

TEST_CASE("resolution examples") {
  Resolution smooth = toric_resolve(standard_lattice(fixtures::filled_triangle()));
  CHECK(smooth.steps.empty());

  Resolution r2 = toric_resolve(cone_complex_from_rays(columns({{1, 0}, {1, 2}})));
  REQUIRE(r2.steps.size() == 1);
  CHECK(r2.steps[0].point == LatticeVector{1, 1});
  CHECK(is_smooth(r2.complex).smooth);

  Resolution r5 = toric_resolve(cone_complex_from_rays(columns({{1, 0}, {1, 5}})));
  CHECK(r5.steps.size() <= 4);
  CHECK(is_smooth(r5.complex).smooth);
  CHECK(validate_lattice(r5.complex).ok());
}

TEST_CASE("resolution steps lower the multiplicity profile") {
  Rng rng(55);
  for (int k = 0; k < 100; ++k) {
    LatticeConeComplex cc = cone_complex_from_rays(random_cone(rng, 2 + k % 2, 20));
    Resolution r = toric_resolve(cc);
    CHECK(is_smooth(r.complex).smooth);
    // replay the steps independently
    LatticeConeComplex cur = cc;
    for (const auto& step : r.steps) {
      const long long before_max = max_multiplicity(cur);
      const int before_count = count_at(cur, before_max);
      CHECK(step.multiplicity_before == before_max);
      CHECK(step.count_before == before_count);
      CHECK(step.total_before == total_excess(cur));
      cur = star_at_vector(cur, cur.complex->stratum_index(step.center), step.point).complex;
      const long long after_max = max_multiplicity(cur);
      CHECK(after_max <= before_max);
      if (after_max == before_max) CHECK(count_at(cur, after_max) < before_count);
    }
    CHECK(is_smooth(cur).smooth);
  }
}

TEST_CASE("the excess multiplicity sum can grow in one step") {
  // the second step stars a multiplicity-2 face shared by cones of
  // multiplicity 2 and 10; the 10 splits into 5 + 5 plus a new face of 5
  LatticeConeComplex cc = cone_complex_from_rays(columns({{0, -1, -2}, {-3, -1, -3}, {-1, -1, 3}}));
  REQUIRE(multiplicity(cc.cone(top(cc))) == 16);
  Resolution r = toric_resolve(cc);
  CHECK(is_smooth(r.complex).smooth);
  REQUIRE(r.steps.size() >= 3);
  CHECK(r.steps[1].multiplicity_before == 10);
  CHECK(r.steps[2].multiplicity_before == 5);
  CHECK(r.steps[2].total_before > r.steps[1].total_before);
}

TEST_CASE("resolution of a complex with several cones") {
  auto c = fixtures::simplicial({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  std::vector<LatticeMatrix> rays(c->stratum_count(), LatticeMatrix::identity(1));
  rays[c->stratum_index("ab")] = columns({{1, 0}, {1, 3}});
  rays[c->stratum_index("bc")] = columns({{1, 0}, {2, 5}});
  LatticeConeComplex cc = make_lattice_complex(c, rays);
  Resolution r = toric_resolve(cc);
  CHECK(is_smooth(r.complex).smooth);
  CHECK(r.steps.size() >= 2);
}
