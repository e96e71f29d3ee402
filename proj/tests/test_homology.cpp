#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "sbc/homology.hpp"
#include "sbc/random.hpp"
#include "sbc/subdivide.hpp"

using namespace sbc;

namespace {

IntMatrix<long long> matrix(std::initializer_list<std::initializer_list<long long>> rows) {
  IntMatrix<long long> m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (long long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntMatrix<long long> random_matrix(Rng& rng, int rows, int cols, int range) {
  std::uniform_int_distribution<int> e(-range, range);
  IntMatrix<long long> m(rows, cols);
  for (auto& x : m.data) x = e(rng);
  return m;
}

std::vector<SparseEntry> entries(const IntMatrix<long long>& m) {
  std::vector<SparseEntry> out;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m(i, j)) out.push_back({i, j, m(i, j)});
  return out;
}

HomologyGroup free_group(long long b) { return HomologyGroup{b, {}}; }

// Strips trailing zero groups.
std::vector<HomologyGroup> trimmed(std::vector<HomologyGroup> h) {
  while (!h.empty() && h.back() == HomologyGroup{}) h.pop_back();
  return h;
}

// Homology of a sphere of dimension d.
std::vector<HomologyGroup> sphere(int d) {
  std::vector<HomologyGroup> h(d + 1);
  if (d == 0) {
    h[0] = free_group(2);
    return h;
  }
  h[0] = free_group(1);
  h[d] = free_group(1);
  return h;
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  auto id = smith_normal_form(IntMatrix<long long>::identity(3));
  CHECK(id.S == IntMatrix<long long>::identity(3));
  CHECK(id.diagonal == std::vector<long long>{1, 1, 1});

  auto d = smith_normal_form(matrix({{2, 0}, {0, 3}}));
  CHECK(d.diagonal == std::vector<long long>{1, 6});
  CHECK(d.S == matrix({{1, 0}, {0, 6}}));

  auto z = smith_normal_form(IntMatrix<long long>(2, 3));
  CHECK(z.diagonal.empty());
  CHECK(z.S == IntMatrix<long long>(2, 3));

  auto t = smith_normal_form(matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  CHECK(t.diagonal == std::vector<long long>{2, 6, 12});
}

TEST_CASE("Smith normal form transforms") {
  Rng rng(61);
  for (int k = 0; k < 200; ++k) {
    const int r = 1 + k % 5, c = 1 + (k / 5) % 5;
    auto m = random_matrix(rng, r, c, 6).cast<BigInt>();
    auto f = smith_normal_form(m);
    CHECK(f.U * m * f.V == f.S);
    CHECK(abs_value(determinant(f.U)) == 1);
    CHECK(abs_value(determinant(f.V)) == 1);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (i != j) CHECK(f.S(i, j) == 0);
    for (std::size_t i = 0; i < f.diagonal.size(); ++i) {
      CHECK(f.diagonal[i] > 0);
      if (i + 1 < f.diagonal.size()) CHECK(f.diagonal[i + 1] % f.diagonal[i] == 0);
    }
  }
}

TEST_CASE("invariant factors survive unimodular multiplication") {
  Rng rng(62);
  for (int k = 0; k < 150; ++k) {
    const int r = 2 + k % 4, c = 2 + (k / 4) % 4;
    auto m = random_matrix(rng, r, c, 5);
    auto u = random_unimodular(rng, r), v = random_unimodular(rng, c);
    auto a = smith_normal_form(m.cast<BigInt>(), false).diagonal;
    auto b = smith_normal_form((u * m * v).cast<BigInt>(), false).diagonal;
    CHECK(a == b);
  }
}

TEST_CASE("sparse invariant factors agree with the dense form") {
  Rng rng(63);
  for (int k = 0; k < 150; ++k) {
    const int r = 1 + k % 7, c = 1 + (k / 7) % 7;
    auto m = random_matrix(rng, r, c, 3);
    for (auto& x : m.data)
      if (rng() % 3 == 0) x = 0;
    CHECK(invariant_factors(r, c, entries(m)) == smith_normal_form(m.cast<BigInt>(), false).diagonal);
  }
  // entries large enough to overflow 64-bit pivots
  IntMatrix<long long> big = matrix({{4000000000LL, 3}, {6000000000LL, 5}});
  big(0, 0) *= 1000000000LL;
  big(1, 0) *= 1000000000LL;
  CHECK(invariant_factors(2, 2, entries(big)) == smith_normal_form(big.cast<BigInt>(), false).diagonal);
}

TEST_CASE("determinant and adjugate") {
  auto m = matrix({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  CHECK(determinant(m) == 18);
  auto adj = adjugate(m);
  CHECK(m * adj == [] {
    auto d = IntMatrix<long long>::identity(3);
    for (auto& x : d.data) x *= 18;
    return d;
  }());
  CHECK(is_saturated(matrix({{1, 0}, {0, 1}, {1, 1}})));
  CHECK_FALSE(is_saturated(matrix({{2, 0}, {0, 1}})));
}

TEST_CASE("constant realization of the edge") {
  auto e = fixtures::edge();
  IntegerChainComplex c = realize(*build_cech(e, BuildMode::bounded()), AbelianRealization::constant_realization());
  REQUIRE(c.ranks == std::vector<int>{2, 1});
  Eigen::MatrixXd d = Eigen::MatrixXd(c.d[1].cast<double>());
  // d = d0 - d1: [ab] -> [b] - [a]; rows in id order a, b
  CHECK(d(0, 0) == -1);
  CHECK(d(1, 0) == 1);
  auto h = homology_groups(c);
  CHECK(h[0] == free_group(1));
  CHECK(h[1] == HomologyGroup{});
}

TEST_CASE("zero-rank realization") {
  auto e = fixtures::edge();
  AbelianRealization r;
  r.ranks = {{"a", 0}, {"b", 0}, {"e", 0}};
  IntegerChainComplex c = realize(*build_cech(e, BuildMode::bounded()), r);
  for (int n : c.ranks) CHECK(n == 0);
  for (const auto& g : homology_groups(c)) CHECK(g == HomologyGroup{});
}

TEST_CASE("realizations with non-identity matrices") {
  // F(ab) = Z -> F(a) = Z by 2, identity to F(b): H0 = Z, no torsion, H1 = 0
  auto e = fixtures::edge();
  AbelianRealization r;
  r.ranks = {{"a", 1}, {"b", 1}, {"e", 1}};
  r.matrices[{"ab", "a"}] = matrix({{2}});
  auto h = homology_groups(realize(*build_cech(e, BuildMode::bounded()), r));
  CHECK(h[0] == free_group(1));
  CHECK(h[1] == HomologyGroup{});

  // both maps by 2: d[ab] = 2[b] - 2[a] leaves Z/2 in degree 0
  r.matrices[{"ab", "b"}] = matrix({{2}});
  auto g = homology_groups(realize(*build_cech(e, BuildMode::bounded()), r));
  CHECK(g[0].betti == 1);
  CHECK(g[0].torsion == std::vector<BigInt>{2});
  CHECK(g[1] == HomologyGroup{});
  CHECK(g[0].to_string() == "Z + Z/2");
}

TEST_CASE("path dependence is rejected with a witness") {
  auto f = fixtures::filled_triangle();
  AbelianRealization r;
  for (int s = 0; s < f->stratum_count(); ++s) r.ranks[f->stratum(s).label.symbol()] = 1;
  r.matrices[{"abc", "ab"}] = matrix({{-1}});
  FlagComposer fc(f, r);
  ValidationReport rep = fc.check_path_independence();
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.has("path dependence"));
  CHECK(rep.to_string().find("abc > ab > a") != std::string::npos);
  CHECK_THROWS_AS(realize(*build_cech(f, BuildMode::bounded()), r), MathError);

  auto sq = fixtures::square_poset();
  AbelianRealization s;
  for (auto id : {"a", "b", "x", "y", "t"}) s.ranks[id] = 1;
  s.matrices[{"x", "a"}] = matrix({{2}});
  FlagComposer sc(sq, s);
  ValidationReport srep = sc.check_path_independence();
  CHECK(srep.has("path dependence"));
  CHECK(srep.to_string().find("t > x > a") != std::string::npos);
  CHECK_THROWS_AS(sc.composed(sq->stratum_index("t"), sq->stratum_index("a")), MathError);
}

TEST_CASE("realization input errors") {
  auto e = fixtures::edge();
  AbelianRealization r;
  r.ranks = {{"a", 1}, {"b", 2}, {"e", 1}};
  CHECK_THROWS_AS(FlagComposer(e, r), InputError);
  r.ranks["b"] = 1;
  r.matrices[{"ab", "a"}] = matrix({{1, 1}});
  CHECK_THROWS_AS(FlagComposer(e, r), InputError);
  r.matrices.clear();
  r.matrices[{"a", "ab"}] = matrix({{1}});
  CHECK_THROWS_AS(FlagComposer(e, r), InputError);
  r.matrices.clear();
  r.ranks.erase("e");
  CHECK_THROWS_AS(FlagComposer(e, r), InputError);
}

TEST_CASE("dual complex homology examples") {
  CHECK(trimmed(dual_complex_homology(fixtures::edge())) == std::vector<HomologyGroup>{free_group(1)});
  CHECK(trimmed(dual_complex_homology(fixtures::triangle())) == std::vector<HomologyGroup>{free_group(1), free_group(1)});
  auto tet = trimmed(dual_complex_homology(fixtures::simplex_boundary(2)));
  CHECK(tet == sphere(2));
  CHECK(tet[0].to_string() == "Z");
  CHECK(tet[1].to_string() == "0");
}

TEST_CASE("cycles and sphere boundaries") {
  for (int n = 3; n <= 8; ++n) CHECK(trimmed(dual_complex_homology(fixtures::cycle(n))) == sphere(1));
  for (int d = 0; d <= 3; ++d) CHECK(trimmed(dual_complex_homology(fixtures::simplex_boundary(d))) == sphere(d));
}

TEST_CASE("Euler characteristics agree") {
  Rng rng(64);
  for (int k = 0; k < 40; ++k) {
    auto c = random_complex(rng);
    IntegerChainComplex ic = realize(*build_cech(c, BuildMode::bounded()), AbelianRealization::constant_realization());
    CHECK(euler_characteristic(ic) == euler_characteristic(homology_groups(ic)));
  }
}

TEST_CASE("homology is unchanged by subdivisions") {
  Rng rng(65);
  for (int k = 0; k < 20; ++k) {
    auto c = random_complex(rng);
    auto h = trimmed(dual_complex_homology(c));
    CHECK(trimmed(dual_complex_homology(barycentric(c).derived)) == h);
    for (int s = 0; s < c->stratum_count(); ++s) {
      CHECK(trimmed(dual_complex_homology(star_subdivide(c, s).derived)) == h);
      IntersectionProfile p;
      p.center = c->id(s);
      CHECK(trimmed(dual_complex_homology(blowup_subdivide(c, p).derived)) == h);
    }
  }
}
