#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "sbc/builders.hpp"
#include "sbc/random.hpp"
#include "sbc/subdivide.hpp"

using namespace sbc;

namespace {

// Entry of the degree-n map at (target cell, source cell).
long long entry(const Morphism& m, const BuiltComplex& tgt, int tn, const std::vector<int>& tkey,
                const BuiltComplex& src, int sn, const std::vector<int>& skey) {
  const int i = tgt.index_of(tn, tkey), j = src.index_of(sn, skey);
  REQUIRE(i >= 0);
  REQUIRE(j >= 0);
  return m.coeff(i, j);
}

// Weakly increasing (n+1)-tuples of strata, counted by brute force over
// vertex-set inclusion.
long long weak_chain_count(const StratifiedComplex& c, int n) {
  std::vector<long long> ending(c.stratum_count(), 1);
  auto subset = [&](int s, int t) {
    for (int v : c.stratum(s).vertices)
      if (std::find(c.stratum(t).vertices.begin(), c.stratum(t).vertices.end(), v) == c.stratum(t).vertices.end())
        return false;
    return true;
  };
  for (int k = 0; k < n; ++k) {
    std::vector<long long> next(c.stratum_count(), 0);
    for (int t = 0; t < c.stratum_count(); ++t)
      for (int s = 0; s < c.stratum_count(); ++s)
        if (subset(s, t)) next[t] += ending[s];
    ending = next;
  }
  long long total = 0;
  for (long long x : ending) total += x;
  return total;
}

}  // namespace

TEST_CASE("subdivision complex of a single stratum") {
  BuiltPtr b = build_sd(fixtures::point(), BuildMode::bounded());
  CHECK(b->top() == 0);
  CHECK(b->rank(0) == 1);
}

TEST_CASE("subdivision complex of the edge") {
  auto e = fixtures::edge();
  BuiltPtr b = build_sd(e, BuildMode::bounded());
  REQUIRE(b->top() == 1);
  CHECK(b->rank(0) == 3);
  CHECK(b->rank(1) == 2);
  CHECK(verify_complex(*b->chain).ok());
  const int a = e->stratum_index("a"), ab = e->stratum_index("ab"), bb = e->stratum_index("b");
  const Morphism d = b->chain->d(1);
  // d(a<ab) = d0 - d1 = (ab) - (a), the second through the inclusion ab -> a
  CHECK(entry(d, *b, 0, {ab}, *b, 1, {a, ab}) == 1);
  CHECK(entry(d, *b, 0, {a}, *b, 1, {a, ab}) == -1);
  CHECK(entry(d, *b, 0, {bb}, *b, 1, {a, ab}) == 0);
  CHECK(entry(d, *b, 0, {ab}, *b, 1, {bb, ab}) == 1);
  CHECK(entry(d, *b, 0, {bb}, *b, 1, {bb, ab}) == -1);
}

TEST_CASE("extended subdivision complex of the edge") {
  auto e = fixtures::edge();
  BuiltPtr b = build_sd(e, BuildMode::extended_to(3));
  CHECK(b->chain->truncated);
  CHECK(b->top() == 3);
  // (a=a=a) (a=a<ab) (a<ab=ab) and the same from b, plus (ab=ab=ab)
  CHECK(b->rank(2) == 7);
  for (int n = 0; n <= 3; ++n) CHECK(b->rank(n) == weak_chain_count(*e, n));
  CHECK(verify_complex(*b->chain).ok());
}

TEST_CASE("extended ranks match brute force") {
  Rng rng(31);
  for (int k = 0; k < 15; ++k) {
    auto c = random_complex(rng);
    bool repeated = false;
    for (int s = 0; s < c->stratum_count(); ++s)
      for (int t = s + 1; t < c->stratum_count(); ++t)
        repeated = repeated || c->stratum(s).vertices == c->stratum(t).vertices;
    if (repeated) continue;
    BuiltPtr b = build_sd(c, BuildMode::extended_to());
    CHECK(b->top() == default_bound(*c));
    for (int n = 0; n <= b->top(); ++n) CHECK(b->rank(n) == weak_chain_count(*c, n));
  }
}

TEST_CASE("Cech complexes") {
  BuiltPtr p = build_cech(fixtures::point(), BuildMode::bounded());
  CHECK(p->top() == 0);
  CHECK(p->rank(0) == 1);

  auto e = fixtures::edge();
  BuiltPtr b = build_cech(e, BuildMode::bounded());
  REQUIRE(b->top() == 1);
  CHECK(b->rank(0) == 2);
  CHECK(b->rank(1) == 1);
  const Morphism& d = b->chain->d(1);
  CHECK(d.coeff(b->index_of(0, {e->stratum_index("b"), *e->find_vertex("b")}), 0) == 1);
  CHECK(d.coeff(b->index_of(0, {e->stratum_index("a"), *e->find_vertex("a")}), 0) == -1);

  BuiltPtr t = build_cech(fixtures::triangle(), BuildMode::bounded());
  CHECK(t->rank(0) == 3);
  CHECK(t->rank(1) == 3);
  CHECK(verify_complex(*t->chain).ok());
}

TEST_CASE("Cech complexes need an ordered simplicial complex") {
  auto c = fixtures::square_poset();
  CHECK_THROWS_AS(build_cech(c, BuildMode::bounded()), InputError);
}

TEST_CASE("degenerate splitting") {
  auto e = fixtures::edge();
  DegeneracySplitting s = degeneracy_splitting(build_sd(e, BuildMode::extended_to(2)));
  CHECK(s.iota.components[0].matrix.nonZeros() == 3);
  CHECK(is_equal(s.iota.components[0], Morphism::identity(s.bounded->chain->term(0))));
  CHECK(is_equal(s.pi.components[0], Morphism::identity(s.bounded->chain->term(0))));
  CHECK(verify_homotopy(s.homotopy).ok());
  CHECK(verify_chain_map(s.iota).ok());
  CHECK(verify_chain_map(s.pi).ok());

  for (BuiltPtr ext : {build_sd(fixtures::triangle(), BuildMode::extended_to()),
                       build_cech(fixtures::triangle(), BuildMode::extended_to())}) {
    DegeneracySplitting t = degeneracy_splitting(ext);
    CHECK(compare_maps(compose_chain_maps(t.pi, t.iota), identity_map(t.bounded->chain), "pi iota").ok());
    CHECK(verify_homotopy(t.homotopy).ok());
  }
  CHECK_THROWS_AS(degeneracy_splitting(build_sd(e, BuildMode::bounded())), InputError);
}

TEST_CASE("last vertex map on the edge") {
  auto e = fixtures::edge();
  BuiltPtr sd = build_sd(e, BuildMode::bounded());
  BuiltPtr ch = build_cech(e, BuildMode::bounded());
  ChainMap lam = build_last_vertex(sd, ch);
  CHECK(verify_chain_map(lam).ok());
  const int a = e->stratum_index("a"), ab = e->stratum_index("ab"), b = e->stratum_index("b");
  const int va = *e->find_vertex("a"), vb = *e->find_vertex("b");
  // degree 0: (s) goes to [max s]
  CHECK(entry(lam.components[0], *ch, 0, {a, va}, *sd, 0, {a}) == 1);
  CHECK(entry(lam.components[0], *ch, 0, {b, vb}, *sd, 0, {ab}) == 1);
  CHECK(lam.components[0].matrix.nonZeros() == 3);
  // (a<ab) has maxima a, b: the nondegenerate [a,b]; (b<ab) gives [b,b], killed
  CHECK(entry(lam.components[1], *ch, 1, {ab, va, vb}, *sd, 1, {a, ab}) == 1);
  CHECK(entry(lam.components[1], *ch, 1, {ab, va, vb}, *sd, 1, {b, ab}) == 0);
}

TEST_CASE("subdivision map on the edge") {
  auto e = fixtures::edge();
  BuiltPtr sd = build_sd(e, BuildMode::bounded());
  BuiltPtr ch = build_cech(e, BuildMode::bounded());
  ChainMap s = build_subdivision_map(ch, sd);
  CHECK(verify_chain_map(s).ok());
  const int a = e->stratum_index("a"), ab = e->stratum_index("ab"), b = e->stratum_index("b");
  const int va = *e->find_vertex("a"), vb = *e->find_vertex("b");
  CHECK(entry(s.components[0], *sd, 0, {a}, *ch, 0, {a, va}) == 1);
  CHECK(s.components[0].matrix.nonZeros() == 2);
  CHECK(entry(s.components[1], *sd, 1, {a, ab}, *ch, 1, {ab, va, vb}) == 1);
  CHECK(entry(s.components[1], *sd, 1, {b, ab}, *ch, 1, {ab, va, vb}) == -1);
}

TEST_CASE("comparison homotopy") {
  auto check = [](ComplexPtr c, int bound) {
    BuiltPtr sde = build_sd(c, BuildMode::extended_to(bound));
    BuiltPtr che = build_cech(c, BuildMode::extended_to(bound));
    ChainMap lam = build_last_vertex(sde, che);
    ChainMap s = build_subdivision_map(che, sde);
    CHECK(verify_chain_map(lam).ok());
    CHECK(verify_chain_map(s).ok());
    ComparisonHomotopy h = build_comparison_homotopy(sde, compose_chain_maps(s, lam), true);
    CHECK(verify_homotopy(h.homotopy).ok());
    CHECK(check_sign_identities(h).ok());
    return h;
  };
  ComparisonHomotopy p = check(fixtures::point(), 2);
  check(fixtures::edge(), 3);
  ComparisonHomotopy t = check(fixtures::triangle(), 4);
  check(fixtures::filled_triangle(), 4);
  // on a point sd+ lambda+ is the identity in degree 0 and h0 reaches (a=a)
  CHECK(p.homotopy.components[0].matrix.nonZeros() == 1);
  CHECK(t.parts.A.size() >= 3);
}

TEST_CASE("sign identities detect a broken part") {
  auto c = fixtures::edge();
  BuiltPtr sde = build_sd(c, BuildMode::extended_to(3));
  BuiltPtr che = build_cech(c, BuildMode::extended_to(3));
  ChainMap sl = compose_chain_maps(build_subdivision_map(che, sde), build_last_vertex(sde, che));
  ComparisonHomotopy h = build_comparison_homotopy(sde, sl, true);
  REQUIRE(check_sign_identities(h).ok());
  h.parts.C[1] = h.parts.C[1] + Morphism::identity(h.parts.C[1].source);
  CHECK_FALSE(check_sign_identities(h).ok());
}

TEST_CASE("subdivision complexes of pushforwards") {
  auto e = fixtures::edge();
  BuiltPtr sd = build_sd(e, BuildMode::bounded());
  ChainMap id = build_sd_pushforward(identity_poset_map(e), sd, sd);
  CHECK(compare_maps(id, identity_map(sd->chain), "Sd(id)").ok());

  SubdivisionResult r1 = barycentric(e);
  SubdivisionResult r2 = barycentric(r1.derived);
  auto arrows = vertical_arrows(r1.pushforward, 1, 0, r1.iso_tags);
  auto more = vertical_arrows(r2.pushforward, 2, 1, r2.iso_tags);
  arrows.insert(arrows.end(), more.begin(), more.end());
  auto table = std::make_shared<const ArrowTable>(std::vector<ComplexPtr>{e, r1.derived, r2.derived}, arrows);
  BuiltPtr s0 = build_sd(table, 0, BuildMode::bounded());
  BuiltPtr s1 = build_sd(table, 1, BuildMode::bounded());
  BuiltPtr s2 = build_sd(table, 2, BuildMode::bounded());
  ChainMap f = build_sd_pushforward(r1.pushforward, s1, s0);
  ChainMap g = build_sd_pushforward(r2.pushforward, s2, s1);
  CHECK(verify_chain_map(f).ok());
  CHECK(verify_chain_map(g).ok());
  ChainMap fg = build_sd_pushforward(compose(r1.pushforward, r2.pushforward), s2, s0);
  CHECK(compare_maps(fg, compose_chain_maps(f, g), "Sd(fg)").ok());
}

TEST_CASE("permutation signs") {
  CHECK(permutations(1).size() == 1);
  CHECK(permutations(3).size() == 6);
  int total = 0;
  for (const auto& p : permutations(4)) total += p.sign;
  CHECK(total == 0);
}

TEST_CASE("random complexes: built complexes and maps verify") {
  Rng rng(32);
  for (int k = 0; k < 25; ++k) {
    auto c = random_complex(rng);
    BuiltPtr sd = build_sd(c, BuildMode::bounded());
    BuiltPtr ch = build_cech(c, BuildMode::bounded());
    CHECK(verify_complex(*sd->chain).ok());
    CHECK(verify_complex(*ch->chain).ok());
    ChainMap lam = build_last_vertex(sd, ch), s = build_subdivision_map(ch, sd);
    CHECK(verify_chain_map(lam).ok());
    CHECK(verify_chain_map(s).ok());
    CHECK(compare_maps(compose_chain_maps(lam, s), identity_map(ch->chain), "lambda sd").ok());
  }
}
