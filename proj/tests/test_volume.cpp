#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "sbc/random.hpp"
#include "sbc/volume.hpp"

using namespace sbc;

namespace {

ClassLabel L(const char* s) { return ClassLabel(s); }

K0Class cls(std::initializer_list<std::pair<const char*, long long>> terms) {
  K0Class k;
  for (const auto& [l, c] : terms) k.add(L(l), c);
  return k;
}

// Alternating strata sum, counted by hand from the ids.
K0Class strata_sum(const StratifiedComplex& c) {
  std::map<std::string, long long> acc;
  for (int s = 0; s < c.stratum_count(); ++s)
    acc[c.stratum(s).label.symbol()] += c.stratum(s).codim % 2 == 1 ? 1 : -1;
  K0Class k;
  for (const auto& [l, n] : acc) k.add(ClassLabel(l), n);
  return k;
}

K0Class random_class(Rng& rng) {
  static const char* pool[] = {"a", "b", "c", "d", "e", "pt"};
  std::uniform_int_distribution<int> pick(0, 5), coef(-4, 4);
  K0Class k;
  for (int i = 0; i < 5; ++i) k.add(L(pool[pick(rng)]), coef(rng));
  return k;
}

}  // namespace

TEST_CASE("volume formula examples") {
  CHECK(motivic_volume_formula(*fixtures::simplicial({"a"}, {{"a"}}, {{"a", "X0"}})) == cls({{"X0", 1}}));
  K0Class e = motivic_volume_formula(*fixtures::edge());
  CHECK(e == cls({{"a", 1}, {"b", 1}, {"e", -1}}));
  CHECK(e.to_string() == "+[a] +[b] -[e]");
  auto t = fixtures::simplicial({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}, {{"ac", "ca"}});
  CHECK(motivic_volume_formula(*t).to_string() == "+[a] +[b] +[c] -[ab] -[bc] -[ca]");
}

TEST_CASE("class arithmetic") {
  K0Class k = cls({{"a", 2}, {"b", -1}});
  CHECK((k - k).is_zero());
  CHECK(k + k == 2 * k);
  CHECK(k.coeff(L("a")) == 2);
  CHECK(k.coeff(L("z")) == 0);
  K0Class z;
  z.add(L("a"), 0);
  CHECK(z.is_zero());
}

TEST_CASE("class of the zero complex") {
  ComplexData d;
  d.name = "empty";
  auto none = StratifiedComplex::make(d);
  CHECK(k0_class_of_complex(*build_cech(none, BuildMode::bounded())).is_zero());
  CHECK(motivic_volume_formula(*none).is_zero());
}

TEST_CASE("classes of the edge") {
  auto e = fixtures::edge();
  const K0Class want = cls({{"a", 1}, {"b", 1}, {"e", -1}});
  CHECK(k0_class_of_complex(*build_cech(e, BuildMode::bounded())) == want);
  CHECK(k0_class_of_complex(*build_sd(e, BuildMode::bounded())) == want);
}

TEST_CASE("Cech and Sd classes agree with the strata sum") {
  Rng rng(71);
  for (int k = 0; k < 60; ++k) {
    auto c = random_complex(rng);
    const K0Class oracle = strata_sum(*c);
    CHECK(motivic_volume_formula(*c) == oracle);
    CHECK(k0_class_of_complex(*build_cech(c, BuildMode::bounded())) == oracle);
    CHECK(k0_class_of_complex(*build_sd(c, BuildMode::bounded())) == oracle);
  }
}

TEST_CASE("obstruction arithmetic") {
  K0Class q = cls({{"Z", 2}, {"Q", -1}});
  CHECK_FALSE(is_trivial_class(q, L("pt")));
  CHECK_FALSE(is_trivial_class(q, L("Z")));
  CHECK_FALSE(is_trivial_class(q, L("Q")));
  LabelQuotient m;
  m.merge(L("pt"), L("Q"));
  m.merge(L("pt"), L("Z"));
  CHECK(apply_quotient(q, m) == cls({{"pt", 1}}));
  CHECK(is_trivial_class(q, L("pt"), &m));

  CHECK(is_trivial_class(cls({{"pt", 1}}), L("pt")));
  CHECK_FALSE(is_trivial_class(cls({{"pt", 2}}), L("pt")));
  CHECK_FALSE(is_trivial_class(K0Class{}, L("pt")));

  LabelQuotient all;
  all.merge(L("pt"), L("a"));
  all.merge(L("b"), L("e"));
  all.merge(L("a"), L("b"));
  CHECK(is_trivial_class(motivic_volume_formula(*fixtures::edge()), L("pt"), &all));
}

TEST_CASE("merge keeps the first representative") {
  LabelQuotient q;
  q.merge(L("x"), L("y"));
  q.merge(L("z"), L("y"));
  CHECK(q.find(L("y")) == L("z"));
  CHECK(q.find(L("x")) == L("z"));
  CHECK(q.find(L("w")) == L("w"));
}

TEST_CASE("quotients are homomorphisms") {
  Rng rng(72);
  for (int k = 0; k < 200; ++k) {
    LabelQuotient q;
    static const char* pool[] = {"a", "b", "c", "d", "e", "pt"};
    for (int i = 0; i < 3; ++i) q.merge(L(pool[rng() % 6]), L(pool[rng() % 6]));
    K0Class x = random_class(rng), y = random_class(rng);
    const long long n = static_cast<long long>(rng() % 7) - 3;
    CHECK(apply_quotient(x + y, q) == apply_quotient(x, q) + apply_quotient(y, q));
    CHECK(apply_quotient(n * x, q) == n * apply_quotient(x, q));
    CHECK(apply_quotient(apply_quotient(x, q), q) == apply_quotient(x, q));
  }
}

TEST_CASE("classes survive subdivisions after pushforward") {
  Rng rng(73);
  for (int k = 0; k < 25; ++k) {
    auto c = random_complex(rng);
    const K0Class base = strata_sum(*c);
    auto check = [&](const SubdivisionResult& r, const std::string& what) {
      K0Class d = k0_class_of_complex(*build_cech(r.derived, BuildMode::bounded()));
      CHECK_MESSAGE(pushforward_class(d, r) == base, what);
    };
    check(barycentric(c), "barycentric");
    for (int s = 0; s < c->stratum_count(); ++s) {
      check(star_subdivide(c, s), "star at " + c->id(s));
      for (BlowupMode mode : {BlowupMode::Proper, BlowupMode::EqualsCenter, BlowupMode::NoStratum}) {
        IntersectionProfile p;
        p.center = c->id(s);
        p.mode = mode;
        check(blowup_subdivide(c, p), "blowup at " + c->id(s));
      }
    }
  }
}

TEST_CASE("pushforward leaves untagged labels alone") {
  SubdivisionResult r = star_subdivide(fixtures::edge(), fixtures::edge()->stratum_index("ab"));
  K0Class k = cls({{"fresh", 3}});
  CHECK(pushforward_class(k, r) == k);
}
