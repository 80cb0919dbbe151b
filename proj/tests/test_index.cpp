#include <random>
#include <set>

#include "doctest.h"
#include "prolim/cofinal.hpp"
#include "prolim/error.hpp"
#include "prolim/kposet.hpp"
#include "prolim/shape.hpp"

using namespace prolim;

namespace {

TruncationBudget budget(int d, int s = 8) {
  TruncationBudget b;
  b.depth = d;
  b.search_depth = s;
  return b;
}

void check_enumeration(const DirectedSet& set, int depth) {
  std::vector<Index> prev;
  for (int d = 0; d <= depth; ++d) {
    const auto cur = set.elements(d);
    REQUIRE(cur.size() >= prev.size());
    CHECK(std::equal(prev.begin(), prev.end(), cur.begin()));
    for (const auto& e : cur) {
      CHECK(set.contains(e));
      CHECK(set.grade(e) <= d);
    }
    CHECK(std::set<Index>(cur.begin(), cur.end()).size() == cur.size());
    prev = cur;
  }
}

}  // namespace

TEST_CASE("directed sets enumerate prefix-stably and have upper bounds") {
  const std::vector<DirectedSetPtr> sets{
      nat(), std::make_shared<NatProduct>(2), std::make_shared<LexPair>(),
      point(),
      std::make_shared<FinitePoset>(4, std::vector<std::pair<int, int>>{
                                           {0, 1}, {0, 2}, {1, 3}, {2, 3}}),
      std::make_shared<ProductSet>(nat(), std::make_shared<NatProduct>(2))};
  for (const auto& s : sets) {
    CAPTURE(s->name());
    check_enumeration(*s, 5);
    const auto es = s->elements(4);
    for (const auto& a : es)
      for (const auto& b : es) {
        const auto u = s->upper_bound(a, b, 10);
        CHECK(s->leq(a, u));
        CHECK(s->leq(b, u));
      }
  }
}

TEST_CASE("cofinite sets: predecessors are finite and earlier") {
  const std::vector<DirectedSetPtr> sets{
      nat(), std::make_shared<NatProduct>(2),
      std::make_shared<ProductSet>(nat(), nat())};
  for (const auto& s : sets)
    for (const auto& e : s->elements(4))
      for (const auto& p : s->below(e)) {
        CHECK(s->leq(p, e));
        CHECK(s->position(p) < s->position(e));
      }
  // (m, n) in N x N has (m+1)(n+1) elements at or below it.
  const NatProduct n2(2);
  CHECK(n2.below({2, 3}).size() + 1 == 12);
}

TEST_CASE("lexicographic pairs are directed but not cofinite") {
  const LexPair lex;
  CHECK_FALSE(lex.is_cofinite());
  for (int n = 0; n < 20; ++n) CHECK(lex.leq({0, n}, {1, 0}));
}

TEST_CASE("finite posets must be directed") {
  CHECK_THROWS_AS(FinitePoset(2, {}), PreconditionFailure);
  const FinitePoset p(3, {{0, 2}, {1, 2}});
  CHECK(p.join({0}, {1}) == Index{2});
  CHECK(p.nth(4) == p.nth(1));
}

TEST_CASE("finite subsets under inclusion") {
  const FiniteSubsets fs(nat());
  check_enumeration(fs, 4);
  CHECK(fs.elements(3).size() == 7);
  CHECK(fs.leq({1}, {0, 1}));
  CHECK_FALSE(fs.leq({2}, {0, 1}));
  CHECK(fs.join({0, 2}, {1}) == Index{0, 1, 2});
}

TEST_CASE("shapes: arrows strictly lower the level and compose") {
  std::vector<std::shared_ptr<const CofiniteCategory>> shapes{
      FiniteCategory::single(),  FiniteCategory::arrow(),
      FiniteCategory::span(),    FiniteCategory::cospan(),
      FiniteCategory::square(),  FiniteCategory::coequalizer(),
      std::make_shared<ChainCategory>(),
      std::make_shared<SequentialShape>(),
      std::make_shared<PosetCategory>(std::make_shared<NatProduct>(2)),
      RealizationShape(2).category()};
  for (const auto& a : shapes) {
    CAPTURE(a->name());
    CHECK_NOTHROW(validate_shape(*a, 4));
    for (int x : a->objects(4))
      for (const auto& f : a->arrows_from(x)) {
        CHECK(f.source == x);
        CHECK(a->level(f.target) < a->level(x));
        CHECK(a->compose(CofiniteCategory::identity(f.target), f) == f);
        CHECK(a->compose(f, CofiniteCategory::identity(x)) == f);
        for (const auto& g : a->arrows_from(f.target))
          for (const auto& h : a->arrows_from(g.target))
            CHECK(a->compose(h, a->compose(g, f)) ==
                  a->compose(a->compose(h, g), f));
      }
  }
}

TEST_CASE("sequential shape has the zig-zag arrows") {
  const SequentialShape q;
  const auto from_t1 = q.arrows_from(SequentialShape::top(1));
  std::set<int> targets;
  for (const auto& f : from_t1) targets.insert(f.target);
  CHECK(targets == std::set<int>{SequentialShape::bottom(1), SequentialShape::bottom(2)});
  CHECK(q.arrows_from(SequentialShape::bottom(3)).empty());
}

TEST_CASE("verify_cofinal: evens, a single point, the identity") {
  auto evens = std::make_shared<FilteredSet>(
      nat(), [](const Index& i) { return i[0] % 2 == 0; }, "evens");
  const CofinalFunctor inc{evens, nat(), [](const Index& i) { return i; }, "evens"};
  const auto c = verify_cofinal(inc, budget(6));
  CHECK(c.verdict == Verdict::certified);
  // Oracle: the least even above s is 2 * ceil(s / 2).
  for (int s = 0; s <= 6; ++s)
    CHECK(c.witnesses[static_cast<std::size_t>(s)] ==
          index_str({s}) + " <= F" + index_str({2 * ((s + 1) / 2)}) + " = " +
              index_str({2 * ((s + 1) / 2)}));

  const CofinalFunctor zero{point(), nat(), [](const Index&) { return Index{0}; },
                            "zero"};
  const auto r = verify_cofinal(zero, budget(4));
  CHECK(r.verdict == Verdict::refuted);
  CHECK(r.depth == 1);

  const CofinalFunctor id{nat(), nat(), [](const Index& i) { return i; }, "id"};
  CHECK(verify_cofinal(id, budget(5)).verdict == Verdict::certified);
}

TEST_CASE("cofinal_reindex: identity on cofinite sets, subsets otherwise") {
  const auto b = budget(4);
  const auto same = cofinal_reindex(std::make_shared<NatProduct>(2), b);
  CHECK(same.index->name() == "nat^2");
  CHECK(same.certificate.verdict == Verdict::certified);

  const auto sub = cofinal_reindex(nat(), b, ReindexMode::finite_subsets);
  CHECK(sub.index->is_cofinite());
  for (int n = 0; n <= 6; ++n)
    CHECK(sub.functor.map({n}) == Index{n});
  CHECK(sub.functor.map({1, 4}) == Index{4});
  CHECK(verify_cofinal(sub.functor, b).verdict == Verdict::certified);

  // Subsets are graded by enumeration position, so reaching (4, 0) needs
  // subsets of the first 15 pairs.
  const auto wide = budget(4, 15);
  const auto lex = cofinal_reindex(std::make_shared<LexPair>(), wide);
  CHECK(lex.index->is_cofinite());
  CHECK(verify_cofinal(lex.functor, wide).verdict == Verdict::certified);
  CHECK(verify_cofinal(lex.functor, b).verdict == Verdict::exhausted);
}

TEST_CASE("cofinal_reindex is certified on generated finite posets") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<std::pair<int, int>> hasse;
    for (int i = 0; i + 1 < n; ++i) hasse.push_back({i, n - 1});
    for (int i = 0; i + 2 < n; ++i)
      if (rng() % 2) hasse.push_back({i, i + 1});
    auto p = std::make_shared<FinitePoset>(n, hasse);
    const auto r = cofinal_reindex(p, budget(4), ReindexMode::finite_subsets);
    CHECK(verify_cofinal(r.functor, budget(4)).verdict == Verdict::certified);
  }
}

TEST_CASE("K membership over the cospan and the arrow") {
  const KPoset k(FiniteCategory::cospan(), 4, nat());
  CHECK(k.contains(k.make({{2}, {3}, {1}})));
  CHECK_FALSE(k.contains(k.make({{1}, {3}, {2}})));

  const KPoset single(FiniteCategory::single(), 4, nat());
  for (int n = 0; n < 6; ++n) CHECK(single.elements(5)[static_cast<std::size_t>(n)] == Index{n});
}

TEST_CASE("k_refine examples and invariants") {
  const KPoset k(FiniteCategory::arrow(), 4, nat());
  CHECK(k_refine(k, {3, 1}, {2, 2}) == Index{3, 2});
  CHECK(k_refine(k, {4, 2}, {4, 2}) == Index{4, 2});
  const KPoset single(FiniteCategory::single(), 4, nat());
  CHECK(k_refine(single, {5}, {7}) == Index{7});
  CHECK_THROWS_AS(k_refine(k, {1, 3}, {2, 2}), PreconditionFailure);

  for (const auto& shape : {FiniteCategory::cospan(), FiniteCategory::square(),
                            FiniteCategory::span()}) {
    const KPoset kk(shape, 4, nat());
    const auto es = kk.elements(6);
    for (const auto& s : es)
      for (const auto& t : es) {
        const auto u = k_refine(kk, s, t);
        CHECK(kk.contains(u));
        CHECK(kk.leq(s, u));
        CHECK(kk.leq(t, u));
      }
  }
}

TEST_CASE("K inclusion and projection witnesses") {
  const KPoset k(FiniteCategory::arrow(), 4, nat());
  CHECK(k_inclusion_witness(k, {1, 4}) == Index{4, 4});
  CHECK(k_projection_witness(k, 1, {3}) == Index{3, 3});
  CHECK(k_projection_witness(k, 0, {3}) == Index{3, 0});
  CHECK(k_inclusion_cofinal(k, budget(5)).verdict == Verdict::certified);
  CHECK(k_projection_cofinal(k, 1, budget(5)).verdict == Verdict::certified);

  const KPoset over_pairs(FiniteCategory::cospan(), 4,
                          std::make_shared<NatProduct>(2));
  CHECK(k_inclusion_cofinal(over_pairs, budget(3)).verdict == Verdict::certified);
  for (int a : {0, 1, 2})
    CHECK(k_projection_cofinal(over_pairs, a, budget(3)).verdict ==
          Verdict::certified);
}
