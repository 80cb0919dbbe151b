#include "doctest.h"
#include "prolim/finab.hpp"
#include "prolim/finset.hpp"
#include "prolim/levelrep.hpp"

using namespace prolim;

namespace {

TruncationBudget budget(int d, int s) {
  TruncationBudget b;
  b.depth = d;
  b.search_depth = s;
  return b;
}

/// {0} <- {0,1} <- {0,1,2} <- ..., collapsing the new top element.
ProObject<FinSet> collapse_tower(const std::string& label) {
  return ProObject<FinSet>::tower(
      [](int n) { return FinSetObj{n + 1}; },
      [](int n) {
        std::vector<int> img;
        for (int i = 0; i <= n + 1; ++i) img.push_back(std::min(i, n));
        return FinSet::make(img, n + 1);
      },
      label);
}

ProObject<FinAb> two_adic(const std::string& label) {
  return ProObject<FinAb>::tower(
      [](int n) { return FinAb::cyclic(std::int64_t{1} << (n + 1)); },
      [](int n) {
        return FinAb::make(FinAb::cyclic(std::int64_t{1} << (n + 2)),
                           FinAb::cyclic(std::int64_t{1} << (n + 1)),
                           IntMatrix(1, 1, {1}));
      },
      label);
}

/// The structure map X_{s+delay} -> Y_s, read as a map between two copies
/// of the same tower.
template <BaseCategory C>
ProMap<C> delayed(const ProObject<C>& x, const ProObject<C>& y, int delay,
                  const std::string& label) {
  return ProMap<C>(
      x, y,
      [x, delay](const Index& s) {
        return Rep<C>{{s[0] + delay}, x.map({s[0] + delay}, s)};
      },
      label);
}

ShapeArrow only_arrow(const ShapePtr& shape, int a, int b) {
  const auto as = shape->arrows(a, b);
  REQUIRE(as.size() == 1);
  return as.front();
}

/// Square 0 -> {1, 2} -> 3 of collapse towers; the arrows carry delays 1, 2
/// (out of 0), 0 and 1 (into 3).
DiagramOfPro<FinSet> staggered_square(int delay_23 = 1) {
  auto sq = FiniteCategory::square();
  DiagramOfPro<FinSet> d(sq, 4);
  for (int a = 0; a < 4; ++a) d.set_object(a, collapse_tower("X" + std::to_string(a)));
  auto set = [&](int a, int b, int delay) {
    d.set_arrow(only_arrow(sq, a, b),
                delayed(d.object(a), d.object(b), delay,
                        std::to_string(a) + std::to_string(b)));
  };
  set(0, 1, 1);
  set(0, 2, 2);
  set(1, 3, 0);
  set(2, 3, delay_23);
  return d;
}

}  // namespace

TEST_CASE("a single pro-object is its own level representation") {
  DiagramOfPro<FinAb> d(FiniteCategory::single(), 0);
  d.set_object(0, two_adic("X"));
  const auto l = level_replace(d, budget(4, 6));
  CHECK(l.method == "levelwise");
  for (int s = 0; s <= 4; ++s) {
    CHECK(l.f(0, {s}) == Index{s});
    CHECK(l.object(0).at({s}) == d.object(0).at({s}));
  }
  CHECK(verify_level_representation(l, budget(4, 6)).ok());
}

TEST_CASE("level representation of a single pro-map") {
  auto ar = FiniteCategory::arrow();
  DiagramOfPro<FinAb> d(ar, 1);
  d.set_object(0, two_adic("X"));
  d.set_object(1, two_adic("Y"));
  d.set_arrow(only_arrow(ar, 0, 1), delayed(d.object(0), d.object(1), 2, "g"));
  const auto b = budget(5, 8);
  const auto l = level_replace(d, b);
  CHECK(l.method == "least-admissible");
  for (int s = 0; s <= 5; ++s) {
    CHECK(l.f(1, {s}) == Index{s});
    CHECK(l.f(0, {s}) == Index{s + 2});
  }
  const auto c = verify_level_representation(l, b);
  CHECK(c.verdict == Verdict::certified);
}

TEST_CASE("staggered square: least admissible reindexing and all conditions") {
  const auto d = staggered_square();
  const auto b = budget(5, 9);
  CHECK(d.validate(b).ok());
  const auto l = level_replace(d, b);
  // Oracle, by hand: f^3 = s, f^1 = max(s, f^3 + 0), f^2 = max(s, f^3 + 1),
  // f^0 = max(f^1 + 1, f^2 + 2, f^3 + 1); all maps are structure maps of one
  // tower, so the squares and triangles impose nothing further.
  for (int s = 0; s <= 5; ++s) {
    CHECK(l.f(3, {s}) == Index{s});
    CHECK(l.f(1, {s}) == Index{s});
    CHECK(l.f(2, {s}) == Index{s + 1});
    CHECK(l.f(0, {s}) == Index{s + 3});
  }
  CHECK(verify_conditions(l, b).ok());
  CHECK(verify_isomorphic(l, b).ok());
}

TEST_CASE("assembled diagram is isomorphic to the input") {
  const auto d = staggered_square();
  const auto b = budget(5, 9);
  const auto l = level_replace(d, b);
  const auto e = assemble(l);
  CHECK(e.validate(b).ok());
  for (int a = 0; a < 4; ++a) {
    CHECK(promap_equal(compose(l.from_tilde(a), l.to_tilde(a)),
                       ProMap<FinSet>::identity(d.object(a)), b)
              .ok());
    for (const auto& phi : e.arrows_from(a)) CHECK(e.arrow(phi).levelwise());
  }
  // Level-replacing an assembled diagram changes nothing.
  const auto again = level_replace(e, b);
  CHECK(again.method == "levelwise");
}

TEST_CASE("a non-commuting square has no admissible level") {
  // The two paths 0 -> 3 now differ: one of them is constant.
  auto sq = FiniteCategory::square();
  DiagramOfPro<FinSet> d(sq, 4);
  for (int a = 0; a < 4; ++a) d.set_object(a, collapse_tower("X" + std::to_string(a)));
  auto down = [&](int a, int b) {
    d.set_arrow(only_arrow(sq, a, b), delayed(d.object(a), d.object(b), 0, "d"));
  };
  down(0, 1);
  down(0, 2);
  down(1, 3);
  const auto& x2 = d.object(2);
  d.set_arrow(only_arrow(sq, 2, 3),
              ProMap<FinSet>::levelwise_map(
                  x2, d.object(3),
                  [](const Index& s) { return FinSet::constant(s[0] + 1, s[0] + 1, 0); },
                  "const"));
  const auto b = budget(3, 4);
  CHECK(d.validate(b).verdict == Verdict::refuted);
  try {
    level_replace(d, b);
    FAIL("expected a budget error");
  } catch (const BudgetError& e) {
    CHECK(std::string(e.what()).find("triangle") != std::string::npos);
  }
}

TEST_CASE("strict reindexing along F(s) = 2s") {
  auto ar = FiniteCategory::arrow();
  StrictDiagram<FinAb> d(ar, 1);
  d.set_object(0, two_adic("X"));
  d.set_object(1, two_adic("Y"));
  const auto& x = d.object(0);
  d.set_arrow(only_arrow(ar, 0, 1),
              StrictArrow<FinAb>{[](const Index& s) { return Index{2 * s[0]}; },
                                 [x](const Index& s) {
                                   return FinAb::make(
                                       x.at({2 * s[0]}),
                                       FinAb::cyclic(std::int64_t{1} << (s[0] + 1)),
                                       IntMatrix(1, 1, {1}));
                                 }});
  const auto b = budget(5, 7);
  CHECK(d.verify(b).ok());
  const auto l = strict_reindex(d, b);
  CHECK(l.index == d.object(1).index());
  for (int s = 0; s <= 5; ++s) {
    CHECK(l.f(1, {s}) == Index{s});
    CHECK(l.f(0, {s}) == Index{2 * s});
    CHECK(l.object(0).at({s}) == FinAb::cyclic(std::int64_t{1} << (2 * s + 1)));
  }
  CHECK(verify_conditions(l, b).ok());
  CHECK(verify_isomorphic(l, b).ok());
}

TEST_CASE("strict reindexing with F = identity leaves the diagram unchanged") {
  auto ar = FiniteCategory::arrow();
  StrictDiagram<FinSet> d(ar, 1);
  d.set_object(0, collapse_tower("X"));
  d.set_object(1, collapse_tower("Y"));
  d.set_arrow(only_arrow(ar, 0, 1),
              StrictArrow<FinSet>{[](const Index& s) { return s; },
                                  [](const Index& s) {
                                    return FinSet::identity({s[0] + 1});
                                  }});
  const auto l = strict_reindex(d, budget(4, 6));
  for (int s = 0; s <= 4; ++s)
    for (int a : {0, 1}) CHECK(l.object(a).at({s}) == d.object(a).at({s}));
}

namespace {

/// Span 0 -> {1, 2}: X^0 over N x N with X^0_(i,j) = {0..i} x {0..j}.
StrictDiagram<FinSet> strict_span(const ShapePtr& span) {
  StrictDiagram<FinSet> d(span, 1);
  auto n2 = std::make_shared<NatProduct>(2);
  d.set_object(
      0, ProObject<FinSet>(
             n2, [](const Index& s) { return FinSetObj{(s[0] + 1) * (s[1] + 1)}; },
             [](const Index& t, const Index& s) {
               std::vector<int> img;
               for (int a = 0; a <= t[0]; ++a)
                 for (int c = 0; c <= t[1]; ++c)
                   img.push_back(std::min(a, s[0]) * (s[1] + 1) + std::min(c, s[1]));
               return FinSet::make(img, (s[0] + 1) * (s[1] + 1));
             },
             "X0"));
  d.set_object(1, collapse_tower("X1"));
  d.set_object(2, collapse_tower("X2"));
  d.set_arrow(only_arrow(span, 0, 1),
              StrictArrow<FinSet>{[](const Index& s) { return Index{s[0], 0}; },
                                  [](const Index& s) {
                                    return FinSet::identity({s[0] + 1});
                                  }});
  d.set_arrow(only_arrow(span, 0, 2),
              StrictArrow<FinSet>{[](const Index& s) { return Index{0, s[0]}; },
                                  [](const Index& s) {
                                    return FinSet::identity({s[0] + 1});
                                  }});
  return d;
}

}  // namespace

TEST_CASE("strict reindexing over a span uses the product of the bottoms") {
  const auto d = strict_span(FiniteCategory::span());
  const auto b = budget(4, 6);
  CHECK(d.verify(b).ok());
  const auto l = strict_reindex(d, b);
  for (const auto& s : l.indices(4)) {
    REQUIRE(s.size() == 2);
    CHECK(l.f(0, s) == s);
    CHECK(l.f(1, s) == Index{s[0]});
    CHECK(l.f(2, s) == Index{s[1]});
    CHECK(l.object(0).at(s).size == (s[0] + 1) * (s[1] + 1));
  }
  CHECK(verify_conditions(l, b).ok());

  // The same span with its arrows listed in the other order.
  const auto swapped = FiniteCategory::from_poset("span'", 3, {{2, 0}, {1, 0}});
  const auto l2 = strict_reindex(strict_span(swapped), b);
  for (const auto& s : l.indices(4))
    for (int a : {0, 1, 2}) CHECK(l2.object(a).at(s) == l.object(a).at(s));
}

TEST_CASE("strict reindexing needs least upper bounds") {
  auto span = FiniteCategory::span();
  StrictDiagram<FinSet> d(span, 1);
  // 0, 1 < 2, 3 < 4: directed, but 0 and 1 have two minimal upper bounds.
  auto lex = std::make_shared<FinitePoset>(
      5, std::vector<std::pair<int, int>>{
             {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}, {3, 4}});
  d.set_object(0, ProObject<FinSet>(
                      lex, [](const Index&) { return FinSetObj{1}; },
                      [](const Index&, const Index&) { return FinSet::identity({1}); },
                      "X0"));
  d.set_object(1, collapse_tower("X1"));
  d.set_object(2, collapse_tower("X2"));
  for (int b : {1, 2})
    d.set_arrow(only_arrow(span, 0, b),
                StrictArrow<FinSet>{[b](const Index&) { return Index{b - 1}; },
                                    [](const Index& s) {
                                      return FinSet::constant(1, s[0] + 1, 0);
                                    }});
  const auto l = strict_reindex(d, budget(2, 3));
  CHECK_THROWS_AS(l.object(0).at({0, 0}), PreconditionFailure);
}

TEST_CASE("end of Hom over a finite shape, in pro-C and levelwise") {
  auto ar = FiniteCategory::arrow();
  const auto phi = only_arrow(ar, 0, 1);
  const auto f = FinSet::make({0, 2}, 3);
  const auto g = FinSet::make({1, 1}, 2);
  DiagramOfPro<FinSet> x(ar, 1), y(ar, 1);
  x.set_object(0, ProObject<FinSet>::constant({2}));
  x.set_object(1, ProObject<FinSet>::constant({3}));
  x.set_arrow(phi, ProMap<FinSet>::constant(x.object(0), x.object(1), f));
  y.set_object(0, ProObject<FinSet>::constant({2}));
  y.set_object(1, ProObject<FinSet>::constant({2}));
  y.set_arrow(phi, ProMap<FinSet>::constant(y.object(0), y.object(1), g));

  // Oracle: pairs (u0, u1) with g u0 = u1 f, from the base Hom sets.
  std::size_t oracle = 0;
  for (const auto& u0 : FinSet::hom({2}, {2}))
    for (const auto& u1 : FinSet::hom({3}, {2}))
      oracle += FinSet::compose(g, u0) == FinSet::compose(u1, f);

  const auto b = budget(2, 3);
  const auto pro = end_hom_bounded(x, y, b);
  CHECK(pro.verdict == Verdict::certified);
  CHECK(pro.families.size() == oracle);

  const auto lx = assemble(level_replace(x, b));
  const auto ly = assemble(level_replace(y, b));
  CHECK(end_hom_bounded(lx, ly, b).families.size() == oracle);
}

TEST_CASE("long composites come from the generating arrows") {
  // 3 -> 2 -> 1 -> 0 over the chain; only the three steps are set.
  const auto shape = std::make_shared<ChainCategory>();
  DiagramOfPro<FinSet> d(shape, 3);
  for (int a = 0; a <= 3; ++a) d.set_object(a, collapse_tower("X" + std::to_string(a)));
  for (int a = 1; a <= 3; ++a)
    for (const auto& phi : shape->arrows_from(a))
      if (phi.target == a - 1) d.set_arrow(phi, ProMap<FinSet>::identity(d.object(a)));
  const auto b = budget(3, 5);
  CHECK(d.validate(b).ok());
  for (const auto& phi : shape->arrows_from(3))
    if (phi.target == 0)
      CHECK(promap_equal(d.arrow(phi), ProMap<FinSet>::identity(d.object(3)), b).ok());
  CHECK(verify_level_representation(level_replace(d, b), b).ok());
}
