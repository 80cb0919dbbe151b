#include <set>

#include "doctest.h"
#include "prolim/finab.hpp"
#include "prolim/finset.hpp"
#include "prolim/pro.hpp"

using namespace prolim;

namespace {

TruncationBudget budget(int d, int s = 6) {
  TruncationBudget b;
  b.depth = d;
  b.search_depth = s;
  return b;
}

std::int64_t pow2(int k) { return std::int64_t{1} << k; }

/// Z/2 <- Z/4 <- Z/8 <- ... by reduction.
ProObject<FinAb> two_adic(std::optional<int> window = std::nullopt) {
  return ProObject<FinAb>::tower(
      [](int n) { return FinAb::cyclic(pow2(n + 1)); },
      [](int n) {
        return FinAb::make(FinAb::cyclic(pow2(n + 2)), FinAb::cyclic(pow2(n + 1)),
                           IntMatrix(1, 1, {1}));
      },
      "Z/2^k", window);
}

/// Oracle: compatible tuples of a FinSet tower on levels 0..top, by brute
/// force over the product.
std::size_t oracle_compatible(const ProObject<FinSet>& y, int top) {
  std::vector<int> sizes;
  for (int n = 0; n <= top; ++n) sizes.push_back(y.at({n}).size);
  std::vector<int> t(sizes.size(), 0);
  std::size_t count = 0;
  for (;;) {
    bool ok = true;
    for (int n = 0; n < top && ok; ++n)
      ok = y.map({n + 1}, {n}).images[static_cast<std::size_t>(t[n + 1])] == t[n];
    if (ok && std::all_of(sizes.begin(), sizes.end(), [](int s) { return s > 0; }))
      ++count;
    std::size_t p = 0;
    while (p < t.size() && ++t[p] >= sizes[p]) t[p++] = 0;
    if (p == t.size()) break;
  }
  return count;
}

}  // namespace

TEST_CASE("constant pro-objects have one level") {
  const auto c3 = ProObject<FinSet>::constant({3});
  CHECK(c3.indices(5).size() == 1);
  CHECK(c3.at({0}).size == 3);
  CHECK(c3.map({0}, {0}) == FinSet::identity({3}));
}

TEST_CASE("tower structure maps compose") {
  const auto x = two_adic();
  CHECK(x.at({3}) == FinAb::cyclic(16));
  CHECK(x.map({3}, {0}) ==
        FinAb::compose(x.map({1}, {0}), FinAb::compose(x.map({2}, {1}), x.map({3}, {2}))));
  CHECK_THROWS_AS(x.map({0}, {1}), PreconditionFailure);
  const auto w = x.truncated(2);
  CHECK(w.indices(9).size() == 3);
  CHECK_THROWS_AS(w.at({3}), BudgetError);
}

TEST_CASE("Hom between constants matches the base Hom set") {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      const auto x = ProObject<FinSet>::constant({a});
      const auto y = ProObject<FinSet>::constant({b});
      for (int d : {0, 2}) {
        const auto h = hom_bounded(x, y, budget(d));
        CHECK(h.size() == FinSet::hom({a}, {b}).size());
      }
    }
  const auto x = ProObject<FinAb>::constant(FinAb::make_object({2, 2}));
  const auto y = ProObject<FinAb>::constant(FinAb::cyclic(4));
  CHECK(hom_bounded(x, y, budget(1)).size() ==
        FinAb::hom(FinAb::make_object({2, 2}), FinAb::cyclic(4)).size());
  const auto c2 = ProObject<FinSet>::constant({2});
  CHECK(hom_bounded(c2, c2, budget(3)).size() == 4);
}

TEST_CASE("Hom from the 2-adic tower into c(Z/2)") {
  const auto x = two_adic();
  const auto y = ProObject<FinAb>::constant(FinAb::cyclic(2));
  const auto h = hom_bounded(x, y, budget(3));
  CHECK(h.verdict == Verdict::certified);
  // Every class is represented at the bottom level: Hom(Z/2, Z/2) has two
  // maps, and precomposition with the surjections is injective.
  CHECK(h.size() == FinAb::hom(FinAb::cyclic(2), FinAb::cyclic(2)).size());
  CHECK(h.size() == 2);
  for (const auto& r : h.classes[0]) CHECK(r.index == Index{0});
}

TEST_CASE("Hom from a point into a tower counts compatible tuples") {
  // Sizes 2, 1, 2, 1, ...; the odd levels collapse everything.
  const auto y = ProObject<FinSet>::tower(
      [](int n) { return FinSetObj{n % 2 == 0 ? 2 : 1}; },
      [](int n) {
        return n % 2 == 0 ? FinSet::constant(1, 2, 1) : FinSet::constant(2, 1, 0);
      },
      "alternating");
  const auto x = ProObject<FinSet>::constant({1});
  const auto h = hom_bounded(x, y, budget(3));
  CHECK(h.size() == oracle_compatible(y, 3));
  CHECK(h.size() == 1);
  const auto f = h.promap(0, x, y, 3);
  CHECK(f.rep({0}).map == FinSet::make({1}, 2));
}

TEST_CASE("Hom stabilizes along a stabilized tower") {
  const auto x = ProObject<FinAb>::tower(
      [](int n) { return FinAb::cyclic(pow2(std::min(n, 2) + 1)); },
      [](int n) {
        return FinAb::make(FinAb::cyclic(pow2(std::min(n + 1, 2) + 1)),
                           FinAb::cyclic(pow2(std::min(n, 2) + 1)),
                           IntMatrix(1, 1, {1}));
      },
      "stable");
  const auto y = ProObject<FinAb>::constant(FinAb::cyclic(4));
  std::vector<std::size_t> sizes;
  for (int d = 2; d <= 4; ++d) sizes.push_back(hom_bounded(x, y, budget(d)).size());
  CHECK(sizes[0] == sizes[1]);
  CHECK(sizes[1] == sizes[2]);
  CHECK(sizes[0] == FinAb::hom(FinAb::cyclic(8), FinAb::cyclic(4)).size());
}

TEST_CASE("classify finds a pro-map's family") {
  const auto x = two_adic();
  const auto y = ProObject<FinAb>::constant(FinAb::cyclic(2));
  const auto b = budget(2);
  const auto h = hom_bounded(x, y, b);
  // The reduction Z/8 -> Z/2 at level 2 equals the identity class at level 0.
  const auto f = ProMap<FinAb>(
      x, y,
      [&](const Index&) {
        return Rep<FinAb>{{2}, FinAb::make(FinAb::cyclic(8), FinAb::cyclic(2),
                                           IntMatrix(1, 1, {1}))};
      },
      "reduce");
  const auto k = classify(h, f, b);
  REQUIRE(k);
  CHECK(h.classes[0][h.elements[*k][0]].map == FinAb::identity(FinAb::cyclic(2)));
}

TEST_CASE("pro-map equality: reflexive, associative, and refutes g = 0") {
  const auto x = two_adic();
  const auto b = budget(4);
  const auto id = ProMap<FinAb>::identity(x);
  const auto shift = ProMap<FinAb>(
      x, x, [x](const Index& s) { return Rep<FinAb>{{s[0] + 1}, x.map({s[0] + 1}, s)}; },
      "shift");
  const auto dbl = ProMap<FinAb>::levelwise_map(
      x, x,
      [x](const Index& s) { return FinAb::make(x.at(s), x.at(s), IntMatrix(1, 1, {2})); },
      "2");
  CHECK(promap_equal(shift, shift, b).verdict == Verdict::certified);
  CHECK(promap_equal(shift, id, b).verdict == Verdict::certified);
  CHECK(promap_equal(compose(compose(dbl, shift), dbl),
                     compose(dbl, compose(shift, dbl)), b)
            .verdict == Verdict::certified);
  const auto z = zero_map(x, x);
  CHECK(promap_equal(id, z, b).verdict == Verdict::refuted);
  CHECK(promap_equal(dbl, z, b).verdict == Verdict::refuted);
}

TEST_CASE("pro-map equality across representatives at different levels") {
  const auto x = two_adic(1);
  const auto y = ProObject<FinAb>::constant(FinAb::cyclic(2));
  const auto f = ProMap<FinAb>(
      x, y,
      [](const Index&) {
        return Rep<FinAb>{{1}, FinAb::make(FinAb::cyclic(4), FinAb::cyclic(2),
                                           IntMatrix(1, 1, {1}))};
      },
      "f");
  const auto g = ProMap<FinAb>(
      x, y,
      [](const Index&) {
        return Rep<FinAb>{{0}, FinAb::identity(FinAb::cyclic(2))};
      },
      "g");
  CHECK(promap_equal(f, g, budget(2)).verdict == Verdict::certified);
  CHECK(promap_equal(f, zero_map(x, y), budget(2)).verdict == Verdict::refuted);
}

TEST_CASE("lim_C of a constant and of a finite truncation") {
  const auto c = ProObject<FinAb>::constant(FinAb::cyclic(6));
  const auto lc = lim_C(c, budget(3));
  CHECK(FinAb::order(lc.limit.apex) == 6);
  CHECK(lc.stabilized);

  const auto x = two_adic(2);
  const auto l = lim_C(x, budget(3));
  // Oracle: compatible tuples in Z/2 x Z/4 x Z/8.
  std::size_t oracle = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 4; ++b)
      for (int e = 0; e < 8; ++e) oracle += (b % 2 == a) && (e % 4 == b);
  CHECK(static_cast<std::size_t>(FinAb::order(l.limit.apex)) == oracle);
  CHECK(oracle == 8);
  CHECK(l.stabilized);

  CHECK_FALSE(lim_C(two_adic(), budget(2)).stabilized);
  CHECK_THROWS_AS(lim_C(two_adic(), budget(2), true), BudgetError);
}

TEST_CASE("essential type C from supplied level data") {
  const auto x = two_adic();
  const auto b = budget(3);
  const auto id = ProMap<FinAb>::identity(x);
  const MapLevelData<FinAb> data{id, id, id, id, id};
  const auto c = is_essentially_type_C<FinAb>(
      id, data, [](const FinAbMap& m) { return FinAb::is_iso(m); }, "iso", b);
  CHECK(c.ok());

  const auto dbl = ProMap<FinAb>::levelwise_map(
      x, x,
      [x](const Index& s) { return FinAb::make(x.at(s), x.at(s), IntMatrix(1, 1, {2})); },
      "2");
  const MapLevelData<FinAb> d2{dbl, id, id, id, id};
  CHECK_THROWS_AS(is_essentially_type_C<FinAb>(
                      dbl, d2, [](const FinAbMap& m) { return FinAb::is_mono(m); },
                      "mono", b),
                  VerificationFailure);

  const ObjectLevelData<FinAb> od{x, id, id};
  CHECK(is_essentially_type_C<FinAb>(
            x, od, [](const FinAbObj& o) { return FinAb::order(o) > 1; },
            "nonzero", b)
            .ok());
}
