#include <algorithm>
#include <numeric>

#include "prolim/theorems.hpp"

namespace prolim {

namespace {

using Pro = ProObject<FreeAb>;
using PMap = ProMap<FreeAb>;

void fold(Certificate& into, const Certificate& c) { detail::fold<FreeAb>(into, c); }

}  // namespace

InexactnessWitness build_inexactness_witness(int depth) {
  if (depth < 0) throw PreconditionFailure("inexactness witness: depth must be >= 0");
  InexactnessWitness w;
  w.depth = depth;
  w.horizon = depth + 2;
  const int h = w.horizon;
  w.budget = TruncationBudget::at(depth, h);
  const auto& budget = w.budget;

  w.x = Pro::tower([](int m) { return FreeAb::interval(0, m); },
                   [](int m) {
                     return FreeAb::label_map(FreeAb::interval(0, m + 1), FreeAb::interval(0, m));
                   },
                   "X");
  w.y = Pro::tower([h](int n) { return FreeAb::interval(n, h); },
                   [h](int n) {
                     return FreeAb::label_map(FreeAb::interval(n + 1, h), FreeAb::interval(n, h));
                   },
                   "Y");
  const FreeAbObj a = FreeAb::interval(0, h);
  w.ca = Pro::constant(a, "cA");
  const auto x = w.x;
  const auto y = w.y;
  const auto ca = w.ca;

  // cA[0, n] and f_n, stable past the horizon like A itself.
  auto trunc = [h](int n) { return FreeAb::interval(0, std::min(n, h)); };
  auto cache = std::make_shared<std::map<int, Pro>>();
  w.ca_n = [trunc, cache](int n) {
    auto it = cache->find(n);
    if (it == cache->end())
      it = cache->emplace(n, Pro::constant(trunc(n), "cA[0," + std::to_string(n) + "]")).first;
    return it->second;
  };
  const auto ca_n = w.ca_n;
  w.f_n = [ca_n, x](int n) {
    const auto src = ca_n(n);
    return PMap::from_constant(
        src, x, [src, x](const Index& m) { return FreeAb::label_map(src.at({0}), x.at(m)); },
        "f" + std::to_string(n));
  };
  w.f = PMap::from_constant(ca, x,
                            [a, x](const Index& m) { return FreeAb::label_map(a, x.at(m)); }, "f");
  w.g = PMap(y, ca, [a, y](const Index&) { return Rep<FreeAb>{{0}, FreeAb::label_map(y.at({0}), a)}; },
             "g");

  // f_n is mono through the level representation
  //   A[0,n] = A[0,n] = ...  over  A[0,n] <- A[0,n+1] <- ...
  // with inclusions as vertical maps.
  w.f_n_mono = {"f_n level-mono", Verdict::certified, depth, {}, ""};
  for (int n = 0; n <= depth; ++n) {
    const auto fn = w.f_n(n);
    const auto src = ca_n(n);
    const auto an = src.at({0});
    const auto levels = Pro::tower([an](int) { return an; },
                                   [an](int) { return FreeAb::identity(an); },
                                   "A[0," + std::to_string(n) + "]");
    const auto shifted = Pro::tower(
        [n](int m) { return FreeAb::interval(0, n + m); },
        [n](int m) {
          return FreeAb::label_map(FreeAb::interval(0, n + m + 1), FreeAb::interval(0, n + m));
        },
        "X[" + std::to_string(n) + "+]");
    MapLevelData<FreeAb> data{
        PMap::levelwise_map(levels, shifted,
                            [an, shifted](const Index& m) {
                              return FreeAb::label_map(an, shifted.at(m));
                            },
                            "incl"),
        PMap(levels, src, [an](const Index&) { return Rep<FreeAb>{{0}, FreeAb::identity(an)}; },
             "to"),
        PMap::from_constant(src, levels, [an](const Index&) { return FreeAb::identity(an); },
                            "from"),
        PMap(shifted, x,
             [n, x, shifted](const Index& m) {
               const int k = std::max(0, m.at(0) - n);
               return Rep<FreeAb>{{k}, FreeAb::label_map(shifted.at({k}), x.at(m))};
             },
             "to"),
        PMap(x, shifted,
             [n, x, shifted](const Index& m) {
               return Rep<FreeAb>{{n + m.at(0)}, FreeAb::identity(shifted.at(m))};
             },
             "from")};
    try {
      const auto c = is_essentially_type_C<FreeAb>(
          fn, data, [](const FreeAbMap& m) { return FreeAb::is_mono(m); }, "mono", budget);
      w.f_n_mono.witnesses.push_back("f" + std::to_string(n) + ": " +
                                     std::to_string(c.witnesses.size()) +
                                     " injective vertical maps, level squares certified");
    } catch (const VerificationFailure& e) {
      w.f_n_mono.verdict = Verdict::refuted;
      w.f_n_mono.detail = "f" + std::to_string(n) + ": " + e.what();
    }
  }

  // The ladder cA[0,n] -> cA[0,n+1] over X = X, and f restricting to f_n.
  w.ladder = {"ladder commutes", Verdict::certified, depth, {}, ""};
  auto inclusion = [ca_n](int n, const Pro& target) {
    return PMap::constant(ca_n(n), target, FreeAb::label_map(ca_n(n).at({0}), target.at({0})));
  };
  for (int n = 0; n <= depth; ++n) {
    if (n < depth)
      fold(w.ladder, promap_equal(compose(w.f_n(n + 1), inclusion(n, ca_n(n + 1))), w.f_n(n),
                                  budget, "f" + std::to_string(n + 1) + " i = f" + std::to_string(n)));
    fold(w.ladder, promap_equal(compose(w.f, inclusion(n, ca)), w.f_n(n), budget,
                                "f i = f" + std::to_string(n)));
  }

  // fg = 0, agreeing first at n = m + 1 over each target level m.
  const auto fg = compose(w.f, w.g);
  const auto zero = zero_map(y, x);
  w.fg_zero = promap_equal(fg, zero, budget, "fg = 0");
  {
    NodeCounter nodes(budget.node_cap);
    for (int m = 0; m <= depth; ++m) {
      const auto u = common_refinement(y, fg.rep({m}), zero.rep({m}), budget.search_depth, nodes);
      const bool zero_at = FreeAb::is_zero(FreeAb::label_map(y.at({m + 1}), x.at({m})));
      const bool nonzero_before = !FreeAb::is_zero(FreeAb::label_map(y.at({m}), x.at({m})));
      if (!u || *u != Index{m + 1} || !zero_at || !nonzero_before) {
        w.fg_zero.verdict = Verdict::refuted;
        w.fg_zero.detail = "witness at level " + std::to_string(m) + " is not n = m + 1";
        break;
      }
    }
    if (w.fg_zero.ok())
      w.fg_zero.witnesses.push_back("A[m+1,H] -> A -> A[0,m] is zero and A[m,H] -> A[0,m] is not, "
                                    "for m <= " + std::to_string(depth));
  }

  // g != 0: distinct from 0 at every refinement, nonzero at every level.
  const auto distinct = promap_equal(w.g, zero_map(y, ca), budget, "g = 0");
  w.g_nonzero = {"g != 0", Verdict::certified, depth, distinct.witnesses, ""};
  if (distinct.verdict != Verdict::refuted) {
    w.g_nonzero.verdict = distinct.verdict == Verdict::certified ? Verdict::refuted
                                                                 : distinct.verdict;
    w.g_nonzero.detail = "g = 0 is " + std::string(to_string(distinct.verdict));
  }
  for (int n = 0; n <= budget.search_depth; ++n) {
    const auto gn = FreeAb::label_map(y.at({n}), a);
    if (FreeAb::is_zero(gn)) {
      w.g_nonzero.verdict = Verdict::refuted;
      w.g_nonzero.detail = "A[" + std::to_string(n) + ",H] -> A is zero";
    }
  }
  if (w.g_nonzero.ok())
    w.g_nonzero.witnesses.push_back("A[n,H] -> A nonzero for n <= " +
                                    std::to_string(budget.search_depth));

  // colim_n cA[0,n] = cA through the sequential diagram.
  const auto rows = build_sequential_shape<FreeAb>(
      [ca_n](int n) { return ca_n(n); },
      [ca_n](int n) {
        return PMap::constant(ca_n(n), ca_n(n + 1),
                              FreeAb::label_map(ca_n(n).at({0}), ca_n(n + 1).at({0})));
      },
      h + 1);
  w.first_row = std::make_shared<ColimitCocone<FreeAb>>(cofinite_colimit(rows, budget));
  const auto& z = *w.first_row;
  w.colimit_is_ca = {"colim cA[0,n] ~ cA", Verdict::certified, depth, {}, ""};
  ProCocone<FreeAb> into_a{ca, {}, "inclusions"};
  ProCocone<FreeAb> into_x{x, {}, "f_n"};
  for (int obj : rows.objects()) {
    const int n = obj / 2;
    into_a.legs[obj] = inclusion(n, ca);
    into_x.legs[obj] = PMap(rows.object(obj), x,
                            [fn = w.f_n(n)](const Index& s) { return fn.rep(s); }, "f" + std::to_string(n));
  }
  const auto u = z.factor(into_a);
  {
    const auto r = u.rep({0});
    const auto level = z.apex.at(r.index);
    std::vector<int> labels(static_cast<std::size_t>(h + 1));
    std::iota(labels.begin(), labels.end(), 0);
    if (level.labels != labels || !FreeAb::is_iso(r.map)) {
      w.colimit_is_ca.verdict = Verdict::refuted;
      w.colimit_is_ca.detail = "level " + index_str(r.index) + " is " + FreeAb::describe(level);
    } else {
      w.colimit_is_ca.witnesses.push_back(index_str(r.index) + ": rank " +
                                          std::to_string(level.rank()) +
                                          " on a_0..a_H, comparison invertible");
    }
  }
  fold(w.colimit_is_ca, z.stabilization);
  fold(w.colimit_is_ca, promap_equal(compose(w.f, u), z.factor(into_x), budget,
                                     "f = colim f_n"));
  return w;
}

}  // namespace prolim
