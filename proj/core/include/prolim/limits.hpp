#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "prolim/cofinal.hpp"
#include "prolim/levelrep.hpp"

namespace prolim {

/// A cone over a diagram of pro-objects: an apex with one leg per object.
template <BaseCategory C>
struct ProCone {
  ProObject<C> apex;
  std::map<int, ProMap<C>> legs;
  std::string label = "cone";
};

/// A limit of a diagram of pro-objects together with its universal
/// property: `factor` sends a cone to the induced map into the apex.
template <BaseCategory C>
struct LimitCone {
  DiagramOfPro<C> diagram;
  LevelRepresentation<C> representation;
  ProObject<C> apex;
  std::map<int, ProMap<C>> legs;
  std::function<ProMap<C>(const ProCone<C>&)> factor;
  std::string method;
};

/// X^φ λ_a = λ_b for every arrow of the window.
template <BaseCategory C>
Certificate is_cone(const DiagramOfPro<C>& d, const ProCone<C>& cone,
                    const TruncationBudget& budget) {
  Certificate c{cone.label + " is a cone", Verdict::certified, budget.depth, {}, ""};
  for (int a : d.objects()) {
    if (!cone.legs.count(a)) {
      c.verdict = Verdict::refuted;
      c.detail = "no leg at " + d.shape()->object_name(a);
      return c;
    }
    for (const auto& phi : d.arrows_from(a)) {
      auto e = promap_equal(compose(d.arrow(phi), cone.legs.at(a)),
                            cone.legs.at(phi.target), budget,
                            "leg square at " + arrow_str(phi), true);
      c.verdict = worst(c.verdict, e.verdict);
      if (e.verdict == Verdict::refuted) {
        c.detail = e.check;
        return c;
      }
    }
  }
  return c;
}

namespace detail {

/// Levelwise limits lim_a X̃^a_s, memoized per s.
template <BaseCategory C>
  requires HasFiniteLimits<C>
class LevelLimits {
 public:
  explicit LevelLimits(LevelRepresentation<C> rep) : rep_(std::move(rep)) {
    objs_ = rep_.diagram.objects();
    for (int a : objs_)
      for (const auto& phi : rep_.diagram.arrows_from(a)) arrows_.push_back(phi);
  }

  const LevelRepresentation<C>& rep() const { return rep_; }
  const std::vector<int>& objects() const { return objs_; }
  std::size_t slot(int a) const {
    return static_cast<std::size_t>(std::find(objs_.begin(), objs_.end(), a) -
                                    objs_.begin());
  }

  const typename C::Limit& at(const Index& s) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(s); it != cache_.end()) return it->second;
    }
    FiniteDiagram<C> d;
    for (int a : objs_) d.add_object(rep_.object(a).at(s));
    for (const auto& phi : arrows_)
      d.add_arrow(slot(phi.source), slot(phi.target), rep_.component(phi, s));
    auto l = C::limit(d);
    std::lock_guard lock(mutex_);
    return cache_.emplace(s, std::move(l)).first->second;
  }

  const std::vector<ShapeArrow>& arrows() const { return arrows_; }

 private:
  LevelRepresentation<C> rep_;
  std::vector<int> objs_;
  std::vector<ShapeArrow> arrows_;
  std::mutex mutex_;
  std::map<Index, typename C::Limit> cache_;
};

}  // namespace detail

/// Limit of a diagram of pro-objects over a finite loopless shape: level
/// replacement, then the limit in C at each level.
template <BaseCategory C>
  requires HasFiniteLimits<C>
LimitCone<C> finite_limit_pro(const DiagramOfPro<C>& d,
                              const TruncationBudget& budget) {
  if (!d.shape()->finite_size())
    throw PreconditionFailure("finite_limit_pro: shape " + d.shape()->name() +
                              " is not finite");
  auto levels = std::make_shared<detail::LevelLimits<C>>(level_replace(d, budget));
  const auto& rep = levels->rep();

  LimitCone<C> out;
  out.diagram = d;
  out.representation = rep;
  out.method = "levelwise limit";
  out.apex = ProObject<C>(
      rep.index, [levels](const Index& s) { return levels->at(s).apex; },
      [levels](const Index& t, const Index& s) {
        const auto& lt = levels->at(t);
        std::vector<typename C::Map> legs;
        for (int a : levels->objects())
          legs.push_back(C::compose(levels->rep().object(a).map(t, s),
                                    lt.legs[levels->slot(a)]));
        return C::limit_factor(levels->at(s), lt.apex, legs);
      },
      "lim", rep.window);

  for (int a : levels->objects()) {
    auto leg = ProMap<C>::levelwise_map(
        out.apex, rep.object(a),
        [levels, a](const Index& s) { return levels->at(s).legs[levels->slot(a)]; },
        "pi" + std::to_string(a));
    out.legs[a] = compose(rep.from_tilde(a), leg);
  }

  const int search = budget.search_depth;
  const auto apex = out.apex;
  out.factor = [levels, apex, search](const ProCone<C>& cone) {
    const auto& r = levels->rep();
    std::map<int, ProMap<C>> into;
    for (int a : levels->objects()) into[a] = compose(r.to_tilde(a), cone.legs.at(a));
    const auto w = cone.apex;
    return ProMap<C>(
        w, apex,
        [levels, into, w, search](const Index& s) {
          const auto& objs = levels->objects();
          std::vector<Rep<C>> reps;
          Index top;
          for (int a : objs) {
            reps.push_back(into.at(a).rep(s));
            top = top.empty() ? reps.back().index
                              : w.index()->upper_bound(top, reps.back().index, search);
          }
          const int cap = w.index()->grade(top) + search;
          for (const auto& u : w.indices(cap)) {
            if (!w.index()->leq(top, u)) continue;
            std::vector<typename C::Map> m;
            for (const auto& r : reps) m.push_back(C::compose(r.map, w.map(u, r.index)));
            bool cone_ok = true;
            for (const auto& phi : levels->arrows())
              cone_ok = cone_ok &&
                        C::compose(levels->rep().component(phi, s),
                                   m[levels->slot(phi.source)]) == m[levels->slot(phi.target)];
            if (cone_ok) return Rep<C>{u, C::limit_factor(levels->at(s), w.at(u), m)};
          }
          throw BudgetError("cone legs do not agree at level " + index_str(s) +
                            " within grade " + std::to_string(cap));
        },
        "factor(" + cone.label + ")");
  };
  return out;
}

/// A diagram of pro-objects over a directed set B (read cofilteringly):
/// X^b for b in B and X^{b'} -> X^b for b <= b'.
template <BaseCategory C>
struct CofilteredDiagram {
  DirectedSetPtr shape;
  std::function<ProObject<C>(const Index&)> object;
  std::function<ProMap<C>(const Index&, const Index&)> arrow;
  std::string label = "D";
};

/// The limit of a cofiltered diagram: the pipeline's intermediate pieces
/// and the limit cone, whose apex is indexed by I x A.
template <BaseCategory C>
struct CofilteredLimit {
  Reindexing reindexing;
  std::shared_ptr<const PosetCategory> shape;
  std::shared_ptr<const ProductSet> index;
  LimitCone<C> limit;

  /// Shape object for an element of the reindexed set A.
  int object_of(const Index& a) const { return shape->object_of(a); }
};

/// Restricts a cofiltered diagram along a reindexing to a diagram over the
/// poset category of the (cofinite) reindexed set, up to grade `depth`.
template <BaseCategory C>
DiagramOfPro<C> restrict_diagram(const CofilteredDiagram<C>& d,
                                 const Reindexing& r,
                                 const std::shared_ptr<const PosetCategory>& shape,
                                 int depth) {
  DiagramOfPro<C> out(shape, depth);
  std::map<Index, ProObject<C>> cache;
  auto obj = [&](const Index& b) -> const ProObject<C>& {
    auto it = cache.find(b);
    if (it == cache.end()) it = cache.emplace(b, d.object(b)).first;
    return it->second;
  };
  for (int a : shape->objects(depth)) out.set_object(a, obj(r.functor.map(shape->element(a))));
  for (int a : shape->objects(depth))
    for (const auto& phi : out.arrows_from(a)) {
      const Index from = r.functor.map(shape->element(a));
      const Index to = r.functor.map(shape->element(phi.target));
      if (from == to) {
        const auto x = out.object(a);
        out.set_arrow(phi, ProMap<C>(
                               x, out.object(phi.target),
                               [x](const Index& s) {
                                 return Rep<C>{s, C::identity(x.at(s))};
                               },
                               "id", true));
      } else {
        out.set_arrow(phi, d.arrow(from, to));
      }
    }
  return out;
}

/// Limit of a cofiltered diagram: reindex B by a cofinite directed A,
/// level-replace the restricted diagram over N, and read X̃: A x N -> C as
/// one pro-object indexed by N x A, with Z_(s,a) = X̃^a_s and structure
/// maps X̃^φ_t X̃^a(s -> t).
template <BaseCategory C>
CofilteredLimit<C> cofiltered_limit(const CofilteredDiagram<C>& d,
                                    const TruncationBudget& budget,
                                    ReindexMode mode = ReindexMode::automatic) {
  budget.validate();
  CofilteredLimit<C> out;
  out.reindexing = cofinal_reindex(d.shape, budget, mode);
  auto shape = std::make_shared<const PosetCategory>(out.reindexing.index);
  out.shape = shape;
  const int n = budget.search_depth;
  const auto diagram = restrict_diagram(d, out.reindexing, shape, n);
  const auto rep = level_replace(diagram, budget);
  auto index = std::make_shared<const ProductSet>(rep.index, out.reindexing.index);
  out.index = index;

  auto& l = out.limit;
  l.diagram = diagram;
  l.representation = rep;
  l.method = "cofiltered limit over I x A";
  auto arrow_to = [shape](int a, int b) {
    return a == b ? CofiniteCategory::identity(a) : ShapeArrow{a, b, 0};
  };
  l.apex = ProObject<C>(
      index,
      [rep, index, shape](const Index& z) {
        return rep.object(shape->object_of(index->second_part(z))).at(index->first_part(z));
      },
      [rep, index, shape, arrow_to](const Index& from, const Index& to) {
        const Index s = index->first_part(from), t = index->first_part(to);
        const int a = shape->object_of(index->second_part(from));
        const int b = shape->object_of(index->second_part(to));
        return C::compose(rep.component(arrow_to(a, b), t), rep.object(a).map(s, t));
      },
      d.label + "-lim", n);

  const auto apex = l.apex;
  for (int a : diagram.objects()) {
    const auto& x = diagram.object(a);
    const Index ea = shape->element(a);
    const int ga = shape->grade(a);
    const auto f = rep.f;
    const auto ri = rep.index;
    l.legs[a] = ProMap<C>(
        apex, x,
        [x, ea, ga, f, ri, index, n, a](const Index& target) {
          for (const auto& s : ri->elements(n - ga)) {
            const Index fs = f(a, s);
            if (x.index()->leq(target, fs))
              return Rep<C>{index->pair(s, ea), x.map(fs, target)};
          }
          throw BudgetError("leg at " + index_str(ea) + ": no level above " +
                            index_str(target) + " inside the window");
        },
        "pi" + index_str(ea));
  }

  l.factor = [rep, index, shape, apex](const ProCone<C>& cone) {
    auto legs = std::make_shared<const std::map<int, ProMap<C>>>(cone.legs);
    return ProMap<C>(
        cone.apex, apex,
        [legs, rep, index, shape](const Index& z) {
          const int a = shape->object_of(index->second_part(z));
          return legs->at(a).rep(rep.f(a, index->first_part(z)));
        },
        "factor(" + cone.label + ")");
  };
  return out;
}

/// An object (s, a) of the pair category: s an index of X^a.
struct PairObject {
  Index s;
  int a = 0;
  friend bool operator==(const PairObject&, const PairObject&) = default;
  friend auto operator<=>(const PairObject&, const PairObject&) = default;
};

/// The index category of the alternative limit construction: objects are
/// pairs (s, a), and maps (s, a) -> (t, b) are base maps X^a_s -> X^b_t
/// that represent X^φ at t for an arrow φ: a -> b (identity when a = b).
/// The pro-object sends (s, a) to X^a_s and a map to itself.
template <BaseCategory C>
class PairCategory {
 public:
  PairCategory(DiagramOfPro<C> d, TruncationBudget budget)
      : d_(std::move(d)), budget_(budget) {}

  const DiagramOfPro<C>& diagram() const { return d_; }

  /// Pairs with s of grade <= depth.
  std::vector<PairObject> objects(int depth) const {
    std::vector<PairObject> out;
    for (int a : d_.objects())
      for (const auto& s : d_.object(a).indices(depth)) out.push_back({s, a});
    return out;
  }
  typename C::Object at(const PairObject& p) const { return d_.object(p.a).at(p.s); }

  /// The arrow a -> b of the shape, if there is one.
  std::optional<ShapeArrow> shape_arrow(int a, int b) const {
    if (a == b) return CofiniteCategory::identity(a);
    const auto as = d_.shape()->arrows(a, b);
    if (as.empty()) return std::nullopt;
    return as.front();
  }

  /// Whether m: X^a_s -> X^b_t is a map of the category; the refinement
  /// index that proves it, if found within the search depth.
  std::optional<Index> is_morphism(const PairObject& from, const PairObject& to,
                                   const typename C::Map& m) const {
    const auto phi = shape_arrow(from.a, to.a);
    if (!phi) return std::nullopt;
    const auto& x = d_.object(from.a);
    const Rep<C> target =
        phi->is_identity() ? Rep<C>{to.s, C::identity(x.at(to.s))} : d_.arrow(*phi).rep(to.s);
    NodeCounter nodes(budget_.node_cap);
    return common_refinement(x, Rep<C>{from.s, m}, target, budget_.search_depth, nodes);
  }

  std::vector<typename C::Map> morphisms(const PairObject& from,
                                         const PairObject& to) const {
    if constexpr (!EnumerableCategory<C>) {
      throw UnsupportedCapability(C::name() + " does not enumerate Hom sets");
    } else {
      std::vector<typename C::Map> out;
      if (!shape_arrow(from.a, to.a)) return out;
      for (auto& m : C::hom(at(from), at(to)))
        if (is_morphism(from, to, m)) out.push_back(std::move(m));
      return out;
    }
  }

  /// First pair of objects (in enumeration order, grade <= depth) with two
  /// distinct maps between them.
  std::optional<std::pair<PairObject, PairObject>> parallel_pair(int depth) const {
    const auto objs = objects(depth);
    for (const auto& p : objs)
      for (const auto& q : objs)
        if (morphisms(p, q).size() >= 2) return std::make_pair(p, q);
    return std::nullopt;
  }

 private:
  DiagramOfPro<C> d_;
  TruncationBudget budget_;
};

template <BaseCategory C>
struct AltLimit {
  std::shared_ptr<const PairCategory<C>> index;
  /// Comparison with the product construction Z over I x A.
  Certificate comparison;
  std::optional<std::pair<PairObject, PairObject>> parallel;
};

/// The alternative limit construction over the pair category, compared with
/// cofiltered_limit: Z -> Z_alt has representatives X^a(f^a(s) -> x) and
/// Z_alt -> Z has identity representatives at (f^a(s), a). The certificate
/// checks that Z's structure maps are maps of the pair category, that the
/// composite on Z is the identity, and that the composite on Z_alt is a
/// structure map out of (f^a(s), a), hence the identity class.
template <BaseCategory C>
AltLimit<C> cofiltered_limit_alt(const CofilteredDiagram<C>& d,
                                 const TruncationBudget& budget,
                                 ReindexMode mode = ReindexMode::automatic) {
  if constexpr (!EnumerableCategory<C>) {
    throw UnsupportedCapability(
        C::name() + ": maps of the pair category need class membership tests "
                    "over enumerable Hom sets");
  } else {
    const auto z = cofiltered_limit(d, budget, mode);
    const auto& l = z.limit;
    const auto& rep = l.representation;
    AltLimit<C> out;
    auto pc = std::make_shared<const PairCategory<C>>(l.diagram, budget);
    out.index = pc;
    Certificate& c = out.comparison;
    c = {"pair-category limit ~ product limit", Verdict::certified, budget.depth, {}, ""};
    auto refute = [&](std::string what) {
      c.verdict = Verdict::refuted;
      c.detail = std::move(what);
    };

    const auto zi = l.apex.indices(budget.depth);
    for (const auto& from : zi) {
      const int a = z.object_of(z.index->second_part(from));
      const PairObject pf{rep.f(a, z.index->first_part(from)), a};
      for (const auto& to : zi) {
        if (from == to || !z.index->leq(to, from)) continue;
        const int b = z.object_of(z.index->second_part(to));
        const PairObject pt{rep.f(b, z.index->first_part(to)), b};
        if (!pc->is_morphism(pf, pt, l.apex.map(from, to))) {
          refute("structure map " + index_str(from) + " -> " + index_str(to) +
                 " is not a pair-category map");
          return out;
        }
      }
    }
    c.witnesses.push_back(std::to_string(zi.size()) +
                          " structure maps of Z are pair-category maps");
    c.witnesses.push_back("Z -> Z_alt -> Z has identity representatives");

    // Pairs are graded like Z: grade(s) + grade(a) <= depth.
    for (const auto& p : pc->objects(budget.depth)) {
      if (l.diagram.object(p.a).index()->grade(p.s) + z.shape->grade(p.a) > budget.depth) continue;
      const auto leg = l.legs.at(p.a).rep(p.s);
      const int a = p.a;
      const Index s = z.index->first_part(leg.index);
      const PairObject witness{rep.f(a, s), a};
      if (!pc->is_morphism(witness, p, leg.map)) {
        refute("Z_alt -> Z -> Z_alt at (" + index_str(p.s) + ", " +
               std::to_string(a) + ") is not the identity class");
        return out;
      }
    }
    c.witnesses.push_back("Z_alt -> Z -> Z_alt is a structure map at each pair");
    out.parallel = pc->parallel_pair(std::min(budget.depth, 2));
    return out;
  }
}

/// Per cone: refuted unless it is a cone; then existence of the induced
/// map (leg equations up to pro-map equality) and uniqueness among all
/// maps W -> Z in the bounded Hom set (exactly one family satisfies the leg
/// equations on the window, and it is the induced map's family). A window
/// too small to separate families gives undetermined, never refuted.
template <BaseCategory C>
std::vector<Certificate> verify_universal_limit(const LimitCone<C>& l,
                                                const std::vector<ProCone<C>>& cones,
                                                const TruncationBudget& budget) {
  std::vector<Certificate> out;
  for (const auto& cone : cones) {
    Certificate c{"universal property for " + cone.label, Verdict::certified,
                  budget.depth, {}, ""};
    const auto cc = is_cone(l.diagram, cone, budget);
    if (!cc.ok()) {
      c.verdict = cc.verdict == Verdict::refuted ? Verdict::refuted : cc.verdict;
      c.detail = "rejected as a cone: " + cc.detail;
      out.push_back(std::move(c));
      continue;
    }
    const auto u = l.factor(cone);
    // Legs may reach level t of the apex only from deeper levels of X^a, so
    // the equations are checked out to the search depth; levels where a
    // bounded family is undefined are skipped.
    TruncationBudget wide = budget;
    wide.depth = budget.search_depth;
    auto satisfies = [&](const ProMap<C>& v) {
      Verdict worst_v = Verdict::certified;
      for (const auto& [a, leg] : l.legs) {
        const auto e = promap_equal(compose(leg, v), cone.legs.at(a), wide,
                                    "leg " + std::to_string(a), true);
        if (e.detail == kNothingCompared) continue;
        worst_v = worst(worst_v, e.verdict);
        if (worst_v == Verdict::refuted) break;
      }
      return worst_v;
    };
    const Verdict exists = satisfies(u);
    c.verdict = exists;
    c.witnesses.push_back("existence: " + std::string(to_string(exists)));
    if (exists != Verdict::certified) {
      c.detail = "induced map fails the leg equations";
      out.push_back(std::move(c));
      continue;
    }
    if constexpr (EnumerableCategory<C>) {
      // The bounded Hom set only sees source levels of grade <= depth, so
      // uniqueness is decided on the apex levels whose induced
      // representatives live there.
      int top = -1;
      for (int g = 0; g <= budget.depth; ++g) {
        bool inside = true;
        for (const auto& s : l.apex.indices(g)) {
          if (l.apex.index()->grade(s) != g) continue;
          try {
            inside = inside && cone.apex.index()->grade(u.rep(s).index) <= budget.depth;
          } catch (const BudgetError&) {
            inside = false;
          }
        }
        if (!inside) break;
        top = g;
      }
      if (top < 0) {
        c.verdict = Verdict::undetermined;
        c.detail = "induced map needs source levels beyond the window";
        out.push_back(std::move(c));
        continue;
      }
      const auto z = l.apex.truncated(top);
      const auto h = hom_bounded(cone.apex, z, budget);
      std::size_t matches = 0;
      std::optional<std::size_t> match;
      for (std::size_t k = 0; k < h.size(); ++k) {
        const auto v = h.promap(k, cone.apex, z, top);
        if (satisfies(v) == Verdict::certified) {
          ++matches;
          match = k;
        }
      }
      const auto cls = classify(h, u, budget);
      c.witnesses.push_back("uniqueness on apex grades <= " + std::to_string(top) + ": " +
                            std::to_string(matches) + " of " + std::to_string(h.size()) +
                            " maps satisfy the leg equations");
      if (matches != 1 || !cls || *cls != *match) {
        c.verdict = Verdict::undetermined;
        c.detail = "factorization is not unique in the window";
      } else if (h.verdict != Verdict::certified) {
        c.verdict = h.verdict;
      }
    } else {
      c.verdict = worst(c.verdict, Verdict::undetermined);
      c.witnesses.push_back("uniqueness: Hom sets not enumerable");
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace prolim
