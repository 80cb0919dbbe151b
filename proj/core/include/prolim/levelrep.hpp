#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "prolim/cofinal.hpp"
#include "prolim/pro.hpp"
#include "prolim/shape.hpp"

namespace prolim {

/// A diagram A -> pro-C over the objects of a cofinite category up to
/// `shape_depth`. Arrows are stored per shape arrow; composites that were
/// not supplied are derived from a factorization through supplied arrows.
template <BaseCategory C>
class DiagramOfPro {
 public:
  DiagramOfPro() = default;
  DiagramOfPro(ShapePtr shape, int shape_depth)
      : shape_(std::move(shape)), shape_depth_(shape_depth) {}

  const ShapePtr& shape() const { return shape_; }
  int shape_depth() const { return shape_depth_; }
  std::vector<int> objects() const { return shape_->objects(shape_depth_); }
  std::vector<int> objects_by_level() const {
    return shape_->objects_by_level(shape_depth_);
  }
  bool in_window(int a) const {
    const auto objs = objects();
    return std::find(objs.begin(), objs.end(), a) != objs.end();
  }

  void set_object(int a, ProObject<C> x) {
    if (!in_window(a))
      throw PreconditionFailure("object " + shape_->object_name(a) +
                                " lies outside the shape window");
    objects_[a] = std::move(x);
  }
  void set_arrow(const ShapeArrow& phi, ProMap<C> m) {
    const auto& x = object(phi.source);
    const auto& y = object(phi.target);
    if (m.source().index() != x.index() || m.target().index() != y.index())
      throw PreconditionFailure("arrow " + arrow_str(phi) +
                                " does not match its endpoints");
    arrows_[phi] = std::move(m);
  }

  bool has_object(int a) const { return objects_.count(a) != 0; }
  const ProObject<C>& object(int a) const {
    auto it = objects_.find(a);
    if (it == objects_.end())
      throw PreconditionFailure("diagram has no object at " +
                                shape_->object_name(a));
    return it->second;
  }

  /// Non-identity arrows out of a, restricted to the window.
  std::vector<ShapeArrow> arrows_from(int a) const {
    std::vector<ShapeArrow> out;
    for (const auto& f : shape_->arrows_from(a))
      if (in_window(f.target)) out.push_back(f);
    return out;
  }

  ProMap<C> arrow(const ShapeArrow& phi) const {
    if (phi.is_identity()) return ProMap<C>::identity(object(phi.source));
    if (auto it = arrows_.find(phi); it != arrows_.end()) return it->second;
    // Composites of any length: peel off one set arrow and recurse on the rest.
    for (const auto& first : arrows_from(phi.source)) {
      if (first == phi || !arrows_.count(first)) continue;
      for (const auto& second : arrows_from(first.target)) {
        if (shape_->compose(second, first) != phi) continue;
        try {
          return compose(arrow(second), arrows_.at(first));
        } catch (const PreconditionFailure&) {
        }
      }
    }
    throw PreconditionFailure("diagram has no map for " + arrow_str(phi));
  }

  /// Every object and arrow is present and X^{ψφ} = X^ψ X^φ at the budget.
  Certificate validate(const TruncationBudget& budget) const {
    Certificate c{"functoriality", Verdict::certified, budget.depth, {}, ""};
    for (int a : objects()) {
      object(a);
      for (const auto& phi : arrows_from(a)) {
        const auto m = arrow(phi);
        for (const auto& psi : arrows_from(phi.target)) {
          const auto chi = shape_->compose(psi, phi);
          auto e = promap_equal(arrow(chi), compose(arrow(psi), m), budget,
                                arrow_str(chi) + " = " + arrow_str(psi) + "*" +
                                    arrow_str(phi));
          c.verdict = worst(c.verdict, e.verdict);
          c.witnesses.push_back(e.check + ": " + std::string(to_string(e.verdict)));
          if (e.verdict == Verdict::refuted) {
            c.detail = e.check;
            return c;
          }
        }
      }
    }
    return c;
  }

 private:
  ShapePtr shape_;
  int shape_depth_ = 0;
  std::map<int, ProObject<C>> objects_;
  std::map<ShapeArrow, ProMap<C>> arrows_;
};

/// A level representation X̃: A x I -> C of a diagram of pro-objects,
/// with the reindexing f^a: I -> I^a and (when it was used) the surjection
/// h^a that f^a dominates.
template <BaseCategory C>
struct LevelRepresentation {
  using IndexFn = std::function<Index(int, const Index&)>;

  DiagramOfPro<C> diagram;
  DirectedSetPtr index;
  std::optional<int> window;
  int search_depth = 0;
  std::string method;
  IndexFn f;
  IndexFn h;
  std::map<int, ProObject<C>> tilde;
  std::map<ShapeArrow, ProMap<C>> tilde_arrows;

  std::vector<Index> indices(int depth) const {
    return index->elements(window ? std::min(depth, *window) : depth);
  }
  const ProObject<C>& object(int a) const { return tilde.at(a); }
  ProMap<C> arrow(const ShapeArrow& phi) const {
    if (phi.is_identity()) return ProMap<C>::identity(object(phi.source));
    return tilde_arrows.at(phi);
  }
  /// X̃^φ_s.
  typename C::Map component(const ShapeArrow& phi, const Index& s) const {
    return arrow(phi).rep(s).map;
  }

  /// X^a -> X̃^a: identity X^a_{f^a(s)} -> X̃^a_s at each s.
  ProMap<C> to_tilde(int a) const {
    if (method == "levelwise") return ProMap<C>::identity(object(a));
    const auto& x = diagram.object(a);
    const auto fn = f;
    return ProMap<C>(
        x, object(a),
        [x, fn, a](const Index& s) {
          const Index t = fn(a, s);
          return Rep<C>{t, C::identity(x.at(t))};
        },
        "to~" + std::to_string(a));
  }

  /// X̃^a -> X^a: at s', the least s with f^a(s) >= s', composed down.
  ProMap<C> from_tilde(int a) const {
    if (method == "levelwise") return ProMap<C>::identity(object(a));
    const auto& x = diagram.object(a);
    const auto fn = f;
    const auto idx = index;
    const int cap = window ? *window : search_depth;
    return ProMap<C>(
        object(a), x,
        [x, fn, idx, cap, a](const Index& target) {
          for (const auto& s : idx->elements(cap)) {
            const Index t = fn(a, s);
            if (x.index()->leq(target, t)) return Rep<C>{s, x.map(t, target)};
          }
          throw BudgetError("no level of X~ lies above " + index_str(target) +
                            " within grade " + std::to_string(cap));
        },
        "from~" + std::to_string(a));
  }
};

/// The diagram of pro-objects a level representation induces.
template <BaseCategory C>
DiagramOfPro<C> assemble(const LevelRepresentation<C>& l) {
  DiagramOfPro<C> out(l.diagram.shape(), l.diagram.shape_depth());
  for (const auto& [a, x] : l.tilde) out.set_object(a, x);
  for (const auto& [phi, m] : l.tilde_arrows) out.set_arrow(phi, m);
  return out;
}

namespace detail {

template <BaseCategory C>
ProObject<C> reindexed(const ProObject<C>& x, DirectedSetPtr index,
                       std::function<Index(const Index&)> f,
                       std::optional<int> window, std::string label) {
  return ProObject<C>(
      std::move(index), [x, f](const Index& s) { return x.at(f(s)); },
      [x, f](const Index& t, const Index& s) { return x.map(f(t), f(s)); },
      std::move(label), window);
}

template <BaseCategory C>
ProMap<C> table_map(const ProObject<C>& x, const ProObject<C>& y,
                    std::map<Index, typename C::Map> table, std::string label) {
  auto shared = std::make_shared<const std::map<Index, typename C::Map>>(
      std::move(table));
  return ProMap<C>::levelwise_map(
      x, y,
      [shared](const Index& s) {
        auto it = shared->find(s);
        if (it == shared->end())
          throw BudgetError("level " + index_str(s) + " was not materialized");
        return it->second;
      },
      std::move(label));
}

}  // namespace detail

/// Replaces a diagram of pro-objects by a level representation indexed by
/// N, choosing f^a(s) by induction on s and then on the level of a: the
/// least element of I^a in enumeration order that lies above h^a(s),
/// f^a(s-1) and the representative indices of the arrows out of a, and
/// makes every naturality square against t < s and every triangle commute.
///
/// Levels 0..search_depth are materialized. When every object already
/// lives on one shared index and every arrow is levelwise, the diagram is
/// its own level representation and is returned unchanged.
template <BaseCategory C>
LevelRepresentation<C> level_replace(const DiagramOfPro<C>& d,
                                     const TruncationBudget& budget) {
  using Map = typename C::Map;
  budget.validate();
  const auto objs = d.objects_by_level();
  if (objs.empty()) throw PreconditionFailure("level_replace: empty diagram");

  LevelRepresentation<C> out;
  out.diagram = d;
  out.search_depth = budget.search_depth;

  bool shared = true;
  const auto& first_index = d.object(objs.front()).index();
  for (int a : objs) {
    shared = shared && d.object(a).index() == first_index;
    for (const auto& phi : d.arrows_from(a))
      shared = shared && d.arrow(phi).levelwise();
  }
  if (shared) {
    out.index = first_index;
    out.method = "levelwise";
    std::optional<int> window;
    for (int a : objs)
      if (auto w = d.object(a).window()) window = window ? std::min(*window, *w) : *w;
    out.window = window;
    out.f = [](int, const Index& s) { return s; };
    for (int a : objs) {
      out.tilde[a] = d.object(a);
      for (const auto& phi : d.arrows_from(a)) out.tilde_arrows[phi] = d.arrow(phi);
    }
    return out;
  }

  const int n_levels = budget.search_depth;
  out.index = nat();
  out.window = n_levels;
  out.method = "least-admissible";
  auto f = std::make_shared<std::map<int, std::vector<Index>>>();
  std::map<ShapeArrow, std::vector<Map>> comp;
  NodeCounter nodes(budget.node_cap);

  for (int s = 0; s <= n_levels; ++s) {
    for (int a : objs) {
      const auto& x = d.object(a);
      const auto& ia = x.index();
      const auto arrows = d.arrows_from(a);
      std::vector<Index> lower{ia->nth(static_cast<std::size_t>(s))};
      if (s > 0) lower.push_back((*f)[a].back());
      std::vector<Rep<C>> reps;
      for (const auto& phi : arrows) {
        reps.push_back(d.arrow(phi).rep((*f)[phi.target][static_cast<std::size_t>(s)]));
        lower.push_back(reps.back().index);
      }
      int cap = 0;
      for (const auto& l : lower) cap = std::max(cap, ia->grade(l));
      cap += budget.search_depth;

      std::string failure = "no element above the lower bounds";
      bool found = false;
      for (const auto& e : x.indices(cap)) {
        if (!nodes.tick())
          throw BudgetError("level_replace: node cap reached at " +
                            d.shape()->object_name(a) + ", level " +
                            std::to_string(s));
        if (!std::all_of(lower.begin(), lower.end(),
                         [&](const Index& l) { return ia->leq(l, e); }))
          continue;
        std::vector<Map> cand;
        for (std::size_t k = 0; k < arrows.size(); ++k)
          cand.push_back(C::compose(reps[k].map, x.map(e, reps[k].index)));
        bool ok = true;
        for (std::size_t k = 0; k < arrows.size() && ok; ++k) {
          const int b = arrows[k].target;
          const auto& y = d.object(b);
          const auto& fb = (*f)[b];
          for (int t = 0; t < s && ok; ++t) {
            const auto ut = static_cast<std::size_t>(t);
            const Map lhs = C::compose(y.map(fb[static_cast<std::size_t>(s)], fb[ut]), cand[k]);
            const Map rhs = C::compose(comp[arrows[k]][ut], x.map(e, (*f)[a][ut]));
            if (!(lhs == rhs)) {
              ok = false;
              failure = "naturality of " + arrow_str(arrows[k]) + " against level " +
                        std::to_string(t);
            }
          }
          for (const auto& psi : d.arrows_from(b)) {
            if (!ok) break;
            const auto chi = d.shape()->compose(psi, arrows[k]);
            const auto pos = static_cast<std::size_t>(
                std::find(arrows.begin(), arrows.end(), chi) - arrows.begin());
            if (pos == arrows.size())
              throw PreconditionFailure("composite " + arrow_str(chi) +
                                        " is not listed by the shape");
            if (!(cand[pos] == C::compose(comp[psi][static_cast<std::size_t>(s)], cand[k]))) {
              ok = false;
              failure = "triangle " + arrow_str(psi) + "*" + arrow_str(arrows[k]);
            }
          }
        }
        if (!ok) continue;
        (*f)[a].push_back(e);
        for (std::size_t k = 0; k < arrows.size(); ++k)
          comp[arrows[k]].push_back(std::move(cand[k]));
        found = true;
        break;
      }
      if (!found)
        throw BudgetError("level_replace: no admissible f^" +
                          d.shape()->object_name(a) + "(" + std::to_string(s) +
                          ") up to grade " + std::to_string(cap) + " (" +
                          failure + ")");
    }
  }

  out.f = [f](int a, const Index& s) {
    const auto& col = f->at(a);
    if (s.at(0) < 0 || static_cast<std::size_t>(s.at(0)) >= col.size())
      throw BudgetError("f^" + std::to_string(a) + " not materialized at " +
                        index_str(s));
    return col[static_cast<std::size_t>(s.at(0))];
  };
  auto h_index = std::make_shared<std::map<int, DirectedSetPtr>>();
  for (int a : objs) (*h_index)[a] = d.object(a).index();
  out.h = [h_index](int a, const Index& s) {
    return h_index->at(a)->nth(static_cast<std::size_t>(s.at(0)));
  };
  for (int a : objs) {
    const auto fa = out.f;
    out.tilde[a] = detail::reindexed<C>(
        d.object(a), out.index, [fa, a](const Index& s) { return fa(a, s); },
        out.window, d.object(a).label() + "~");
  }
  for (auto& [phi, maps] : comp) {
    std::map<Index, Map> table;
    for (std::size_t s = 0; s < maps.size(); ++s)
      table.emplace(Index{static_cast<int>(s)}, std::move(maps[s]));
    out.tilde_arrows[phi] = detail::table_map<C>(
        out.tilde.at(phi.source), out.tilde.at(phi.target), std::move(table),
        d.arrow(phi).label() + "~");
  }
  return out;
}

/// The four inductive conditions, checked by base-map equality at every
/// index of grade <= depth.
template <BaseCategory C>
Certificate verify_conditions(const LevelRepresentation<C>& l,
                              const TruncationBudget& budget) {
  budget.validate();
  Certificate c{"level representation conditions", Verdict::certified,
                budget.depth, {}, ""};
  const auto idx = l.indices(budget.depth);
  const auto& d = l.diagram;
  auto fail = [&](std::string what) {
    c.verdict = Verdict::refuted;
    c.detail = std::move(what);
    return c;
  };
  for (int a : d.objects_by_level()) {
    const auto& ia = d.object(a).index();
    const std::string an = d.shape()->object_name(a);
    for (const auto& s : idx)
      for (const auto& t : idx)
        if (l.index->leq(t, s) && !ia->leq(l.f(a, t), l.f(a, s)))
          return fail("f^" + an + " not monotone at " + index_str(t) + " <= " +
                      index_str(s));
    if (l.h) {
      for (const auto& s : idx)
        if (!ia->leq(l.h(a, s), l.f(a, s)))
          return fail("f^" + an + "(" + index_str(s) + ") is not above h^" + an);
    } else {
      const auto fa = l.f;
      const CofinalFunctor g{l.index, ia, [fa, a](const Index& s) { return fa(a, s); },
                             "f^" + an};
      auto cc = verify_cofinal(g, budget);
      if (cc.verdict == Verdict::refuted) return fail(cc.detail);
      c.verdict = worst(c.verdict, cc.verdict);
    }
    const auto& xa = l.object(a);
    for (const auto& phi : d.arrows_from(a)) {
      const auto& xb = l.object(phi.target);
      for (const auto& s : idx) {
        const auto ms = l.component(phi, s);
        for (const auto& t : idx) {
          if (t == s || !l.index->leq(t, s)) continue;
          if (!(C::compose(xb.map(s, t), ms) ==
                C::compose(l.component(phi, t), xa.map(s, t))))
            return fail("naturality of " + arrow_str(phi) + " at " +
                        index_str(t) + " < " + index_str(s));
        }
        for (const auto& psi : d.arrows_from(phi.target)) {
          const auto chi = d.shape()->compose(psi, phi);
          if (!(l.component(chi, s) == C::compose(l.component(psi, s), ms)))
            return fail("triangle " + arrow_str(psi) + "*" + arrow_str(phi) +
                        " at " + index_str(s));
        }
      }
    }
    c.witnesses.push_back(an + ": conditions hold on " +
                          std::to_string(idx.size()) + " levels");
  }
  return c;
}

/// X^a ≅ X̃^a through identity representatives, and the square relating
/// X^φ with X̃^φ commutes, all as pro-map equalities at the budget.
template <BaseCategory C>
Certificate verify_isomorphic(const LevelRepresentation<C>& l,
                              const TruncationBudget& budget) {
  Certificate c{"X ~ X~", Verdict::certified, budget.depth, {}, ""};
  const auto& d = l.diagram;
  auto add = [&](Certificate e) {
    c.verdict = worst(c.verdict, e.verdict);
    c.witnesses.push_back(e.check + ": " + std::string(to_string(e.verdict)));
    if (e.verdict == Verdict::refuted && c.detail.empty())
      c.detail = e.check + (e.witnesses.empty() ? "" : " (" + e.witnesses.back() + ")");
  };
  for (int a : d.objects()) {
    const auto to = l.to_tilde(a);
    const auto from = l.from_tilde(a);
    const std::string an = d.shape()->object_name(a);
    add(promap_equal(compose(from, to), ProMap<C>::identity(d.object(a)), budget,
                     "from*to = id at " + an));
    add(promap_equal(compose(to, from), ProMap<C>::identity(l.object(a)), budget,
                     "to*from = id at " + an));
    for (const auto& phi : d.arrows_from(a))
      add(promap_equal(compose(l.to_tilde(phi.target), d.arrow(phi)),
                       compose(l.arrow(phi), to), budget,
                       "square at " + arrow_str(phi)));
  }
  return c;
}

template <BaseCategory C>
Certificate verify_level_representation(const LevelRepresentation<C>& l,
                                        const TruncationBudget& budget) {
  auto a = verify_conditions(l, budget);
  if (a.verdict == Verdict::refuted) return a;
  auto b = verify_isomorphic(l, budget);
  Certificate c{"level representation (" + l.method + ")",
                worst(a.verdict, b.verdict), budget.depth, a.witnesses, b.detail};
  c.witnesses.insert(c.witnesses.end(), b.witnesses.begin(), b.witnesses.end());
  return c;
}

/// Strict representation of a diagram arrow a -> b: a monotone reindexing
/// F: I^b -> I^a and a natural family η_s: X^a_{F(s)} -> X^b_s.
template <BaseCategory C>
struct StrictArrow {
  std::function<Index(const Index&)> reindex;
  std::function<typename C::Map(const Index&)> component;
};

template <BaseCategory C>
class StrictDiagram {
 public:
  StrictDiagram(ShapePtr shape, int shape_depth)
      : pro_(std::move(shape), shape_depth) {}

  const ShapePtr& shape() const { return pro_.shape(); }
  int shape_depth() const { return pro_.shape_depth(); }
  void set_object(int a, ProObject<C> x) { pro_.set_object(a, std::move(x)); }
  const ProObject<C>& object(int a) const { return pro_.object(a); }
  void set_arrow(const ShapeArrow& phi, StrictArrow<C> s) {
    const auto& x = pro_.object(phi.source);
    pro_.set_arrow(phi, ProMap<C>(
                            x, pro_.object(phi.target),
                            [s](const Index& t) {
                              return Rep<C>{s.reindex(t), s.component(t)};
                            },
                            "strict " + arrow_str(phi)));
    arrows_[phi] = std::move(s);
  }
  const StrictArrow<C>& arrow(const ShapeArrow& phi) const {
    auto it = arrows_.find(phi);
    if (it == arrows_.end())
      throw PreconditionFailure("strict diagram has no data for " + arrow_str(phi));
    return it->second;
  }
  const DiagramOfPro<C>& pro() const { return pro_; }

  /// Naturality of every η and the composition laws F^{ψφ} = F^φ F^ψ,
  /// η^{ψφ} = η^ψ ∘ η^φ F^ψ, on indices of grade <= depth.
  Certificate verify(const TruncationBudget& budget) const {
    Certificate c{"strict representation", Verdict::certified, budget.depth, {}, ""};
    for (int a : pro_.objects())
      for (const auto& phi : pro_.arrows_from(a)) {
        const auto& st = arrow(phi);
        const auto& x = object(phi.source);
        const auto& y = object(phi.target);
        const auto idx = y.indices(budget.depth);
        for (const auto& t : idx)
          for (const auto& s : idx) {
            if (s == t || !y.index()->leq(s, t)) continue;
            if (!(C::compose(st.component(s), x.map(st.reindex(t), st.reindex(s))) ==
                  C::compose(y.map(t, s), st.component(t)))) {
              c.verdict = Verdict::refuted;
              c.detail = "eta of " + arrow_str(phi) + " not natural at " +
                         index_str(s) + " <= " + index_str(t);
              return c;
            }
          }
        for (const auto& psi : pro_.arrows_from(phi.target)) {
          const auto& sp = arrow(psi);
          const auto& chi = arrow(shape()->compose(psi, phi));
          for (const auto& s : object(psi.target).indices(budget.depth)) {
            const Index mid = sp.reindex(s);
            if (chi.reindex(s) != st.reindex(mid) ||
                !(chi.component(s) == C::compose(sp.component(s), st.component(mid)))) {
              c.verdict = Verdict::refuted;
              c.detail = "composition law fails for " + arrow_str(psi) + "*" +
                         arrow_str(phi) + " at " + index_str(s);
              return c;
            }
          }
        }
      }
    return c;
  }

 private:
  DiagramOfPro<C> pro_;
  std::map<ShapeArrow, StrictArrow<C>> arrows_;
};

namespace detail {

/// t_a(s) for strict_reindex, memoized.
template <BaseCategory C>
class StrictCoordinates {
 public:
  StrictCoordinates(StrictDiagram<C> d, std::vector<int> bottoms,
                    std::vector<std::size_t> offsets)
      : d_(std::move(d)), bottoms_(std::move(bottoms)), offsets_(std::move(offsets)) {}

  Index at(int a, const Index& s) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find({a, s}); it != memo_.end()) return it->second;
    }
    Index value;
    const auto pos = std::find(bottoms_.begin(), bottoms_.end(), a);
    if (pos != bottoms_.end()) {
      const auto k = static_cast<std::size_t>(pos - bottoms_.begin());
      const auto lo = static_cast<std::ptrdiff_t>(offsets_[k]);
      const auto hi = k + 1 < offsets_.size()
                          ? static_cast<std::ptrdiff_t>(offsets_[k + 1])
                          : static_cast<std::ptrdiff_t>(s.size());
      value = Index(s.begin() + lo, s.begin() + hi);
    } else {
      const auto& ia = d_.object(a).index();
      bool first = true;
      for (const auto& phi : d_.pro().arrows_from(a)) {
        const Index pulled = d_.arrow(phi).reindex(at(phi.target, s));
        if (first) {
          value = pulled;
          first = false;
          continue;
        }
        auto j = ia->join(value, pulled);
        if (!j)
          throw PreconditionFailure("strict_reindex: " + ia->name() +
                                    " has no least upper bound of " +
                                    index_str(value) + " and " + index_str(pulled));
        value = *j;
      }
    }
    std::lock_guard lock(mutex_);
    return memo_.emplace(std::make_pair(a, s), value).first->second;
  }

 private:
  StrictDiagram<C> d_;
  std::vector<int> bottoms_;
  std::vector<std::size_t> offsets_;
  std::mutex mutex_;
  std::map<std::pair<int, Index>, Index> memo_;
};

}  // namespace detail

/// Canonical level representation of a strict diagram: I is the product of
/// the index sets of the objects with no outgoing arrows, and for s in I
/// the a-coordinate is the least upper bound of F^φ(s_b) over the arrows
/// φ: a -> b, computed from the bottom up. Needs joins in every I^a.
template <BaseCategory C>
LevelRepresentation<C> strict_reindex(const StrictDiagram<C>& d,
                                      const TruncationBudget& budget) {
  using Map = typename C::Map;
  budget.validate();
  const auto& pro = d.pro();
  std::vector<int> bottoms;
  for (int a : pro.objects())
    if (pro.arrows_from(a).empty()) bottoms.push_back(a);

  std::vector<std::size_t> offsets{0};
  for (std::size_t k = 0; k + 1 < bottoms.size(); ++k) {
    auto w = d.object(bottoms[k]).index()->width();
    if (!w) throw PreconditionFailure("strict_reindex: index of " +
                                      d.shape()->object_name(bottoms[k]) +
                                      " needs a fixed width");
    offsets.push_back(offsets.back() + *w);
  }
  DirectedSetPtr index = d.object(bottoms.back()).index();
  for (std::size_t k = bottoms.size() - 1; k-- > 0;)
    index = std::make_shared<ProductSet>(d.object(bottoms[k]).index(), index);

  auto coords = std::make_shared<detail::StrictCoordinates<C>>(d, bottoms, offsets);
  LevelRepresentation<C> out;
  out.diagram = pro;
  out.index = index;
  out.search_depth = budget.search_depth;
  out.method = "strict";
  out.f = [coords](int a, const Index& s) { return coords->at(a, s); };
  for (int a : pro.objects()) {
    const auto fa = out.f;
    out.tilde[a] = detail::reindexed<C>(
        d.object(a), index, [fa, a](const Index& s) { return fa(a, s); },
        std::nullopt, d.object(a).label() + "~");
  }
  for (int a : pro.objects())
    for (const auto& phi : pro.arrows_from(a)) {
      const auto& st = d.arrow(phi);
      const auto& x = d.object(a);
      const auto fa = out.f;
      out.tilde_arrows[phi] = ProMap<C>::levelwise_map(
          out.tilde.at(a), out.tilde.at(phi.target),
          [st, x, fa, phi](const Index& s) -> Map {
            const Index tb = fa(phi.target, s);
            return C::compose(st.component(tb),
                              x.map(fa(phi.source, s), st.reindex(tb)));
          },
          "strict " + arrow_str(phi) + "~");
    }
  return out;
}

/// Families of pro-maps u_a: X^a -> Y^a, one class per object from the
/// bounded Hom sets, that commute with every arrow of a finite shape: the
/// end of the Hom functor, computed in pro-C.
template <BaseCategory C>
struct EndHom {
  std::vector<std::vector<std::size_t>> families;
  Verdict verdict = Verdict::certified;
};

template <BaseCategory C>
EndHom<C> end_hom_bounded(const DiagramOfPro<C>& x, const DiagramOfPro<C>& y,
                          const TruncationBudget& budget) {
  const auto objs = x.objects();
  std::vector<BoundedHomSet<C>> homs;
  for (int a : objs) homs.push_back(hom_bounded(x.object(a), y.object(a), budget));
  EndHom<C> out;
  for (const auto& h : homs) out.verdict = worst(out.verdict, h.verdict);
  std::vector<std::size_t> pick(objs.size(), 0);
  auto slot = [&](int a) {
    return static_cast<std::size_t>(std::find(objs.begin(), objs.end(), a) - objs.begin());
  };
  for (;;) {
    if (std::all_of(homs.begin(), homs.end(), [](const auto& h) { return h.size() > 0; })) {
      bool ok = true;
      for (std::size_t k = 0; k < objs.size() && ok; ++k)
        for (const auto& phi : x.arrows_from(objs[k])) {
          const auto b = slot(phi.target);
          const auto ua = homs[k].promap(pick[k], x.object(objs[k]), y.object(objs[k]),
                                         budget.depth);
          const auto ub = homs[b].promap(pick[b], x.object(phi.target),
                                         y.object(phi.target), budget.depth);
          Verdict v;
          try {
            v = promap_equal(compose(y.arrow(phi), ua), compose(ub, x.arrow(phi)),
                             budget).verdict;
          } catch (const BudgetError&) {
            v = Verdict::undetermined;
          }
          if (v != Verdict::certified) {
            if (v != Verdict::refuted) out.verdict = worst(out.verdict, v);
            ok = false;
            break;
          }
        }
      if (ok) out.families.push_back(pick);
    }
    std::size_t p = 0;
    while (p < pick.size() && ++pick[p] >= std::max<std::size_t>(homs[p].size(), 1))
      pick[p++] = 0;
    if (p == pick.size()) break;
  }
  return out;
}

}  // namespace prolim
