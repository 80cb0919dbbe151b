#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prolim/budget.hpp"
#include "prolim/category.hpp"
#include "prolim/certificate.hpp"
#include "prolim/directed_set.hpp"
#include "prolim/error.hpp"

namespace prolim {

/// A pro-object: a functor from a cofinite directed set to C, read
/// cofilteringly (X_t -> X_s for s <= t). Levels and structure maps are
/// computed on demand and memoized; copies share the memo.
///
/// A pro-object may carry a window: only indices of grade <= window are
/// defined, and asking for anything beyond it raises BudgetError.
template <BaseCategory C>
class ProObject {
 public:
  using Object = typename C::Object;
  using Map = typename C::Map;
  using ObjectFn = std::function<Object(const Index&)>;
  /// (t, s) with s <= t, s != t  ->  X_t -> X_s.
  using MapFn = std::function<Map(const Index&, const Index&)>;

  ProObject() = default;
  ProObject(DirectedSetPtr index, ObjectFn obj, MapFn map, std::string label,
            std::optional<int> window = std::nullopt)
      : state_(std::make_shared<State>()) {
    state_->index = std::move(index);
    state_->obj = std::move(obj);
    state_->map = std::move(map);
    state_->label = std::move(label);
    state_->window = window;
  }

  /// The constant pro-object cX on a one-point index.
  static ProObject constant(Object x, std::string label = "c") {
    return ProObject(
        point(), [x](const Index&) { return x; },
        [x](const Index&, const Index&) { return C::identity(x); },
        std::move(label));
  }

  /// A tower ... -> X_2 -> X_1 -> X_0 over N from its levels and the
  /// consecutive maps step(n): X_{n+1} -> X_n.
  static ProObject tower(std::function<Object(int)> obj,
                         std::function<Map(int)> step, std::string label,
                         std::optional<int> window = std::nullopt) {
    return ProObject(
        nat(), [obj](const Index& s) { return obj(s.at(0)); },
        [step](const Index& t, const Index& s) {
          auto m = step(t.at(0) - 1);
          for (int n = t.at(0) - 2; n >= s.at(0); --n) m = C::compose(step(n), m);
          return m;
        },
        std::move(label), window);
  }

  const DirectedSetPtr& index() const { return state().index; }
  const std::string& label() const { return state().label; }
  std::optional<int> window() const { return state().window; }
  bool defined() const { return state_ != nullptr; }

  /// Index elements of grade <= depth, clipped to the window.
  std::vector<Index> indices(int depth) const {
    const auto& st = state();
    return st.index->elements(st.window ? std::min(depth, *st.window) : depth);
  }

  bool in_window(const Index& s) const {
    const auto& st = state();
    return !st.window || st.index->grade(s) <= *st.window;
  }

  Object at(const Index& s) const {
    auto& st = state();
    check(s);
    {
      std::lock_guard lock(st.mutex);
      if (auto it = st.objects.find(s); it != st.objects.end()) return it->second;
    }
    Object x = st.obj(s);
    std::lock_guard lock(st.mutex);
    return st.objects.emplace(s, std::move(x)).first->second;
  }

  /// Structure map X_t -> X_s for s <= t.
  Map map(const Index& t, const Index& s) const {
    auto& st = state();
    check(t);
    check(s);
    if (t == s) return C::identity(at(s));
    if (!st.index->leq(s, t))
      throw PreconditionFailure(label() + ": no structure map " + index_str(t) +
                                " -> " + index_str(s));
    const auto key = std::make_pair(t, s);
    {
      std::lock_guard lock(st.mutex);
      if (auto it = st.maps.find(key); it != st.maps.end()) return it->second;
    }
    Map m = st.map(t, s);
    std::lock_guard lock(st.mutex);
    return st.maps.emplace(key, std::move(m)).first->second;
  }

  /// The same pro-object restricted to grades <= window.
  ProObject truncated(int window) const {
    const auto& st = state();
    ProObject self = *this;
    return ProObject(
        st.index, [self](const Index& s) { return self.at(s); },
        [self](const Index& t, const Index& s) { return self.map(t, s); },
        st.label + "@" + std::to_string(window),
        st.window ? std::min(*st.window, window) : window);
  }

 private:
  struct State {
    DirectedSetPtr index;
    ObjectFn obj;
    MapFn map;
    std::string label;
    std::optional<int> window;
    std::mutex mutex;
    std::map<Index, Object> objects;
    std::map<std::pair<Index, Index>, Map> maps;
  };

  State& state() const {
    if (!state_) throw PreconditionFailure("use of an empty pro-object");
    return *state_;
  }

  void check(const Index& s) const {
    const auto& st = state();
    if (st.window && st.index->grade(s) > *st.window)
      throw BudgetError(st.label + ": index " + index_str(s) +
                        " lies beyond the truncation window " +
                        std::to_string(*st.window));
  }

  std::shared_ptr<State> state_;
};

/// Representative of a pro-map at a target index s: a source index t and a
/// base map X_t -> Y_s.
template <BaseCategory C>
struct Rep {
  Index index;
  typename C::Map map;
};

/// A map of pro-objects given by representatives s -> (t(s), X_t -> Y_s).
/// `levelwise` marks maps over a shared index whose representative at s
/// sits at s and which are natural on the nose.
template <BaseCategory C>
class ProMap {
 public:
  using RepFn = std::function<Rep<C>(const Index&)>;

  ProMap() = default;
  ProMap(ProObject<C> source, ProObject<C> target, RepFn rep,
         std::string label, bool levelwise = false)
      : source_(std::move(source)),
        target_(std::move(target)),
        state_(std::make_shared<State>()) {
    state_->rep = std::move(rep);
    state_->label = std::move(label);
    state_->levelwise = levelwise;
  }

  const ProObject<C>& source() const { return source_; }
  const ProObject<C>& target() const { return target_; }
  const std::string& label() const { return state_->label; }
  bool levelwise() const { return state_->levelwise; }

  Rep<C> rep(const Index& s) const {
    {
      std::lock_guard lock(state_->mutex);
      if (auto it = state_->memo.find(s); it != state_->memo.end())
        return it->second;
    }
    Rep<C> r = state_->rep(s);
    if (!(C::target(r.map) == target_.at(s)) ||
        !(C::source(r.map) == source_.at(r.index)))
      throw CompositionError(label() + ": representative at " + index_str(s) +
                             " has the wrong source or target");
    std::lock_guard lock(state_->mutex);
    return state_->memo.emplace(s, std::move(r)).first->second;
  }

  static ProMap identity(const ProObject<C>& x) {
    return ProMap(
        x, x, [x](const Index& s) { return Rep<C>{s, C::identity(x.at(s))}; },
        "id", true);
  }

  /// Levelwise map between pro-objects on the same index.
  static ProMap levelwise_map(
      const ProObject<C>& x, const ProObject<C>& y,
      std::function<typename C::Map(const Index&)> component,
      std::string label) {
    if (x.index() != y.index())
      throw PreconditionFailure(label + ": levelwise map needs a shared index");
    return ProMap(
        x, y, [component](const Index& s) { return Rep<C>{s, component(s)}; },
        std::move(label), true);
  }

  /// A map out of a constant pro-object: one base map X -> Y_s per s.
  static ProMap from_constant(
      const ProObject<C>& x, const ProObject<C>& y,
      std::function<typename C::Map(const Index&)> component,
      std::string label) {
    return ProMap(
        x, y,
        [component](const Index& s) { return Rep<C>{Index{0}, component(s)}; },
        std::move(label));
  }

  /// The map induced by a base map on constant pro-objects.
  static ProMap constant(const ProObject<C>& x, const ProObject<C>& y,
                         typename C::Map m, std::string label = "c(f)") {
    return ProMap(
        x, y, [m](const Index&) { return Rep<C>{Index{0}, m}; },
        std::move(label), x.index() == y.index());
  }

 private:
  struct State {
    RepFn rep;
    std::string label;
    bool levelwise = false;
    std::mutex mutex;
    std::map<Index, Rep<C>> memo;
  };

  ProObject<C> source_;
  ProObject<C> target_;
  std::shared_ptr<State> state_;
};

/// g∘f.
template <BaseCategory C>
ProMap<C> compose(const ProMap<C>& g, const ProMap<C>& f) {
  if (f.target().index() != g.source().index())
    throw CompositionError("cannot compose " + g.label() + " after " +
                           f.label());
  return ProMap<C>(
      f.source(), g.target(),
      [g, f](const Index& s) {
        const Rep<C> outer = g.rep(s);
        const Rep<C> inner = f.rep(outer.index);
        return Rep<C>{inner.index, C::compose(outer.map, inner.map)};
      },
      g.label() + "*" + f.label(), f.levelwise() && g.levelwise());
}

/// The zero map X -> Y, represented at the least source index.
template <BaseCategory C>
  requires AbelianOps<C>
ProMap<C> zero_map(const ProObject<C>& x, const ProObject<C>& y) {
  const Index t = x.index()->nth(0);
  return ProMap<C>(
      x, y, [x, y, t](const Index& s) {
        return Rep<C>{t, C::zero_map(x.at(t), y.at(s))};
      },
      "0");
}

/// Two representatives of the same colimit class at one target index
/// agree once pushed to a common refinement u >= t1, t2. Searches source
/// indices up to `search_depth` and returns the least such u.
template <BaseCategory C>
std::optional<Index> common_refinement(const ProObject<C>& x, const Rep<C>& a,
                                       const Rep<C>& b, int search_depth,
                                       NodeCounter& nodes, bool* searched = nullptr) {
  if (a.index == b.index && a.map == b.map) {
    if (searched) *searched = true;
    return a.index;
  }
  const auto& idx = x.index();
  bool any = false;
  for (const auto& u : x.indices(search_depth)) {
    if (!idx->leq(a.index, u) || !idx->leq(b.index, u)) continue;
    any = true;
    if (!nodes.tick()) break;
    if (C::compose(a.map, x.map(u, a.index)) == C::compose(b.map, x.map(u, b.index)))
      return u;
  }
  if (searched) *searched = any;
  return std::nullopt;
}

/// Bounded semi-decision of f = g. Certified means equal, with one common
/// refinement per target index of grade <= depth; refuted means that at
/// some target index no source index within the search depth equalizes
/// the representatives. Both are claims about the window only.
///
/// With `skip_undefined`, target indices at which either map has no
/// representative inside a truncation window are skipped, and listed.
/// Detail of a promap_equal certificate that skipped every index.
inline constexpr const char* kNothingCompared = "no target index inside the window";

template <BaseCategory C>
Certificate promap_equal(const ProMap<C>& f, const ProMap<C>& g,
                         const TruncationBudget& budget,
                         std::string check = "", bool skip_undefined = false) {
  budget.validate();
  if (check.empty()) check = f.label() + " = " + g.label();
  Certificate c{std::move(check), Verdict::certified, budget.depth, {}, ""};
  NodeCounter nodes(budget.node_cap);
  std::size_t compared = 0;
  for (const auto& s : f.target().indices(budget.depth)) {
    std::optional<Rep<C>> a, b;
    try {
      a = f.rep(s);
      b = g.rep(s);
    } catch (const BudgetError&) {
      if (!skip_undefined) throw;
      c.witnesses.push_back("at " + index_str(s) + ": outside the window, skipped");
      continue;
    }
    ++compared;
    bool searched = false;
    auto u = common_refinement(f.source(), *a, *b, budget.search_depth, nodes,
                               &searched);
    if (u) {
      c.witnesses.push_back("at " + index_str(s) + ": agree from " +
                            index_str(*u));
      continue;
    }
    if (nodes.exhausted()) {
      c.verdict = worst(c.verdict, Verdict::exhausted);
      c.detail = "node cap reached at " + index_str(s);
      break;
    }
    if (!searched) {
      c.verdict = worst(c.verdict, Verdict::undetermined);
      c.witnesses.push_back("at " + index_str(s) + ": no common refinement of " +
                            index_str(a->index) + " and " + index_str(b->index) +
                            " in the window");
      continue;
    }
    c.verdict = Verdict::refuted;
    c.witnesses.push_back("at " + index_str(s) + ": differ at every refinement"
                          " up to depth " + std::to_string(budget.search_depth) +
                          " (" + C::describe(a->map) + " vs " +
                          C::describe(b->map) + ")");
  }
  if (compared == 0 && c.verdict == Verdict::certified && skip_undefined) {
    c.verdict = Verdict::undetermined;
    c.detail = kNothingCompared;
  }
  return c;
}

/// Result of the bounded Hom computation lim_s colim_t Hom(X_t, Y_s).
template <BaseCategory C>
struct BoundedHomSet {
  int depth = 0;
  /// Target indices s of grade <= depth.
  std::vector<Index> targets;
  /// Per target index: the canonical representative of each class (least t
  /// in enumeration order, then least map in Hom enumeration order).
  std::vector<std::vector<Rep<C>>> classes;
  /// Compatible families: one class id per target index.
  std::vector<std::vector<std::size_t>> elements;
  Verdict verdict = Verdict::certified;
  std::size_t nodes = 0;

  std::size_t size() const { return elements.size(); }

  /// The pro-map picked out by a family, defined on the window only.
  ProMap<C> promap(std::size_t element, const ProObject<C>& x,
                   const ProObject<C>& y, int window) const {
    std::map<Index, Rep<C>> reps;
    for (std::size_t k = 0; k < targets.size(); ++k)
      reps.emplace(targets[k], classes[k][elements[element][k]]);
    return ProMap<C>(
        x, y.truncated(window),
        [reps](const Index& s) {
          auto it = reps.find(s);
          if (it == reps.end())
            throw BudgetError("bounded Hom element undefined at " +
                              index_str(s));
          return it->second;
        },
        "hom#" + std::to_string(element));
  }
};

/// Hom(X, Y) of pro-objects, computed on the window: for each target s of
/// grade <= depth, the classes of colim_t Hom(X_t, Y_s) over t of grade <=
/// depth (two representatives are merged when they agree at some refinement
/// of grade <= search depth), then the compatible families of classes.
template <BaseCategory C>
BoundedHomSet<C> hom_bounded(const ProObject<C>& x, const ProObject<C>& y,
                             const TruncationBudget& budget) {
  if constexpr (!EnumerableCategory<C>) {
    throw UnsupportedCapability(C::name() + " does not enumerate Hom sets");
  } else {
    budget.validate();
    BoundedHomSet<C> out;
    out.depth = budget.depth;
    out.targets = y.indices(budget.depth);
    NodeCounter nodes(budget.node_cap);
    const auto sources = x.indices(budget.depth);
    const auto refinements = x.indices(budget.search_depth);
    const auto& xi = x.index();

    // Per target: candidate (t, m) ids, union-find, candidate lookup.
    struct Target {
      std::vector<std::vector<typename C::Map>> hom;  // per source position
      std::vector<std::size_t> first;                 // candidate id offset
      std::vector<std::size_t> cls;                   // candidate -> class
    };
    std::vector<Target> data(out.targets.size());

    for (std::size_t k = 0; k < out.targets.size(); ++k) {
      const Index& s = out.targets[k];
      Target& tg = data[k];
      std::size_t total = 0;
      for (const auto& t : sources) {
        tg.first.push_back(total);
        tg.hom.push_back(C::hom(x.at(t), y.at(s)));
        total += tg.hom.back().size();
        if (!nodes.tick(tg.hom.back().size())) break;
      }
      std::vector<std::size_t> parent(total);
      for (std::size_t i = 0; i < total; ++i) parent[i] = i;
      auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
      };
      // Push every candidate to every refinement; candidates meeting at the
      // same (u, map) are identified.
      for (const auto& u : refinements) {
        std::vector<std::pair<typename C::Map, std::size_t>> seen;
        for (std::size_t p = 0; p < tg.hom.size(); ++p) {
          const Index& t = sources[p];
          if (!xi->leq(t, u)) continue;
          const auto down = x.map(u, t);
          for (std::size_t m = 0; m < tg.hom[p].size(); ++m) {
            if (!nodes.tick()) break;
            auto pushed = C::compose(tg.hom[p][m], down);
            const std::size_t id = tg.first[p] + m;
            auto it = std::find_if(seen.begin(), seen.end(),
                                   [&](const auto& e) { return e.first == pushed; });
            if (it == seen.end()) {
              seen.emplace_back(std::move(pushed), id);
            } else {
              const auto ra = find(it->second), rb = find(id);
              if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
            }
          }
        }
      }
      tg.cls.assign(total, 0);
      std::map<std::size_t, std::size_t> root_class;
      std::vector<Rep<C>> reps;
      for (std::size_t p = 0; p < tg.hom.size(); ++p)
        for (std::size_t m = 0; m < tg.hom[p].size(); ++m) {
          const std::size_t id = tg.first[p] + m;
          const std::size_t r = find(id);
          auto [it, fresh] = root_class.emplace(r, reps.size());
          if (fresh) reps.push_back({sources[p], tg.hom[p][m]});
          tg.cls[id] = it->second;
        }
      out.classes.push_back(std::move(reps));
    }

    // Transitions between comparable targets: the class at the larger index
    // determines the class at the smaller one.
    struct Link {
      std::size_t other;
      bool self_larger;
      std::vector<std::size_t> table;  // classes at larger -> classes at smaller
    };
    const auto& yi = y.index();
    const std::size_t n = out.targets.size();
    std::vector<std::vector<Link>> links(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < k; ++j) {
        const bool k_larger = yi->leq(out.targets[j], out.targets[k]);
        if (!k_larger && !yi->leq(out.targets[k], out.targets[j])) continue;
        const std::size_t hi = k_larger ? k : j, lo = k_larger ? j : k;
        const auto ymap = y.map(out.targets[hi], out.targets[lo]);
        Link link{j, k_larger, {}};
        for (const auto& r : out.classes[hi]) {
          const auto image = C::compose(ymap, r.map);
          const auto pos = static_cast<std::size_t>(
              std::find(sources.begin(), sources.end(), r.index) - sources.begin());
          const auto& hom = data[lo].hom[pos];
          const auto m = static_cast<std::size_t>(
              std::find(hom.begin(), hom.end(), image) - hom.begin());
          link.table.push_back(data[lo].cls[data[lo].first[pos] + m]);
        }
        links[k].push_back(std::move(link));
      }

    std::vector<std::size_t> choice(n, 0);
    auto consistent = [&](std::size_t k) {
      for (const auto& l : links[k])
        if (l.self_larger ? l.table[choice[k]] != choice[l.other]
                          : l.table[choice[l.other]] != choice[k])
          return false;
      return true;
    };
    bool capped = false;
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (capped) return;
      if (k == n) {
        out.elements.push_back(choice);
        return;
      }
      for (std::size_t c = 0; c < out.classes[k].size(); ++c) {
        if (!nodes.tick()) {
          capped = true;
          return;
        }
        choice[k] = c;
        if (consistent(k)) self(self, k + 1);
      }
    };
    rec(rec, 0);
    if (capped || nodes.exhausted()) out.verdict = Verdict::exhausted;
    out.nodes = nodes.used();
    return out;
  }
}

/// Index of the family a pro-map belongs to, if it is found in the window.
template <BaseCategory C>
std::optional<std::size_t> classify(const BoundedHomSet<C>& h,
                                    const ProMap<C>& f,
                                    const TruncationBudget& budget) {
  NodeCounter nodes(budget.node_cap);
  std::vector<std::size_t> cls(h.targets.size());
  for (std::size_t k = 0; k < h.targets.size(); ++k) {
    const Rep<C> r = f.rep(h.targets[k]);
    bool found = false;
    for (std::size_t c = 0; c < h.classes[k].size() && !found; ++c)
      if (common_refinement(f.source(), r, h.classes[k][c], budget.search_depth,
                            nodes)) {
        cls[k] = c;
        found = true;
      }
    if (!found) return std::nullopt;
  }
  auto it = std::find(h.elements.begin(), h.elements.end(), cls);
  if (it == h.elements.end()) return std::nullopt;
  return static_cast<std::size_t>(it - h.elements.begin());
}

/// The truncated limit of X in C, with the stabilization report comparing
/// the window at depth d with the window at d+1.
template <BaseCategory C>
struct LimitInC {
  typename C::Limit limit;
  std::vector<Index> indices;
  bool stabilized = false;
  int depth = 0;
};

template <BaseCategory C>
  requires HasFiniteLimits<C> && HasIsoTest<C>
LimitInC<C> lim_C(const ProObject<C>& x, const TruncationBudget& budget,
                  bool require_stable = false) {
  budget.validate();
  auto build = [&](int d, std::vector<Index>& idx) {
    idx = x.indices(d);
    FiniteDiagram<C> diag;
    for (const auto& s : idx) diag.add_object(x.at(s));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (i != j && x.index()->leq(idx[j], idx[i]))
          diag.add_arrow(i, j, x.map(idx[i], idx[j]));
    return C::limit(diag);
  };
  LimitInC<C> out;
  out.depth = budget.depth;
  out.limit = build(budget.depth, out.indices);
  std::vector<Index> next_idx;
  const auto next = build(budget.depth + 1, next_idx);
  if (next_idx.size() == out.indices.size()) {
    out.stabilized = true;
  } else {
    // Restriction lim_{d+1} -> lim_d, an isomorphism once the tower settles.
    std::vector<typename C::Map> legs;
    for (const auto& s : out.indices) {
      const auto pos = static_cast<std::size_t>(
          std::find(next_idx.begin(), next_idx.end(), s) - next_idx.begin());
      legs.push_back(next.legs[pos]);
    }
    out.stabilized =
        C::is_iso(C::limit_factor(out.limit, next.apex, legs));
  }
  if (require_stable && !out.stabilized)
    throw BudgetError(x.label() + ": limit has not stabilized by depth " +
                      std::to_string(budget.depth));
  return out;
}

/// Candidate level data for a pro-object: a pro-object `levels` with
/// mutually inverse maps to and from X.
template <BaseCategory C>
struct ObjectLevelData {
  ProObject<C> levels;
  ProMap<C> to;    // levels -> X
  ProMap<C> from;  // X -> levels
};

/// Candidate level representation of a map f: X -> Y: a levelwise map
/// between `source_levels` and `target_levels` and isomorphisms into X, Y.
template <BaseCategory C>
struct MapLevelData {
  ProMap<C> level_map;
  ProMap<C> source_to;    // source levels -> X
  ProMap<C> source_from;  // X -> source levels
  ProMap<C> target_to;    // target levels -> Y
  ProMap<C> target_from;  // Y -> target levels
};

namespace detail {
template <BaseCategory C>
void require_equal(const ProMap<C>& a, const ProMap<C>& b,
                   const TruncationBudget& budget, const std::string& what) {
  auto c = promap_equal(a, b, budget, what);
  if (!c.ok())
    throw VerificationFailure(what + " is " + std::string(to_string(c.verdict)),
                              c.witnesses.empty() ? c.detail : c.witnesses.back());
}
}  // namespace detail

/// Checks supplied level data for X against a predicate on objects; throws
/// VerificationFailure naming the first failing level.
template <BaseCategory C>
Certificate is_essentially_type_C(
    const ProObject<C>& x, const ObjectLevelData<C>& data,
    const std::function<bool(const typename C::Object&)>& pred,
    const std::string& pred_name, const TruncationBudget& budget) {
  Certificate c{x.label() + " essentially " + pred_name, Verdict::certified,
                budget.depth, {}, ""};
  for (const auto& s : data.levels.indices(budget.depth)) {
    if (!pred(data.levels.at(s)))
      throw VerificationFailure("level fails " + pred_name,
                                "level " + index_str(s) + ": " +
                                    C::describe(data.levels.at(s)));
    c.witnesses.push_back(index_str(s) + ": " + C::describe(data.levels.at(s)));
  }
  detail::require_equal(compose(data.to, data.from), ProMap<C>::identity(x),
                        budget, "to*from = id");
  detail::require_equal(compose(data.from, data.to),
                        ProMap<C>::identity(data.levels), budget,
                        "from*to = id");
  return c;
}

template <BaseCategory C>
Certificate is_essentially_type_C(
    const ProMap<C>& f, const MapLevelData<C>& data,
    const std::function<bool(const typename C::Map&)>& pred,
    const std::string& pred_name, const TruncationBudget& budget) {
  Certificate c{f.label() + " essentially " + pred_name, Verdict::certified,
                budget.depth, {}, ""};
  const auto& lm = data.level_map;
  if (!lm.levelwise())
    throw VerificationFailure("level data is not levelwise", lm.label());
  for (const auto& s : lm.target().indices(budget.depth)) {
    const auto r = lm.rep(s);
    if (!pred(r.map))
      throw VerificationFailure("level map fails " + pred_name,
                                "level " + index_str(s) + ": " +
                                    C::describe(r.map));
    c.witnesses.push_back(index_str(s) + ": " + C::describe(r.map));
  }
  const auto& x = f.source();
  const auto& y = f.target();
  detail::require_equal(compose(data.source_to, data.source_from),
                        ProMap<C>::identity(x), budget, "source iso");
  detail::require_equal(compose(data.source_from, data.source_to),
                        ProMap<C>::identity(lm.source()), budget,
                        "source iso inverse");
  detail::require_equal(compose(data.target_to, data.target_from),
                        ProMap<C>::identity(y), budget, "target iso");
  detail::require_equal(compose(data.target_from, data.target_to),
                        ProMap<C>::identity(lm.target()), budget,
                        "target iso inverse");
  detail::require_equal(compose(data.target_to, lm),
                        compose(f, data.source_to), budget,
                        "level square");
  return c;
}

}  // namespace prolim
