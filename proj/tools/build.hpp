#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <type_traits>

#include "prolim/theorems.hpp"
#include "spec.hpp"

namespace prolim::cli {

/// Base-specific reading of level and map rules.
template <BaseCategory C>
struct Rules;

template <>
struct Rules<FinSet> {
  static FinSetObj level(const ObjectSpec& o, int n) {
    if (!o.sizes.empty()) return {o.sizes[static_cast<std::size_t>(std::min<int>(n, static_cast<int>(o.sizes.size()) - 1))]};
    const auto v = o.level.at(0)(n);
    if (v < 0 || v > 4096) throw PreconditionFailure("size " + std::to_string(v) + " out of range");
    return {static_cast<int>(v)};
  }
  static FinSetMap map(const std::string& rule, const FinSetObj& x, const FinSetObj& y) {
    if (rule == "identity") {
      if (!(x == y)) throw PreconditionFailure("identity between different sets");
      return FinSet::identity(x);
    }
    if (x.size > 0 && y.size == 0) throw PreconditionFailure("no map into the empty set");
    std::vector<int> images(static_cast<std::size_t>(x.size));
    for (int i = 0; i < x.size; ++i)
      images[static_cast<std::size_t>(i)] = rule == "mod" ? i % y.size : rule == "clamp" ? std::min(i, y.size - 1) : 0;
    return FinSet::make(std::move(images), y.size);
  }
};

template <>
struct Rules<FinAb> {
  static FinAbObj level(const ObjectSpec& o, int n) {
    std::vector<std::int64_t> orders;
    for (const auto& e : o.level) {
      const auto v = e(n);
      if (v < 1 || v > (std::int64_t{1} << 30)) throw PreconditionFailure("cyclic order " + std::to_string(v) + " out of range");
      orders.push_back(v);
    }
    return FinAb::make_object(std::move(orders));
  }
  static FinAbMap map(const std::string& rule, const FinAbObj& x, const FinAbObj& y) {
    if (rule == "identity") {
      if (!(x == y)) throw PreconditionFailure("identity between different groups");
      return FinAb::identity(x);
    }
    if (rule == "zero") return FinAb::zero_map(x, y);
    IntMatrix m(y.orders.size(), x.orders.size());
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) m(i, i) = 1;
    return FinAb::make(x, y, m);
  }
};

template <>
struct Rules<FreeAb> {
  static FreeAbObj level(const ObjectSpec& o, int n) {
    const auto lo = o.level.at(0)(n), hi = o.level.at(1)(n);
    if (lo < 0 || hi > 4096) throw PreconditionFailure("labels out of range");
    return FreeAb::interval(static_cast<int>(lo), static_cast<int>(hi));
  }
  static FreeAbMap map(const std::string& rule, const FreeAbObj& x, const FreeAbObj& y) {
    if (rule == "identity") {
      if (!(x == y)) throw PreconditionFailure("identity between different groups");
      return FreeAb::identity(x);
    }
    if (rule == "zero") return FreeAb::zero_map(x, y);
    return FreeAb::label_map(x, y);
  }
};

/// Pro-objects, maps and diagrams of a spec over one base category. Objects
/// on equal index specs share one index, and every object is validated on
/// the budget window the first time it is built.
template <BaseCategory C>
class Builder {
 public:
  Builder(const SpecFile& spec, TruncationBudget budget) : spec_(spec), budget_(budget) {}

  const SpecFile& spec() const { return spec_; }
  const TruncationBudget& budget() const { return budget_; }

  DirectedSetPtr index(const IndexSpec& s) {
    const auto key = s.key();
    if (auto it = indices_.find(key); it != indices_.end()) return it->second;
    DirectedSetPtr p;
    switch (s.kind) {
      case IndexSpec::Kind::nat: p = nat(); break;
      case IndexSpec::Kind::point: p = point(); break;
      case IndexSpec::Kind::grid: p = std::make_shared<const NatProduct>(s.k); break;
      case IndexSpec::Kind::poset: p = std::make_shared<const FinitePoset>(s.size, s.hasse); break;
    }
    return indices_.emplace(key, p).first->second;
  }

  ProObject<C> object(const std::string& name, int line) {
    if (auto it = objects_.find(name); it != objects_.end()) return it->second;
    const ObjectSpec& o = spec_.object(name, line);
    ProObject<C> x;
    try {
      x = make_object(o);
      validate_object(x);
    } catch (const SpecError&) {
      throw;
    } catch (const std::exception& e) {
      spec_.fail(o.line, "object " + name + ": " + e.what());
    }
    return objects_.emplace(name, x).first->second;
  }

  ProMap<C> map(const std::string& name, int line) {
    if (auto it = maps_.find(name); it != maps_.end()) return it->second;
    const MapSpec& m = spec_.map(name, line);
    const auto x = object(m.from, m.line);
    const auto y = object(m.to, m.line);
    ProMap<C> f;
    try {
      f = make_map(m, x, y);
      validate_map(f);
    } catch (const SpecError&) {
      throw;
    } catch (const std::exception& e) {
      spec_.fail(m.line, "map " + name + ": " + e.what());
    }
    return maps_.emplace(name, f).first->second;
  }

  std::shared_ptr<const FiniteCategory> shape(const DiagramSpec& d) {
    std::shared_ptr<FiniteCategory> s;
    if (d.shape == "single") s = FiniteCategory::single();
    else if (d.shape == "discrete") s = FiniteCategory::discrete(d.size);
    else if (d.shape == "arrow") s = FiniteCategory::arrow();
    else if (d.shape == "coequalizer") s = FiniteCategory::coequalizer();
    else if (d.shape == "span") s = FiniteCategory::span();
    else if (d.shape == "cospan") s = FiniteCategory::cospan();
    else if (d.shape == "square") s = FiniteCategory::square();
    else if (d.shape == "poset") {
      try {
        s = FiniteCategory::from_poset("poset", d.size, d.hasse);
      } catch (const std::exception& e) {
        spec_.fail(d.line, e.what());
      }
    } else {
      spec_.fail(d.line, "unknown shape '" + d.shape +
                             "' (single, discrete, arrow, coequalizer, span, cospan, square, poset)");
    }
    if (static_cast<int>(d.objects.size()) != s->size())
      spec_.fail(d.line, "shape " + d.shape + " has " + std::to_string(s->size()) + " objects, " +
                             std::to_string(d.objects.size()) + " given");
    return s;
  }

  /// The k-th listed arrow between two objects is the k-th shape arrow
  /// between them.
  std::map<ShapeArrow, const ArrowSpec*> assign(const ShapePtr& shape, const DiagramSpec& d) {
    std::map<ShapeArrow, const ArrowSpec*> out;
    std::map<std::pair<int, int>, std::size_t> used;
    for (const auto& a : d.arrows) {
      const int n = static_cast<int>(d.objects.size());
      if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n)
        spec_.fail(a.line, "arrow endpoint out of range");
      std::vector<ShapeArrow> proper;
      for (const auto& phi : shape->arrows(a.from, a.to))
        if (!phi.is_identity()) proper.push_back(phi);
      auto& k = used[{a.from, a.to}];
      if (k >= proper.size())
        spec_.fail(a.line, "shape " + d.shape + " has no further arrow " + std::to_string(a.from) +
                               " -> " + std::to_string(a.to));
      out.emplace(proper[k++], &a);
      const auto& m = spec_.map(a.map, a.line);
      if (m.from != d.objects[static_cast<std::size_t>(a.from)] ||
          m.to != d.objects[static_cast<std::size_t>(a.to)])
        spec_.fail(a.line, "map " + a.map + " goes " + m.from + " -> " + m.to + ", the arrow needs " +
                               d.objects[static_cast<std::size_t>(a.from)] + " -> " +
                               d.objects[static_cast<std::size_t>(a.to)]);
    }
    return out;
  }

  DiagramOfPro<C> diagram(const DiagramSpec& d) {
    if (!d.present) spec_.fail(1, "spec has no 'diagram' section");
    if (d.shape == "sequence") return sequence(d);
    const auto s = shape(d);
    DiagramOfPro<C> out(s, s->size());
    for (std::size_t k = 0; k < d.objects.size(); ++k)
      out.set_object(static_cast<int>(k), object(d.objects[k], d.line));
    for (const auto& [phi, a] : assign(s, d)) {
      try {
        out.set_arrow(phi, map(a->map, a->line));
      } catch (const PreconditionFailure& e) {
        spec_.fail(a->line, e.what());
      }
    }
    try {
      const auto c = out.validate(budget_);
      if (c.verdict == Verdict::refuted) spec_.fail(d.line, "diagram is not functorial: " + c.detail);
    } catch (const PreconditionFailure& e) {
      spec_.fail(d.line, e.what());
    }
    return out;
  }

  /// X^0 -> X^1 -> ... through the listed maps, constant past the end.
  DiagramOfPro<C> sequence(const DiagramSpec& d) {
    if (d.objects.size() != d.maps.size() + 1)
      spec_.fail(d.line, "a sequence needs one map fewer than objects");
    for (std::size_t n = 0; n < d.maps.size(); ++n) {
      const auto& m = spec_.map(d.maps[n], d.line);
      if (m.from != d.objects[n] || m.to != d.objects[n + 1])
        spec_.fail(m.line, "sequence map " + m.name + " must go " + d.objects[n] + " -> " + d.objects[n + 1]);
    }
    std::vector<ProObject<C>> objs;
    std::vector<ProMap<C>> maps;
    for (const auto& o : d.objects) objs.push_back(object(o, d.line));
    for (const auto& m : d.maps) maps.push_back(map(m, d.line));
    const int last = static_cast<int>(objs.size()) - 1;
    return build_sequential_shape<C>(
        [objs, last](int n) { return objs[static_cast<std::size_t>(std::min(n, last))]; },
        [objs, maps, last](int n) {
          return n < last ? maps[static_cast<std::size_t>(n)] : ProMap<C>::identity(objs.back());
        },
        std::max(last + 1, budget_.depth));
  }

  CofilteredDiagram<C> tower() {
    const auto& t = spec_.tower;
    if (!t.present) spec_.fail(1, "spec has no 'tower' section");
    if (t.objects.size() != t.maps.size() + 1) spec_.fail(t.line, "a tower needs one map fewer than objects");
    std::vector<ProObject<C>> objs;
    std::vector<ProMap<C>> maps;
    for (std::size_t b = 0; b < t.maps.size(); ++b) {
      const auto& m = spec_.map(t.maps[b], t.line);
      if (m.from != t.objects[b + 1] || m.to != t.objects[b])
        spec_.fail(m.line, "tower map " + m.name + " must go " + t.objects[b + 1] + " -> " + t.objects[b]);
    }
    for (const auto& o : t.objects) objs.push_back(object(o, t.line));
    for (const auto& m : t.maps) maps.push_back(map(m, t.line));
    const int last = static_cast<int>(objs.size()) - 1;
    return detail::tower_diagram<C>(
        [objs, last](int n) { return objs[static_cast<std::size_t>(std::min(n, last))]; },
        [objs, maps, last](int n) {
          return n < last ? maps[static_cast<std::size_t>(n)] : ProMap<C>::identity(objs.back());
        },
        "tower");
  }

  /// X^{a,b}_s = T^b_{a+s} for towers T^b over nat and levelwise maps.
  ProductDiagram<C> product_diagram() {
    const auto& d = spec_.commute;
    if (!d.present) spec_.fail(1, "spec has no 'commute' section");
    const auto s = shape(d);
    std::vector<ProObject<C>> towers;
    for (const auto& o : d.objects) {
      const auto& os = spec_.object(o, d.line);
      if (os.index.kind != IndexSpec::Kind::nat) spec_.fail(os.line, "commute towers need a nat index");
      towers.push_back(object(o, d.line));
    }
    auto assigned = assign(s, d);
    std::map<ShapeArrow, ProMap<C>> maps;
    for (int b : s->objects(s->size()))
      for (const auto& phi : s->arrows_from(b)) {
        auto it = assigned.find(phi);
        if (it == assigned.end())
          spec_.fail(d.line, "arrow " + arrow_str(phi) + " of " + d.shape + " has no map");
        const auto& ms = spec_.map(it->second->map, it->second->line);
        if (ms.delay != 0) spec_.fail(ms.line, "commute maps must be levelwise (delay 0)");
        maps.emplace(phi, map(ms.name, ms.line));
      }
    ProductDiagram<C> x;
    x.a = nat();
    x.b = s;
    x.i = nat();
    x.label = "X";
    x.object = [towers](const Index& a, int b, const Index& t) {
      return towers[static_cast<std::size_t>(b)].at({a.at(0) + t.at(0)});
    };
    x.along_a = [towers](const Index& a, const Index& a2, int b, const Index& t) {
      const auto& tw = towers[static_cast<std::size_t>(b)];
      if (a == a2) return C::identity(tw.at({a.at(0) + t.at(0)}));
      return tw.map({a.at(0) + t.at(0)}, {a2.at(0) + t.at(0)});
    };
    x.along_b = [maps](const Index& a, const ShapeArrow& phi, const Index& t) {
      return maps.at(phi).rep({a.at(0) + t.at(0)}).map;
    };
    x.along_i = [towers](const Index& a, int b, const Index& u, const Index& t) {
      const auto& tw = towers[static_cast<std::size_t>(b)];
      if (u == t) return C::identity(tw.at({a.at(0) + t.at(0)}));
      return tw.map({a.at(0) + u.at(0)}, {a.at(0) + t.at(0)});
    };
    return x;
  }

 private:
  ProObject<C> make_object(const ObjectSpec& o) {
    if constexpr (std::is_same_v<C, FinSet>) {
      if (!o.steps.empty()) {
        std::vector<FinSetMap> steps;
        for (std::size_t n = 0; n < o.steps.size(); ++n) {
          const auto tgt = Rules<C>::level(o, static_cast<int>(n));
          const auto src = Rules<C>::level(o, static_cast<int>(n) + 1);
          if (static_cast<int>(o.steps[n].size()) != src.size)
            throw PreconditionFailure("step " + std::to_string(n) + " has " +
                                      std::to_string(o.steps[n].size()) +
                                      " images for a set of size " + std::to_string(src.size));
          steps.push_back(FinSet::make(o.steps[n], tgt.size));
        }
        const auto os = o;
        return ProObject<C>::tower(
            [os](int n) { return Rules<C>::level(os, n); },
            [os, steps](int n) {
              if (n < static_cast<int>(steps.size())) return steps[static_cast<std::size_t>(n)];
              const auto src = Rules<C>::level(os, n + 1), tgt = Rules<C>::level(os, n);
              if (!(src == tgt)) throw PreconditionFailure("levels change past the explicit steps");
              return FinSet::identity(src);
            },
            o.name);
      }
    }
    const auto os = o;
    const auto idx = index(o.index);
    return ProObject<C>(
        idx, [os, idx](const Index& s) { return Rules<C>::level(os, idx->grade(s)); },
        [os, idx](const Index& t, const Index& s) {
          return Rules<C>::map(os.rule, Rules<C>::level(os, idx->grade(t)),
                               Rules<C>::level(os, idx->grade(s)));
        },
        o.name);
  }

  /// Levels build and structure maps compose on the window.
  void validate_object(const ProObject<C>& x) {
    const auto& idx = *x.index();
    const auto els = x.indices(budget_.depth);
    for (const auto& s : x.indices(budget_.search_depth)) x.at(s);
    for (const auto& s : els)
      for (const auto& t : els) {
        if (s == t || !idx.leq(s, t)) continue;
        const auto ts = x.map(t, s);
        for (const auto& u : els) {
          if (u == t || !idx.leq(t, u)) continue;
          if (!(C::compose(ts, x.map(u, t)) == x.map(u, s)))
            throw PreconditionFailure("structure maps do not compose at " + index_str(u) + " -> " +
                                      index_str(t) + " -> " + index_str(s));
        }
      }
  }

  ProMap<C> make_map(const MapSpec& m, const ProObject<C>& x, const ProObject<C>& y) {
    const auto rule = m.rule;
    const int delay = m.delay;
    if (x.index() == y.index() && delay == 0)
      return ProMap<C>::levelwise_map(
          x, y, [x, y, rule](const Index& s) { return Rules<C>::map(rule, x.at(s), y.at(s)); }, m.name);
    std::function<Index(const Index&)> lift;
    if (x.index()->finite_size() == std::size_t{1}) {
      lift = [](const Index&) { return Index{0}; };
    } else if (x.index() == y.index()) {
      if (!x.index()->width())
        throw PreconditionFailure("delays need an index of fixed width");
      const auto idx = x.index();
      lift = [idx, delay](const Index& s) {
        Index t = s;
        for (auto& c : t) c += delay;
        if (!idx->contains(t)) throw PreconditionFailure("delay leaves the index at " + index_str(s));
        return t;
      };
    } else if (y.index()->finite_size() == std::size_t{1}) {
      Index at = x.indices(delay).back();
      for (const auto& s : x.indices(delay))
        if (x.index()->grade(s) == delay) {
          at = s;
          break;
        }
      lift = [at](const Index&) { return at; };
    } else {
      throw PreconditionFailure("maps between different indices need a constant source or target");
    }
    return ProMap<C>(
        x, y,
        [x, y, rule, lift](const Index& s) {
          const auto t = lift(s);
          return Rep<C>{t, Rules<C>::map(rule, x.at(t), y.at(s))};
        },
        m.name);
  }

  /// Representatives are compatible with the target's structure maps up to
  /// refinement within the search depth.
  void validate_map(const ProMap<C>& f) {
    const auto& y = f.target();
    const auto els = y.indices(budget_.depth);
    NodeCounter nodes(budget_.node_cap);
    for (const auto& s : els)
      for (const auto& t : els) {
        if (s == t || !y.index()->leq(s, t)) continue;
        const auto rt = f.rep(t);
        const Rep<C> pushed{rt.index, C::compose(y.map(t, s), rt.map)};
        if (!common_refinement(f.source(), pushed, f.rep(s), budget_.search_depth, nodes))
          throw PreconditionFailure("representatives at " + index_str(t) + " and " + index_str(s) +
                                    " do not agree within the search depth");
      }
  }

  const SpecFile& spec_;
  TruncationBudget budget_;
  std::map<std::string, DirectedSetPtr> indices_;
  std::map<std::string, ProObject<C>> objects_;
  std::map<std::string, ProMap<C>> maps_;
};

}  // namespace prolim::cli
