#include "prolim/generators.hpp"

#include <algorithm>
#include <memory>

namespace prolim::gen {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

namespace {

FinSetMap random_map(Rng& rng, int from, int to) {
  std::vector<int> img(static_cast<std::size_t>(from));
  for (auto& v : img) v = uniform(rng, 0, to - 1);
  return FinSet::make(std::move(img), to);
}

FinSetMap random_surjection(Rng& rng, int from, int to) {
  std::vector<int> img(static_cast<std::size_t>(from));
  for (int i = 0; i < from; ++i) img[static_cast<std::size_t>(i)] = i < to ? i : uniform(rng, 0, to - 1);
  std::shuffle(img.begin(), img.end(), rng);
  return FinSet::make(std::move(img), to);
}

ShapeArrow the_arrow(const ShapePtr& shape, int a, int b, std::size_t k = 0) {
  return shape->arrows(a, b).at(k);
}

}  // namespace

FinSetObj FinSetTower::object(int n) const { return {sizes.at(static_cast<std::size_t>(std::min(n, prefix() - 1)))}; }

FinSetMap FinSetTower::step(int n) const {
  if (n < prefix() - 1) return steps.at(static_cast<std::size_t>(n));
  return FinSet::identity(object(n));
}

FinSetMap FinSetTower::map(int from, int to) const {
  if (to > from) throw PreconditionFailure("tower map goes downwards only");
  FinSetMap m = FinSet::identity(object(from));
  for (int k = from - 1; k >= to; --k) m = FinSet::compose(step(k), m);
  return m;
}

ProObject<FinSet> FinSetTower::pro(const std::string& label) const {
  auto t = std::make_shared<const FinSetTower>(*this);
  return ProObject<FinSet>::tower([t](int n) { return t->object(n); },
                                  [t](int n) { return t->step(n); }, label);
}

CofilteredDiagram<FinSet> FinSetTower::constants(const std::string& label) const {
  auto t = std::make_shared<const FinSetTower>(*this);
  CofilteredDiagram<FinSet> d;
  d.shape = nat();
  d.label = label;
  d.object = [t](const Index& n) {
    return ProObject<FinSet>::constant(t->object(n.at(0)), "c" + std::to_string(n.at(0)));
  };
  d.arrow = [t](const Index& from, const Index& to) {
    return ProMap<FinSet>::constant(ProObject<FinSet>::constant(t->object(from.at(0))),
                                    ProObject<FinSet>::constant(t->object(to.at(0))),
                                    t->map(from.at(0), to.at(0)));
  };
  return d;
}

FinSetMap TowerMap::at(int n) const {
  return components.at(static_cast<std::size_t>(std::min<int>(n, static_cast<int>(components.size()) - 1)));
}

FinSetTower random_tower(Rng& rng, int levels, int max_size) {
  FinSetTower t;
  for (int n = 0; n < levels; ++n) t.sizes.push_back(uniform(rng, 1, max_size));
  for (int n = 0; n + 1 < levels; ++n)
    t.steps.push_back(random_map(rng, t.sizes[static_cast<std::size_t>(n + 1)], t.sizes[static_cast<std::size_t>(n)]));
  return t;
}

FinSetTower random_surjective_tower(Rng& rng, int levels, int max_size) {
  FinSetTower t;
  t.sizes.push_back(uniform(rng, 1, max_size));
  for (int n = 1; n < levels; ++n) t.sizes.push_back(uniform(rng, t.sizes.back(), max_size));
  for (int n = 0; n + 1 < levels; ++n)
    t.steps.push_back(random_surjection(rng, t.sizes[static_cast<std::size_t>(n + 1)], t.sizes[static_cast<std::size_t>(n)]));
  return t;
}

TowerMap random_natural_map(Rng& rng, const FinSetTower& source, const FinSetTower& target) {
  const int levels = std::max(source.prefix(), target.prefix());
  TowerMap m;
  m.components.push_back(random_map(rng, source.object(0).size, target.object(0).size));
  for (int n = 0; n + 1 < levels; ++n) {
    const auto q = source.step(n);
    const auto p = target.step(n);
    const auto& below = m.components.back();
    std::vector<int> img;
    for (int x = 0; x < source.object(n + 1).size; ++x) {
      const int want = below.images[static_cast<std::size_t>(q.images[static_cast<std::size_t>(x)])];
      std::vector<int> choices;
      for (int y = 0; y < target.object(n + 1).size; ++y)
        if (p.images[static_cast<std::size_t>(y)] == want) choices.push_back(y);
      if (choices.empty())
        throw PreconditionFailure("random_natural_map: target step is not surjective");
      img.push_back(choices[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(choices.size()) - 1))]);
    }
    m.components.push_back(FinSet::make(std::move(img), target.object(n + 1).size));
  }
  return m;
}

TowerPullback tower_pullback(const FinSetTower& a, const FinSetTower& b, const TowerMap& fa,
                             const TowerMap& fb) {
  const int levels = std::max(a.prefix(), b.prefix());
  TowerPullback out;
  std::vector<std::vector<std::pair<int, int>>> elems(static_cast<std::size_t>(levels));
  for (int n = 0; n < levels; ++n) {
    auto& e = elems[static_cast<std::size_t>(n)];
    const auto ma = fa.at(n), mb = fb.at(n);
    for (int x = 0; x < a.object(n).size; ++x)
      for (int y = 0; y < b.object(n).size; ++y)
        if (ma.images[static_cast<std::size_t>(x)] == mb.images[static_cast<std::size_t>(y)]) e.emplace_back(x, y);
    out.tower.sizes.push_back(static_cast<int>(e.size()));
    std::vector<int> pa, pb;
    for (const auto& [x, y] : e) {
      pa.push_back(x);
      pb.push_back(y);
    }
    out.to_a.components.push_back(FinSet::make(pa, a.object(n).size));
    out.to_b.components.push_back(FinSet::make(pb, b.object(n).size));
  }
  for (int n = 0; n + 1 < levels; ++n) {
    const auto qa = a.step(n), qb = b.step(n);
    const auto& lo = elems[static_cast<std::size_t>(n)];
    std::vector<int> img;
    for (const auto& [x, y] : elems[static_cast<std::size_t>(n + 1)]) {
      const std::pair<int, int> down{qa.images[static_cast<std::size_t>(x)], qb.images[static_cast<std::size_t>(y)]};
      img.push_back(static_cast<int>(std::find(lo.begin(), lo.end(), down) - lo.begin()));
    }
    out.tower.steps.push_back(FinSet::make(std::move(img), static_cast<int>(lo.size())));
  }
  return out;
}

ProMap<FinSet> delayed_map(const ProObject<FinSet>& x, const ProObject<FinSet>& y,
                           const TowerMap& m, int delay, const std::string& label) {
  auto comps = std::make_shared<const TowerMap>(m);
  return ProMap<FinSet>(
      x, y,
      [x, comps, delay](const Index& s) {
        const Index t{s.at(0) + delay};
        return Rep<FinSet>{t, FinSet::compose(comps->at(s.at(0)), x.map(t, s))};
      },
      label, delay == 0);
}

std::string to_string(CommuteShape s) {
  switch (s) {
    case CommuteShape::coproduct: return "coproduct";
    case CommuteShape::coequalizer: return "coequalizer";
    case CommuteShape::pushout: return "pushout";
  }
  return "?";
}

ProductDiagram<FinSet> CommuteInstance::diagram() const {
  auto self = std::make_shared<const CommuteInstance>(*this);
  ProductDiagram<FinSet> d;
  d.a = nat();
  d.b = shape;
  d.i = nat();
  d.label = "X";
  d.object = [self](const Index& a, int b, const Index& s) {
    return self->towers.at(static_cast<std::size_t>(b)).object(a.at(0) + s.at(0));
  };
  d.along_a = [self](const Index& a, const Index& a2, int b, const Index& s) {
    return self->towers.at(static_cast<std::size_t>(b)).map(a.at(0) + s.at(0), a2.at(0) + s.at(0));
  };
  d.along_b = [self](const Index& a, const ShapeArrow& phi, const Index& s) {
    return self->maps.at(phi).at(a.at(0) + s.at(0));
  };
  d.along_i = [self](const Index& a, int b, const Index& t, const Index& s) {
    return self->towers.at(static_cast<std::size_t>(b)).map(a.at(0) + t.at(0), a.at(0) + s.at(0));
  };
  return d;
}

CommuteInstance random_commute_instance(Rng& rng, CommuteShape kind, int levels, int max_size) {
  CommuteInstance out;
  out.kind = kind;
  switch (kind) {
    case CommuteShape::coproduct:
      out.shape = FiniteCategory::discrete(2);
      out.towers = {random_tower(rng, levels, max_size), random_tower(rng, levels, max_size)};
      break;
    case CommuteShape::coequalizer: {
      out.shape = FiniteCategory::coequalizer();
      out.towers = {random_tower(rng, levels, max_size),
                    random_surjective_tower(rng, levels, max_size)};
      for (std::size_t k = 0; k < 2; ++k)
        out.maps[the_arrow(out.shape, 0, 1, k)] = random_natural_map(rng, out.towers[0], out.towers[1]);
      break;
    }
    case CommuteShape::pushout: {
      out.shape = FiniteCategory::span();
      out.towers = {random_tower(rng, levels, max_size),
                    random_surjective_tower(rng, levels, max_size),
                    random_surjective_tower(rng, levels, max_size)};
      for (int b : {1, 2})
        out.maps[the_arrow(out.shape, 0, b)] =
            random_natural_map(rng, out.towers[0], out.towers[static_cast<std::size_t>(b)]);
      break;
    }
  }
  return out;
}

CofilteredDiagram<FinSet> TowerOfTowers::diagram(const std::string& label) const {
  struct Data {
    std::vector<ProObject<FinSet>> objects;
    std::vector<ProMap<FinSet>> steps;
  };
  auto data = std::make_shared<Data>();
  for (std::size_t b = 0; b < towers.size(); ++b)
    data->objects.push_back(towers[b].pro(label + std::to_string(b)));
  for (std::size_t b = 0; b + 1 < towers.size(); ++b)
    data->steps.push_back(delayed_map(data->objects[b + 1], data->objects[b], maps[b], delays[b],
                                      "d" + std::to_string(b)));
  const int last = static_cast<int>(towers.size()) - 1;
  CofilteredDiagram<FinSet> d;
  d.shape = nat();
  d.label = label;
  d.object = [data, last](const Index& b) {
    return data->objects[static_cast<std::size_t>(std::min(b.at(0), last))];
  };
  d.arrow = [data, last](const Index& from, const Index& to) {
    const int hi = std::min(from.at(0), last), lo = std::min(to.at(0), last);
    if (hi == lo) return ProMap<FinSet>::identity(data->objects[static_cast<std::size_t>(lo)]);
    ProMap<FinSet> m = data->steps[static_cast<std::size_t>(hi - 1)];
    for (int k = hi - 2; k >= lo; --k) m = compose(data->steps[static_cast<std::size_t>(k)], m);
    return m;
  };
  return d;
}

TowerOfTowers random_tower_of_towers(Rng& rng, int length, int levels, int max_size) {
  TowerOfTowers out;
  out.towers.push_back(random_surjective_tower(rng, levels, max_size));
  for (int b = 1; b < length; ++b) {
    // The top tower is no map's target, so its steps need not be onto; that
    // is where the pair category picks up parallel maps.
    out.towers.push_back(b + 1 == length ? random_tower(rng, levels, max_size)
                                         : random_surjective_tower(rng, levels, max_size));
    out.maps.push_back(random_natural_map(rng, out.towers.back(), out.towers[static_cast<std::size_t>(b - 1)]));
    out.delays.push_back(uniform(rng, 0, 1));
  }
  return out;
}

std::string to_string(LevelShape s) {
  switch (s) {
    case LevelShape::square: return "square";
    case LevelShape::chain: return "chain";
    case LevelShape::square_chain: return "square+chain";
  }
  return "?";
}

namespace {

/// Sets objects from towers and one delayed arrow per (source, target).
DiagramOfPro<FinSet> wire(Rng& rng, const ShapePtr& shape, int depth,
                          const std::vector<FinSetTower>& towers,
                          const std::vector<std::tuple<int, int, TowerMap>>& arrows) {
  DiagramOfPro<FinSet> d(shape, depth);
  for (std::size_t a = 0; a < towers.size(); ++a)
    d.set_object(static_cast<int>(a), towers[a].pro("X" + std::to_string(a)));
  for (const auto& [a, b, m] : arrows)
    d.set_arrow(the_arrow(shape, a, b),
                delayed_map(d.object(a), d.object(b), m, uniform(rng, 0, 1),
                            "x" + std::to_string(a) + std::to_string(b)));
  return d;
}

}  // namespace

DiagramOfPro<FinSet> random_level_diagram(Rng& rng, LevelShape kind, int levels, int max_size) {
  auto lift = [&](const FinSetTower& target) {
    auto t = random_surjective_tower(rng, levels, max_size);
    auto m = random_natural_map(rng, t, target);
    return std::make_pair(t, m);
  };
  switch (kind) {
    case LevelShape::chain: {
      const int length = 4;
      std::vector<FinSetTower> towers{random_surjective_tower(rng, levels, max_size)};
      std::vector<std::tuple<int, int, TowerMap>> arrows;
      for (int n = 1; n <= length; ++n) {
        auto [t, m] = lift(towers.back());
        towers.push_back(t);
        arrows.emplace_back(n, n - 1, m);
      }
      return wire(rng, std::make_shared<ChainCategory>(), length, towers, arrows);
    }
    case LevelShape::square:
    case LevelShape::square_chain: {
      const int tail = kind == LevelShape::square ? 0 : 2;
      std::vector<std::pair<int, int>> hasse{{1, 0}, {2, 0}, {3, 1}, {3, 2}};
      for (int k = 0; k < tail; ++k) hasse.emplace_back(4 + k, 3 + k);
      auto shape = FiniteCategory::from_poset(to_string(kind), 4 + tail, hasse);
      std::vector<FinSetTower> towers(static_cast<std::size_t>(4 + tail));
      std::vector<std::tuple<int, int, TowerMap>> arrows;
      towers.back() = random_surjective_tower(rng, levels, max_size);
      for (int k = 3 + tail - 1; k >= 3; --k) {
        auto [t, m] = lift(towers[static_cast<std::size_t>(k + 1)]);
        towers[static_cast<std::size_t>(k)] = t;
        arrows.emplace_back(k, k + 1, m);
      }
      auto [t1, m1] = lift(towers[3]);
      auto [t2, m2] = lift(towers[3]);
      const auto p = tower_pullback(t1, t2, m1, m2);
      towers[0] = p.tower;
      towers[1] = t1;
      towers[2] = t2;
      arrows.emplace_back(1, 3, m1);
      arrows.emplace_back(2, 3, m2);
      arrows.emplace_back(0, 1, p.to_a);
      arrows.emplace_back(0, 2, p.to_b);
      return wire(rng, shape, 4 + tail, towers, arrows);
    }
  }
  throw PreconditionFailure("unknown level shape");
}

DiagramOfPro<FinSet> random_cospan(Rng& rng, int levels, int max_size) {
  const auto base = random_surjective_tower(rng, levels, max_size);
  const auto t0 = random_surjective_tower(rng, levels, max_size);
  const auto t1 = random_surjective_tower(rng, levels, max_size);
  const auto m0 = random_natural_map(rng, t0, base);
  const auto m1 = random_natural_map(rng, t1, base);
  return wire(rng, FiniteCategory::cospan(), 1, {t0, t1, base}, {{0, 2, m0}, {1, 2, m1}});
}

DiagramOfPro<FinSet> random_span(Rng& rng, int levels, int max_size) {
  const auto top = random_tower(rng, levels, max_size);
  const auto t1 = random_surjective_tower(rng, levels, max_size);
  const auto t2 = random_surjective_tower(rng, levels, max_size);
  const auto m1 = random_natural_map(rng, top, t1);
  const auto m2 = random_natural_map(rng, top, t2);
  return wire(rng, FiniteCategory::span(), 1, {top, t1, t2}, {{0, 1, m1}, {0, 2, m2}});
}

RetractPair<FinSet> random_finset_retract(Rng& rng, int levels) {
  FinSetTower x = random_tower(rng, levels, 3);
  std::vector<int> extras;
  std::vector<std::vector<int>> g_extra;  // extra point -> point of X_n
  for (int n = 0; n < levels; ++n) {
    extras.push_back(uniform(rng, 0, 2));
    std::vector<int> gv;
    for (int e = 0; e < extras.back(); ++e) gv.push_back(uniform(rng, 0, x.object(n).size - 1));
    g_extra.push_back(std::move(gv));
  }
  FinSetTower y;
  TowerMap f, g;
  for (int n = 0; n < levels; ++n) {
    const int xs = x.object(n).size;
    y.sizes.push_back(xs + extras[static_cast<std::size_t>(n)]);
    std::vector<int> fi(static_cast<std::size_t>(xs)), gi;
    for (int i = 0; i < xs; ++i) fi[static_cast<std::size_t>(i)] = i, gi.push_back(i);
    for (int v : g_extra[static_cast<std::size_t>(n)]) gi.push_back(v);
    f.components.push_back(FinSet::make(fi, y.sizes.back()));
    g.components.push_back(FinSet::make(gi, xs));
  }
  for (int n = 0; n + 1 < levels; ++n) {
    const auto q = x.step(n);
    const int xs = x.object(n).size;
    std::vector<int> img(q.images);
    for (int v : g_extra[static_cast<std::size_t>(n + 1)]) {
      const int want = q.images[static_cast<std::size_t>(v)];
      std::vector<int> choices;
      const auto& below = g_extra[static_cast<std::size_t>(n)];
      for (std::size_t e = 0; e < below.size(); ++e)
        if (below[e] == want) choices.push_back(xs + static_cast<int>(e));
      if (!choices.empty() && uniform(rng, 0, 1) == 1)
        img.push_back(choices[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(choices.size()) - 1))]);
      else
        img.push_back(want);
    }
    y.steps.push_back(FinSet::make(std::move(img), y.sizes[static_cast<std::size_t>(n)]));
  }
  RetractPair<FinSet> out;
  out.x = x.pro("X");
  out.y = y.pro("Y");
  auto fs = std::make_shared<const TowerMap>(f);
  auto gs = std::make_shared<const TowerMap>(g);
  out.f = ProMap<FinSet>::levelwise_map(out.x, out.y, [fs](const Index& s) { return fs->at(s.at(0)); }, "f");
  out.g = ProMap<FinSet>::levelwise_map(out.y, out.x, [gs](const Index& s) { return gs->at(s.at(0)); }, "g");
  out.bound = *std::max_element(y.sizes.begin(), y.sizes.end());
  return out;
}

RetractPair<FinAb> random_finab_retract(Rng& rng, int levels) {
  std::vector<int> a{uniform(rng, 1, 2)}, b;
  for (int n = 1; n < levels; ++n) a.push_back(uniform(rng, a.back(), 3));
  b.push_back(uniform(rng, a[0], a[0] + 1));
  for (int n = 1; n < levels; ++n) b.push_back(std::max(a[static_cast<std::size_t>(n)], uniform(rng, b.back(), b.back() + 1)));
  const std::int64_t c = uniform(rng, 0, 7);
  auto clamp = [levels](int n) { return static_cast<std::size_t>(std::min(n, levels - 1)); };
  auto xo = [a, clamp](int n) { return FinAb::cyclic(std::int64_t{1} << a[clamp(n)]); };
  auto yo = [a, b, clamp](int n) {
    return FinAb::make_object({std::int64_t{1} << a[clamp(n)], std::int64_t{1} << b[clamp(n)]});
  };
  RetractPair<FinAb> out;
  out.x = ProObject<FinAb>::tower(xo, [xo](int n) {
    IntMatrix m(1, 1);
    m(0, 0) = 1;
    return FinAb::make(xo(n + 1), xo(n), m);
  }, "X");
  out.y = ProObject<FinAb>::tower(yo, [yo](int n) {
    IntMatrix m(2, 2);
    m(0, 0) = 1;
    m(1, 1) = 1;
    return FinAb::make(yo(n + 1), yo(n), m);
  }, "Y");
  out.f = ProMap<FinAb>::levelwise_map(out.x, out.y, [xo, yo](const Index& s) {
    IntMatrix m(2, 1);
    m(0, 0) = 1;
    return FinAb::make(xo(s.at(0)), yo(s.at(0)), m);
  }, "f");
  out.g = ProMap<FinAb>::levelwise_map(out.y, out.x, [xo, yo, c](const Index& s) {
    IntMatrix m(1, 2);
    m(0, 0) = 1;
    m(0, 1) = c;
    return FinAb::make(yo(s.at(0)), xo(s.at(0)), m);
  }, "g");
  out.bound = std::int64_t{1} << (a.back() + b.back());
  return out;
}

}  // namespace prolim::gen
