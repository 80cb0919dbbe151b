#include "prolim/finab.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "prolim/error.hpp"

namespace prolim {

namespace {

constexpr std::int64_t kMaxEnumerated = std::int64_t{1} << 20;

IntMatrix zero_matrix(std::size_t r, std::size_t c) { return IntMatrix(r, c); }

}  // namespace

FinAbObj FinAb::make_object(std::vector<std::int64_t> orders) {
  for (auto n : orders)
    if (n < 1) throw PreconditionFailure("FinAb: cyclic orders must be >= 1");
  return {std::move(orders)};
}

FinAbMap FinAb::make(const Object& source, const Object& target, IntMatrix m) {
  if (m.rows() != target.orders.size() || m.cols() != source.orders.size())
    throw PreconditionFailure("FinAb: matrix shape " + std::to_string(m.rows()) +
                              "x" + std::to_string(m.cols()) +
                              " does not match " + describe(source) + " -> " +
                              describe(target));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::int64_t n = target.orders[i];
      m(i, j) = mod_floor(m(i, j), n);
      if (mod_floor(checked_mul(source.orders[j], m(i, j)), n) != 0)
        throw PreconditionFailure("FinAb: matrix " + m.str() +
                                  " is not well defined from " +
                                  describe(source) + " to " + describe(target));
    }
  return {source, target, std::move(m)};
}

FinAbMap FinAb::identity(const Object& x) {
  return {x, x, IntMatrix::identity(x.orders.size())};
}

FinAbMap FinAb::compose(const Map& g, const Map& f) {
  require_composable<FinAb>(g, f);
  return make(f.source, g.target, g.matrix * f.matrix);
}

std::vector<FinAbMap> FinAb::hom(const Object& x, const Object& y) {
  const std::size_t rows = y.orders.size();
  const std::size_t cols = x.orders.size();
  // Entry (i, j) ranges over multiples of n_i / gcd(n_i, m_j).
  std::vector<std::int64_t> step(rows * cols), count(rows * cols);
  std::int64_t total = 1;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const std::int64_t g = std::gcd(y.orders[i], x.orders[j]);
      step[i * cols + j] = y.orders[i] / g;
      count[i * cols + j] = g;
      total = checked_mul(total, g);
      if (total > kMaxEnumerated)
        throw BudgetError("FinAb::hom: Hom set too large to enumerate");
    }
  std::vector<Map> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::int64_t> digit(rows * cols, 0);
  for (;;) {
    IntMatrix m(rows, cols);
    for (std::size_t k = 0; k < digit.size(); ++k)
      m(k / cols, k % cols) = digit[k] * step[k];
    out.push_back({x, y, std::move(m)});
    std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(digit.size()) - 1;
    while (pos >= 0 && digit[static_cast<std::size_t>(pos)] ==
                           count[static_cast<std::size_t>(pos)] - 1) {
      digit[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++digit[static_cast<std::size_t>(pos)];
  }
  return out;
}

std::int64_t FinAb::order(const Object& x) {
  std::int64_t n = 1;
  for (auto k : x.orders) n = checked_mul(n, k);
  return n;
}

std::vector<IntVector> FinAb::elements(const Object& x) {
  const std::int64_t n = order(x);
  if (n > kMaxEnumerated)
    throw BudgetError("FinAb::elements: group of order " + std::to_string(n) +
                      " too large to enumerate");
  std::vector<IntVector> out;
  out.reserve(static_cast<std::size_t>(n));
  IntVector v(x.orders.size(), 0);
  for (;;) {
    out.push_back(v);
    std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(v.size()) - 1;
    while (pos >= 0 && v[static_cast<std::size_t>(pos)] ==
                           x.orders[static_cast<std::size_t>(pos)] - 1) {
      v[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++v[static_cast<std::size_t>(pos)];
  }
  return out;
}

IntVector FinAb::reduce(const Object& x, IntVector v) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i], x.orders[i]);
  return v;
}

IntVector FinAb::apply(const Map& f, const IntVector& x) {
  return reduce(f.target, f.matrix * x);
}

FinAb::Subgroup FinAb::subgroup(const Object& g,
                                const std::vector<IntVector>& gens) {
  const std::size_t m = g.orders.size();
  const std::size_t k = gens.size();
  if (k == 0) return {zero_object(), {zero_object(), g, zero_matrix(m, 0)}};

  // Relations among the generators: kernel of [gens | diag(n)] over Z,
  // projected onto the generator coordinates.
  IntMatrix p(m, k + m);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) p(i, j) = gens[j][i];
  for (std::size_t i = 0; i < m; ++i) p(i, k + i) = g.orders[i];
  const SmithForm outer = smith_normal_form(p);
  IntMatrix rel(k, k + m - outer.rank);
  for (std::size_t c = outer.rank; c < k + m; ++c)
    for (std::size_t r = 0; r < k; ++r) rel(r, c - outer.rank) = outer.v(r, c);

  const SmithForm inner = smith_normal_form(rel);
  if (inner.rank != k)
    throw ComputationError("FinAb::subgroup: relation lattice not of full rank");

  std::vector<std::int64_t> orders;
  std::vector<IntVector> columns;
  for (std::size_t i = 0; i < k; ++i) {
    const std::int64_t d = inner.diagonal[i];
    if (d == 1) continue;
    IntVector h(m, 0);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t r = 0; r < m; ++r)
        h[r] = checked_add(h[r], checked_mul(inner.u_inverse(j, i), gens[j][r]));
    orders.push_back(d);
    columns.push_back(reduce(g, std::move(h)));
  }
  IntMatrix emb(m, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < m; ++r) emb(r, c) = columns[c][r];
  Object h{std::move(orders)};
  return {h, make(h, g, std::move(emb))};
}

namespace {

// Greedy generating set for a subgroup given by all of its elements.
std::vector<IntVector> greedy_generators(const FinAbObj& g,
                                         const std::vector<IntVector>& elems) {
  std::set<IntVector> span{IntVector(g.orders.size(), 0)};
  std::vector<IntVector> gens;
  for (const auto& e : elems) {
    if (span.count(e)) continue;
    gens.push_back(e);
    std::set<IntVector> grown;
    for (const auto& s : span) {
      IntVector cur = s;
      for (;;) {
        if (!grown.insert(cur).second) break;
        for (std::size_t i = 0; i < cur.size(); ++i)
          cur[i] = mod_floor(cur[i] + e[i], g.orders[i]);
      }
    }
    span = std::move(grown);
  }
  return gens;
}

}  // namespace

FinAb::Subgroup FinAb::kernel(const Map& f) {
  std::vector<IntVector> ker;
  for (const auto& x : elements(f.source))
    if (FinAb::apply(f, x) == IntVector(f.target.orders.size(), 0))
      ker.push_back(x);
  return subgroup(f.source, greedy_generators(f.source, ker));
}

FinAb::Limit FinAb::limit(const FiniteDiagram<FinAb>& d) {
  d.validate();
  Limit out;
  std::vector<std::size_t> offset{0};
  for (const auto& x : d.objects) {
    for (auto n : x.orders) out.product.orders.push_back(n);
    offset.push_back(out.product.orders.size());
  }
  auto block = [&](const IntVector& v, std::size_t k) {
    return IntVector(v.begin() + static_cast<std::ptrdiff_t>(offset[k]),
                     v.begin() + static_cast<std::ptrdiff_t>(offset[k + 1]));
  };
  std::vector<IntVector> compatible;
  for (const auto& x : elements(out.product)) {
    bool ok = true;
    for (const auto& a : d.arrows)
      if (apply(a.map, block(x, a.from)) != block(x, a.to)) {
        ok = false;
        break;
      }
    if (ok) compatible.push_back(x);
  }
  Subgroup h = subgroup(out.product, greedy_generators(out.product, compatible));
  out.apex = h.object;
  for (const auto& c : elements(out.apex))
    out.coordinates.emplace(apply(h.embedding, c), c);
  for (std::size_t k = 0; k < d.objects.size(); ++k) {
    IntMatrix proj(d.objects[k].orders.size(), out.product.orders.size());
    for (std::size_t i = 0; i < d.objects[k].orders.size(); ++i)
      proj(i, offset[k] + i) = 1;
    out.legs.push_back(compose(make(out.product, d.objects[k], std::move(proj)),
                               h.embedding));
  }
  return out;
}

FinAbMap FinAb::limit_factor(const Limit& l, const Object& apex,
                             const std::vector<Map>& legs) {
  if (legs.size() != l.legs.size())
    throw PreconditionFailure("FinAb::limit_factor: wrong number of legs");
  IntMatrix m(l.apex.orders.size(), apex.orders.size());
  for (std::size_t j = 0; j < apex.orders.size(); ++j) {
    IntVector e(apex.orders.size(), 0);
    e[j] = 1;
    IntVector tuple;
    for (const auto& leg : legs) {
      if (!(leg.source == apex))
        throw CompositionError("FinAb::limit_factor: leg source mismatch");
      for (auto v : apply(leg, e)) tuple.push_back(v);
    }
    auto it = l.coordinates.find(tuple);
    if (it == l.coordinates.end())
      throw PreconditionFailure("FinAb::limit_factor: legs do not form a cone");
    for (std::size_t i = 0; i < it->second.size(); ++i) m(i, j) = it->second[i];
  }
  Map out = make(apex, l.apex, std::move(m));
  for (std::size_t k = 0; k < legs.size(); ++k)
    if (!(compose(l.legs[k], out) == legs[k]))
      throw PreconditionFailure("FinAb::limit_factor: legs do not form a cone");
  return out;
}

FinAb::Colimit FinAb::colimit(const FiniteDiagram<FinAb>& d) {
  d.validate();
  std::vector<std::size_t> offset{0};
  std::vector<std::int64_t> orders;
  for (const auto& x : d.objects) {
    for (auto n : x.orders) orders.push_back(n);
    offset.push_back(orders.size());
  }
  const std::size_t total = orders.size();
  std::vector<IntVector> relations;
  for (const auto& a : d.arrows)
    for (std::size_t j = 0; j < d.objects[a.from].orders.size(); ++j) {
      IntVector v(total, 0);
      for (std::size_t i = 0; i < d.objects[a.to].orders.size(); ++i)
        v[offset[a.to] + i] += a.map.matrix(i, j);
      v[offset[a.from] + j] -= 1;
      relations.push_back(std::move(v));
    }
  IntMatrix p(total, relations.size() + total);
  for (std::size_t c = 0; c < relations.size(); ++c)
    for (std::size_t r = 0; r < total; ++r) p(r, c) = relations[c][r];
  for (std::size_t r = 0; r < total; ++r) p(r, relations.size() + r) = orders[r];
  const SmithForm s = smith_normal_form(p);

  Colimit out;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < total; ++i)
    if (s.diagonal[i] != 1) {
      kept.push_back(i);
      out.apex.orders.push_back(s.diagonal[i]);
    }
  for (std::size_t k = 0; k < d.objects.size(); ++k) {
    IntMatrix leg(kept.size(), d.objects[k].orders.size());
    for (std::size_t r = 0; r < kept.size(); ++r)
      for (std::size_t c = 0; c < d.objects[k].orders.size(); ++c)
        leg(r, c) = s.u(kept[r], offset[k] + c);
    out.legs.push_back(make(d.objects[k], out.apex, std::move(leg)));
  }
  for (std::size_t i : kept) {
    std::vector<IntVector> rep;
    for (std::size_t k = 0; k < d.objects.size(); ++k) {
      IntVector v;
      for (std::size_t c = offset[k]; c < offset[k + 1]; ++c)
        v.push_back(mod_floor(s.u_inverse(c, i), orders[c]));
      rep.push_back(std::move(v));
    }
    out.representative.push_back(std::move(rep));
  }
  return out;
}

FinAbMap FinAb::colimit_factor(const Colimit& c, const Object& target,
                               const std::vector<Map>& legs) {
  if (legs.size() != c.legs.size())
    throw PreconditionFailure("FinAb::colimit_factor: wrong number of legs");
  IntMatrix m(target.orders.size(), c.apex.orders.size());
  for (std::size_t g = 0; g < c.apex.orders.size(); ++g) {
    IntVector img(target.orders.size(), 0);
    for (std::size_t k = 0; k < legs.size(); ++k) {
      if (!(legs[k].target == target))
        throw CompositionError("FinAb::colimit_factor: leg target mismatch");
      const IntVector part = legs[k].matrix * c.representative[g][k];
      for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = checked_add(img[i], part[i]);
    }
    for (std::size_t i = 0; i < img.size(); ++i) m(i, g) = img[i];
  }
  Map out = make(c.apex, target, std::move(m));
  for (std::size_t k = 0; k < legs.size(); ++k)
    if (!(compose(out, c.legs[k]) == legs[k]))
      throw PreconditionFailure(
          "FinAb::colimit_factor: legs do not form a cocone");
  return out;
}

FinAbMap FinAb::zero_map(const Object& x, const Object& y) {
  return {x, y, IntMatrix(y.orders.size(), x.orders.size())};
}

std::int64_t FinAb::image_order(const Map& f) {
  std::set<IntVector> img;
  for (const auto& x : elements(f.source)) img.insert(apply(f, x));
  return static_cast<std::int64_t>(img.size());
}

bool FinAb::is_mono(const Map& f) { return image_order(f) == order(f.source); }

bool FinAb::is_epi(const Map& f) { return image_order(f) == order(f.target); }

bool FinAb::is_exact(const Map& f, const Map& g) {
  require_composable<FinAb>(g, f);
  if (!is_zero(compose(g, f))) return false;
  return order(g.source) / image_order(g) == image_order(f);
}

std::string FinAb::describe(const Object& x) {
  if (x.orders.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < x.orders.size(); ++i)
    os << (i ? "+" : "") << "Z/" << x.orders[i];
  return os.str();
}

std::string FinAb::describe(const Map& f) {
  return describe(f.source) + "->" + describe(f.target) + " " + f.matrix.str();
}

}  // namespace prolim
