#include "prolim/finset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace prolim {

FinSetMap FinSet::make(std::vector<int> images, int target_size) {
  if (target_size < 0) throw PreconditionFailure("FinSet: negative size");
  for (int v : images)
    if (v < 0 || v >= target_size)
      throw PreconditionFailure("FinSet: image " + std::to_string(v) +
                                " outside target of size " +
                                std::to_string(target_size));
  return {std::move(images), target_size};
}

FinSetMap FinSet::identity(const Object& x) {
  std::vector<int> img(static_cast<std::size_t>(x.size));
  std::iota(img.begin(), img.end(), 0);
  return {std::move(img), x.size};
}

FinSetMap FinSet::compose(const Map& g, const Map& f) {
  require_composable<FinSet>(g, f);
  std::vector<int> img(f.images.size());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[i] = g.images[static_cast<std::size_t>(f.images[i])];
  return {std::move(img), g.target_size};
}

std::vector<FinSetMap> FinSet::hom(const Object& x, const Object& y) {
  std::vector<Map> out;
  if (x.size == 0) return {Map{{}, y.size}};
  if (y.size == 0) return out;
  std::vector<int> img(static_cast<std::size_t>(x.size), 0);
  // Lexicographic with the first element most significant.
  for (;;) {
    out.push_back({img, y.size});
    int pos = x.size - 1;
    while (pos >= 0 && img[static_cast<std::size_t>(pos)] == y.size - 1) {
      img[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++img[static_cast<std::size_t>(pos)];
  }
  return out;
}

FinSet::Limit FinSet::limit(const FiniteDiagram<FinSet>& d) {
  d.validate();
  const std::size_t n = d.objects.size();
  Limit out;
  std::vector<int> tuple(n, 0);
  // Depth-first over coordinates, pruning on arrows whose ends are fixed.
  auto consistent_upto = [&](std::size_t k) {
    for (const auto& a : d.arrows) {
      const std::size_t hi = std::max(a.from, a.to);
      if (hi != k) continue;
      if (a.map.images[static_cast<std::size_t>(tuple[a.from])] != tuple[a.to])
        return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      out.index.emplace(tuple, static_cast<int>(out.tuples.size()));
      out.tuples.push_back(tuple);
      return;
    }
    for (int v = 0; v < d.objects[k].size; ++v) {
      tuple[k] = v;
      if (consistent_upto(k)) self(self, k + 1);
    }
  };
  rec(rec, 0);
  out.apex = {static_cast<int>(out.tuples.size())};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<int> img(out.tuples.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = out.tuples[i][k];
    out.legs.push_back({std::move(img), d.objects[k].size});
  }
  return out;
}

FinSetMap FinSet::limit_factor(const Limit& l, const Object& apex,
                               const std::vector<Map>& legs) {
  if (legs.size() != l.legs.size())
    throw PreconditionFailure("FinSet::limit_factor: wrong number of legs");
  std::vector<int> img(static_cast<std::size_t>(apex.size));
  std::vector<int> tuple(legs.size());
  for (int x = 0; x < apex.size; ++x) {
    for (std::size_t k = 0; k < legs.size(); ++k) {
      if (legs[k].source() != apex)
        throw CompositionError("FinSet::limit_factor: leg source mismatch");
      tuple[k] = legs[k].images[static_cast<std::size_t>(x)];
    }
    auto it = l.index.find(tuple);
    if (it == l.index.end())
      throw PreconditionFailure("FinSet::limit_factor: legs do not form a cone");
    img[static_cast<std::size_t>(x)] = it->second;
  }
  return {std::move(img), l.apex.size};
}

FinSet::Colimit FinSet::colimit(const FiniteDiagram<FinSet>& d) {
  d.validate();
  std::vector<std::size_t> offset(d.objects.size() + 1, 0);
  for (std::size_t k = 0; k < d.objects.size(); ++k)
    offset[k + 1] = offset[k] + static_cast<std::size_t>(d.objects[k].size);
  std::vector<std::size_t> parent(offset.back());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& a : d.arrows)
    for (std::size_t i = 0; i < a.map.images.size(); ++i) {
      const std::size_t x = find(offset[a.from] + i);
      const std::size_t y =
          find(offset[a.to] + static_cast<std::size_t>(a.map.images[i]));
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  Colimit out;
  std::vector<int> cls(offset.back(), -1);
  std::vector<int> root_class(offset.back(), -1);
  for (std::size_t k = 0; k < d.objects.size(); ++k)
    for (int e = 0; e < d.objects[k].size; ++e) {
      const std::size_t g = offset[k] + static_cast<std::size_t>(e);
      const std::size_t r = find(g);
      if (root_class[r] < 0) {
        root_class[r] = static_cast<int>(out.representative.size());
        out.representative.emplace_back(k, e);
      }
      cls[g] = root_class[r];
    }
  out.apex = {static_cast<int>(out.representative.size())};
  for (std::size_t k = 0; k < d.objects.size(); ++k) {
    std::vector<int> img(static_cast<std::size_t>(d.objects[k].size));
    for (std::size_t e = 0; e < img.size(); ++e) img[e] = cls[offset[k] + e];
    out.legs.push_back({std::move(img), out.apex.size});
  }
  return out;
}

FinSetMap FinSet::colimit_factor(const Colimit& c, const Object& target,
                                 const std::vector<Map>& legs) {
  if (legs.size() != c.legs.size())
    throw PreconditionFailure("FinSet::colimit_factor: wrong number of legs");
  for (const auto& l : legs)
    if (l.target() != target)
      throw CompositionError("FinSet::colimit_factor: leg target mismatch");
  std::vector<int> img(static_cast<std::size_t>(c.apex.size), -1);
  for (std::size_t k = 0; k < legs.size(); ++k)
    for (std::size_t e = 0; e < c.legs[k].images.size(); ++e) {
      const auto cls = static_cast<std::size_t>(c.legs[k].images[e]);
      const int v = legs[k].images[e];
      if (img[cls] >= 0 && img[cls] != v)
        throw PreconditionFailure(
            "FinSet::colimit_factor: legs do not form a cocone");
      img[cls] = v;
    }
  return {std::move(img), target.size};
}

bool FinSet::is_injective(const Map& f) {
  std::set<int> seen(f.images.begin(), f.images.end());
  return seen.size() == f.images.size();
}

bool FinSet::is_surjective(const Map& f) {
  return image_size(f) == f.target_size;
}

bool FinSet::is_iso(const Map& f) {
  return is_injective(f) && is_surjective(f);
}

int FinSet::image_size(const Map& f) {
  return static_cast<int>(std::set<int>(f.images.begin(), f.images.end()).size());
}

FinSetMap FinSet::constant(int source_size, int target_size, int value) {
  return make(std::vector<int>(static_cast<std::size_t>(source_size), value),
              target_size);
}

std::string FinSet::describe(const Object& x) {
  return std::to_string(x.size);
}

std::string FinSet::describe(const Map& f) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < f.images.size(); ++i)
    os << (i ? "," : "") << f.images[i];
  os << "]->" << f.target_size;
  return os.str();
}

}  // namespace prolim
