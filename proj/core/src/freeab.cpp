#include "prolim/freeab.hpp"

#include <algorithm>
#include <sstream>

#include "prolim/error.hpp"

namespace prolim {

FreeAbObj FreeAb::interval(int lo, int hi) {
  Object x;
  for (int i = lo; i <= hi; ++i) x.labels.push_back(i);
  return x;
}

FreeAbObj FreeAb::rank(int r) { return interval(0, r - 1); }

FreeAbMap FreeAb::make(const Object& source, const Object& target,
                       IntMatrix m) {
  if (m.rows() != target.rank() || m.cols() != source.rank())
    throw PreconditionFailure("FreeAb: matrix shape does not match " +
                              describe(source) + " -> " + describe(target));
  return {source, target, std::move(m)};
}

FreeAbMap FreeAb::label_map(const Object& source, const Object& target) {
  IntMatrix m(target.rank(), source.rank());
  for (std::size_t j = 0; j < source.rank(); ++j) {
    auto it = std::find(target.labels.begin(), target.labels.end(),
                        source.labels[j]);
    if (it != target.labels.end())
      m(static_cast<std::size_t>(it - target.labels.begin()), j) = 1;
  }
  return {source, target, std::move(m)};
}

FreeAbMap FreeAb::identity(const Object& x) {
  return {x, x, IntMatrix::identity(x.rank())};
}

FreeAbMap FreeAb::compose(const Map& g, const Map& f) {
  require_composable<FreeAb>(g, f);
  return {f.source, g.target, g.matrix * f.matrix};
}

FreeAb::Colimit FreeAb::colimit(const FiniteDiagram<FreeAb>& d) {
  d.validate();
  std::vector<std::size_t> offset{0};
  for (const auto& x : d.objects) offset.push_back(offset.back() + x.rank());
  const std::size_t total = offset.back();
  std::vector<std::vector<std::int64_t>> relations;
  for (const auto& a : d.arrows)
    for (std::size_t j = 0; j < d.objects[a.from].rank(); ++j) {
      std::vector<std::int64_t> v(total, 0);
      for (std::size_t i = 0; i < d.objects[a.to].rank(); ++i)
        v[offset[a.to] + i] += a.map.matrix(i, j);
      v[offset[a.from] + j] -= 1;
      relations.push_back(std::move(v));
    }
  IntMatrix p(total, relations.size());
  for (std::size_t c = 0; c < relations.size(); ++c)
    for (std::size_t r = 0; r < total; ++r) p(r, c) = relations[c][r];
  const SmithForm s = smith_normal_form(p);
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.diagonal[i] != 1)
      throw ComputationError("FreeAb::colimit: cokernel has torsion Z/" +
                             std::to_string(s.diagonal[i]));

  Colimit out;
  const std::size_t free_rank = total - s.rank;
  out.apex = rank(static_cast<int>(free_rank));
  for (std::size_t k = 0; k < d.objects.size(); ++k) {
    IntMatrix leg(free_rank, d.objects[k].rank());
    for (std::size_t r = 0; r < free_rank; ++r)
      for (std::size_t c = 0; c < d.objects[k].rank(); ++c)
        leg(r, c) = s.u(s.rank + r, offset[k] + c);
    out.legs.push_back({d.objects[k], out.apex, std::move(leg)});
  }
  for (std::size_t r = 0; r < free_rank; ++r) {
    std::vector<std::vector<std::int64_t>> rep;
    for (std::size_t k = 0; k < d.objects.size(); ++k) {
      std::vector<std::int64_t> v;
      for (std::size_t c = offset[k]; c < offset[k + 1]; ++c)
        v.push_back(s.u_inverse(c, s.rank + r));
      rep.push_back(std::move(v));
    }
    out.representative.push_back(std::move(rep));
  }
  return out;
}

FreeAbMap FreeAb::colimit_factor(const Colimit& c, const Object& target,
                                 const std::vector<Map>& legs) {
  if (legs.size() != c.legs.size())
    throw PreconditionFailure("FreeAb::colimit_factor: wrong number of legs");
  IntMatrix m(target.rank(), c.apex.rank());
  for (std::size_t g = 0; g < c.apex.rank(); ++g)
    for (std::size_t k = 0; k < legs.size(); ++k) {
      if (!(legs[k].target == target))
        throw CompositionError("FreeAb::colimit_factor: leg target mismatch");
      const auto part = legs[k].matrix * c.representative[g][k];
      for (std::size_t i = 0; i < part.size(); ++i)
        m(i, g) = checked_add(m(i, g), part[i]);
    }
  Map out{c.apex, target, std::move(m)};
  for (std::size_t k = 0; k < legs.size(); ++k)
    if (!(compose(out, c.legs[k]) == legs[k]))
      throw PreconditionFailure(
          "FreeAb::colimit_factor: legs do not form a cocone");
  return out;
}

FreeAbMap FreeAb::zero_map(const Object& x, const Object& y) {
  return {x, y, IntMatrix(y.rank(), x.rank())};
}

bool FreeAb::is_mono(const Map& f) {
  return rational_rank(f.matrix) == f.source.rank();
}

bool FreeAb::is_epi(const Map& f) {
  const SmithForm s = smith_normal_form(f.matrix);
  if (s.rank != f.target.rank()) return false;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.diagonal[i] != 1) return false;
  return true;
}

bool FreeAb::is_iso(const Map& f) {
  return f.source.rank() == f.target.rank() && is_epi(f);
}

std::string FreeAb::describe(const Object& x) {
  if (x.labels.empty()) return "0";
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < x.labels.size(); ++i)
    os << (i ? "," : "") << "a" << x.labels[i];
  os << ">";
  return os.str();
}

std::string FreeAb::describe(const Map& f) {
  return describe(f.source) + "->" + describe(f.target) + " " + f.matrix.str();
}

}  // namespace prolim
