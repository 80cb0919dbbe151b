#include "prolim/kposet.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "prolim/error.hpp"

namespace prolim {

KPoset::KPoset(ShapePtr shape, int shape_depth, DirectedSetPtr base)
    : shape_(std::move(shape)), shape_depth_(shape_depth), base_(std::move(base)) {
  auto w = base_->width();
  if (!w) throw PreconditionFailure("KPoset: base set needs fixed width");
  w_ = *w;
  objs_ = shape_->objects(shape_depth_);
  if (objs_.empty()) throw PreconditionFailure("KPoset: empty shape window");
  below_.resize(objs_.size());
  for (std::size_t i = 0; i < objs_.size(); ++i)
    for (const auto& f : shape_->arrows_from(objs_[i]))
      below_[i].push_back(static_cast<int>(slot(f.target)));
  for (int a : shape_->objects_by_level(shape_depth_))
    by_level_.push_back(static_cast<int>(slot(a)));
}

std::string KPoset::name() const {
  return "K(" + shape_->name() + "@" + std::to_string(shape_depth_) + ", " +
         base_->name() + ")";
}

std::size_t KPoset::slot(int object) const {
  auto it = std::find(objs_.begin(), objs_.end(), object);
  if (it == objs_.end())
    throw PreconditionFailure("KPoset: object " + std::to_string(object) +
                              " outside the shape window");
  return static_cast<std::size_t>(it - objs_.begin());
}

Index KPoset::coordinate(const Index& tuple, int object) const {
  const auto s = slot(object) * w_;
  return Index(tuple.begin() + static_cast<std::ptrdiff_t>(s),
               tuple.begin() + static_cast<std::ptrdiff_t>(s + w_));
}

Index KPoset::make(const std::vector<Index>& coords) const {
  Index out;
  for (const auto& c : coords) out.insert(out.end(), c.begin(), c.end());
  return out;
}

Index KPoset::diagonal(const Index& s) const {
  return make(std::vector<Index>(objs_.size(), s));
}

std::vector<Index> KPoset::product_elements(int depth) const {
  std::map<int, std::vector<Index>> by_grade;
  for (auto& e : base_->elements(depth))
    by_grade[base_->grade(e)].push_back(std::move(e));
  std::vector<Index> out;
  std::vector<Index> cur(objs_.size());
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos == objs_.size()) {
      if (left == 0) out.push_back(make(cur));
      return;
    }
    for (const auto& [g, es] : by_grade) {
      if (g > left) break;
      for (const auto& e : es) {
        cur[pos] = e;
        self(self, pos + 1, left - g);
      }
    }
  };
  for (int g = 0; g <= depth; ++g) rec(rec, 0, g);
  return out;
}

std::vector<Index> KPoset::elements(int depth) const {
  std::vector<Index> out;
  for (auto& t : product_elements(depth))
    if (contains(t)) out.push_back(std::move(t));
  return out;
}

int KPoset::grade(const Index& i) const {
  int g = 0;
  for (int a : objs_) g += base_->grade(coordinate(i, a));
  return g;
}

bool KPoset::contains(const Index& i) const {
  if (i.size() != w_ * objs_.size()) return false;
  for (int a : objs_)
    if (!base_->contains(coordinate(i, a))) return false;
  for (std::size_t k = 0; k < objs_.size(); ++k)
    for (int b : below_[k])
      if (!base_->leq(coordinate(i, objs_[static_cast<std::size_t>(b)]),
                      coordinate(i, objs_[k])))
        return false;
  return true;
}

bool KPoset::leq(const Index& a, const Index& b) const {
  for (int x : objs_)
    if (!base_->leq(coordinate(a, x), coordinate(b, x))) return false;
  return true;
}

std::optional<Index> KPoset::join(const Index& a, const Index& b) const {
  return k_refine(*this, a, b);
}

Index KPoset::least_above(const std::vector<Index>& xs) const {
  if (base_->join(xs.front(), xs.front())) {
    Index u = xs.front();
    for (const auto& x : xs) {
      auto j = base_->join(u, x);
      if (!j) break;
      u = *j;
    }
    bool ok = true;
    for (const auto& x : xs) ok = ok && base_->leq(x, u);
    if (ok) return u;
  }
  int g = 0;
  for (const auto& x : xs) g = std::max(g, base_->grade(x));
  for (int d = g;; ++d) {
    if (d > g + 64)
      throw BudgetError(base_->name() + ": no upper bound found for a K-tuple");
    for (const auto& e : base_->elements(d)) {
      bool above = true;
      for (const auto& x : xs) above = above && base_->leq(x, e);
      if (above) return e;
    }
  }
}

namespace {

Index induct(const KPoset& k, const std::vector<std::vector<Index>>& lower,
             const std::vector<int>& by_level,
             const std::vector<std::vector<int>>& below,
             const std::function<Index(const std::vector<Index>&)>& least) {
  std::vector<Index> u(lower.size());
  for (int s : by_level) {
    const auto slot = static_cast<std::size_t>(s);
    std::vector<Index> bounds = lower[slot];
    for (int b : below[slot]) bounds.push_back(u[static_cast<std::size_t>(b)]);
    u[slot] = least(bounds);
  }
  return k.make(u);
}

}  // namespace

Index k_refine(const KPoset& k, const Index& s, const Index& t) {
  if (!k.contains(s) || !k.contains(t))
    throw PreconditionFailure("k_refine: arguments must lie in K");
  std::vector<std::vector<Index>> lower;
  for (int a : k.objs_) lower.push_back({k.coordinate(s, a), k.coordinate(t, a)});
  return induct(k, lower, k.by_level_, k.below_,
                [&](const std::vector<Index>& xs) { return k.least_above(xs); });
}

Index k_inclusion_witness(const KPoset& k, const Index& p) {
  std::vector<std::vector<Index>> lower;
  for (int a : k.objs_) lower.push_back({k.coordinate(p, a)});
  return induct(k, lower, k.by_level_, k.below_,
                [&](const std::vector<Index>& xs) { return k.least_above(xs); });
}

Index k_projection_witness(const KPoset& k, int object, const Index& x) {
  std::vector<Index> coords(k.shape_objects().size(), k.base()->nth(0));
  coords[k.slot(object)] = x;
  return k_inclusion_witness(k, k.make(coords));
}

Certificate k_inclusion_cofinal(const KPoset& k, const TruncationBudget& b) {
  b.validate();
  Certificate c{"K inclusion cofinal", Verdict::certified, b.depth, {}, ""};
  NodeCounter nodes(b.node_cap);
  for (const auto& p : k.product_elements(b.depth)) {
    if (!nodes.tick()) {
      c.verdict = Verdict::exhausted;
      c.detail = "node cap reached";
      return c;
    }
    const Index w = k_inclusion_witness(k, p);
    if (!k.contains(w) || !k.leq(p, w)) {
      c.verdict = Verdict::refuted;
      c.detail = "bad witness for " + index_str(p);
      return c;
    }
    c.witnesses.push_back(index_str(p) + " <= " + index_str(w));
  }
  return c;
}

Certificate k_projection_cofinal(const KPoset& k, int object,
                                 const TruncationBudget& b) {
  b.validate();
  Certificate c{"K projection cofinal at " + k.shape()->object_name(object),
                Verdict::certified, b.depth, {}, ""};
  for (const auto& x : k.base()->elements(b.depth)) {
    const Index w = k_projection_witness(k, object, x);
    if (!k.contains(w) || !k.base()->leq(x, k.coordinate(w, object))) {
      c.verdict = Verdict::refuted;
      c.detail = "bad witness for " + index_str(x);
      return c;
    }
    c.witnesses.push_back(index_str(x) + " <= U" + index_str(w));
  }
  return c;
}

}  // namespace prolim
