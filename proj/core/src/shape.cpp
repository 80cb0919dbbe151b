#include "prolim/shape.hpp"

#include <algorithm>
#include <set>

#include "prolim/error.hpp"

namespace prolim {

std::string arrow_str(const ShapeArrow& a) {
  std::string s = std::to_string(a.source) + "->" + std::to_string(a.target);
  if (a.is_identity()) return s + "[id]";
  return s + "[" + std::to_string(a.tag) + "]";
}

ShapeArrow CofiniteCategory::compose(const ShapeArrow& g,
                                     const ShapeArrow& f) const {
  if (f.target != g.source)
    throw CompositionError(name() + ": cannot compose " + arrow_str(g) +
                           " after " + arrow_str(f));
  if (f.is_identity()) return g;
  if (g.is_identity()) return f;
  return compose_proper(g, f);
}

std::vector<ShapeArrow> CofiniteCategory::arrows(int a, int b) const {
  if (a == b) return {identity(a)};
  std::vector<ShapeArrow> out;
  for (const auto& x : arrows_from(a))
    if (x.target == b) out.push_back(x);
  return out;
}

std::vector<int> CofiniteCategory::objects_by_level(int depth) const {
  auto objs = objects(depth);
  std::stable_sort(objs.begin(), objs.end(), [&](int x, int y) {
    return std::pair(level(x), grade(x)) < std::pair(level(y), grade(y));
  });
  return objs;
}

void validate_shape(const CofiniteCategory& shape, int depth) {
  const auto objs = shape.objects(depth);
  const std::set<int> window(objs.begin(), objs.end());
  for (int a : objs)
    for (const auto& f : shape.arrows_from(a)) {
      if (f.source != a || f.is_identity())
        throw VerificationFailure(shape.name() + ": malformed arrow",
                                  arrow_str(f));
      if (!window.count(f.target))
        throw VerificationFailure(shape.name() + ": arrow leaves the window",
                                  arrow_str(f));
      if (shape.level(f.target) >= shape.level(a))
        throw VerificationFailure(shape.name() + ": arrow does not lower level",
                                  arrow_str(f));
      for (const auto& g : shape.arrows_from(f.target)) {
        const ShapeArrow h = shape.compose(g, f);
        const auto outs = shape.arrows_from(a);
        if (h.source != a || h.target != g.target ||
            std::find(outs.begin(), outs.end(), h) == outs.end())
          throw VerificationFailure(shape.name() + ": composite not listed",
                                    arrow_str(g) + " o " + arrow_str(f));
      }
    }
}

// --- FiniteCategory ---------------------------------------------------------

FiniteCategory::FiniteCategory(
    std::string label, std::vector<std::string> object_names,
    std::vector<Arrow> arrows,
    std::map<std::pair<ShapeArrow, ShapeArrow>, ShapeArrow> table)
    : label_(std::move(label)),
      names_(std::move(object_names)),
      arrows_(std::move(arrows)),
      table_(std::move(table)) {
  const int n = size();
  for (const auto& a : arrows_)
    if (a.arrow.source < 0 || a.arrow.source >= n || a.arrow.target < 0 ||
        a.arrow.target >= n || a.arrow.is_identity() ||
        a.arrow.source == a.arrow.target)
      throw PreconditionFailure(label_ + ": bad arrow " + arrow_str(a.arrow));
  level_.assign(names_.size(), 0);
  for (int round = 0; round <= n; ++round) {
    bool changed = false;
    for (const auto& a : arrows_) {
      auto& l = level_[static_cast<std::size_t>(a.arrow.source)];
      const int need = level_[static_cast<std::size_t>(a.arrow.target)] + 1;
      if (l < need) {
        l = need;
        changed = true;
      }
    }
    if (!changed) break;
    if (round == n) throw PreconditionFailure(label_ + ": arrows form a cycle");
  }
  for (const auto& f : arrows_)
    for (const auto& g : arrows_)
      if (f.arrow.target == g.arrow.source &&
          !table_.count({g.arrow, f.arrow}))
        throw PreconditionFailure(label_ + ": no composite for " +
                                  arrow_str(g.arrow) + " o " +
                                  arrow_str(f.arrow));
}

std::shared_ptr<FiniteCategory> FiniteCategory::from_poset(
    std::string label, int n, const std::vector<std::pair<int, int>>& hasse) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<bool>> le(un, std::vector<bool>(un, false));
  for (std::size_t i = 0; i < un; ++i) le[i][i] = true;
  for (auto [lo, hi] : hasse)
    le.at(static_cast<std::size_t>(lo)).at(static_cast<std::size_t>(hi)) = true;
  for (std::size_t k = 0; k < un; ++k)
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  std::vector<Arrow> arrows;
  for (int hi = 0; hi < n; ++hi)
    for (int lo = 0; lo < n; ++lo)
      if (lo != hi && le[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)])
        arrows.push_back({{hi, lo, 0}, ""});
  std::map<std::pair<ShapeArrow, ShapeArrow>, ShapeArrow> table;
  for (const auto& f : arrows)
    for (const auto& g : arrows)
      if (f.arrow.target == g.arrow.source)
        table[{g.arrow, f.arrow}] = {f.arrow.source, g.arrow.target, 0};
  return std::make_shared<FiniteCategory>(std::move(label), std::move(names),
                                          std::move(arrows), std::move(table));
}

std::shared_ptr<FiniteCategory> FiniteCategory::without_composites(
    std::string label, std::vector<std::string> object_names,
    const std::vector<std::pair<int, int>>& arrows) {
  std::vector<Arrow> out;
  std::map<std::pair<int, int>, int> count;
  for (auto [s, t] : arrows)
    out.push_back({{s, t, count[{s, t}]++}, ""});
  return std::make_shared<FiniteCategory>(std::move(label),
                                          std::move(object_names),
                                          std::move(out), std::map<std::pair<ShapeArrow, ShapeArrow>, ShapeArrow>{});
}

std::shared_ptr<FiniteCategory> FiniteCategory::single() {
  return from_poset("point", 1, {});
}

std::shared_ptr<FiniteCategory> FiniteCategory::discrete(int n) {
  return from_poset("discrete-" + std::to_string(n), n, {});
}

std::shared_ptr<FiniteCategory> FiniteCategory::arrow() {
  return from_poset("arrow", 2, {{1, 0}});
}

std::shared_ptr<FiniteCategory> FiniteCategory::coequalizer() {
  return without_composites("coequalizer", {"0", "1"}, {{0, 1}, {0, 1}});
}

std::shared_ptr<FiniteCategory> FiniteCategory::span() {
  return from_poset("span", 3, {{1, 0}, {2, 0}});
}

std::shared_ptr<FiniteCategory> FiniteCategory::cospan() {
  return from_poset("cospan", 3, {{2, 0}, {2, 1}});
}

std::shared_ptr<FiniteCategory> FiniteCategory::square() {
  return from_poset("square", 4, {{1, 0}, {2, 0}, {3, 1}, {3, 2}});
}

std::vector<int> FiniteCategory::objects(int depth) const {
  std::vector<int> out;
  for (int a = 0; a < size(); ++a)
    if (level(a) <= depth) out.push_back(a);
  return out;
}

int FiniteCategory::level(int a) const {
  return level_.at(static_cast<std::size_t>(a));
}

std::vector<ShapeArrow> FiniteCategory::arrows_from(int a) const {
  std::vector<ShapeArrow> out;
  for (const auto& x : arrows_)
    if (x.arrow.source == a) out.push_back(x.arrow);
  return out;
}

std::string FiniteCategory::object_name(int a) const {
  return names_.at(static_cast<std::size_t>(a));
}

std::string FiniteCategory::arrow_label(const ShapeArrow& a) const {
  for (const auto& x : arrows_)
    if (x.arrow == a && !x.label.empty()) return x.label;
  return arrow_str(a);
}

ShapeArrow FiniteCategory::compose_proper(const ShapeArrow& g,
                                          const ShapeArrow& f) const {
  auto it = table_.find({g, f});
  if (it == table_.end())
    throw CompositionError(label_ + ": no composite for " + arrow_str(g) +
                           " o " + arrow_str(f));
  return it->second;
}

// --- ChainCategory ----------------------------------------------------------

std::vector<int> ChainCategory::objects(int depth) const {
  std::vector<int> out;
  for (int n = 0; n <= depth; ++n) out.push_back(n);
  return out;
}

std::vector<ShapeArrow> ChainCategory::arrows_from(int a) const {
  std::vector<ShapeArrow> out;
  for (int m = a - 1; m >= 0; --m) out.push_back({a, m, 0});
  return out;
}

ShapeArrow ChainCategory::compose_proper(const ShapeArrow& g,
                                         const ShapeArrow& f) const {
  return {f.source, g.target, 0};
}

// --- PosetCategory ----------------------------------------------------------

PosetCategory::PosetCategory(DirectedSetPtr set) : set_(std::move(set)) {
  if (!set_->is_cofinite())
    throw PreconditionFailure("PosetCategory: " + set_->name() +
                              " is not cofinite");
}

std::vector<int> PosetCategory::objects(int depth) const {
  const auto n = set_->elements(depth).size();
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(i);
  return out;
}

Index PosetCategory::element(int a) const {
  return set_->nth(static_cast<std::size_t>(a));
}

int PosetCategory::object_of(const Index& i) const {
  return static_cast<int>(set_->position(i));
}

int PosetCategory::grade(int a) const { return set_->grade(element(a)); }

int PosetCategory::level(int a) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = levels_.find(a); it != levels_.end()) return it->second;
  }
  // Longest chain below; elements below have strictly smaller position.
  int best = 0;
  for (const auto& b : set_->below(element(a)))
    best = std::max(best, level(object_of(b)) + 1);
  std::lock_guard lock(mutex_);
  levels_[a] = best;
  return best;
}

std::vector<ShapeArrow> PosetCategory::arrows_from(int a) const {
  std::vector<ShapeArrow> out;
  for (const auto& b : set_->below(element(a))) out.push_back({a, object_of(b), 0});
  return out;
}

std::string PosetCategory::object_name(int a) const {
  return index_str(element(a));
}

ShapeArrow PosetCategory::compose_proper(const ShapeArrow& g,
                                         const ShapeArrow& f) const {
  return {f.source, g.target, 0};
}

// --- SequentialShape --------------------------------------------------------

std::vector<int> SequentialShape::objects(int depth) const {
  std::vector<int> out;
  for (int n = 0; n <= depth; ++n) {
    out.push_back(bottom(n));
    if (n < depth) out.push_back(top(n));
  }
  return out;
}

std::vector<ShapeArrow> SequentialShape::arrows_from(int a) const {
  if (a % 2 == 0) return {};
  const int n = a / 2;
  return {{a, bottom(n), 0}, {a, bottom(n + 1), 1}};
}

std::string SequentialShape::object_name(int a) const {
  return (a % 2 ? "T" : "B") + std::to_string(a / 2);
}

ShapeArrow SequentialShape::compose_proper(const ShapeArrow& g,
                                           const ShapeArrow& f) const {
  throw CompositionError("sequential: no composable non-identity arrows " +
                         arrow_str(g) + " o " + arrow_str(f));
}

// --- Realization ------------------------------------------------------------

std::vector<SimplicialOperator> simplicial_operators(int m, int n) {
  std::vector<SimplicialOperator> out;
  std::vector<int> v(static_cast<std::size_t>(m + 1), 0);
  auto rec = [&](auto&& self, std::size_t pos, int lo) -> void {
    if (pos == v.size()) {
      out.push_back({m, n, v});
      return;
    }
    for (int x = lo; x <= n; ++x) {
      v[pos] = x;
      self(self, pos + 1, x);
    }
  };
  rec(rec, 0, 0);
  return out;
}

RealizationShape::RealizationShape(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw PreconditionFailure("realization: n_max must be >= 0");
  std::vector<std::string> names;
  for (int n = 0; n <= n_max; ++n)
    names.push_back("X" + std::to_string(n) + "*D" + std::to_string(n));
  std::vector<std::pair<int, int>> arrows;
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n_max; ++m)
      for (auto& op : simplicial_operators(m, n)) {
        bool identity = m == n;
        for (int i = 0; identity && i <= m; ++i)
          identity = op.values[static_cast<std::size_t>(i)] == i;
        if (identity) continue;
        const int obj = static_cast<int>(names.size());
        names.push_back("X" + std::to_string(n) + "*D" + std::to_string(m) +
                        "#" + std::to_string(ops_.size()));
        arrows.push_back({obj, diagonal(n)});
        arrows.push_back({obj, diagonal(m)});
        ops_.push_back(std::move(op));
      }
  shape_ = FiniteCategory::without_composites("realization", std::move(names),
                                              arrows);
}

const SimplicialOperator& RealizationShape::op(int object) const {
  if (is_diagonal(object))
    throw PreconditionFailure("realization: diagonal object has no operator");
  return ops_.at(static_cast<std::size_t>(object - n_max_ - 1));
}

}  // namespace prolim
