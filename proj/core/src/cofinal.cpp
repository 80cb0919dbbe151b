#include "prolim/cofinal.hpp"

#include <algorithm>

#include "prolim/error.hpp"

namespace prolim {

Certificate verify_cofinal(const CofinalFunctor& f,
                           const TruncationBudget& budget) {
  budget.validate();
  Certificate c{"cofinal " + f.label, Verdict::certified, budget.depth, {}, ""};
  const auto window = f.source->elements(budget.depth);
  for (const auto& x : window)
    for (const auto& y : window)
      if (f.source->leq(x, y) && !f.target->leq(f.map(x), f.map(y))) {
        c.verdict = Verdict::refuted;
        c.detail = "not monotone: " + index_str(x) + " <= " + index_str(y);
        return c;
      }
  const auto candidates = f.source->elements(budget.search_depth);
  const auto size = f.source->finite_size();
  const bool source_exhausted = size && candidates.size() == *size;
  for (const auto& s : f.target->elements(budget.depth)) {
    bool found = false;
    for (const auto& t : candidates)
      if (f.target->leq(s, f.map(t))) {
        c.witnesses.push_back(index_str(s) + " <= F" + index_str(t) + " = " +
                              index_str(f.map(t)));
        found = true;
        break;
      }
    if (found) continue;
    c.verdict = source_exhausted ? Verdict::refuted : Verdict::exhausted;
    c.depth = f.target->grade(s);
    c.detail = "no source element maps above " + index_str(s);
    return c;
  }
  return c;
}

namespace {

/// Memoized F on finite subsets of the target's enumeration.
struct SubsetMap {
  DirectedSetPtr target;
  int search_depth;
  std::mutex mutex;
  std::map<Index, Index> memo;

  Index least_above(const std::vector<Index>& xs) {
    int g = 0;
    for (const auto& x : xs) g = std::max(g, target->grade(x));
    const int limit = g + search_depth;
    for (const auto& e : target->elements(limit)) {
      bool above = true;
      for (const auto& x : xs) above = above && target->leq(x, e);
      if (above) return e;
    }
    throw BudgetError(target->name() + ": no common upper bound within depth " +
                      std::to_string(limit));
  }

  Index operator()(const Index& subset) {
    {
      std::lock_guard lock(mutex);
      if (auto it = memo.find(subset); it != memo.end()) return it->second;
    }
    std::vector<Index> bounds;
    for (int p : subset) bounds.push_back(target->nth(static_cast<std::size_t>(p)));
    if (subset.size() > 1)
      for (std::size_t drop = 0; drop < subset.size(); ++drop) {
        Index smaller;
        for (std::size_t k = 0; k < subset.size(); ++k)
          if (k != drop) smaller.push_back(subset[k]);
        bounds.push_back((*this)(smaller));
      }
    Index value = least_above(bounds);
    std::lock_guard lock(mutex);
    memo.emplace(subset, value);
    return value;
  }
};

}  // namespace

Reindexing cofinal_reindex(const DirectedSetPtr& target,
                           const TruncationBudget& budget, ReindexMode mode) {
  budget.validate();
  Reindexing r;
  if (target->is_cofinite() && mode == ReindexMode::automatic) {
    r.index = target;
    r.functor = {target, target, [](const Index& i) { return i; },
                 "identity on " + target->name()};
  } else {
    auto memo = std::make_shared<SubsetMap>();
    memo->target = target;
    memo->search_depth = budget.search_depth;
    r.index = std::make_shared<FiniteSubsets>(target);
    r.functor = {r.index, target,
                 [memo](const Index& s) { return (*memo)(s); },
                 "finite subsets of " + target->name()};
  }
  r.certificate = verify_cofinal(r.functor, budget);
  return r;
}

}  // namespace prolim
