#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "prolim/budget.hpp"
#include "prolim/certificate.hpp"
#include "prolim/directed_set.hpp"

namespace prolim {

/// Monotone map of directed sets, claimed cofinal.
struct CofinalFunctor {
  DirectedSetPtr source;
  DirectedSetPtr target;
  std::function<Index(const Index&)> map;
  std::string label;
};

/// For each target element of grade <= depth, looks for a source element
/// within the search depth mapping above it; also checks monotonicity on
/// the window. Refutes only when the source is finite and fully searched.
Certificate verify_cofinal(const CofinalFunctor& f,
                           const TruncationBudget& budget);

struct Reindexing {
  DirectedSetPtr index;
  CofinalFunctor functor;
  Certificate certificate;
};

enum class ReindexMode { automatic, finite_subsets };

/// A cofinite directed set with a cofinal functor into `target`. Cofinite
/// targets are returned unchanged unless `finite_subsets` is forced. Otherwise
/// the index is the set of finite subsets of the target's enumeration and
/// F(S) is the least element above every member of S and above F(S') for
/// each maximal proper subset S'.
Reindexing cofinal_reindex(const DirectedSetPtr& target,
                           const TruncationBudget& budget,
                           ReindexMode mode = ReindexMode::automatic);

}  // namespace prolim
