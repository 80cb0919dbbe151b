#pragma once

#include <cstddef>
#include <string_view>

#include "prolim/error.hpp"

namespace prolim {

/// Finite window onto an infinite shape.
///
/// `depth` bounds the indices a check is asserted for; `search_depth`
/// bounds how far refinement searches may look past them (it is never
/// smaller than `depth`); `node_cap` bounds the work of any single search.
struct TruncationBudget {
  int depth = 4;
  int search_depth = 6;
  std::size_t node_cap = 2'000'000;

  static TruncationBudget at(int d) { return {d, d + 2, 2'000'000}; }
  static TruncationBudget at(int d, int search) {
    return {d, search < d ? d : search, 2'000'000};
  }

  void validate() const {
    if (depth < 0) throw PreconditionFailure("truncation depth must be >= 0");
    if (search_depth < depth)
      throw PreconditionFailure("search depth must be >= depth");
  }
};

/// Outcome of a depth-qualified check.
enum class Verdict { certified, refuted, undetermined, exhausted };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::undetermined: return "undetermined";
    case Verdict::exhausted: return "exhausted";
  }
  return "?";
}

/// Counts search steps against a cap.
class NodeCounter {
 public:
  explicit NodeCounter(std::size_t cap) : cap_(cap) {}
  /// Returns false once the cap is exceeded.
  bool tick(std::size_t n = 1) {
    used_ += n;
    return used_ <= cap_;
  }
  bool exhausted() const { return used_ > cap_; }
  std::size_t used() const { return used_; }

 private:
  std::size_t cap_;
  std::size_t used_ = 0;
};

}  // namespace prolim
