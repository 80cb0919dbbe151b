#pragma once

#include <string>
#include <vector>

#include "prolim/budget.hpp"

namespace prolim {

/// Depth-qualified outcome of one check, with the witnesses that back it.
struct Certificate {
  std::string check;
  Verdict verdict = Verdict::certified;
  int depth = 0;
  std::vector<std::string> witnesses;
  std::string detail;

  bool ok() const { return verdict == Verdict::certified; }
};

/// Severity order used when folding verdicts: refuted dominates, then
/// exhausted, then undetermined.
constexpr Verdict worst(Verdict a, Verdict b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::certified: return 0;
      case Verdict::undetermined: return 1;
      case Verdict::exhausted: return 2;
      case Verdict::refuted: return 3;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

inline Verdict worst(const std::vector<Certificate>& cs) {
  Verdict v = Verdict::certified;
  for (const auto& c : cs) v = worst(v, c.verdict);
  return v;
}

}  // namespace prolim
