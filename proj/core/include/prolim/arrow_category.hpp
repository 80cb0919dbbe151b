#pragma once

#include <string>
#include <vector>

#include "prolim/category.hpp"

namespace prolim {

/// Commuting square from arrow `source` to arrow `target`:
///
///   source.s --top--> target.s
///      |                 |
///   source.t --bottom-> target.t
template <BaseCategory C>
struct ArrowSquare {
  typename C::Map source;
  typename C::Map target;
  typename C::Map top;
  typename C::Map bottom;
  friend bool operator==(const ArrowSquare&, const ArrowSquare&) = default;
};

/// The arrow category Ar(C): objects are maps of C, maps are commuting
/// squares. Squares are only constructed through `make`, which checks
/// commutativity, so every stored square is its own certificate.
template <BaseCategory C>
struct ArrowCategory {
  using Base = C;
  using Object = typename C::Map;
  using Map = ArrowSquare<C>;

  static std::string name() { return "Ar(" + C::name() + ")"; }

  static Map make(const Object& source, const Object& target,
                  typename C::Map top, typename C::Map bottom) {
    if (!(C::source(top) == C::source(source)) ||
        !(C::target(top) == C::source(target)) ||
        !(C::source(bottom) == C::target(source)) ||
        !(C::target(bottom) == C::target(target)))
      throw CompositionError(name() + ": square edges do not match");
    if (!(C::compose(target, top) == C::compose(bottom, source)))
      throw PreconditionFailure(name() + ": square does not commute: " +
                                C::describe(top) + " / " + C::describe(bottom));
    return {source, target, std::move(top), std::move(bottom)};
  }

  static Object source(const Map& f) { return f.source; }
  static Object target(const Map& f) { return f.target; }

  static Map identity(const Object& x) {
    return {x, x, C::identity(C::source(x)), C::identity(C::target(x))};
  }

  static Map compose(const Map& g, const Map& f) {
    if (!(f.target == g.source))
      throw CompositionError(name() + ": cannot compose squares");
    return {f.source, g.target, C::compose(g.top, f.top),
            C::compose(g.bottom, f.bottom)};
  }

  static std::vector<Map> hom(const Object& x, const Object& y)
    requires EnumerableCategory<C>
  {
    std::vector<Map> out;
    const auto bottoms = C::hom(C::target(x), C::target(y));
    for (const auto& top : C::hom(C::source(x), C::source(y)))
      for (const auto& bottom : bottoms)
        if (C::compose(y, top) == C::compose(bottom, x))
          out.push_back({x, y, top, bottom});
    return out;
  }

  static bool is_iso(const Map& f)
    requires HasIsoTest<C>
  {
    return C::is_iso(f.top) && C::is_iso(f.bottom);
  }

  static std::string describe(const Object& x) {
    return "[" + C::describe(x) + "]";
  }
  static std::string describe(const Map& f) {
    return "(" + C::describe(f.top) + " | " + C::describe(f.bottom) + ")";
  }
};

/// A composable pair X --first--> Y --second--> Z of C.
template <BaseCategory C>
struct ComposablePair {
  typename C::Map first;
  typename C::Map second;
  friend bool operator==(const ComposablePair&, const ComposablePair&) = default;
};

/// Map of composable pairs: three vertical maps making both squares commute.
template <BaseCategory C>
struct PairMap {
  ComposablePair<C> source;
  ComposablePair<C> target;
  typename C::Map left, middle, right;
  friend bool operator==(const PairMap&, const PairMap&) = default;
};

/// Diagrams X -> Y -> Z in C. A pro-object here is a pro-sequence, so
/// short exact sequences of pro-objects pass through the limit pipeline as
/// single objects.
template <BaseCategory C>
struct ComposablePairs {
  using Base = C;
  using Object = ComposablePair<C>;
  using Map = PairMap<C>;

  static std::string name() { return "Seq(" + C::name() + ")"; }

  static Object pair(typename C::Map first, typename C::Map second) {
    require_composable<C>(second, first);
    return {std::move(first), std::move(second)};
  }

  static Map make(const Object& source, const Object& target, typename C::Map left,
                  typename C::Map middle, typename C::Map right) {
    if (!(C::compose(target.first, left) == C::compose(middle, source.first)) ||
        !(C::compose(target.second, middle) == C::compose(right, source.second)))
      throw PreconditionFailure(name() + ": ladder does not commute");
    return {source, target, std::move(left), std::move(middle), std::move(right)};
  }

  static Object source(const Map& f) { return f.source; }
  static Object target(const Map& f) { return f.target; }

  static Map identity(const Object& x) {
    return {x, x, C::identity(C::source(x.first)), C::identity(C::target(x.first)),
            C::identity(C::target(x.second))};
  }

  static Map compose(const Map& g, const Map& f) {
    if (!(f.target == g.source))
      throw CompositionError(name() + ": cannot compose ladders");
    return {f.source, g.target, C::compose(g.left, f.left),
            C::compose(g.middle, f.middle), C::compose(g.right, f.right)};
  }

  static std::string describe(const Object& x) {
    return "[" + C::describe(x.first) + " ; " + C::describe(x.second) + "]";
  }
  static std::string describe(const Map& f) {
    return "(" + C::describe(f.left) + " | " + C::describe(f.middle) + " | " +
           C::describe(f.right) + ")";
  }
};

}  // namespace prolim
