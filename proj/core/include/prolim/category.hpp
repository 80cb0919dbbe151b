#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "prolim/error.hpp"

namespace prolim {

/// A finitely computable category, presented as a stateless tag type with
/// static operations on value-like objects and maps.
///
/// Composition order follows the usual convention: `compose(g, f)` is g∘f
/// and requires target(f) == source(g).
template <class C>
concept BaseCategory = requires(const typename C::Object& x,
                                const typename C::Map& f) {
  { C::identity(x) } -> std::same_as<typename C::Map>;
  { C::compose(f, f) } -> std::same_as<typename C::Map>;
  { C::source(f) } -> std::convertible_to<typename C::Object>;
  { C::target(f) } -> std::convertible_to<typename C::Object>;
  { f == f } -> std::convertible_to<bool>;
  { x == x } -> std::convertible_to<bool>;
  { C::describe(x) } -> std::convertible_to<std::string>;
  { C::describe(f) } -> std::convertible_to<std::string>;
  { C::name() } -> std::convertible_to<std::string>;
};

/// Categories whose Hom sets are finite and listed exactly once each.
template <class C>
concept EnumerableCategory =
    BaseCategory<C> && requires(const typename C::Object& x) {
      { C::hom(x, x) } -> std::same_as<std::vector<typename C::Map>>;
    };

template <class C>
struct DiagramArrow {
  std::size_t from = 0;
  std::size_t to = 0;
  typename C::Map map;
};

/// A finite diagram in C: objects plus arrows between them. Arrows are not
/// required to be closed under composition; limits and colimits only see
/// the listed arrows.
template <class C>
struct FiniteDiagram {
  std::vector<typename C::Object> objects;
  std::vector<DiagramArrow<C>> arrows;

  std::size_t add_object(typename C::Object x) {
    objects.push_back(std::move(x));
    return objects.size() - 1;
  }
  void add_arrow(std::size_t from, std::size_t to, typename C::Map m) {
    arrows.push_back({from, to, std::move(m)});
  }
  void validate() const {
    for (const auto& a : arrows) {
      if (a.from >= objects.size() || a.to >= objects.size())
        throw PreconditionFailure("diagram arrow references missing object");
      if (!(C::source(a.map) == objects[a.from]) ||
          !(C::target(a.map) == objects[a.to]))
        throw PreconditionFailure("diagram arrow does not match its endpoints");
    }
  }
};

/// Finite limits: `limit` builds a limit cone; `limit_factor` is the
/// universal property (the unique map from a cone apex into the limit).
template <class C>
concept HasFiniteLimits =
    BaseCategory<C> &&
    requires(const FiniteDiagram<C>& d, const typename C::Limit& l,
             const typename C::Object& x,
             const std::vector<typename C::Map>& legs) {
      { C::limit(d) } -> std::same_as<typename C::Limit>;
      { l.apex } -> std::convertible_to<typename C::Object>;
      { l.legs } -> std::convertible_to<std::vector<typename C::Map>>;
      { C::limit_factor(l, x, legs) } -> std::same_as<typename C::Map>;
    };

template <class C>
concept HasFiniteColimits =
    BaseCategory<C> &&
    requires(const FiniteDiagram<C>& d, const typename C::Colimit& l,
             const typename C::Object& x,
             const std::vector<typename C::Map>& legs) {
      { C::colimit(d) } -> std::same_as<typename C::Colimit>;
      { l.apex } -> std::convertible_to<typename C::Object>;
      { l.legs } -> std::convertible_to<std::vector<typename C::Map>>;
      { C::colimit_factor(l, x, legs) } -> std::same_as<typename C::Map>;
    };

template <class C>
concept HasIsoTest = BaseCategory<C> && requires(const typename C::Map& f) {
  { C::is_iso(f) } -> std::convertible_to<bool>;
};

/// Abelian structure: zero object and maps, mono/epi tests.
template <class C>
concept AbelianOps =
    BaseCategory<C> &&
    requires(const typename C::Object& x, const typename C::Map& f) {
      { C::zero_object() } -> std::same_as<typename C::Object>;
      { C::zero_map(x, x) } -> std::same_as<typename C::Map>;
      { C::is_mono(f) } -> std::convertible_to<bool>;
      { C::is_epi(f) } -> std::convertible_to<bool>;
      { C::is_zero(f) } -> std::convertible_to<bool>;
    };

/// Exactness at the middle of X --f--> Y --g--> Z.
template <class C>
concept HasExactnessTest =
    AbelianOps<C> && requires(const typename C::Map& f) {
      { C::is_exact(f, f) } -> std::convertible_to<bool>;
    };

template <BaseCategory C>
void require_composable(const typename C::Map& g, const typename C::Map& f) {
  if (!(C::target(f) == C::source(g)))
    throw CompositionError(C::name() + ": target of " + C::describe(f) +
                           " is not the source of " + C::describe(g));
}

}  // namespace prolim
