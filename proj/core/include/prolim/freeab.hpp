#pragma once

#include <string>
#include <vector>

#include "prolim/category.hpp"
#include "prolim/intmat.hpp"

namespace prolim {

/// Free abelian group on a labeled basis. The labels name the basis
/// vectors a_i, so that truncations such as A[m,n] = <a_m, ..., a_n> and
/// the canonical maps between them are determined by the labels alone.
struct FreeAbObj {
  std::vector<int> labels;
  std::size_t rank() const { return labels.size(); }
  friend bool operator==(const FreeAbObj&, const FreeAbObj&) = default;
  friend auto operator<=>(const FreeAbObj&, const FreeAbObj&) = default;
};

struct FreeAbMap {
  FreeAbObj source;
  FreeAbObj target;
  IntMatrix matrix;  // rows index the target basis
  friend bool operator==(const FreeAbMap&, const FreeAbMap&) = default;
};

/// Finitely generated free abelian groups. Hom sets are infinite, so no
/// enumeration is offered; colimits exist only when the cokernel is free.
struct FreeAb {
  using Object = FreeAbObj;
  using Map = FreeAbMap;

  struct Colimit {
    Object apex;
    std::vector<Map> legs;
    std::vector<std::vector<std::vector<std::int64_t>>> representative;
  };

  static std::string name() { return "FreeAb"; }

  /// A[m, n]: basis a_m, ..., a_n (empty when n < m).
  static Object interval(int lo, int hi);
  static Object rank(int r);
  static Map make(const Object& source, const Object& target, IntMatrix m);
  /// a_i -> a_i when the target carries label i, else 0. Covers the
  /// inclusions and projections between truncations.
  static Map label_map(const Object& source, const Object& target);
  static Object source(const Map& f) { return f.source; }
  static Object target(const Map& f) { return f.target; }
  static Map identity(const Object& x);
  static Map compose(const Map& g, const Map& f);

  static Colimit colimit(const FiniteDiagram<FreeAb>& d);
  static Map colimit_factor(const Colimit& c, const Object& target,
                            const std::vector<Map>& legs);

  static Object zero_object() { return {}; }
  static Map zero_map(const Object& x, const Object& y);
  static bool is_zero(const Map& f) { return f.matrix.is_zero(); }
  /// Trivial kernel over the integers.
  static bool is_mono(const Map& f);
  /// Surjective.
  static bool is_epi(const Map& f);
  static bool is_iso(const Map& f);

  static std::string describe(const Object& x);
  static std::string describe(const Map& f);
};

}  // namespace prolim
