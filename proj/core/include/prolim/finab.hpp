#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "prolim/category.hpp"
#include "prolim/intmat.hpp"

namespace prolim {

using IntVector = std::vector<std::int64_t>;

/// Z/n_1 + ... + Z/n_k. The empty list is the zero group.
struct FinAbObj {
  std::vector<std::int64_t> orders;
  friend bool operator==(const FinAbObj&, const FinAbObj&) = default;
  friend auto operator<=>(const FinAbObj&, const FinAbObj&) = default;
};

/// Homomorphism as an integer matrix (rows index target components),
/// entries reduced into [0, n_i) for target order n_i.
struct FinAbMap {
  FinAbObj source;
  FinAbObj target;
  IntMatrix matrix;
  friend bool operator==(const FinAbMap&, const FinAbMap&) = default;
};

/// The category of finite abelian groups.
struct FinAb {
  using Object = FinAbObj;
  using Map = FinAbMap;

  /// Limit realized as a subgroup of the product of the diagram objects.
  struct Limit {
    Object apex;
    std::vector<Map> legs;
    Object product;
    /// Product element -> apex coordinates, for every apex element.
    std::map<IntVector, IntVector> coordinates;
  };
  /// Colimit realized as a quotient of the direct sum.
  struct Colimit {
    Object apex;
    std::vector<Map> legs;
    /// For each apex generator a preimage in the direct sum, split by object.
    std::vector<std::vector<IntVector>> representative;
  };
  /// Subgroup with its embedding.
  struct Subgroup {
    Object object;
    Map embedding;
  };

  static std::string name() { return "FinAb"; }

  static Object cyclic(std::int64_t n) { return {{n}}; }
  static Object make_object(std::vector<std::int64_t> orders);
  /// Reduces entries and checks well-definedness.
  static Map make(const Object& source, const Object& target, IntMatrix m);
  static Object source(const Map& f) { return f.source; }
  static Object target(const Map& f) { return f.target; }
  static Map identity(const Object& x);
  static Map compose(const Map& g, const Map& f);
  static std::vector<Map> hom(const Object& x, const Object& y);

  static std::int64_t order(const Object& x);
  /// Every element, lexicographic with the first component most significant.
  static std::vector<IntVector> elements(const Object& x);
  static IntVector apply(const Map& f, const IntVector& x);
  static IntVector reduce(const Object& x, IntVector v);

  static Subgroup subgroup(const Object& g, const std::vector<IntVector>& gens);
  static Subgroup kernel(const Map& f);

  static Limit limit(const FiniteDiagram<FinAb>& d);
  static Map limit_factor(const Limit& l, const Object& apex,
                          const std::vector<Map>& legs);
  static Colimit colimit(const FiniteDiagram<FinAb>& d);
  static Map colimit_factor(const Colimit& c, const Object& target,
                            const std::vector<Map>& legs);

  static Object zero_object() { return {}; }
  static Map zero_map(const Object& x, const Object& y);
  static bool is_zero(const Map& f) { return f.matrix.is_zero(); }
  static bool is_mono(const Map& f);
  static bool is_epi(const Map& f);
  static bool is_iso(const Map& f) { return is_mono(f) && is_epi(f); }
  static bool is_exact(const Map& f, const Map& g);
  static std::int64_t image_order(const Map& f);

  static std::string describe(const Object& x);
  static std::string describe(const Map& f);
};

}  // namespace prolim
