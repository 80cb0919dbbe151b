#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prolim/category.hpp"

namespace prolim {

/// Finite set {0, ..., size-1}.
struct FinSetObj {
  int size = 0;
  friend bool operator==(const FinSetObj&, const FinSetObj&) = default;
  friend auto operator<=>(const FinSetObj&, const FinSetObj&) = default;
};

/// Total function given by its image array.
struct FinSetMap {
  std::vector<int> images;
  int target_size = 0;

  FinSetObj source() const { return {static_cast<int>(images.size())}; }
  FinSetObj target() const { return {target_size}; }
  friend bool operator==(const FinSetMap&, const FinSetMap&) = default;
  friend auto operator<=>(const FinSetMap&, const FinSetMap&) = default;
};

/// The category of finite sets.
struct FinSet {
  using Object = FinSetObj;
  using Map = FinSetMap;

  struct Limit {
    Object apex;
    std::vector<Map> legs;
    std::vector<std::vector<int>> tuples;  // element i of the apex
    std::map<std::vector<int>, int> index;
  };
  struct Colimit {
    Object apex;
    std::vector<Map> legs;
    /// For each apex element, one (diagram object, element) preimage.
    std::vector<std::pair<std::size_t, int>> representative;
  };

  static std::string name() { return "FinSet"; }

  /// Validates the image array.
  static Map make(std::vector<int> images, int target_size);
  static Object source(const Map& f) { return f.source(); }
  static Object target(const Map& f) { return f.target(); }
  static Map identity(const Object& x);
  static Map compose(const Map& g, const Map& f);
  static std::vector<Map> hom(const Object& x, const Object& y);

  static Limit limit(const FiniteDiagram<FinSet>& d);
  static Map limit_factor(const Limit& l, const Object& apex,
                          const std::vector<Map>& legs);
  static Colimit colimit(const FiniteDiagram<FinSet>& d);
  static Map colimit_factor(const Colimit& c, const Object& target,
                            const std::vector<Map>& legs);

  static bool is_iso(const Map& f);
  static bool is_injective(const Map& f);
  static bool is_surjective(const Map& f);
  static int image_size(const Map& f);
  static Map constant(int source_size, int target_size, int value);

  static std::string describe(const Object& x);
  static std::string describe(const Map& f);
};

}  // namespace prolim
