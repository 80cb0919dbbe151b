#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "prolim/theorems.hpp"

namespace prolim::gen {

/// Every random instance derives from one of these, seeded explicitly.
using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);

/// A tower of finite sets given on a finite prefix and constant (identity
/// steps) from the last prefix level on.
struct FinSetTower {
  std::vector<int> sizes;
  /// steps[n]: T_{n+1} -> T_n, one fewer than sizes.
  std::vector<FinSetMap> steps;

  int prefix() const { return static_cast<int>(sizes.size()); }
  FinSetObj object(int n) const;
  FinSetMap step(int n) const;
  /// T_from -> T_to for to <= from.
  FinSetMap map(int from, int to) const;
  ProObject<FinSet> pro(const std::string& label) const;
  /// The cofiltered system of constants c(T_n).
  CofilteredDiagram<FinSet> constants(const std::string& label) const;
};

/// A natural map between two towers with the same prefix, by components.
struct TowerMap {
  std::vector<FinSetMap> components;
  FinSetMap at(int n) const;
};

/// Sizes in [1, max_size], arbitrary steps.
FinSetTower random_tower(Rng& rng, int levels, int max_size);
/// Non-decreasing sizes and surjective steps.
FinSetTower random_surjective_tower(Rng& rng, int levels, int max_size);
/// A natural map source -> target. Needs surjective steps in the target.
TowerMap random_natural_map(Rng& rng, const FinSetTower& source, const FinSetTower& target);
/// Levelwise pullback of a -> c <- b, with its projections.
struct TowerPullback {
  FinSetTower tower;
  TowerMap to_a, to_b;
};
TowerPullback tower_pullback(const FinSetTower& a, const FinSetTower& b, const TowerMap& fa,
                             const TowerMap& fb);

/// A pro-map of towers from a natural map, represented `delay` levels up.
ProMap<FinSet> delayed_map(const ProObject<FinSet>& x, const ProObject<FinSet>& y,
                           const TowerMap& m, int delay, const std::string& label);

/// A ∈ N-tower times a finite shape B of FinSet towers: X^{a,b}_s = T^b_{a+s}.
enum class CommuteShape { coproduct, coequalizer, pushout };
std::string to_string(CommuteShape s);

struct CommuteInstance {
  CommuteShape kind = CommuteShape::coproduct;
  ShapePtr shape;
  std::vector<FinSetTower> towers;
  std::map<ShapeArrow, TowerMap> maps;

  ProductDiagram<FinSet> diagram() const;
};
CommuteInstance random_commute_instance(Rng& rng, CommuteShape kind, int levels, int max_size);

/// A tower of towers ... -> X^2 -> X^1 -> X^0 with delayed natural maps,
/// constant past `towers.size()`. Only the top tower may have steps that
/// are not onto.
struct TowerOfTowers {
  std::vector<FinSetTower> towers;
  std::vector<TowerMap> maps;  // maps[b]: X^{b+1} -> X^b
  std::vector<int> delays;

  CofilteredDiagram<FinSet> diagram(const std::string& label) const;
};
TowerOfTowers random_tower_of_towers(Rng& rng, int length, int levels, int max_size);

/// Shapes for level-representation checks.
enum class LevelShape { square, chain, square_chain };
std::string to_string(LevelShape s);
DiagramOfPro<FinSet> random_level_diagram(Rng& rng, LevelShape kind, int levels, int max_size);

/// Pullback (cospan) and pushout (span) diagrams of towers with delays.
DiagramOfPro<FinSet> random_cospan(Rng& rng, int levels, int max_size);
DiagramOfPro<FinSet> random_span(Rng& rng, int levels, int max_size);

/// f: X -> Y, g: Y -> X with gf = id levelwise; `bound` caps every level.
template <BaseCategory C>
struct RetractPair {
  ProObject<C> x, y;
  ProMap<C> f, g;
  std::int64_t bound = 0;
};
/// Y_n = X_n + E_n with g retracting the extra points E_n into X_n.
RetractPair<FinSet> random_finset_retract(Rng& rng, int levels);
/// Y_n = Z/2^a_n + Z/2^b_n with g = (1, c).
RetractPair<FinAb> random_finab_retract(Rng& rng, int levels);

}  // namespace prolim::gen
