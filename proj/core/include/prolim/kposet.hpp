#pragma once

#include <vector>

#include "prolim/budget.hpp"
#include "prolim/certificate.hpp"
#include "prolim/directed_set.hpp"
#include "prolim/shape.hpp"

namespace prolim {

/// Monotone tuples (s_a) over the objects of a cofinite category truncated
/// at `shape_depth`, with s_a >= s_b for every arrow a -> b, ordered
/// coordinatewise. Coordinates follow `shape->objects(shape_depth)` and are
/// concatenated, so I must have fixed width.
///
/// Graded by the sum of coordinate grades and enumerated grade-major, then
/// lexicographically.
class KPoset final : public DirectedSet {
 public:
  KPoset(ShapePtr shape, int shape_depth, DirectedSetPtr base);

  std::string name() const override;
  std::vector<Index> elements(int depth) const override;
  int grade(const Index& i) const override;
  bool contains(const Index& i) const override;
  bool leq(const Index& a, const Index& b) const override;
  std::optional<Index> join(const Index& a, const Index& b) const override;
  std::optional<std::size_t> width() const override { return w_ * objs_.size(); }

  const std::vector<int>& shape_objects() const { return objs_; }
  const ShapePtr& shape() const { return shape_; }
  const DirectedSetPtr& base() const { return base_; }
  /// s_a for the object a of the shape.
  Index coordinate(const Index& tuple, int object) const;
  std::size_t slot(int object) const;
  Index make(const std::vector<Index>& coords) const;
  /// Elements of the full product of I over the objects (no monotonicity).
  std::vector<Index> product_elements(int depth) const;
  /// The tuple (s, s, ..., s).
  Index diagonal(const Index& s) const;

 private:
  Index least_above(const std::vector<Index>& xs) const;
  friend Index k_refine(const KPoset&, const Index&, const Index&);
  friend Index k_inclusion_witness(const KPoset&, const Index&);

  ShapePtr shape_;
  int shape_depth_;
  DirectedSetPtr base_;
  std::size_t w_;
  std::vector<int> objs_;
  std::vector<int> by_level_;
  std::vector<std::vector<int>> below_;  // slot -> slots of arrow targets
};

/// Common refinement of s and t by induction over the shape's levels.
Index k_refine(const KPoset& k, const Index& s, const Index& t);
/// Least K-tuple above a product tuple, by the same induction.
Index k_inclusion_witness(const KPoset& k, const Index& product_tuple);
/// K-tuple whose a-coordinate lies above x.
Index k_projection_witness(const KPoset& k, int object, const Index& x);

Certificate k_inclusion_cofinal(const KPoset& k, const TruncationBudget& b);
Certificate k_projection_cofinal(const KPoset& k, int object,
                                 const TruncationBudget& b);

}  // namespace prolim
