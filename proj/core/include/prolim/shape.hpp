#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prolim/directed_set.hpp"

namespace prolim {

/// Arrow of an index shape. Tag -1 marks the identity; other tags tell
/// parallel arrows apart.
struct ShapeArrow {
  int source = 0;
  int target = 0;
  int tag = -1;
  bool is_identity() const { return tag < 0; }
  friend bool operator==(const ShapeArrow&, const ShapeArrow&) = default;
  friend auto operator<=>(const ShapeArrow&, const ShapeArrow&) = default;
};

std::string arrow_str(const ShapeArrow& a);

/// Small loopless category in which every object is the source of finitely
/// many arrows, presented lazily.
///
/// Objects are integers. `objects(d)` lists the objects of grade <= d and is
/// closed under outgoing arrows. `level` strictly decreases along every
/// non-identity arrow, so inductions over `level` see targets first.
class CofiniteCategory {
 public:
  virtual ~CofiniteCategory() = default;

  virtual std::string name() const = 0;
  virtual std::vector<int> objects(int depth) const = 0;
  virtual int grade(int a) const = 0;
  virtual int level(int a) const = 0;
  /// Every non-identity arrow with source a, composites included.
  virtual std::vector<ShapeArrow> arrows_from(int a) const = 0;
  virtual std::string object_name(int a) const { return std::to_string(a); }
  virtual std::optional<std::size_t> finite_size() const {
    return std::nullopt;
  }

  /// g∘f, identities included.
  ShapeArrow compose(const ShapeArrow& g, const ShapeArrow& f) const;
  static ShapeArrow identity(int a) { return {a, a, -1}; }
  std::vector<ShapeArrow> arrows(int a, int b) const;
  /// Objects of grade <= depth sorted by ascending level, then grade.
  std::vector<int> objects_by_level(int depth) const;

 protected:
  /// Composition of two non-identity arrows.
  virtual ShapeArrow compose_proper(const ShapeArrow& g,
                                    const ShapeArrow& f) const = 0;
};

using ShapePtr = std::shared_ptr<const CofiniteCategory>;

/// Finite loopless category with an explicit composition table.
class FiniteCategory final : public CofiniteCategory {
 public:
  struct Arrow {
    ShapeArrow arrow;
    std::string label;
  };

  FiniteCategory(std::string label, std::vector<std::string> object_names,
                 std::vector<Arrow> arrows,
                 std::map<std::pair<ShapeArrow, ShapeArrow>, ShapeArrow> table);

  /// Poset on 0..n-1 from Hasse pairs (lo, hi): one arrow hi -> lo for each
  /// lo < hi.
  static std::shared_ptr<FiniteCategory> from_poset(
      std::string label, int n, const std::vector<std::pair<int, int>>& hasse);
  /// Arrows with no composable pairs, given as (source, target) in order;
  /// repeated pairs become parallel arrows.
  static std::shared_ptr<FiniteCategory> without_composites(
      std::string label, std::vector<std::string> object_names,
      const std::vector<std::pair<int, int>>& arrows);

  static std::shared_ptr<FiniteCategory> single();
  static std::shared_ptr<FiniteCategory> discrete(int n);
  /// 0 and 1 with an arrow 0 -> 1.
  static std::shared_ptr<FiniteCategory> arrow();
  /// Two parallel arrows 0 => 1.
  static std::shared_ptr<FiniteCategory> coequalizer();
  /// 1 <- 0 -> 2: the shape of a pushout.
  static std::shared_ptr<FiniteCategory> span();
  /// 0 -> 2 <- 1: the shape of a pullback.
  static std::shared_ptr<FiniteCategory> cospan();
  /// Commuting square 0 -> 1 -> 3, 0 -> 2 -> 3.
  static std::shared_ptr<FiniteCategory> square();

  std::string name() const override { return label_; }
  std::vector<int> objects(int depth) const override;
  int grade(int a) const override { return level(a); }
  int level(int a) const override;
  std::vector<ShapeArrow> arrows_from(int a) const override;
  std::string object_name(int a) const override;
  std::optional<std::size_t> finite_size() const override {
    return names_.size();
  }
  std::string arrow_label(const ShapeArrow& a) const;
  int size() const { return static_cast<int>(names_.size()); }

 protected:
  ShapeArrow compose_proper(const ShapeArrow& g,
                            const ShapeArrow& f) const override;

 private:
  std::string label_;
  std::vector<std::string> names_;
  std::vector<Arrow> arrows_;
  std::map<std::pair<ShapeArrow, ShapeArrow>, ShapeArrow> table_;
  std::vector<int> level_;
};

/// The natural numbers as a cofiltered category: one arrow n -> m for each
/// m < n.
class ChainCategory final : public CofiniteCategory {
 public:
  std::string name() const override { return "nat-chain"; }
  std::vector<int> objects(int depth) const override;
  int grade(int a) const override { return a; }
  int level(int a) const override { return a; }
  std::vector<ShapeArrow> arrows_from(int a) const override;

 protected:
  ShapeArrow compose_proper(const ShapeArrow& g,
                            const ShapeArrow& f) const override;
};

/// A cofinite directed set viewed as a category; objects are enumeration
/// positions and arrows point from larger to smaller elements.
class PosetCategory final : public CofiniteCategory {
 public:
  explicit PosetCategory(DirectedSetPtr set);
  std::string name() const override { return set_->name(); }
  std::vector<int> objects(int depth) const override;
  int grade(int a) const override;
  int level(int a) const override;
  std::vector<ShapeArrow> arrows_from(int a) const override;
  std::string object_name(int a) const override;
  std::optional<std::size_t> finite_size() const override {
    return set_->finite_size();
  }
  Index element(int a) const;
  int object_of(const Index& i) const;
  const DirectedSetPtr& set() const { return set_; }

 protected:
  ShapeArrow compose_proper(const ShapeArrow& g,
                            const ShapeArrow& f) const override;

 private:
  DirectedSetPtr set_;
  mutable std::mutex mutex_;
  mutable std::map<int, int> levels_;
};

/// The two-row diagram computing a sequential colimit: bottom objects
/// B_n = 2n, top objects T_n = 2n+1, arrows T_n -> B_n (tag 0, identity
/// map) and T_n -> B_{n+1} (tag 1, the n-th map of the sequence).
class SequentialShape final : public CofiniteCategory {
 public:
  std::string name() const override { return "sequential"; }
  std::vector<int> objects(int depth) const override;
  int grade(int a) const override { return a / 2 + a % 2; }
  int level(int a) const override { return a % 2; }
  std::vector<ShapeArrow> arrows_from(int a) const override;
  std::string object_name(int a) const override;

  static int bottom(int n) { return 2 * n; }
  static int top(int n) { return 2 * n + 1; }

 protected:
  ShapeArrow compose_proper(const ShapeArrow& g,
                            const ShapeArrow& f) const override;
};

/// Monotone map [m] -> [n], given by its values.
struct SimplicialOperator {
  int m = 0;
  int n = 0;
  std::vector<int> values;
  friend bool operator==(const SimplicialOperator&,
                         const SimplicialOperator&) = default;
};

std::vector<SimplicialOperator> simplicial_operators(int m, int n);

/// The diagram computing the realization of a simplicial object truncated
/// at degree n_max: one object X_n (x) D[n] per n and one object
/// X_n (x) D[m] per non-identity operator phi: [m] -> [n], with arrows
/// id (x) phi_* (tag 0) and phi^* (x) id (tag 1).
class RealizationShape final {
 public:
  explicit RealizationShape(int n_max);
  const std::shared_ptr<FiniteCategory>& category() const { return shape_; }
  int n_max() const { return n_max_; }
  /// Object X_n (x) D[n].
  int diagonal(int n) const { return n; }
  /// The operator behind a non-diagonal object.
  const SimplicialOperator& op(int object) const;
  bool is_diagonal(int object) const { return object <= n_max_; }

 private:
  int n_max_;
  std::vector<SimplicialOperator> ops_;
  std::shared_ptr<FiniteCategory> shape_;
};

/// Checks that every arrow out of the objects of grade <= depth lowers the
/// level, stays inside the window and composes within it.
void validate_shape(const CofiniteCategory& shape, int depth);

}  // namespace prolim
