#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace prolim {

/// Element of an index shape. Most shapes use short integer tuples; the
/// meaning of the coordinates is up to the shape.
using Index = std::vector<int>;

std::string index_str(const Index& i);

/// A directed set, read cofilteringly: a pro-object indexed by it has a
/// structure map X_t -> X_s whenever s <= t.
///
/// Elements are enumerated grade by grade; `elements(d)` lists every element
/// of grade <= d and is prefix-stable in d. Cofinite sets have finitely many
/// elements below any element, all of them of strictly smaller grade.
class DirectedSet {
 public:
  virtual ~DirectedSet() = default;

  virtual std::string name() const = 0;
  virtual std::vector<Index> elements(int depth) const = 0;
  virtual int grade(const Index& i) const = 0;
  virtual bool contains(const Index& i) const = 0;
  virtual bool leq(const Index& a, const Index& b) const = 0;
  virtual bool is_cofinite() const { return true; }
  /// Least upper bound, when the set has one for this pair.
  virtual std::optional<Index> join(const Index&, const Index&) const {
    return std::nullopt;
  }
  /// Number of elements, if finite.
  virtual std::optional<std::size_t> finite_size() const {
    return std::nullopt;
  }
  /// Common length of every element, if there is one.
  virtual std::optional<std::size_t> width() const { return std::nullopt; }

  /// Some upper bound of a and b: the join if available, else the first
  /// one in enumeration order. Throws BudgetError past `search_depth`.
  Index upper_bound(const Index& a, const Index& b, int search_depth) const;
  /// Elements strictly below i (cofinite sets only).
  std::vector<Index> below(const Index& i) const;
  /// The n-th element in enumeration order; cycles on finite sets.
  Index nth(std::size_t n) const;
  /// Position of i in the enumeration.
  std::size_t position(const Index& i) const;
};

using DirectedSetPtr = std::shared_ptr<const DirectedSet>;

/// The natural numbers 0 <= 1 <= 2 <= ...
class NatChain final : public DirectedSet {
 public:
  std::string name() const override { return "nat"; }
  std::vector<Index> elements(int depth) const override;
  int grade(const Index& i) const override { return i.at(0); }
  bool contains(const Index& i) const override;
  bool leq(const Index& a, const Index& b) const override {
    return a.at(0) <= b.at(0);
  }
  std::optional<Index> join(const Index& a, const Index& b) const override;
  std::optional<std::size_t> width() const override { return 1; }
};

/// N^k with the product order, graded by coordinate sum.
class NatProduct final : public DirectedSet {
 public:
  explicit NatProduct(int k);
  std::string name() const override;
  std::vector<Index> elements(int depth) const override;
  int grade(const Index& i) const override;
  bool contains(const Index& i) const override;
  bool leq(const Index& a, const Index& b) const override;
  std::optional<Index> join(const Index& a, const Index& b) const override;
  std::optional<std::size_t> width() const override {
    return static_cast<std::size_t>(k_);
  }

 private:
  int k_;
};

/// N x N ordered lexicographically. Directed but not cofinite: (1, 0) lies
/// above every (0, n).
class LexPair final : public DirectedSet {
 public:
  std::string name() const override { return "nat-lex-pair"; }
  std::vector<Index> elements(int depth) const override;
  int grade(const Index& i) const override { return i.at(0) + i.at(1); }
  bool contains(const Index& i) const override;
  bool leq(const Index& a, const Index& b) const override;
  bool is_cofinite() const override { return false; }
  std::optional<Index> join(const Index& a, const Index& b) const override;
  std::optional<std::size_t> width() const override { return 2; }
};

/// The one-element set, indexing constant pro-objects.
class PointSet final : public DirectedSet {
 public:
  std::string name() const override { return "point"; }
  std::vector<Index> elements(int) const override { return {Index{0}}; }
  int grade(const Index&) const override { return 0; }
  bool contains(const Index& i) const override {
    return i == Index{0};
  }
  bool leq(const Index&, const Index&) const override { return true; }
  std::optional<Index> join(const Index&, const Index&) const override {
    return Index{0};
  }
  std::optional<std::size_t> finite_size() const override { return 1; }
  std::optional<std::size_t> width() const override { return 1; }
};

/// A finite poset on {0, ..., n-1} given by its Hasse pairs (lo, hi).
/// Validated to be directed at construction.
class FinitePoset final : public DirectedSet {
 public:
  FinitePoset(int n, const std::vector<std::pair<int, int>>& hasse,
              std::string label = "finite-poset");
  std::string name() const override { return label_; }
  std::vector<Index> elements(int depth) const override;
  int grade(const Index& i) const override;
  bool contains(const Index& i) const override;
  bool leq(const Index& a, const Index& b) const override;
  std::optional<Index> join(const Index& a, const Index& b) const override;
  std::optional<std::size_t> finite_size() const override {
    return static_cast<std::size_t>(n_);
  }
  std::optional<std::size_t> width() const override { return 1; }

 private:
  int n_;
  std::string label_;
  std::vector<std::vector<bool>> leq_;
  std::vector<int> grade_;
};

/// Elements of a base set satisfying a predicate, with the induced order.
class FilteredSet final : public DirectedSet {
 public:
  FilteredSet(DirectedSetPtr base, std::function<bool(const Index&)> keep,
              std::string label);
  std::string name() const override { return label_; }
  std::vector<Index> elements(int depth) const override;
  int grade(const Index& i) const override { return base_->grade(i); }
  bool contains(const Index& i) const override {
    return base_->contains(i) && keep_(i);
  }
  bool leq(const Index& a, const Index& b) const override {
    return base_->leq(a, b);
  }
  bool is_cofinite() const override { return base_->is_cofinite(); }
  std::optional<std::size_t> width() const override { return base_->width(); }

 private:
  DirectedSetPtr base_;
  std::function<bool(const Index&)> keep_;
  std::string label_;
};

/// Nonempty finite subsets of a base set's enumeration, ordered by
/// inclusion. An element is the increasing list of enumeration positions;
/// the grade is the largest position plus one.
class FiniteSubsets final : public DirectedSet {
 public:
  explicit FiniteSubsets(DirectedSetPtr base);
  std::string name() const override;
  std::vector<Index> elements(int depth) const override;
  int grade(const Index& i) const override { return i.back() + 1; }
  bool contains(const Index& i) const override;
  bool leq(const Index& a, const Index& b) const override;
  std::optional<Index> join(const Index& a, const Index& b) const override;
  const DirectedSetPtr& base() const { return base_; }

 private:
  DirectedSetPtr base_;
};

/// Product of two cofinite directed sets, graded by grade sum. Elements are
/// concatenations, so the first factor must have fixed width.
class ProductSet final : public DirectedSet {
 public:
  ProductSet(DirectedSetPtr first, DirectedSetPtr second);
  std::string name() const override;
  std::vector<Index> elements(int depth) const override;
  int grade(const Index& i) const override;
  bool contains(const Index& i) const override;
  bool leq(const Index& a, const Index& b) const override;
  bool is_cofinite() const override {
    return first_->is_cofinite() && second_->is_cofinite();
  }
  std::optional<Index> join(const Index& a, const Index& b) const override;
  std::optional<std::size_t> finite_size() const override;
  std::optional<std::size_t> width() const override;

  Index first_part(const Index& i) const;
  Index second_part(const Index& i) const;
  Index pair(const Index& a, const Index& b) const;
  const DirectedSetPtr& first() const { return first_; }
  const DirectedSetPtr& second() const { return second_; }

 private:
  DirectedSetPtr first_;
  DirectedSetPtr second_;
  std::size_t split_;
};

DirectedSetPtr nat();
DirectedSetPtr point();

}  // namespace prolim
