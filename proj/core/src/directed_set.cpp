#include "prolim/directed_set.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "prolim/error.hpp"

namespace prolim {

std::string index_str(const Index& i) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < i.size(); ++k) os << (k ? "," : "") << i[k];
  os << ')';
  return os.str();
}

Index DirectedSet::upper_bound(const Index& a, const Index& b,
                               int search_depth) const {
  if (auto j = join(a, b)) return *j;
  for (const auto& e : elements(search_depth))
    if (leq(a, e) && leq(b, e)) return e;
  throw BudgetError(name() + ": no upper bound of " + index_str(a) + " and " +
                    index_str(b) + " within depth " +
                    std::to_string(search_depth));
}

std::vector<Index> DirectedSet::below(const Index& i) const {
  if (!is_cofinite())
    throw PreconditionFailure(name() + ": predecessors of a non-cofinite set");
  std::vector<Index> out;
  for (auto& e : elements(grade(i)))
    if (e != i && leq(e, i)) out.push_back(std::move(e));
  return out;
}

Index DirectedSet::nth(std::size_t n) const {
  if (auto size = finite_size()) {
    for (int d = 0;; ++d) {
      auto all = elements(d);
      if (all.size() == *size) return all[n % *size];
    }
  }
  for (int d = 0;; ++d) {
    auto all = elements(d);
    if (all.size() > n) return all[n];
  }
}

std::size_t DirectedSet::position(const Index& i) const {
  const auto all = elements(grade(i));
  auto it = std::find(all.begin(), all.end(), i);
  if (it == all.end())
    throw PreconditionFailure(name() + ": " + index_str(i) + " is not an element");
  return static_cast<std::size_t>(it - all.begin());
}

// --- NatChain ---------------------------------------------------------------

std::vector<Index> NatChain::elements(int depth) const {
  std::vector<Index> out;
  for (int n = 0; n <= depth; ++n) out.push_back({n});
  return out;
}

bool NatChain::contains(const Index& i) const {
  return i.size() == 1 && i[0] >= 0;
}

std::optional<Index> NatChain::join(const Index& a, const Index& b) const {
  return Index{std::max(a.at(0), b.at(0))};
}

// --- NatProduct -------------------------------------------------------------

NatProduct::NatProduct(int k) : k_(k) {
  if (k < 1) throw PreconditionFailure("NatProduct: need at least one factor");
}

std::string NatProduct::name() const { return "nat^" + std::to_string(k_); }

std::vector<Index> NatProduct::elements(int depth) const {
  std::vector<Index> out;
  Index cur(static_cast<std::size_t>(k_), 0);
  // Tuples of sum exactly g, lexicographic with the first coordinate largest
  // first so that (g, 0, ...) leads each grade.
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == cur.size()) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  for (int g = 0; g <= depth; ++g) rec(rec, 0, g);
  return out;
}

int NatProduct::grade(const Index& i) const {
  int s = 0;
  for (int v : i) s += v;
  return s;
}

bool NatProduct::contains(const Index& i) const {
  return i.size() == static_cast<std::size_t>(k_) &&
         std::all_of(i.begin(), i.end(), [](int v) { return v >= 0; });
}

bool NatProduct::leq(const Index& a, const Index& b) const {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

std::optional<Index> NatProduct::join(const Index& a, const Index& b) const {
  Index out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::max(a[k], b[k]);
  return out;
}

// --- LexPair ----------------------------------------------------------------

std::vector<Index> LexPair::elements(int depth) const {
  std::vector<Index> out;
  for (int g = 0; g <= depth; ++g)
    for (int x = 0; x <= g; ++x) out.push_back({x, g - x});
  return out;
}

bool LexPair::contains(const Index& i) const {
  return i.size() == 2 && i[0] >= 0 && i[1] >= 0;
}

bool LexPair::leq(const Index& a, const Index& b) const { return a <= b; }

std::optional<Index> LexPair::join(const Index& a, const Index& b) const {
  return std::max(a, b);
}

// --- FinitePoset ------------------------------------------------------------

FinitePoset::FinitePoset(int n, const std::vector<std::pair<int, int>>& hasse,
                         std::string label)
    : n_(n), label_(std::move(label)) {
  if (n < 1) throw PreconditionFailure("FinitePoset: empty poset");
  const auto un = static_cast<std::size_t>(n);
  leq_.assign(un, std::vector<bool>(un, false));
  for (std::size_t i = 0; i < un; ++i) leq_[i][i] = true;
  for (auto [lo, hi] : hasse) {
    if (lo < 0 || hi < 0 || lo >= n || hi >= n)
      throw PreconditionFailure("FinitePoset: pair outside 0.." +
                                std::to_string(n - 1));
    leq_[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)] = true;
  }
  for (std::size_t k = 0; k < un; ++k)
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j)
        if (leq_[i][k] && leq_[k][j]) leq_[i][j] = true;
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j)
      if (i != j && leq_[i][j] && leq_[j][i])
        throw PreconditionFailure("FinitePoset: cycle through " +
                                  std::to_string(i) + " and " +
                                  std::to_string(j));
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) {
      bool bounded = false;
      for (std::size_t k = 0; k < un && !bounded; ++k)
        bounded = leq_[i][k] && leq_[j][k];
      if (!bounded)
        throw PreconditionFailure("FinitePoset: " + std::to_string(i) +
                                  " and " + std::to_string(j) +
                                  " have no upper bound");
    }
  grade_.assign(un, 0);
  // Grade = length of the longest chain below; hasse pairs need not be sorted.
  for (std::size_t round = 0; round < un; ++round)
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j)
        if (i != j && leq_[i][j]) grade_[j] = std::max(grade_[j], grade_[i] + 1);
}

std::vector<Index> FinitePoset::elements(int depth) const {
  std::vector<Index> out;
  for (int g = 0; g <= std::min(depth, n_); ++g)
    for (int i = 0; i < n_; ++i)
      if (grade_[static_cast<std::size_t>(i)] == g) out.push_back({i});
  return out;
}

int FinitePoset::grade(const Index& i) const {
  return grade_.at(static_cast<std::size_t>(i.at(0)));
}

bool FinitePoset::contains(const Index& i) const {
  return i.size() == 1 && i[0] >= 0 && i[0] < n_;
}

bool FinitePoset::leq(const Index& a, const Index& b) const {
  return leq_.at(static_cast<std::size_t>(a.at(0)))
      .at(static_cast<std::size_t>(b.at(0)));
}

std::optional<Index> FinitePoset::join(const Index& a, const Index& b) const {
  std::optional<Index> best;
  for (int k = 0; k < n_; ++k) {
    const Index c{k};
    if (!leq(a, c) || !leq(b, c)) continue;
    if (!best || leq(c, *best)) best = c;
  }
  // Only a least bound counts.
  for (int k = 0; k < n_; ++k) {
    const Index c{k};
    if (leq(a, c) && leq(b, c) && !leq(*best, c)) return std::nullopt;
  }
  return best;
}

// --- FilteredSet ------------------------------------------------------------

FilteredSet::FilteredSet(DirectedSetPtr base,
                         std::function<bool(const Index&)> keep,
                         std::string label)
    : base_(std::move(base)), keep_(std::move(keep)), label_(std::move(label)) {}

std::vector<Index> FilteredSet::elements(int depth) const {
  std::vector<Index> out;
  for (auto& e : base_->elements(depth))
    if (keep_(e)) out.push_back(std::move(e));
  return out;
}

// --- FiniteSubsets ----------------------------------------------------------

FiniteSubsets::FiniteSubsets(DirectedSetPtr base) : base_(std::move(base)) {}

std::string FiniteSubsets::name() const {
  return "finite-subsets(" + base_->name() + ")";
}

std::vector<Index> FiniteSubsets::elements(int depth) const {
  if (depth > 20)
    throw BudgetError("FiniteSubsets: enumeration depth " +
                      std::to_string(depth) + " exceeds 20");
  std::vector<Index> out;
  for (int g = 1; g <= depth; ++g) {
    const int top = g - 1;
    for (unsigned mask = 0; mask < (1u << top); ++mask) {
      Index s;
      for (int b = 0; b < top; ++b)
        if (mask & (1u << b)) s.push_back(b);
      s.push_back(top);
      out.push_back(std::move(s));
    }
  }
  return out;
}

bool FiniteSubsets::contains(const Index& i) const {
  if (i.empty() || i[0] < 0) return false;
  return std::adjacent_find(i.begin(), i.end(), std::greater_equal<>()) ==
         i.end();
}

bool FiniteSubsets::leq(const Index& a, const Index& b) const {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::optional<Index> FiniteSubsets::join(const Index& a, const Index& b) const {
  Index out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

// --- ProductSet -------------------------------------------------------------

ProductSet::ProductSet(DirectedSetPtr first, DirectedSetPtr second)
    : first_(std::move(first)), second_(std::move(second)) {
  auto w = first_->width();
  if (!w) throw PreconditionFailure("ProductSet: first factor needs fixed width");
  split_ = *w;
}

std::string ProductSet::name() const {
  return first_->name() + " x " + second_->name();
}

std::vector<Index> ProductSet::elements(int depth) const {
  std::map<int, std::vector<Index>> by_grade_a, by_grade_b;
  for (auto& a : first_->elements(depth))
    by_grade_a[first_->grade(a)].push_back(std::move(a));
  for (auto& b : second_->elements(depth))
    by_grade_b[second_->grade(b)].push_back(std::move(b));
  std::vector<Index> out;
  for (int g = 0; g <= depth; ++g)
    for (const auto& [ga, as] : by_grade_a) {
      if (ga > g) break;
      auto it = by_grade_b.find(g - ga);
      if (it == by_grade_b.end()) continue;
      for (const auto& a : as)
        for (const auto& b : it->second) out.push_back(pair(a, b));
    }
  return out;
}

int ProductSet::grade(const Index& i) const {
  return first_->grade(first_part(i)) + second_->grade(second_part(i));
}

bool ProductSet::contains(const Index& i) const {
  return i.size() > split_ && first_->contains(first_part(i)) &&
         second_->contains(second_part(i));
}

bool ProductSet::leq(const Index& a, const Index& b) const {
  return first_->leq(first_part(a), first_part(b)) &&
         second_->leq(second_part(a), second_part(b));
}

std::optional<Index> ProductSet::join(const Index& a, const Index& b) const {
  auto x = first_->join(first_part(a), first_part(b));
  auto y = second_->join(second_part(a), second_part(b));
  if (!x || !y) return std::nullopt;
  return pair(*x, *y);
}

std::optional<std::size_t> ProductSet::finite_size() const {
  auto x = first_->finite_size();
  auto y = second_->finite_size();
  if (!x || !y) return std::nullopt;
  return *x * *y;
}

std::optional<std::size_t> ProductSet::width() const {
  auto y = second_->width();
  if (!y) return std::nullopt;
  return split_ + *y;
}

Index ProductSet::first_part(const Index& i) const {
  return Index(i.begin(), i.begin() + static_cast<std::ptrdiff_t>(split_));
}

Index ProductSet::second_part(const Index& i) const {
  return Index(i.begin() + static_cast<std::ptrdiff_t>(split_), i.end());
}

Index ProductSet::pair(const Index& a, const Index& b) const {
  Index out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

DirectedSetPtr nat() {
  static const DirectedSetPtr n = std::make_shared<NatChain>();
  return n;
}

DirectedSetPtr point() {
  static const DirectedSetPtr p = std::make_shared<PointSet>();
  return p;
}

}  // namespace prolim
