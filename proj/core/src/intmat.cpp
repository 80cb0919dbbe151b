#include "prolim/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "prolim/error.hpp"

namespace prolim {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols,
                     std::vector<std::int64_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw PreconditionFailure("IntMatrix: data size does not match shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<std::int64_t> IntMatrix::column(std::size_t c) const {
  std::vector<std::int64_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<std::int64_t> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](std::int64_t x) { return x == 0; });
}

IntMatrix IntMatrix::hcat(const IntMatrix& other) const {
  if (other.rows_ != rows_)
    throw PreconditionFailure("IntMatrix::hcat: row counts differ");
  IntMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c)
      out(r, cols_ + c) = other(r, c);
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_)
    throw CompositionError("IntMatrix: inner dimensions differ");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::int64_t x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        out(i, j) = checked_add(out(i, j), checked_mul(x, b(k, j)));
    }
  return out;
}

std::vector<std::int64_t> operator*(const IntMatrix& a,
                                    const std::vector<std::int64_t>& v) {
  if (a.cols() != v.size())
    throw CompositionError("IntMatrix: vector length differs from columns");
  std::vector<std::int64_t> out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      out[i] = checked_add(out[i], checked_mul(a(i, k), v[k]));
  return out;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ' ';
      os << (*this)(r, c);
    }
  }
  os << ']';
  return os.str();
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw ComputationError("integer overflow in addition");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw ComputationError("integer overflow in multiplication");
  return out;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

namespace {

// Elementary operations applied simultaneously to the working matrix and
// the transforms, keeping U * A0 * V == A and U * U_inverse == 1.
struct SmithState {
  IntMatrix a, u, ui, v;

  void add_row(std::size_t dst, std::size_t src, std::int64_t k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c)
      a(dst, c) = checked_add(a(dst, c), checked_mul(k, a(src, c)));
    for (std::size_t c = 0; c < u.cols(); ++c)
      u(dst, c) = checked_add(u(dst, c), checked_mul(k, u(src, c)));
    for (std::size_t r = 0; r < ui.rows(); ++r)
      ui(r, src) = checked_add(ui(r, src), checked_mul(-k, ui(r, dst)));
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    for (std::size_t r = 0; r < ui.rows(); ++r) std::swap(ui(r, i), ui(r, j));
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
    for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, i) = -ui(r, i);
  }
  void add_col(std::size_t dst, std::size_t src, std::int64_t k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r)
      a(r, dst) = checked_add(a(r, dst), checked_mul(k, a(r, src)));
    for (std::size_t r = 0; r < v.rows(); ++r)
      v(r, dst) = checked_add(v(r, dst), checked_mul(k, v(r, src)));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  SmithState st{input, IntMatrix::identity(m), IntMatrix::identity(m),
                IntMatrix::identity(n)};
  IntMatrix& a = st.a;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Smallest non-zero entry of the trailing block becomes the pivot.
    std::size_t pr = m, pc = n;
    std::int64_t best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a(i, j) != 0 && (best == 0 || std::llabs(a(i, j)) < best)) {
          best = std::llabs(a(i, j));
          pr = i;
          pc = j;
        }
    if (best == 0) break;
    st.swap_rows(t, pr);
    st.swap_cols(t, pc);

    for (;;) {
      bool clear = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (a(i, t) != 0) {
          st.add_row(i, t, -(a(i, t) / a(t, t)));
          if (a(i, t) != 0) clear = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (a(t, j) != 0) {
          st.add_col(j, t, -(a(t, j) / a(t, t)));
          if (a(t, j) != 0) clear = false;
        }
      if (!clear) {
        // A remainder is smaller than the pivot: move it into place.
        std::int64_t small = std::llabs(a(t, t));
        std::size_t si = t, sj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (a(i, t) != 0 && std::llabs(a(i, t)) < small) {
            small = std::llabs(a(i, t));
            si = i;
            sj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(t, j) != 0 && std::llabs(a(t, j)) < small) {
            small = std::llabs(a(t, j));
            si = t;
            sj = j;
          }
        st.swap_rows(t, si);
        st.swap_cols(t, sj);
        continue;
      }
      // Row and column are clear; enforce divisibility of the remainder.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            st.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) st.negate_row(t);
  }

  SmithForm out;
  out.rank = t;
  out.diagonal.resize(std::min(m, n));
  for (std::size_t i = 0; i < out.diagonal.size(); ++i)
    out.diagonal[i] = a(i, i);
  out.u = std::move(st.u);
  out.u_inverse = std::move(st.ui);
  out.v = std::move(st.v);
  return out;
}

std::size_t rational_rank(const IntMatrix& a) {
  return smith_normal_form(a).rank;
}

}  // namespace prolim
