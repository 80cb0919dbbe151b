#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace prolim {

/// Dense row-major integer matrix with overflow-checked arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::size_t rows, std::size_t cols,
            std::vector<std::int64_t> data);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  std::int64_t operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  const std::vector<std::int64_t>& data() const { return data_; }

  std::vector<std::int64_t> column(std::size_t c) const;
  std::vector<std::int64_t> row(std::size_t r) const;
  bool is_zero() const;

  /// Horizontal concatenation [*this | other].
  IntMatrix hcat(const IntMatrix& other) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

std::vector<std::int64_t> operator*(const IntMatrix& a,
                                    const std::vector<std::int64_t>& v);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
/// Non-negative remainder.
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

/// U * A * V = D with U, V unimodular and D diagonal, d_0 | d_1 | ... .
struct SmithForm {
  IntMatrix u;
  IntMatrix u_inverse;
  IntMatrix v;
  /// Diagonal entries d_i for i < min(rows, cols); non-negative.
  std::vector<std::int64_t> diagonal;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Rank over the rationals.
std::size_t rational_rank(const IntMatrix& a);

}  // namespace prolim
