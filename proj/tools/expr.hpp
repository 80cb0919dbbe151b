#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace prolim::cli {

/// Integer arithmetic in one variable n: + - * / % ^, parentheses, min and
/// max. Parsed once, evaluated per level.
class Expr {
 public:
  Expr() = default;
  static Expr parse(const std::string& text);
  static Expr constant(std::int64_t v);

  std::int64_t operator()(std::int64_t n) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace prolim::cli
