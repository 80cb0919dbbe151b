#include "expr.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace prolim::cli {

struct Expr::Node {
  char op = 0;  // 'k' constant, 'n' variable, 'm' min, 'M' max, else binary/unary
  std::int64_t value = 0;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(char op, std::vector<NodePtr> args, std::int64_t value = 0) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->args = std::move(args);
  n->value = value;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    auto e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("expression '" + s_ + "': " + why);
  }

  NodePtr sum() {
    auto e = product();
    for (;;) {
      if (eat('+')) e = make('+', {e, product()});
      else if (eat('-')) e = make('-', {e, product()});
      else return e;
    }
  }
  NodePtr product() {
    auto e = power();
    for (;;) {
      if (eat('*')) e = make('*', {e, power()});
      else if (eat('/')) e = make('/', {e, power()});
      else if (eat('%')) e = make('%', {e, power()});
      else return e;
    }
  }
  NodePtr power() {
    auto base = unary();
    if (eat('^')) return make('^', {base, power()});
    return base;
  }
  NodePtr unary() {
    if (eat('-')) return make('-', {make('k', {}, 0), unary()});
    return primary();
  }
  NodePtr primary() {
    skip();
    if (eat('(')) {
      auto e = sum();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::int64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = v * 10 + (s_[pos_++] - '0');
        if (v > (std::int64_t{1} << 40)) fail("constant too large");
      }
      return make('k', {}, v);
    }
    std::string word;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) word += s_[pos_++];
    if (word == "n") return make('n', {});
    if (word == "min" || word == "max") {
      if (!eat('(')) fail("expected '(' after " + word);
      std::vector<NodePtr> args{sum()};
      while (eat(',')) args.push_back(sum());
      if (!eat(')')) fail("missing ')'");
      return make(word == "min" ? 'm' : 'M', std::move(args));
    }
    fail(word.empty() ? "expected a term" : "unknown name '" + word + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::int64_t eval(const Expr::Node& e, std::int64_t n) {
  constexpr std::int64_t cap = std::int64_t{1} << 40;
  auto check = [&](std::int64_t v) {
    if (v > cap || v < -cap) throw std::out_of_range("expression value out of range");
    return v;
  };
  switch (e.op) {
    case 'k': return e.value;
    case 'n': return n;
    case 'm':
    case 'M': {
      std::int64_t v = eval(*e.args[0], n);
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        const auto w = eval(*e.args[i], n);
        v = e.op == 'm' ? std::min(v, w) : std::max(v, w);
      }
      return v;
    }
    default: break;
  }
  const auto a = eval(*e.args[0], n);
  const auto b = eval(*e.args[1], n);
  switch (e.op) {
    case '+': return check(a + b);
    case '-': return check(a - b);
    case '*': return check(a * b);
    case '/':
    case '%':
      if (b == 0) throw std::domain_error("division by zero");
      return e.op == '/' ? a / b : a % b;
    case '^': {
      if (b < 0) throw std::domain_error("negative exponent");
      std::int64_t v = 1;
      for (std::int64_t i = 0; i < b; ++i) v = check(v * a);
      return v;
    }
  }
  throw std::logic_error("bad expression node");
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).run();
  e.text_ = text;
  return e;
}

Expr Expr::constant(std::int64_t v) {
  Expr e;
  e.root_ = make('k', {}, v);
  e.text_ = std::to_string(v);
  return e;
}

std::int64_t Expr::operator()(std::int64_t n) const { return eval(*root_, n); }

}  // namespace prolim::cli
