#include "divprop/expr.hpp"

#include <cctype>
#include <cmath>
#include <memory>

namespace divprop {

namespace {

struct Node {
  virtual ~Node() = default;
  virtual double eval(double t) const = 0;
};
using NodePtr = std::shared_ptr<Node>;

struct Num : Node {
  double v;
  explicit Num(double x) : v(x) {}
  double eval(double) const override { return v; }
};
struct Var : Node {
  double eval(double t) const override { return t; }
};
struct Unary : Node {
  enum Kind { Neg, Exp, Ln } kind;
  NodePtr a;
  Unary(Kind k, NodePtr x) : kind(k), a(std::move(x)) {}
  double eval(double t) const override {
    const double x = a->eval(t);
    switch (kind) {
      case Neg: return -x;
      case Exp: return std::exp(x);
      case Ln: return std::log(x);
    }
    return 0;
  }
};
struct Binary : Node {
  char op;
  NodePtr a, b;
  Binary(char o, NodePtr x, NodePtr y) : op(o), a(std::move(x)), b(std::move(y)) {}
  double eval(double t) const override {
    const double x = a->eval(t);
    const double y = b->eval(t);
    switch (op) {
      case '+': return x + y;
      case '-': return x - y;
      case '*': return x * y;
      case '/': return x / y;
      case '^': return std::pow(x, y);
    }
    return 0;
  }
};

class Parser {
 public:
  explicit Parser(const std::string& s) : src_(s) {}

  NodePtr parse() {
    NodePtr n = expression();
    skip_ws();
    if (pos_ != src_.size()) fail(Errc::parse_error, "rate expression: trailing input at '" + rest() + "'");
    return n;
  }

 private:
  const std::string& src_;
  size_t pos_ = 0;

  std::string rest() const { return src_.substr(pos_, 12); }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr n = term();
    for (;;) {
      if (eat('+'))
        n = std::make_shared<Binary>('+', n, term());
      else if (eat('-'))
        n = std::make_shared<Binary>('-', n, term());
      else
        return n;
    }
  }

  NodePtr term() {
    NodePtr n = power();
    for (;;) {
      if (eat('*'))
        n = std::make_shared<Binary>('*', n, power());
      else if (eat('/'))
        n = std::make_shared<Binary>('/', n, power());
      else
        return n;
    }
  }

  NodePtr power() {
    NodePtr base = factor();
    if (eat('^')) {
      // right-associative, exponent must be an integer literal (optionally signed)
      skip_ws();
      bool neg = false;
      if (eat('-')) neg = true;
      skip_ws();
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ == start) fail(Errc::parse_error, "rate expression: expected integer exponent");
      double e = std::stod(src_.substr(start, pos_ - start));
      if (neg) e = -e;
      return std::make_shared<Binary>('^', base, std::make_shared<Num>(e));
    }
    return base;
  }

  NodePtr factor() {
    skip_ws();
    if (eat('-')) return std::make_shared<Unary>(Unary::Neg, factor());
    if (eat('+')) return factor();
    if (eat('(')) {
      NodePtr n = expression();
      if (!eat(')')) fail(Errc::parse_error, "rate expression: missing ')'");
      return n;
    }
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail(Errc::parse_error, "rate expression: unexpected character at '" + rest() + "'");
  }

  NodePtr number() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    // scientific notation
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t mark = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // the e belonged to something else
      }
    }
    try {
      return std::make_shared<Num>(std::stod(src_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      fail(Errc::parse_error, "rate expression: bad number at '" + src_.substr(start, 12) + "'");
    }
  }

  NodePtr name() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string id = src_.substr(start, pos_ - start);
    if (id == "t") return std::make_shared<Var>();
    if (id == "exp" || id == "ln") {
      if (!eat('(')) fail(Errc::parse_error, "rate expression: expected '(' after " + id);
      NodePtr arg = expression();
      if (!eat(')')) fail(Errc::parse_error, "rate expression: missing ')' after " + id);
      return std::make_shared<Unary>(id == "exp" ? Unary::Exp : Unary::Ln, arg);
    }
    fail(Errc::parse_error, "rate expression: unknown identifier '" + id + "'");
  }
};

}  // namespace

RateFn parse_rate(const std::string& expr) {
  Parser p(expr);
  NodePtr root = p.parse();
  return [root](double t) { return root->eval(t); };
}

RateFn tabulated_rate(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2)
    fail(Errc::invalid_argument, "tabulated_rate: need matching lists of at least two points");
  for (size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      fail(Errc::invalid_argument, "tabulated_rate: times must be strictly increasing");
  return [times = std::move(times), values = std::move(values)](double t) {
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    size_t hi = std::upper_bound(times.begin(), times.end(), t) - times.begin();
    const double w = (t - times[hi - 1]) / (times[hi] - times[hi - 1]);
    return values[hi - 1] * (1 - w) + values[hi] * w;
  };
}

}  // namespace divprop
