#include "asygeo/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "asygeo/errors.hpp"

namespace asygeo {

struct Expression::Node {
  enum class Kind { kNumber, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
  enum class Func { kSin, kCos, kExp, kLn, kSinh, kCosh };

  Kind kind = Kind::kNumber;
  double number = 0.0;
  Func func = Func::kSin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  double eval(double t) const {
    switch (kind) {
      case Kind::kNumber: return number;
      case Kind::kVar: return t;
      case Kind::kNeg: return -lhs->eval(t);
      case Kind::kAdd: return lhs->eval(t) + rhs->eval(t);
      case Kind::kSub: return lhs->eval(t) - rhs->eval(t);
      case Kind::kMul: return lhs->eval(t) * rhs->eval(t);
      case Kind::kDiv: return lhs->eval(t) / rhs->eval(t);
      case Kind::kPow: return std::pow(lhs->eval(t), rhs->eval(t));
      case Kind::kCall: {
        const double x = lhs->eval(t);
        switch (func) {
          case Func::kSin: return std::sin(x);
          case Func::kCos: return std::cos(x);
          case Func::kExp: return std::exp(x);
          case Func::kLn: return std::log(x);
          case Func::kSinh: return std::sinh(x);
          case Func::kCosh: return std::cosh(x);
        }
      }
    }
    return std::nan("");
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;
using Func = Expression::Node::Func;

NodePtr make_leaf(Kind k, double v = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->number = v;
  return n;
}

NodePtr make_op(Kind k, NodePtr a, NodePtr b = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      skip_ws();
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_op(Kind::kAdd, lhs, term());
      } else if (accept('-')) {
        lhs = make_op(Kind::kSub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make_op(Kind::kMul, lhs, factor());
      } else if (accept('/')) {
        lhs = make_op(Kind::kDiv, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr base = unary();
    if (accept('^')) return make_op(Kind::kPow, base, factor());
    return base;
  }

  NodePtr unary() {
    if (accept('-')) return make_op(Kind::kNeg, unary());
    return primary();
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    // optional exponent: 1e-3, 2.5E+4
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        pos_ = q;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc{} || ptr != s_.data() + pos_) throw ParseError("malformed number", start);
    return make_leaf(Kind::kNumber, v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string_view id = s_.substr(start, pos_ - start);
    if (id == "t") return make_leaf(Kind::kVar);
    if (id == "e") return make_leaf(Kind::kNumber, std::numbers::e);
    if (id == "pi") return make_leaf(Kind::kNumber, std::numbers::pi);

    static constexpr std::pair<std::string_view, Func> kFuncs[] = {
        {"sin", Func::kSin},   {"cos", Func::kCos},   {"exp", Func::kExp},
        {"ln", Func::kLn},     {"sinh", Func::kSinh}, {"cosh", Func::kCosh},
    };
    for (const auto& [name, f] : kFuncs) {
      if (id == name) {
        expect('(');
        auto call = std::make_shared<Expression::Node>();
        call->kind = Kind::kCall;
        call->func = f;
        call->lhs = expr();
        expect(')');
        return call;
      }
    }
    throw ParseError("unknown identifier '" + std::string(id) + "'", start);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view source) {
  Parser parser(source);
  NodePtr root = parser.parse();
  return Expression(std::string(source), std::move(root));
}

double Expression::operator()(double t) const { return root_->eval(t); }

}  // namespace asygeo
