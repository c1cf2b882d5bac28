#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace asygeo {

/// A parsed scalar expression in the single variable `t`.
///
/// Grammar (whitespace insignificant, `^` right-associative):
///
///     expr    := term (("+"|"-") term)*
///     term    := factor (("*"|"/") factor)*
///     factor  := unary ("^" factor)?
///     unary   := "-" unary | primary
///     primary := number | "t" | "e" | "pi" | func "(" expr ")" | "(" expr ")"
///     func    := "sin"|"cos"|"exp"|"ln"|"sinh"|"cosh"
///
/// Note that unary minus binds looser than `^`: `-t^2` is `-(t^2)`.
class Expression {
 public:
  /// Throws ParseError with the offending character offset.
  static Expression parse(std::string_view source);

  double operator()(double t) const;

  const std::string& source() const noexcept { return source_; }

  struct Node;

 private:
  Expression(std::string source, std::shared_ptr<const Node> root)
      : source_(std::move(source)), root_(std::move(root)) {}

  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace asygeo
