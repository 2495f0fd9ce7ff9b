#include "creal/expression.hpp"

#include <cctype>

#include "creal/errors.hpp"

namespace cr {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr result = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression: " + what + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprPtr make(Expr::Binary node) { return std::make_shared<const Expr>(Expr{std::move(node)}); }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make({'+', lhs, term()});
      } else if (accept('-')) {
        lhs = make({'-', lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (accept('*')) lhs = make({'*', lhs, unary()});
    return lhs;
  }

  ExprPtr unary() {
    if (accept('-')) return std::make_shared<const Expr>(Expr{Expr::Negate{unary()}});
    return primary();
  }

  ExprPtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return call();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  ExprPtr literal() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.')) {
      ++pos_;
      digits();
    }
    return std::make_shared<const Expr>(
        Expr{Expr::Literal{Rational::parse(text_.substr(start, pos_ - start))}});
  }

  ExprPtr call() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    if (!accept('(')) fail("expected '(' after '" + name + "'");
    std::vector<std::string> args;
    std::string current;
    int depth = 0;
    for (;;) {
      if (pos_ >= text_.size()) fail("unterminated call to '" + name + "'");
      const char c = text_[pos_++];
      if (c == '(') ++depth;
      if (c == ')' && depth-- == 0) break;
      if (c == ',' && depth == 0) {
        args.push_back(trim(current));
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    if (!trim(current).empty() || !args.empty()) args.push_back(trim(current));
    return std::make_shared<const Expr>(Expr{Expr::Call{std::move(name), std::move(args)}});
  }

  static std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

Rational evaluate_rational(const Expr& expr) {
  return std::visit(
      Overloaded{
          [](const Expr::Literal& lit) { return lit.value; },
          [](const Expr::Call& call) -> Rational {
            throw InvalidArgument("'" + call.name + "(...)' is not a rational expression");
          },
          [](const Expr::Negate& neg) { return -evaluate_rational(*neg.operand); },
          [](const Expr::Binary& bin) {
            Rational lhs = evaluate_rational(*bin.lhs);
            Rational rhs = evaluate_rational(*bin.rhs);
            if (bin.op == '+') return lhs + rhs;
            if (bin.op == '-') return lhs - rhs;
            return lhs * rhs;
          },
      },
      expr.node);
}

Crn build_crn(const Expr& expr, const BuiltinRegistry& builtins) {
  return std::visit(
      Overloaded{
          [](const Expr::Literal& lit) { return Crn::from_rational(lit.value); },
          [&](const Expr::Call& call) {
            auto it = builtins.find(call.name);
            if (it == builtins.end()) throw InvalidArgument("unknown built-in '" + call.name + "'");
            return it->second(call.args);
          },
          [&](const Expr::Negate& neg) { return -build_crn(*neg.operand, builtins); },
          [&](const Expr::Binary& bin) {
            Crn lhs = build_crn(*bin.lhs, builtins);
            Crn rhs = build_crn(*bin.rhs, builtins);
            if (bin.op == '+') return lhs + rhs;
            if (bin.op == '-') return lhs - rhs;
            return lhs * rhs;
          },
      },
      expr.node);
}

}  // namespace cr
