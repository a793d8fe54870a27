#include "psindex/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <utility>

#include "psindex/errors.hpp"

namespace psindex {
namespace {

constexpr std::array<std::pair<std::string_view, ExprFunc>, 8> kFunctions{{
    {"abs2", ExprFunc::Abs2},
    {"re", ExprFunc::Re},
    {"im", ExprFunc::Im},
    {"exp", ExprFunc::Exp},
    {"log", ExprFunc::Log},
    {"sqrt", ExprFunc::Sqrt},
    {"sin", ExprFunc::Sin},
    {"cos", ExprFunc::Cos},
}};

class Parser {
 public:
  Parser(std::string_view text, int declared_n) : s_(text), declared_n_(declared_n) {}

  ParsedExpr run() {
    skip_ws();
    if (at_end()) throw ParseError("syntax error: empty expression", pos_, "operand");
    ExprPtr root = parse_sum();
    skip_ws();
    if (!at_end()) throw ParseError("syntax error: unexpected '" + std::string(1, s_[pos_]) + "'", pos_, "operator or end of input");
    return {root, max_var_};
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (!at_end() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprPtr binary(ExprOp op, ExprPtr a, ExprPtr b, std::size_t pos) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->args = {std::move(a), std::move(b)};
    n->position = pos;
    return n;
  }

  ExprPtr parse_sum() {
    ExprPtr lhs = parse_product();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+'))
        lhs = binary(ExprOp::Add, lhs, parse_product(), at);
      else if (accept('-'))
        lhs = binary(ExprOp::Sub, lhs, parse_product(), at);
      else
        return lhs;
    }
  }

  ExprPtr parse_product() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*'))
        lhs = binary(ExprOp::Mul, lhs, parse_unary(), at);
      else if (accept('/'))
        lhs = binary(ExprOp::Div, lhs, parse_unary(), at);
      else
        return lhs;
    }
  }

  ExprPtr parse_unary() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('-')) {
      auto n = std::make_shared<ExprNode>();
      n->op = ExprOp::Negate;
      n->args = {parse_unary()};
      n->position = at;
      return n;
    }
    if (accept('+')) return parse_unary();
    return parse_primary();
  }

  ExprPtr parse_primary() {
    skip_ws();
    const std::size_t at = pos_;
    if (at_end()) throw ParseError("syntax error: unexpected end of input", pos_, "operand");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_sum();
      if (!accept(')')) throw ParseError("syntax error: unbalanced parenthesis", cur(), "')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw ParseError("syntax error: unexpected '" + std::string(1, c) + "'", at, "operand");
  }

  std::size_t cur() {
    skip_ws();
    return pos_;
  }

  ExprPtr parse_number() {
    const std::size_t at = pos_;
    std::size_t end = pos_;
    while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.')) ++end;
    if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
      std::size_t k = end + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
        end = k;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + at, s_.data() + end, v);
    if (res.ec != std::errc() || res.ptr != s_.data() + end) throw ParseError("syntax error: malformed number", at, "number");
    pos_ = end;
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Number;
    n->number = v;
    n->position = at;
    return n;
  }

  ExprPtr parse_identifier() {
    const std::size_t at = pos_;
    std::size_t end = pos_;
    while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
    const std::string_view name = s_.substr(at, end - at);
    pos_ = end;
    for (const auto& [fname, f] : kFunctions) {
      if (name != fname) continue;
      if (!accept('(')) throw ParseError("syntax error: function '" + std::string(name) + "' needs an argument", cur(), "'('");
      ExprPtr arg = parse_sum();
      if (!accept(')')) throw ParseError("syntax error: unbalanced parenthesis", cur(), "')'");
      auto n = std::make_shared<ExprNode>();
      n->op = ExprOp::Call;
      n->func = f;
      n->args = {std::move(arg)};
      n->position = at;
      return n;
    }
    if (name.size() >= 2 && name[0] == 'z') {
      int idx = 0;
      const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (res.ec == std::errc() && res.ptr == name.data() + name.size() && idx >= 1 && name[1] != '0') {
        if (declared_n_ > 0 && idx > declared_n_)
          throw ParseError("unknown identifier '" + std::string(name) + "' (dimension is " + std::to_string(declared_n_) + ")", at,
                           "z1..z" + std::to_string(declared_n_));
        max_var_ = std::max(max_var_, idx);
        auto n = std::make_shared<ExprNode>();
        n->op = ExprOp::Variable;
        n->variable = idx - 1;
        n->position = at;
        return n;
      }
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", at, "variable or function");
  }

  std::string_view s_;
  int declared_n_;
  std::size_t pos_ = 0;
  int max_var_ = 0;
};

int precedence(ExprOp op) {
  switch (op) {
    case ExprOp::Add:
    case ExprOp::Sub:
      return 1;
    case ExprOp::Mul:
    case ExprOp::Div:
      return 2;
    case ExprOp::Negate:
      return 3;
    default:
      return 4;
  }
}

void print_into(const ExprNode& e, std::string& out) {
  auto child = [&](const ExprNode& c, bool wrap) {
    if (wrap) out += '(';
    print_into(c, out);
    if (wrap) out += ')';
  };
  switch (e.op) {
    case ExprOp::Number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", e.number);
      out += buf;
      return;
    }
    case ExprOp::Variable:
      out += 'z';
      out += std::to_string(e.variable + 1);
      return;
    case ExprOp::Negate:
      out += '-';
      child(*e.args[0], precedence(e.args[0]->op) < 3 || e.args[0]->op == ExprOp::Negate);
      return;
    case ExprOp::Call:
      out += func_name(e.func);
      out += '(';
      print_into(*e.args[0], out);
      out += ')';
      return;
    default: {
      const int p = precedence(e.op);
      const char sym = e.op == ExprOp::Add ? '+' : e.op == ExprOp::Sub ? '-' : e.op == ExprOp::Mul ? '*' : '/';
      // Left-associative: the right operand needs parentheses at equal precedence.
      child(*e.args[0], precedence(e.args[0]->op) < p);
      out += sym;
      child(*e.args[1], precedence(e.args[1]->op) <= p);
      return;
    }
  }
}

}  // namespace

std::string_view func_name(ExprFunc f) {
  for (const auto& [name, g] : kFunctions)
    if (g == f) return name;
  return "?";
}

ParsedExpr parse_expr(std::string_view text, int declared_n) { return Parser(text, declared_n).run(); }

std::string print_expr(const ExprNode& e) {
  std::string out;
  print_into(e, out);
  return out;
}

bool expr_equal(const ExprNode& a, const ExprNode& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  switch (a.op) {
    case ExprOp::Number:
      if (a.number != b.number) return false;
      break;
    case ExprOp::Variable:
      if (a.variable != b.variable) return false;
      break;
    case ExprOp::Call:
      if (a.func != b.func) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!expr_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

CJet eval_expr(const ExprNode& e, const std::vector<CJet>& z) {
  const CJet& like = z.front();
  switch (e.op) {
    case ExprOp::Number:
      return CJet(like.nvars(), e.number, like.order());
    case ExprOp::Variable:
      return z.at(static_cast<std::size_t>(e.variable));
    case ExprOp::Negate:
      return -eval_expr(*e.args[0], z);
    case ExprOp::Add:
      return eval_expr(*e.args[0], z) + eval_expr(*e.args[1], z);
    case ExprOp::Sub:
      return eval_expr(*e.args[0], z) - eval_expr(*e.args[1], z);
    case ExprOp::Mul:
      return eval_expr(*e.args[0], z) * eval_expr(*e.args[1], z);
    case ExprOp::Div:
      return eval_expr(*e.args[0], z) / eval_expr(*e.args[1], z);
    case ExprOp::Call: {
      const CJet a = eval_expr(*e.args[0], z);
      switch (e.func) {
        case ExprFunc::Abs2:
          return a * conj(a);
        case ExprFunc::Re:
          return 0.5 * (a + conj(a));
        case ExprFunc::Im:
          return std::complex<double>(0, -0.5) * (a - conj(a));
        case ExprFunc::Exp:
          return exp(a);
        case ExprFunc::Log:
          return log(a);
        case ExprFunc::Sqrt:
          return sqrt(a);
        case ExprFunc::Sin:
          return sin(a);
        case ExprFunc::Cos:
          return cos(a);
      }
    }
  }
  throw std::logic_error("eval_expr: unreachable");
}

}  // namespace psindex
