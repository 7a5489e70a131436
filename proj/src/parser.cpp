#include "sastl/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sastl {

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Arrow,
  CmpLt,
  CmpLe,
  CmpGt,
  CmpGe,
  CmpEq,
  CmpNe,
  Minus,
  End
};

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
  std::size_t pos = 0;
};

class Lexer {
public:
  explicit Lexer(const std::string &src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      std::size_t pos = i_;
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, "", 0.0, pos});
        return out;
      }
      char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = i_;
        while (i_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
                src_[i_] == '_'))
          ++i_;
        out.push_back({Tok::Ident, src_.substr(start, i_ - start), 0.0, pos});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t start = i_;
        while (i_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[i_])) ||
                src_[i_] == '.' || src_[i_] == 'e' || src_[i_] == 'E' ||
                ((src_[i_] == '+' || src_[i_] == '-') &&
                 (src_[i_ - 1] == 'e' || src_[i_ - 1] == 'E'))))
          ++i_;
        std::string text = src_.substr(start, i_ - start);
        try {
          std::size_t used = 0;
          double v = std::stod(text, &used);
          if (used != text.size())
            throw std::invalid_argument(text);
          out.push_back({Tok::Number, text, v, pos});
        } catch (const std::exception &) {
          throw ParseError(pos, "bad number '" + text + "'");
        }
        continue;
      }
      ++i_;
      switch (c) {
      case '(':
        out.push_back({Tok::LParen, "(", 0.0, pos});
        break;
      case ')':
        out.push_back({Tok::RParen, ")", 0.0, pos});
        break;
      case '[':
        out.push_back({Tok::LBracket, "[", 0.0, pos});
        break;
      case ']':
        out.push_back({Tok::RBracket, "]", 0.0, pos});
        break;
      case ',':
        out.push_back({Tok::Comma, ",", 0.0, pos});
        break;
      case '<':
        if (peek_is('='))
          out.push_back({Tok::CmpLe, "<=", 0.0, pos});
        else
          out.push_back({Tok::CmpLt, "<", 0.0, pos});
        break;
      case '>':
        if (peek_is('='))
          out.push_back({Tok::CmpGe, ">=", 0.0, pos});
        else
          out.push_back({Tok::CmpGt, ">", 0.0, pos});
        break;
      case '=':
        if (peek_is('='))
          out.push_back({Tok::CmpEq, "==", 0.0, pos});
        else
          throw ParseError(pos, "expected '==' (single '=' is not an operator)");
        break;
      case '!':
        if (peek_is('='))
          out.push_back({Tok::CmpNe, "!=", 0.0, pos});
        else
          throw ParseError(pos, "expected '!='");
        break;
      case '-':
        if (peek_is('>'))
          out.push_back({Tok::Arrow, "->", 0.0, pos});
        else
          out.push_back({Tok::Minus, "-", 0.0, pos});
        break;
      default:
        throw ParseError(pos, std::string("unexpected character '") + c + "'");
      }
    }
  }

private:
  void skip_ws() {
    while (i_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[i_])))
      ++i_;
  }
  bool peek_is(char c) {
    if (i_ < src_.size() && src_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  const std::string &src_;
  std::size_t i_ = 0;
};

bool is_keyword(const std::string &s) {
  return s == "not" || s == "and" || s == "or" || s == "true" ||
         s == "until" || s == "always" || s == "eventually" ||
         s == "everywhere" || s == "somewhere" || s == "agg" ||
         s == "count" || s == "inf";
}

class Parser {
public:
  explicit Parser(const std::string &src) : tokens_(Lexer(src).run()) {}

  FormulaPtr formula() {
    auto f = parse_implies();
    expect(Tok::End, "end of input");
    return f;
  }

  LabelExpr label_expr() {
    auto e = parse_psi();
    expect(Tok::End, "end of input");
    return e;
  }

private:
  const Token &cur() const { return tokens_[i_]; }
  const Token &next() { return tokens_[i_++]; }
  bool at_ident(const char *kw) const {
    return cur().kind == Tok::Ident && cur().text == kw;
  }
  bool eat_ident(const char *kw) {
    if (at_ident(kw)) {
      ++i_;
      return true;
    }
    return false;
  }
  const Token &expect(Tok kind, const std::string &what) {
    if (cur().kind != kind)
      throw ParseError(cur().pos, "expected " + what + ", got '" +
                                      (cur().kind == Tok::End ? "<end>"
                                                              : cur().text) +
                                      "'");
    return next();
  }

  double number() {
    bool neg = false;
    if (cur().kind == Tok::Minus) {
      ++i_;
      neg = true;
    }
    const Token &t = expect(Tok::Number, "a number");
    return neg ? -t.value : t.value;
  }

  double band_bound() {
    if (eat_ident("inf"))
      return kInf;
    return number();
  }

  Interval window() {
    expect(Tok::LBracket, "'['");
    std::size_t pos = cur().pos;
    double a = number();
    expect(Tok::Comma, "','");
    double b = number();
    expect(Tok::RBracket, "']'");
    if (!(a >= 0.0) || !(a <= b))
      throw ParseError(pos, "invalid time interval: need 0 <= a <= b");
    return Interval(a, b);
  }

  SpatialDomain band_and_psi() {
    expect(Tok::LBracket, "'['");
    std::size_t pos = cur().pos;
    double d1 = band_bound();
    expect(Tok::Comma, "','");
    double d2 = band_bound();
    expect(Tok::RBracket, "']'");
    if (!(d1 >= 0.0) || !(d1 <= d2))
      throw ParseError(pos, "invalid distance band: need 0 <= d1 <= d2");
    expect(Tok::Comma, "','");
    LabelExpr psi = parse_psi();
    return SpatialDomain(d1, d2, std::move(psi));
  }

  Cmp comparator() {
    switch (cur().kind) {
    case Tok::CmpLt:
      ++i_;
      return Cmp::Lt;
    case Tok::CmpLe:
      ++i_;
      return Cmp::Le;
    case Tok::CmpGt:
      ++i_;
      return Cmp::Gt;
    case Tok::CmpGe:
      ++i_;
      return Cmp::Ge;
    case Tok::CmpEq:
      ++i_;
      return Cmp::Eq;
    case Tok::CmpNe:
      ++i_;
      return Cmp::Ne;
    default:
      throw ParseError(cur().pos, "expected a comparator (< <= > >= == !=)");
    }
  }

  AggOp agg_op() {
    if (eat_ident("max"))
      return AggOp::Max;
    if (eat_ident("min"))
      return AggOp::Min;
    if (eat_ident("sum"))
      return AggOp::Sum;
    if (eat_ident("avg"))
      return AggOp::Avg;
    throw ParseError(cur().pos,
                     "expected an aggregation op (max, min, sum, avg)");
  }

  FormulaPtr parse_implies() {
    auto lhs = parse_or();
    if (cur().kind == Tok::Arrow) {
      ++i_;
      return f_implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    auto lhs = parse_and();
    while (eat_ident("or"))
      lhs = f_or(std::move(lhs), parse_and());
    return lhs;
  }

  FormulaPtr parse_and() {
    auto lhs = parse_until();
    while (eat_ident("and"))
      lhs = f_and(std::move(lhs), parse_until());
    return lhs;
  }

  FormulaPtr parse_until() {
    auto lhs = parse_unary();
    if (eat_ident("until")) {
      Interval I = window();
      return f_until(std::move(lhs), parse_until(), I);
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    if (eat_ident("not"))
      return f_not(parse_unary());
    if (eat_ident("always")) {
      Interval I = window();
      return f_always(I, parse_unary());
    }
    if (eat_ident("eventually")) {
      Interval I = window();
      return f_eventually(I, parse_unary());
    }
    if (eat_ident("everywhere")) {
      expect(Tok::LParen, "'('");
      SpatialDomain D = band_and_psi();
      expect(Tok::RParen, "')'");
      return f_everywhere(std::move(D), parse_unary());
    }
    if (eat_ident("somewhere")) {
      expect(Tok::LParen, "'('");
      SpatialDomain D = band_and_psi();
      expect(Tok::RParen, "')'");
      return f_somewhere(std::move(D), parse_unary());
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    if (eat_ident("true"))
      return f_true();
    if (cur().kind == Tok::LParen) {
      ++i_;
      auto f = parse_implies();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (eat_ident("agg")) {
      expect(Tok::LParen, "'('");
      AggOp op = agg_op();
      expect(Tok::Comma, "','");
      SpatialDomain D = band_and_psi();
      expect(Tok::RParen, "')'");
      expect(Tok::LParen, "'('");
      std::string var = variable();
      expect(Tok::RParen, "')'");
      Cmp cmp = comparator();
      double c = number();
      return f_aggregate(op, std::move(D), std::move(var), cmp, c);
    }
    if (eat_ident("count")) {
      expect(Tok::LParen, "'('");
      AggOp op = agg_op();
      expect(Tok::Comma, "','");
      SpatialDomain D = band_and_psi();
      expect(Tok::RParen, "')'");
      expect(Tok::LParen, "'('");
      auto child = parse_implies();
      expect(Tok::RParen, "')'");
      Cmp cmp = comparator();
      double c = number();
      return f_count(op, std::move(D), std::move(child), cmp, c);
    }
    if (cur().kind == Tok::Ident && !is_keyword(cur().text)) {
      std::string var = next().text;
      Cmp cmp = comparator();
      double c = number();
      return f_atomic(std::move(var), cmp, c);
    }
    throw ParseError(cur().pos,
                     "expected a formula, got '" +
                         (cur().kind == Tok::End ? "<end>" : cur().text) + "'");
  }

  std::string variable() {
    if (cur().kind != Tok::Ident || is_keyword(cur().text))
      throw ParseError(cur().pos, "expected a variable name");
    return next().text;
  }

  LabelExpr parse_psi() {
    auto lhs = parse_psi_and();
    while (eat_ident("or"))
      lhs = LabelExpr::disjunction(std::move(lhs), parse_psi_and());
    return lhs;
  }

  LabelExpr parse_psi_and() {
    auto lhs = parse_psi_unary();
    while (eat_ident("and"))
      lhs = LabelExpr::conjunction(std::move(lhs), parse_psi_unary());
    return lhs;
  }

  LabelExpr parse_psi_unary() {
    if (eat_ident("not"))
      return LabelExpr::negate(parse_psi_unary());
    if (eat_ident("true"))
      return LabelExpr::truth();
    if (cur().kind == Tok::LParen) {
      ++i_;
      auto e = parse_psi();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (cur().kind == Tok::Ident && !is_keyword(cur().text))
      return LabelExpr::prop(next().text);
    throw ParseError(cur().pos, "expected a label expression");
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
};

} // namespace

FormulaPtr parse(const std::string &text) { return Parser(text).formula(); }

LabelExpr parse_label_expr(const std::string &text) {
  return Parser(text).label_expr();
}

std::vector<Requirement> parse_requirements(const std::string &content,
                                            const std::string &origin) {
  std::vector<Requirement> out;
  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    // trim
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos)
      continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": expected 'name: formula'");
    Requirement req;
    req.name = line.substr(0, colon);
    if (auto ne = req.name.find_last_not_of(" \t"); ne != std::string::npos)
      req.name.erase(ne + 1);
    req.text = line.substr(colon + 1);
    try {
      req.formula = parse(req.text);
    } catch (const ParseError &err) {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " +
                               err.what());
    }
    out.push_back(std::move(req));
  }
  return out;
}

std::vector<Requirement> load_requirements(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open requirements file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_requirements(buf.str(), path);
}

} // namespace sastl
