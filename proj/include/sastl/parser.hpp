#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sastl/formula.hpp"

namespace sastl {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t pos, const std::string &message)
      : std::runtime_error("parse error at offset " + std::to_string(pos) +
                           ": " + message),
        position(pos) {}
  std::size_t position;
};

/* Parses the textual SaSTL grammar:
 *
 *   formula  := or ('->' formula)?
 *   or       := and ('or' and)*
 *   and      := until ('and' until)*
 *   until    := unary ('until' '[' a ',' b ']' until)?
 *   unary    := 'not' unary
 *             | 'always' '[' a ',' b ']' unary
 *             | 'eventually' '[' a ',' b ']' unary
 *             | 'everywhere' '(' band ',' psi ')' unary
 *             | 'somewhere' '(' band ',' psi ')' unary
 *             | primary
 *   primary  := 'true' | '(' formula ')'
 *             | 'agg' '(' op ',' band ',' psi ')' '(' var ')' cmp number
 *             | 'count' '(' op ',' band ',' psi ')' '(' formula ')' cmp number
 *             | var cmp number
 *   band     := '[' number ',' (number | 'inf') ']'
 *   psi      := psi-and ('or' psi-and)* ; usual precedence, 'not' tightest
 *   cmp      := '<' '<=' '>' '>=' '==' '!='
 *
 * Derived forms are lowered to the core AST during parsing.
 */
FormulaPtr parse(const std::string &text);

LabelExpr parse_label_expr(const std::string &text);

struct Requirement {
  std::string name;
  std::string text;
  FormulaPtr formula;
};

/* Requirement file: one `name: formula` per line, '#' starts a comment. */
std::vector<Requirement> load_requirements(const std::string &path);
std::vector<Requirement> parse_requirements(const std::string &content,
                                            const std::string &origin);

} // namespace sastl
