#pragma once

#include <string_view>

#include "linegrade/syntax/ast.hpp"

namespace linegrade::syntax {

/// Parses a template pattern.
///
/// Supported: literals and escapes, `.`, `\s \S \w \W \d \D`, bracket
/// classes with ranges and negation, alternation, greedy and lazy
/// `* + ? {n} {n,} {n,m}`, `(...)`, `(?:...)`, `(?<name>...)`, `\1`,
/// `\k<name>`, `(?R)`, `(?1)`, `(?&name)`, `^`/`$` at the pattern ends,
/// `(?#...)` comments and the macro comments:
///
///     (?###parens_opt<)body(?###>)        body in zero or more ( ) pairs
///     (?###parens_req<)body(?###>)        body in one or more ( ) pairs
///     (?###brackets_opt<)body(?###>)      same with [ ]
///     (?###brackets_req<)body(?###>)
///     (?###custom_parens_opt<OPEN|CLOSE|)body(?###>)
///     (?###custom_parens_req<OPEN|CLOSE|)body(?###>)
///     (?###identifier)                    [A-Za-z_][A-Za-z0-9_]*
///
/// Macros are returned unexpanded. Throws SyntaxError with a 0-based offset.
RegexAst parse(std::string_view pattern);

}  // namespace linegrade::syntax
