#pragma once

#include "linegrade/syntax/ast.hpp"

namespace linegrade::syntax {

/// Rewrites every Macro node into plain recursive-group structure.
///
/// For delimiters OPEN/CLOSE and body B, with fresh internal groups
/// `#body` (around B) and `#wrap`:
///
///     #wrap          := OPEN \s* (?: (?&#body) | (?&#wrap) ) \s* CLOSE
///     parens_opt(B)  := (?: (?<#body>B) | #wrap )
///     parens_req(B)  := OPEN \s* (?: (?<#body>B) | (?&#wrap) ) \s* CLOSE   (as group #wrap)
///
/// The body is emitted once and reached from the wrapper by subroutine call,
/// so nested macros grow the tree linearly. User group indices are kept;
/// internal groups are numbered after them. An AST without macros is
/// returned unchanged. Throws MacroError on an empty body or delimiter.
RegexAst expand_macros(const RegexAst& ast);

}  // namespace linegrade::syntax
