#pragma once

// Membership for delimiter-wrapping macros: peel matching delimiters and the
// optional whitespace inside them until the body remains.

#include <functional>
#include <string_view>

namespace oracle {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

using BodyPredicate = std::function<bool(std::string_view)>;

/// One or more delimiter layers around a body. The body must not start or
/// end with whitespace.
inline bool wrapped(std::string_view s, std::string_view open, std::string_view close,
                    const BodyPredicate& body) {
  if (s.size() < open.size() + close.size() || !s.starts_with(open) || !s.ends_with(close))
    return false;
  const auto inner = trim(s.substr(open.size(), s.size() - open.size() - close.size()));
  return body(inner) || wrapped(inner, open, close, body);
}

inline bool parens_opt_member(std::string_view s, const BodyPredicate& body,
                              std::string_view open = "(", std::string_view close = ")") {
  return body(s) || wrapped(s, open, close, body);
}

inline bool parens_req_member(std::string_view s, const BodyPredicate& body,
                              std::string_view open = "(", std::string_view close = ")") {
  return wrapped(s, open, close, body);
}

}  // namespace oracle
