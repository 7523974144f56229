#pragma once

#include <optional>

#include "pls/error.hpp"
#include "pls/grammar.hpp"
#include "pls/term.hpp"
#include "support.hpp"

namespace pls::testing {

template <typename F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// Parses with declared names replaceable unless listed in `frozen`.
inline Expression rx(const Grammar& g, std::string_view text) { return g.parse_any(text, VariableMode::replaceable); }
inline Expression fx(const Grammar& g, std::string_view text) { return g.parse_any(text, VariableMode::frozen); }

inline Variable rv(const Grammar& g, std::string_view name) { return g.declared_variable(name, VariableMode::replaceable); }
inline Variable fv(const Grammar& g, std::string_view name) { return g.declared_variable(name, VariableMode::frozen); }

}  // namespace pls::testing
