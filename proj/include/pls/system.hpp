#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pls/expression.hpp"
#include "pls/grammar.hpp"

namespace pls {

/// Inference figure premises ⊢ proposition. Its variables are replaceable.
struct Assertion {
  std::string id;
  std::vector<Expression> premises;
  Expression proposition;

  VariableSet variables() const;

  friend bool operator==(const Assertion&, const Assertion&) = default;
};

/// Goal to be proved. Its variables are frozen.
struct Statement {
  std::string id;
  std::vector<Expression> premises;
  Expression goal;

  VariableSet variables() const;

  friend bool operator==(const Statement&, const Statement&) = default;
};

class DeductiveSystem {
 public:
  DeductiveSystem(Grammar grammar, std::vector<Assertion> assertions, std::vector<Statement> statements);

  const Grammar& grammar() const noexcept { return grammar_; }
  const std::vector<Assertion>& assertions() const noexcept { return assertions_; }
  const std::vector<Statement>& statements() const noexcept { return statements_; }

  const Assertion* find_assertion(std::string_view id) const;
  const Assertion& assertion(std::string_view id) const;  // throws UnknownAssertionId
  std::size_t assertion_index(std::string_view id) const;
  const Statement& statement(std::string_view id) const;  // throws UnknownStatement

  friend bool operator==(const DeductiveSystem&, const DeductiveSystem&) = default;

 private:
  Grammar grammar_;
  std::vector<Assertion> assertions_;
  std::vector<Statement> statements_;
};

/// Supplies the `#k` suffixes used to rename assertion variables apart.
class FreshSupply {
 public:
  std::uint64_t next() const noexcept { return counter_; }
  std::uint64_t take() noexcept { return counter_++; }

 private:
  std::uint64_t counter_ = 0;
};

std::string fresh_name(std::string_view base, std::uint64_t suffix);
/// `ph#3` -> `ph`; names without a numeric suffix are returned unchanged.
std::string erase_fresh_suffix(std::string_view name);

/// Renames every variable `v` of `a` to the replaceable `v#k`, drawing one `k`
/// from `supply` per call.
Assertion rename_assertion(const Assertion& a, FreshSupply& supply);
Assertion rename_assertion(const Assertion& a, std::uint64_t suffix);

DeductiveSystem load_system(std::istream& in);
DeductiveSystem load_system_text(std::string_view text);
DeductiveSystem load_system_file(const std::filesystem::path& path);

std::string render_system(const DeductiveSystem& d);

}  // namespace pls
