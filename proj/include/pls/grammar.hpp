#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pls/expression.hpp"

namespace pls {

/// One right-hand-side item: a literal token or a slot of some kind.
using RhsItem = std::variant<std::string, KindId>;

struct Production {
  std::string id;
  KindId result;
  std::vector<RhsItem> rhs;
  // Came from a `coerce A into B` line rather than a `rule` line.
  bool declared_coercion = false;

  bool is_coercion() const { return rhs.size() == 1 && std::holds_alternative<KindId>(rhs.front()); }
  std::vector<KindId> slots() const;

  friend bool operator==(const Production&, const Production&) = default;
};

struct VariableDecl {
  std::string name;
  KindId kind;

  friend bool operator==(const VariableDecl&, const VariableDecl&) = default;
};

/// How declared variable names are flagged when parsing. Fresh names of the
/// form `base#k` are always replaceable.
enum class VariableMode { frozen, replaceable };

class GrammarBuilder;

/// Typed context-free expression grammar. Immutable once built.
class Grammar {
 public:
  std::size_t kind_count() const { return kind_names_.size(); }
  const std::string& kind_name(KindId k) const { return kind_names_.at(k.value); }
  KindId kind(std::string_view name) const;
  std::optional<KindId> find_kind(std::string_view name) const;

  std::span<const Production> productions() const { return productions_; }
  const Production& production(ProductionId p) const { return productions_.at(p.value); }

  std::span<const VariableDecl> variables() const { return variables_; }
  const VariableDecl* find_variable(std::string_view name) const;
  bool is_literal(std::string_view token) const;

  /// True iff an expression of kind `expr_kind` may stand where a variable of
  /// kind `var_kind` is expected (reflexive-transitive closure of coercions).
  bool kind_coercible(KindId var_kind, KindId expr_kind) const;

  /// Resolves a variable token: a declared name, or `base#k` for a declared base.
  std::optional<Variable> resolve_variable(std::string_view token, VariableMode mode) const;
  Variable declared_variable(std::string_view name, VariableMode mode) const;

  Expression parse(KindId kind, std::span<const std::string> tokens, VariableMode mode = VariableMode::frozen) const;
  Expression parse(KindId kind, std::string_view text, VariableMode mode = VariableMode::frozen) const;
  /// Parses without a target kind: the result is the unique parse whose top
  /// node is not a coercion.
  Expression parse_any(std::span<const std::string> tokens, VariableMode mode = VariableMode::frozen) const;
  Expression parse_any(std::string_view text, VariableMode mode = VariableMode::frozen) const;

  /// Number of distinct parse trees of `tokens` at `kind`, saturating at `cap`.
  std::size_t count_parses(KindId kind, std::span<const std::string> tokens, std::size_t cap = 2) const;

  std::vector<std::string> render(const Expression& e) const;
  std::string render_text(const Expression& e) const;
  std::size_t token_count(const Expression& e) const;

  friend bool operator==(const Grammar& a, const Grammar& b) {
    return a.kind_names_ == b.kind_names_ && a.productions_ == b.productions_ && a.variables_ == b.variables_;
  }

 private:
  friend class GrammarBuilder;

  std::vector<std::string> kind_names_;
  std::vector<Production> productions_;
  std::vector<VariableDecl> variables_;
  std::map<std::string, std::size_t, std::less<>> kind_index_;
  std::map<std::string, std::size_t, std::less<>> variable_index_;
  std::set<std::string, std::less<>> literals_;
  std::vector<std::vector<bool>> closure_;
  // Non-coercion productions grouped by result kind, coercions by result kind.
  std::vector<std::vector<ProductionId>> direct_by_kind_;
  std::vector<std::vector<ProductionId>> coercions_by_kind_;
};

class GrammarBuilder {
 public:
  KindId add_kind(std::string name);
  ProductionId add_production(std::string id, KindId result, std::vector<RhsItem> rhs, bool declared_coercion = false);
  ProductionId add_coercion(KindId from, KindId into);
  void add_variable(std::string name, KindId kind);

  std::optional<KindId> find_kind(std::string_view name) const;
  bool has_production(std::string_view id) const;

  /// Validates and computes the coercion closure. Throws on literal/variable
  /// collisions, reserved characters, and coercion cycles.
  Grammar build() &&;

 private:
  Grammar g_;
};

/// Whitespace tokenizer used for every expression string.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace pls
