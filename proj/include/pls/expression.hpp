#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace pls {

struct KindId {
  std::uint32_t value = 0;
  friend auto operator<=>(KindId, KindId) = default;
};

struct ProductionId {
  std::uint32_t value = 0;
  friend auto operator<=>(ProductionId, ProductionId) = default;
};

/// A variable occurrence. Replaceable variables may be bound by substitutions;
/// non-replaceable ("frozen") ones behave as constants everywhere.
struct Variable {
  std::string name;
  KindId kind;
  bool replaceable = false;

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

using VariableSet = std::set<Variable>;

/// Immutable, shared expression tree.
///
/// Three node shapes exist: a variable leaf, the application of a grammar
/// production to child expressions, and a coercion wrapper that lets an
/// expression of one kind stand where another kind is expected. Coercion
/// wrappers are kept normalized: a wrapper never wraps another wrapper and
/// never has the same kind as its child. With this normal form, two
/// expressions of equal kind are equal exactly when their cores are
/// structurally equal.
class Expression {
 public:
  enum class Tag : std::uint8_t { variable, apply, coerce };

  static Expression make_variable(Variable v);
  static Expression make_apply(ProductionId production, KindId kind, std::vector<Expression> children);
  /// `e` viewed at kind `target`; returns the bare core when it already has that kind.
  static Expression coerce_to(KindId target, const Expression& e);

  Tag tag() const noexcept { return node_->tag; }
  bool is_variable() const noexcept { return node_->tag == Tag::variable; }
  bool is_apply() const noexcept { return node_->tag == Tag::apply; }
  bool is_coerce() const noexcept { return node_->tag == Tag::coerce; }

  KindId kind() const noexcept { return node_->kind; }
  const Variable& variable() const { return node_->var; }
  ProductionId production() const noexcept { return node_->production; }
  std::span<const Expression> children() const noexcept { return node_->children; }

  /// The expression with any top-level coercion wrapper removed.
  const Expression& core() const noexcept { return is_coerce() ? node_->children.front() : *this; }

  std::size_t hash() const noexcept { return node_->hash; }
  /// Node count, coercion wrappers included.
  std::size_t size() const noexcept { return node_->size; }
  bool has_replaceable() const noexcept { return node_->has_replaceable; }

  bool same_node(const Expression& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const Expression& a, const Expression& b);
  friend std::strong_ordering operator<=>(const Expression& a, const Expression& b);

 private:
  struct Node {
    Tag tag = Tag::variable;
    KindId kind;
    ProductionId production;
    Variable var;
    std::vector<Expression> children;
    std::size_t hash = 0;
    std::size_t size = 1;
    bool has_replaceable = false;
  };

  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

void collect_variables(const Expression& e, VariableSet& out);
VariableSet variables(const Expression& e);
VariableSet replaceable_variables(const Expression& e);
bool occurs(const Variable& v, const Expression& e);

struct ExpressionHash {
  std::size_t operator()(const Expression& e) const noexcept { return e.hash(); }
};

}  // namespace pls

template <>
struct std::hash<pls::Expression> {
  std::size_t operator()(const pls::Expression& e) const noexcept { return e.hash(); }
};
