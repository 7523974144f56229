#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pls/expression.hpp"
#include "pls/grammar.hpp"

namespace pls {

/// Finite mapping from replaceable variables to expressions.
///
/// Images are stored without a top-level coercion wrapper (the wrapper is
/// reinserted by `apply` from the variable's kind) and identity bindings are
/// never stored, so `==` is extensional equality.
class Substitution {
 public:
  using Map = std::map<Variable, Expression>;

  Substitution() = default;

  /// Checked insertion: throws KindMismatch unless `v` is replaceable and an
  /// expression of kind(e) may stand for a variable of kind(v).
  void bind(const Grammar& g, const Variable& v, const Expression& e);
  /// Unchecked insertion for callers that already guarantee conformity.
  void assign(const Variable& v, const Expression& e);
  void erase(const Variable& v) { bindings_.erase(v); }

  const Expression* find(const Variable& v) const;
  /// θ(v): the bound image, or `v` itself.
  Expression image(const Variable& v) const;

  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  Map::const_iterator begin() const noexcept { return bindings_.begin(); }
  Map::const_iterator end() const noexcept { return bindings_.end(); }
  const Map& bindings() const noexcept { return bindings_; }
  VariableSet domain() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;
  friend auto operator<=>(const Substitution& a, const Substitution& b) { return a.bindings_ <=> b.bindings_; }

 private:
  Map bindings_;
};

Expression apply(const Substitution& s, const Expression& e);

/// (outer ∘ inner)(e) = outer(inner(e)).
Substitution compose(const Substitution& outer, const Substitution& inner);

Substitution restrict_to(const Substitution& s, const VariableSet& vars);

/// The unique θ over the pattern's replaceable variables with θ(pattern) = target.
/// Variables of the target are constants.
std::optional<Substitution> match_expression(const Grammar& g, const Expression& pattern, const Expression& target);

/// Simultaneous matching of several (pattern, target) pairs.
std::optional<Substitution> match_expressions(const Grammar& g,
                                              std::span<const std::pair<Expression, Expression>> pairs);

/// Incremental syntactic unification with occurs check. Replaceable variables
/// on both sides may be bound; frozen variables are constants. Once `unify`
/// returns false the unifier is spent and must be discarded.
class Unifier {
 public:
  explicit Unifier(const Grammar& g) : g_(&g) {}

  bool unify(const Expression& a, const Expression& b);
  /// Idempotent most general unifier of every equation added so far.
  Substitution solution() const;

 private:
  const Expression& walk(const Expression& e) const;
  bool occurs_resolved(const Variable& v, const Expression& e) const;
  bool try_bind(const Expression& var, const Expression& term);
  Expression resolve(const Expression& e, std::map<Variable, Expression>& memo) const;

  const Grammar* g_;
  std::map<Variable, Expression> bindings_;
};

std::optional<Substitution> unify_expressions(const Grammar& g, const Expression& a, const Expression& b);

struct SubstitutionUnifier {
  Substitution delta;  // mgu(Ξ)
  Substitution com;    // delta ∘ θ_1, equal to delta ∘ θ_i for every i
};

/// Most general δ with δ∘θ_i = δ∘θ_j for all members of `xi`. The empty
/// sequence is unified by the empty substitution.
std::optional<SubstitutionUnifier> unify_substitutions(const Grammar& g, std::span<const Substitution> xi);

/// `{ v1 := <tokens> ; v2 := <tokens> }`, domain in lexicographic order.
std::string to_string(const Grammar& g, const Substitution& s);

}  // namespace pls
