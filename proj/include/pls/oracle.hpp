#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pls/proof.hpp"
#include "pls/system.hpp"

namespace pls {

/// Bounds of a saturation run. `max_expression_tokens` limits the images a
/// substitution may assign; derived conclusions themselves are not capped.
struct SaturationBounds {
  std::size_t max_expression_tokens = 13;
  std::size_t max_rounds = 5;
  std::size_t max_universe = 100000;  // UniverseOverflow beyond this
};

struct Justification {
  std::size_t assertion = 0;  // index into the system's assertions
  Substitution witness;       // over the original assertion variables
  std::vector<std::size_t> premises;  // fact ids, in premise order
};

struct Fact {
  Expression expression;
  std::size_t round = 0;
  bool premise = false;  // statement premise (round 0)
  std::vector<Justification> justifications;
};

struct Saturation {
  std::vector<Fact> facts;
  std::unordered_map<Expression, std::size_t> index;
  std::size_t rounds = 0;  // rounds actually run
  bool fixpoint = false;
  std::size_t universe_size = 0;

  const Fact* find(const Expression& e) const;
  bool contains(const Expression& e) const { return find(e) != nullptr; }
};

/// All cores of each kind within `max_tokens` over the variable pool, indexed by kind.
std::vector<std::vector<Expression>> build_universe(const Grammar& g, const VariableSet& pool, std::size_t max_tokens,
                                                    std::size_t max_universe);

/// Throws UniverseOverflow.
Saturation saturate(const DeductiveSystem& d, const Statement& s, const SaturationBounds& b);

/// Up to `max_count` distinct proofs of `goal`, nondecreasing in inference
/// count, each of height at most the number of rounds run. Throws GoalNotDerived.
std::vector<ProofTree> oracle_proofs(const DeductiveSystem& d, const Saturation& sat, const Expression& goal,
                                     std::size_t max_count);
std::vector<ProofTree> oracle_proofs(const DeductiveSystem& d, const Statement& s, const SaturationBounds& b,
                                     const Expression& goal, std::size_t max_count);

bool provable(const DeductiveSystem& d, const Statement& s, const SaturationBounds& b);

/// Derived expressions in render form, sorted.
std::vector<std::string> derived_lines(const Grammar& g, const Saturation& sat);

}  // namespace pls
