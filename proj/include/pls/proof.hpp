#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pls/expression.hpp"
#include "pls/system.hpp"
#include "pls/term.hpp"

namespace pls {

struct Inference;

/// Expression node of a proof tree (e-node). A node without an inference is a leaf.
struct ProofNode {
  Expression expression;
  std::shared_ptr<const Inference> inference;

  bool is_leaf() const noexcept { return inference == nullptr; }

  friend bool operator==(const ProofNode& a, const ProofNode& b);
};

/// Assertion node (a-node): the assertion applied, its witness, and the
/// sub-proofs of its premises in premise order.
struct Inference {
  std::string assertion;
  Substitution witness;
  std::vector<ProofNode> premises;

  friend bool operator==(const Inference&, const Inference&) = default;
};

using ProofTree = ProofNode;

ProofNode make_leaf(Expression e);
ProofNode make_step(Expression e, std::string assertion, Substitution witness, std::vector<ProofNode> premises);

struct Violation {
  std::string path;  // "root", "root/0", "root/0/1", ...
  std::string message;
};

struct Verdict {
  std::vector<Violation> violations;
  bool valid() const noexcept { return violations.empty(); }
};

/// Every transition e_1..e_n / e_0 via (a, θ) must satisfy θ(p_i) = e_i and θ(p_0) = e_0.
Verdict check_proof(const DeductiveSystem& d, const ProofTree& t);
/// check_proof, plus: root = goal, every leaf is a statement premise.
Verdict check_statement_proof(const DeductiveSystem& d, const Statement& s, const ProofTree& t);

/// σ(t): σ applied to every e-node; every witness η becomes σ∘η restricted
/// to the variables of its assertion.
ProofTree substitute_proof(const DeductiveSystem& d, const Substitution& s, const ProofTree& t);

/// Shape isomorphism with equal assertion ids; e-nodes unconstrained.
bool congruent(const ProofTree& a, const ProofTree& b);

/// δ with substitute_proof(δ, general) = specific, when it exists.
std::optional<Substitution> generality(const DeductiveSystem& d, const ProofTree& general, const ProofTree& specific);

std::size_t inference_count(const ProofTree& t);
std::size_t proof_height(const ProofTree& t);
std::map<std::string, std::size_t> assertion_multiset(const ProofTree& t);
std::vector<Expression> proof_leaves(const ProofTree& t);

/// `.plp` text form.
std::string serialize_proof(const Grammar& g, const ProofTree& t);
/// Declared variable names in e-nodes and witness images parse with `mode`;
/// witness keys are assertion variables and always replaceable.
ProofTree parse_proof(const DeductiveSystem& d, std::string_view text, VariableMode mode = VariableMode::frozen);

}  // namespace pls
