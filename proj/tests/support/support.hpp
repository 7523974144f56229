#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "pls/grammar.hpp"
#include "pls/proof.hpp"
#include "pls/system.hpp"
#include "pls/term.hpp"

namespace pls::testing {

using Rng = std::mt19937_64;

std::string fixture_path(const std::string& name);
std::string read_text(const std::string& path);
DeductiveSystem hilbert();

/// Propositional grammar: wff with `->` and `-.`; vars ph ps ch p q r.
std::string propositional_header();
/// Class/set grammar with `coerce set into class`.
std::string class_set_header();

/// Independent enumerator of every expression of a kind within a token
/// budget, over a fixed variable set. Images for a variable of kind K are all
/// expressions whose kind coerces into K.
class Enumerator {
 public:
  Enumerator(const Grammar& g, std::vector<Variable> vars) : g_(g), vars_(std::move(vars)) {}

  /// Expressions of exactly kind `k` with exactly `tokens` tokens.
  const std::vector<Expression>& exact(KindId k, std::size_t tokens);
  /// Expressions that may stand for a variable of kind `k`, up to `max_tokens`.
  std::vector<Expression> images(KindId k, std::size_t max_tokens);

 private:
  const Grammar& g_;
  std::vector<Variable> vars_;
  std::map<std::pair<std::uint32_t, std::size_t>, std::vector<Expression>> memo_;
};

Expression random_expression(const Grammar& g, Rng& rng, KindId kind, const std::vector<Variable>& vars,
                             std::size_t max_tokens);

Substitution random_substitution(const Grammar& g, Rng& rng, const std::vector<Variable>& domain,
                                 const std::vector<Variable>& image_vars, std::size_t max_tokens);

/// Declared variables of the grammar under the given flag.
std::vector<Variable> declared(const Grammar& g, bool replaceable, const std::vector<std::string>& names = {});

struct SystemShape {
  std::size_t max_assertions = 4;
  std::size_t max_premises = 2;
  std::size_t max_tokens = 9;
  bool class_set = false;
};

/// Grammar plus random assertions; the system carries no statements.
DeductiveSystem random_system(Rng& rng, const SystemShape& shape);
/// Same system with one statement appended.
DeductiveSystem with_statement(const DeductiveSystem& d, Statement s);
/// Random statement premises (frozen vars p, q).
std::vector<Expression> random_premises(const DeductiveSystem& d, Rng& rng, std::size_t max_count, std::size_t max_tokens);

/// Random valid proof built top-down: a random instance of a random
/// assertion, each premise either left as a leaf or proved by another
/// assertion whose proposition matches it.
ProofTree random_proof(const DeductiveSystem& d, Rng& rng, std::size_t max_height, const std::vector<Variable>& image_vars,
                       std::size_t max_tokens);

}  // namespace pls::testing
