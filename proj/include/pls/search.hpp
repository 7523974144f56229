#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <set>
#include <string_view>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "pls/proof.hpp"
#include "pls/system.hpp"
#include "pls/term.hpp"

namespace pls {

using NodeId = std::uint32_t;
using SptId = std::uint32_t;

struct SearchLimits {
  std::size_t max_depth = 8;  // a-node levels below the root
  std::size_t max_nodes = 100000;
  std::size_t max_spts_per_node = 1000;
  double timeout_seconds = 60.0;
};

enum class LimitKind { none, depth, nodes, spts, timeout };
std::string_view to_string(LimitKind k);

struct SearchStats {
  std::size_t enodes = 0;
  std::size_t anodes = 0;
  std::size_t expansions = 0;
  std::size_t spts = 0;
  std::size_t spts_dropped = 0;
  std::size_t tuples_tested = 0;
  std::size_t tuples_unified = 0;
  std::size_t duplicate_expressions = 0;
  std::size_t certification_failures = 0;
  double wall_seconds = 0.0;

  std::size_t nodes() const noexcept { return enodes + anodes; }
};

/// Expression node of the proof variant tree.
struct PvtENode {
  NodeId id = 0;
  Expression expression;
  VariableSet scope;  // replaceable variables of `expression`
  std::optional<NodeId> parent;
  std::size_t position = 0;  // premise index under the parent a-node
  std::size_t depth = 0;
  std::vector<NodeId> children;
  std::vector<SptId> spts;
  bool expanded = false;
};

/// Assertion node: a renamed assertion whose proposition unified with the parent.
struct PvtANode {
  NodeId id = 0;
  std::size_t assertion = 0;  // index into the system's assertions
  std::uint64_t suffix = 0;   // fresh suffix used for the renaming
  Assertion renamed;
  Substitution edge_unifier;
  NodeId parent = 0;
  std::vector<NodeId> children;
  std::vector<SptId> spts;
};

struct SptNodeRef {
  enum class Kind : std::uint8_t { enode, anode };
  Kind kind = Kind::enode;
  NodeId id = 0;

  friend auto operator<=>(const SptNodeRef&, const SptNodeRef&) = default;
};

/// Substitution proof tree node. Child trees are stored by id; the unifier
/// `delta` that rewrites them is kept alongside and applied on extraction.
struct Spt {
  SptId id = 0;
  SptNodeRef node;
  Substitution label;
  std::vector<SptId> children;
  Substitution delta;
  Substitution com;
  std::optional<std::size_t> premise;  // set on leaves seeded from a statement premise
};

enum class SearchStatus { proved, exhausted, limit_reached };
std::string_view to_string(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<ProofTree> proof;
  std::optional<SptId> root_spt;
  LimitKind limit = LimitKind::none;
  SearchStats stats;
};

struct SearchOptions {
  // Extract and check every SPT as it is created; failures are counted in
  // SearchStats::certification_failures.
  bool certify_spts = false;
  std::ostream* trace = nullptr;
};

class SearchState {
 public:
  SearchState(const DeductiveSystem& d, const Statement& s, SearchOptions options = {});

  /// Throws UnknownStatement.
  static SearchState init(const DeductiveSystem& d, std::string_view statement_id, SearchOptions options = {});

  std::vector<NodeId> expand_enode(NodeId e);
  std::vector<SptId> seed_leaf_spts(NodeId e);
  std::vector<SptId> propagate_anode(NodeId a, SptId trigger);
  std::optional<SptId> propagate_enode(NodeId e, SptId trigger);
  /// Processes queued SPTs until none remain or the root is proved.
  void drain();

  ProofTree extract_proof(SptId t) const;
  /// Extracted proof checks out and concludes label(expression of the SPT's e-node).
  bool certify(SptId t) const;

  SearchOutcome run(const SearchLimits& limits);

  const DeductiveSystem& system() const noexcept { return *d_; }
  const Statement& statement() const noexcept { return s_; }
  const std::vector<PvtENode>& enodes() const noexcept { return enodes_; }
  const std::vector<PvtANode>& anodes() const noexcept { return anodes_; }
  const std::vector<Spt>& spts() const noexcept { return spts_; }
  const std::deque<NodeId>& queue() const noexcept { return queue_; }
  const SearchStats& stats() const noexcept { return stats_; }
  std::optional<SptId> root_spt() const noexcept { return root_spt_; }
  const FreshSupply& supply() const noexcept { return supply_; }
  void set_limits(const SearchLimits& limits) { limits_ = limits; }

 private:
  using SptKey = std::tuple<SptNodeRef, Substitution, std::vector<SptId>>;

  NodeId add_enode(Expression e, std::optional<NodeId> parent, std::size_t position, std::size_t depth);
  std::optional<SptId> add_spt(SptNodeRef node, Substitution label, std::vector<SptId> children, Substitution delta,
                               Substitution com, std::optional<std::size_t> premise);
  const Expression& spt_subject(const Spt& t) const;
  ProofNode extract(SptId t, const Substitution& sigma) const;
  bool timed_out();
  void trace_spt(const Spt& t);

  const DeductiveSystem* d_;
  Statement s_;
  SearchOptions options_;
  SearchLimits limits_;
  FreshSupply supply_;
  std::vector<PvtENode> enodes_;
  std::vector<PvtANode> anodes_;
  std::vector<Spt> spts_;
  std::set<SptKey> spt_keys_;
  std::deque<NodeId> queue_;
  std::vector<SptId> pending_;
  std::size_t pending_head_ = 0;
  std::unordered_set<Expression> seen_expressions_;
  std::optional<SptId> root_spt_;
  bool root_seeded_ = false;
  bool depth_skipped_ = false;
  LimitKind limit_ = LimitKind::none;
  SearchStats stats_;
  std::chrono::steady_clock::time_point started_ = std::chrono::steady_clock::now();
  std::size_t clock_ticks_ = 0;
};

}  // namespace pls
