#include "pls/search.hpp"

#include <algorithm>
#include <ostream>

#include "pls/error.hpp"

namespace pls {

std::string_view to_string(LimitKind k) {
  switch (k) {
    case LimitKind::none: return "none";
    case LimitKind::depth: return "depth";
    case LimitKind::nodes: return "nodes";
    case LimitKind::spts: return "spts";
    case LimitKind::timeout: return "timeout";
  }
  return "?";
}

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::proved: return "Proved";
    case SearchStatus::exhausted: return "Exhausted";
    case SearchStatus::limit_reached: return "LimitReached";
  }
  return "?";
}

SearchState::SearchState(const DeductiveSystem& d, const Statement& s, SearchOptions options)
    : d_(&d), s_(s), options_(options) {
  NodeId root = add_enode(s_.goal, std::nullopt, 0, 0);
  queue_.push_back(root);
}

SearchState SearchState::init(const DeductiveSystem& d, std::string_view statement_id, SearchOptions options) {
  return SearchState(d, d.statement(statement_id), options);
}

NodeId SearchState::add_enode(Expression e, std::optional<NodeId> parent, std::size_t position, std::size_t depth) {
  VariableSet scope = replaceable_variables(e);
  PvtENode n{.id = static_cast<NodeId>(enodes_.size()),
             .expression = std::move(e),
             .scope = std::move(scope),
             .parent = parent,
             .position = position,
             .depth = depth,
             .children = {},
             .spts = {}};
  if (!seen_expressions_.insert(n.expression).second) ++stats_.duplicate_expressions;
  enodes_.push_back(std::move(n));
  ++stats_.enodes;
  return enodes_.back().id;
}

bool SearchState::timed_out() {
  if (limit_ == LimitKind::timeout) return true;
  if ((++clock_ticks_ & 0xff) != 0) return false;
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started_;
  if (elapsed.count() > limits_.timeout_seconds) {
    limit_ = LimitKind::timeout;
    return true;
  }
  return false;
}

const Expression& SearchState::spt_subject(const Spt& t) const {
  if (t.node.kind == SptNodeRef::Kind::enode) return enodes_[t.node.id].expression;
  return enodes_[anodes_[t.node.id].parent].expression;
}

void SearchState::trace_spt(const Spt& t) {
  if (!options_.trace) return;
  const Grammar& g = d_->grammar();
  std::ostream& out = *options_.trace;
  if (t.premise) {
    out << "SPT-LEAF e" << t.node.id << " " << to_string(g, t.label) << "\n";
    return;
  }
  out << "SPT " << (t.node.kind == SptNodeRef::Kind::enode ? "e" : "a") << t.node.id << " "
      << to_string(g, t.label) << " tuples=" << stats_.tuples_tested << "/" << stats_.tuples_unified << "\n";
}

std::optional<SptId> SearchState::add_spt(SptNodeRef node, Substitution label, std::vector<SptId> children,
                                          Substitution delta, Substitution com, std::optional<std::size_t> premise) {
  SptKey key{node, label, children};
  if (spt_keys_.contains(key)) return std::nullopt;
  std::vector<SptId>& owner = node.kind == SptNodeRef::Kind::enode ? enodes_[node.id].spts : anodes_[node.id].spts;
  if (owner.size() >= limits_.max_spts_per_node) {
    ++stats_.spts_dropped;
    return std::nullopt;
  }
  spt_keys_.insert(std::move(key));
  Spt t;
  t.id = static_cast<SptId>(spts_.size());
  t.node = node;
  t.label = std::move(label);
  t.children = std::move(children);
  t.delta = std::move(delta);
  t.com = std::move(com);
  t.premise = premise;
  owner.push_back(t.id);
  spts_.push_back(std::move(t));
  pending_.push_back(spts_.back().id);
  ++stats_.spts;
  trace_spt(spts_.back());
  if (options_.certify_spts && !certify(spts_.back().id)) ++stats_.certification_failures;
  return spts_.back().id;
}

std::vector<SptId> SearchState::seed_leaf_spts(NodeId e) {
  std::vector<SptId> out;
  const Grammar& g = d_->grammar();
  for (std::size_t i = 0; i < s_.premises.size(); ++i) {
    auto sigma = match_expression(g, enodes_[e].expression, s_.premises[i]);
    if (!sigma) continue;
    if (auto id = add_spt(SptNodeRef{SptNodeRef::Kind::enode, e}, std::move(*sigma), {}, {}, {}, i)) out.push_back(*id);
  }
  return out;
}

std::vector<NodeId> SearchState::expand_enode(NodeId e) {
  const Grammar& g = d_->grammar();
  std::vector<NodeId> created;
  enodes_[e].expanded = true;
  ++stats_.expansions;
  if (options_.trace) *options_.trace << "EXPAND e" << e << "\n";

  const auto& assertions = d_->assertions();
  for (std::size_t ai = 0; ai < assertions.size(); ++ai) {
    if (limit_ != LimitKind::none) break;
    std::uint64_t suffix = supply_.next();
    Assertion renamed = rename_assertion(assertions[ai], suffix);
    auto eta = unify_expressions(g, renamed.proposition, enodes_[e].expression);
    if (!eta) continue;
    if (stats_.nodes() + 1 + renamed.premises.size() > limits_.max_nodes) {
      limit_ = LimitKind::nodes;
      break;
    }
    supply_.take();

    PvtANode a{.id = static_cast<NodeId>(anodes_.size()),
               .assertion = ai,
               .suffix = suffix,
               .renamed = std::move(renamed),
               .edge_unifier = std::move(*eta),
               .parent = e,
               .children = {},
               .spts = {}};
    NodeId aid = a.id;
    anodes_.push_back(std::move(a));
    ++stats_.anodes;
    enodes_[e].children.push_back(aid);
    if (options_.trace) {
      *options_.trace << "ANODE a" << aid << " " << assertions[ai].id << " "
                      << to_string(g, anodes_[aid].edge_unifier) << "\n";
    }
    if (options_.certify_spts) {
      const PvtANode& an = anodes_[aid];
      if (!(apply(an.edge_unifier, an.renamed.proposition) == apply(an.edge_unifier, enodes_[e].expression))) {
        ++stats_.certification_failures;
      }
    }

    std::size_t n = anodes_[aid].renamed.premises.size();
    for (std::size_t i = 0; i < n; ++i) {
      Expression child = apply(anodes_[aid].edge_unifier, anodes_[aid].renamed.premises[i]);
      NodeId cid = add_enode(std::move(child), aid, i, enodes_[e].depth + 1);
      anodes_[aid].children.push_back(cid);
      queue_.push_back(cid);
    }
    if (n == 0) {
      add_spt(SptNodeRef{SptNodeRef::Kind::anode, aid}, restrict_to(anodes_[aid].edge_unifier, enodes_[e].scope), {}, {},
              {}, std::nullopt);
    }
    for (NodeId cid : anodes_[aid].children) seed_leaf_spts(cid);
    created.push_back(aid);
  }
  drain();
  return created;
}

std::vector<SptId> SearchState::propagate_anode(NodeId a, SptId trigger) {
  const Grammar& g = d_->grammar();
  std::vector<SptId> out;
  const PvtANode& an = anodes_[a];
  const std::size_t n = an.children.size();
  const std::size_t k = enodes_[spts_[trigger].node.id].position;

  // Candidate lists per premise position; the trigger is combined only with
  // SPTs created before it, so every tuple is tried exactly once.
  std::vector<std::vector<SptId>> lists(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) {
      lists[i] = {trigger};
      continue;
    }
    for (SptId s : enodes_[an.children[i]].spts) {
      if (s < trigger) lists[i].push_back(s);
    }
    if (lists[i].empty()) return out;
  }
  std::vector<std::size_t> order{k};
  for (std::size_t i = 0; i < n; ++i) {
    if (i != k) order.push_back(i);
  }

  const Substitution& ref = spts_[trigger].label;
  std::vector<SptId> chosen(n);
  chosen[k] = trigger;
  std::vector<std::pair<Substitution, Substitution>> found;  // (delta, com) per completed tuple
  std::vector<std::vector<SptId>> tuples;
  bool aborted = false;

  auto extend = [&](auto& self, std::size_t depth, const Unifier& u) -> void {
    if (aborted) return;
    if (depth == n) {
      ++stats_.tuples_tested;
      ++stats_.tuples_unified;
      Substitution delta = u.solution();
      Substitution com = compose(delta, ref);
      found.emplace_back(std::move(delta), std::move(com));
      tuples.push_back(chosen);
      return;
    }
    std::size_t pos = order[depth];
    for (SptId s : lists[pos]) {
      if (timed_out()) {
        aborted = true;
        return;
      }
      Unifier next = u;
      bool ok = true;
      const Substitution& theta = spts_[s].label;
      VariableSet dom = ref.domain();
      for (const auto& [v, _] : theta) dom.insert(v);
      for (const Variable& v : dom) {
        if (!next.unify(ref.image(v), theta.image(v))) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        ++stats_.tuples_tested;
        continue;
      }
      chosen[pos] = s;
      self(self, depth + 1, next);
    }
  };
  extend(extend, 1, Unifier(g));

  const VariableSet& scope = enodes_[an.parent].scope;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    auto& [delta, com] = found[i];
    Substitution label = restrict_to(compose(com, an.edge_unifier), scope);
    if (auto id = add_spt(SptNodeRef{SptNodeRef::Kind::anode, a}, std::move(label), tuples[i], std::move(delta),
                          std::move(com), std::nullopt)) {
      out.push_back(*id);
    }
  }
  return out;
}

std::optional<SptId> SearchState::propagate_enode(NodeId e, SptId trigger) {
  Substitution label = restrict_to(spts_[trigger].label, enodes_[e].scope);
  return add_spt(SptNodeRef{SptNodeRef::Kind::enode, e}, std::move(label), {trigger}, {}, {}, std::nullopt);
}

void SearchState::drain() {
  while (pending_head_ < pending_.size() && !root_spt_) {
    if (timed_out()) return;
    SptId id = pending_[pending_head_++];
    const Spt& t = spts_[id];
    if (t.node.kind == SptNodeRef::Kind::enode) {
      const PvtENode& en = enodes_[t.node.id];
      if (!en.parent) {
        root_spt_ = id;
        if (options_.trace) *options_.trace << "PROVED e0\n";
        return;
      }
      propagate_anode(*en.parent, id);
    } else {
      propagate_enode(anodes_[t.node.id].parent, id);
    }
  }
}

ProofNode SearchState::extract(SptId id, const Substitution& sigma) const {
  const Spt& t = spts_[id];
  if (t.node.kind == SptNodeRef::Kind::enode) {
    if (t.children.empty()) return make_leaf(apply(sigma, apply(t.label, enodes_[t.node.id].expression)));
    return extract(t.children.front(), sigma);
  }
  const PvtANode& an = anodes_[t.node.id];
  const Assertion& original = d_->assertions()[an.assertion];
  Substitution full = compose(sigma, compose(t.com, an.edge_unifier));
  Expression expression = apply(full, enodes_[an.parent].expression);
  Substitution witness;
  for (const Variable& v : original.variables()) {
    Variable renamed{fresh_name(v.name, an.suffix), v.kind, true};
    witness.assign(v, apply(full, Expression::make_variable(renamed)));
  }
  Substitution child_sigma = compose(sigma, t.delta);
  std::vector<ProofNode> premises;
  premises.reserve(t.children.size());
  for (SptId c : t.children) premises.push_back(extract(c, child_sigma));
  return make_step(std::move(expression), original.id, std::move(witness), std::move(premises));
}

ProofTree SearchState::extract_proof(SptId t) const { return extract(t, Substitution{}); }

bool SearchState::certify(SptId id) const {
  const Spt& t = spts_[id];
  ProofTree proof = extract_proof(id);
  if (!check_proof(*d_, proof).valid()) return false;
  if (!(proof.expression == apply(t.label, spt_subject(t)))) return false;
  for (const Expression& leaf : proof_leaves(proof)) {
    if (std::find(s_.premises.begin(), s_.premises.end(), leaf) == s_.premises.end()) return false;
  }
  if (t.node.kind == SptNodeRef::Kind::anode) {
    for (SptId c : t.children) {
      if (!(compose(t.delta, spts_[c].label) == t.com)) return false;
    }
  }
  return true;
}

SearchOutcome SearchState::run(const SearchLimits& limits) {
  limits_ = limits;
  started_ = std::chrono::steady_clock::now();
  if (limit_ == LimitKind::timeout) limit_ = LimitKind::none;
  if (!root_seeded_) {
    root_seeded_ = true;
    seed_leaf_spts(0);
    drain();
  }
  while (!root_spt_ && limit_ == LimitKind::none && !queue_.empty()) {
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started_;
    if (elapsed.count() > limits_.timeout_seconds) {
      limit_ = LimitKind::timeout;
      break;
    }
    NodeId e = queue_.front();
    queue_.pop_front();
    if (enodes_[e].depth >= limits_.max_depth) {
      depth_skipped_ = true;
      continue;
    }
    expand_enode(e);
  }
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started_;
  stats_.wall_seconds = elapsed.count();

  SearchOutcome out;
  out.stats = stats_;
  if (root_spt_) {
    out.status = SearchStatus::proved;
    out.root_spt = root_spt_;
    out.proof = extract_proof(*root_spt_);
  } else if (limit_ != LimitKind::none) {
    out.status = SearchStatus::limit_reached;
    out.limit = limit_;
  } else if (stats_.spts_dropped > 0) {
    out.status = SearchStatus::limit_reached;
    out.limit = LimitKind::spts;
  } else if (depth_skipped_) {
    out.status = SearchStatus::limit_reached;
    out.limit = LimitKind::depth;
  } else {
    out.status = SearchStatus::exhausted;
  }
  return out;
}

}  // namespace pls
