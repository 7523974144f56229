#include "pls/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "pls/error.hpp"

namespace pls {

const Fact* Saturation::find(const Expression& e) const {
  auto it = index.find(e);
  return it == index.end() ? nullptr : &facts[it->second];
}

std::vector<std::vector<Expression>> build_universe(const Grammar& g, const VariableSet& pool, std::size_t max_tokens,
                                                    std::size_t max_universe) {
  const std::size_t kinds = g.kind_count();
  // by_size[k][t]: cores of kind k rendering to exactly t tokens.
  std::vector<std::vector<std::vector<Expression>>> by_size(kinds, std::vector<std::vector<Expression>>(max_tokens + 1));
  std::size_t total = 0;
  auto add = [&](KindId k, std::size_t t, Expression e) {
    if (++total > max_universe) {
      throw Error(ErrorCode::universe_overflow, "expression universe exceeds " + std::to_string(max_universe));
    }
    by_size[k.value][t].push_back(std::move(e));
  };
  if (max_tokens >= 1) {
    for (const Variable& v : pool) add(v.kind, 1, Expression::make_variable(Variable{v.name, v.kind, false}));
    for (std::size_t pi = 0; pi < g.productions().size(); ++pi) {
      const Production& p = g.productions()[pi];
      if (p.rhs.size() == 1 && !p.is_coercion()) {
        add(p.result, 1, Expression::make_apply(ProductionId{static_cast<std::uint32_t>(pi)}, p.result, {}));
      }
    }
  }

  // Everything of size t that may fill a slot of kind `slot`.
  auto fillers = [&](KindId slot, std::size_t t) {
    std::vector<Expression> out;
    for (std::size_t k = 0; k < kinds; ++k) {
      KindId from{static_cast<std::uint32_t>(k)};
      if (!g.kind_coercible(slot, from)) continue;
      for (const auto& e : by_size[k][t]) out.push_back(Expression::coerce_to(slot, e));
    }
    return out;
  };

  for (std::size_t t = 2; t <= max_tokens; ++t) {
    for (std::size_t pi = 0; pi < g.productions().size(); ++pi) {
      const Production& p = g.productions()[pi];
      if (p.is_coercion()) continue;
      std::vector<KindId> slots = p.slots();
      std::size_t literals = p.rhs.size() - slots.size();
      if (literals + slots.size() > t) continue;
      std::size_t budget = t - literals;
      if (slots.empty()) {
        if (budget == 0) add(p.result, t, Expression::make_apply(ProductionId{static_cast<std::uint32_t>(pi)}, p.result, {}));
        continue;
      }
      std::vector<Expression> chosen;
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == slots.size()) {
          for (const auto& e : fillers(slots[i], left)) {
            chosen.push_back(e);
            add(p.result, t, Expression::make_apply(ProductionId{static_cast<std::uint32_t>(pi)}, p.result, chosen));
            chosen.pop_back();
          }
          return;
        }
        std::size_t rest = slots.size() - i - 1;
        for (std::size_t size = 1; size + rest <= left; ++size) {
          for (const auto& e : fillers(slots[i], size)) {
            chosen.push_back(e);
            rec(i + 1, left - size);
            chosen.pop_back();
          }
        }
      };
      rec(0, budget);
    }
  }

  std::vector<std::vector<Expression>> out(kinds);
  for (std::size_t k = 0; k < kinds; ++k) {
    for (const auto& bucket : by_size[k]) out[k].insert(out[k].end(), bucket.begin(), bucket.end());
    std::sort(out[k].begin(), out[k].end());
  }
  return out;
}

namespace {

class Saturator {
 public:
  Saturator(const DeductiveSystem& d, const Statement& s, const SaturationBounds& b) : d_(d), g_(d.grammar()), b_(b) {
    universe_ = build_universe(g_, s.variables(), b.max_expression_tokens, b.max_universe);
    for (const auto& u : universe_) {
      out_.universe_size += u.size();
      members_.insert(u.begin(), u.end());
    }
    for (const auto& p : s.premises) {
      if (out_.index.contains(p)) continue;
      out_.index.emplace(p, out_.facts.size());
      out_.facts.push_back(Fact{p, 0, true, {}});
    }
  }

  Saturation run() {
    for (std::size_t r = 0; r < b_.max_rounds; ++r) {
      limit_ = out_.facts.size();
      std::size_t before = out_.facts.size();
      for (std::size_t ai = 0; ai < d_.assertions().size(); ++ai) saturate_assertion(ai, r + 1);
      out_.rounds = r + 1;
      if (out_.facts.size() == before) {
        out_.fixpoint = true;
        break;
      }
    }
    return std::move(out_);
  }

 private:
  bool in_universe(const Expression& e) const { return members_.contains(e.core()); }

  void saturate_assertion(std::size_t ai, std::size_t round) {
    const Assertion& a = d_.assertions()[ai];
    std::vector<std::size_t> order(a.premises.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a.premises[x].size() > a.premises[y].size(); });
    std::vector<std::size_t> premise_facts(a.premises.size());
    VariableSet vars = a.variables();
    std::vector<Variable> all(vars.begin(), vars.end());

    std::function<void(std::size_t, const Substitution&)> over_premises = [&](std::size_t step, const Substitution& theta) {
      if (step == order.size()) {
        std::vector<Variable> unbound;
        for (const auto& v : all) {
          if (!theta.find(v)) unbound.push_back(v);
        }
        over_free(a, ai, round, unbound, 0, theta, premise_facts);
        return;
      }
      std::size_t pi = order[step];
      Expression pattern = apply(theta, a.premises[pi]);
      if (!pattern.has_replaceable()) {
        auto it = out_.index.find(pattern);
        if (it == out_.index.end() || it->second >= limit_) return;
        premise_facts[pi] = it->second;
        over_premises(step + 1, theta);
        return;
      }
      for (std::size_t f = 0; f < limit_; ++f) {
        auto m = match_expression(g_, pattern, out_.facts[f].expression);
        if (!m) continue;
        bool ok = true;
        for (const auto& [v, img] : *m) {
          if (!in_universe(img)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        premise_facts[pi] = f;
        over_premises(step + 1, compose(*m, theta));
      }
    };
    over_premises(0, Substitution{});
  }

  void over_free(const Assertion& a, std::size_t ai, std::size_t round, const std::vector<Variable>& unbound, std::size_t i,
                 const Substitution& theta, const std::vector<std::size_t>& premise_facts) {
    if (i == unbound.size()) {
      record(a, ai, round, theta, premise_facts);
      return;
    }
    const Variable& v = unbound[i];
    for (std::size_t k = 0; k < universe_.size(); ++k) {
      if (!g_.kind_coercible(v.kind, KindId{static_cast<std::uint32_t>(k)})) continue;
      for (const auto& e : universe_[k]) {
        Substitution next = theta;
        next.assign(v, e);
        over_free(a, ai, round, unbound, i + 1, next, premise_facts);
      }
    }
  }

  void record(const Assertion& a, std::size_t ai, std::size_t round, const Substitution& theta,
              const std::vector<std::size_t>& premise_facts) {
    if (!seen_.emplace(ai, theta).second) return;
    Expression concl = apply(theta, a.proposition);
    auto it = out_.index.find(concl);
    std::size_t id;
    if (it == out_.index.end()) {
      id = out_.facts.size();
      out_.index.emplace(concl, id);
      out_.facts.push_back(Fact{concl, round, false, {}});
    } else {
      id = it->second;
    }
    out_.facts[id].justifications.push_back(Justification{ai, theta, premise_facts});
  }

  const DeductiveSystem& d_;
  const Grammar& g_;
  SaturationBounds b_;
  std::vector<std::vector<Expression>> universe_;
  std::set<Expression> members_;
  std::set<std::pair<std::size_t, Substitution>> seen_;
  std::size_t limit_ = 0;
  Saturation out_;
};

class ProofEnumerator {
 public:
  ProofEnumerator(const DeductiveSystem& d, const Saturation& sat, std::size_t max_count)
      : d_(d), sat_(sat), max_count_(max_count) {}

  struct Entry {
    ProofTree proof;
    std::size_t size;
  };

  const std::vector<Entry>& proofs(std::size_t fact, std::size_t height) {
    auto key = std::make_pair(fact, height);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Entry> out;
    const Fact& f = sat_.facts[fact];
    if (f.premise) out.push_back(Entry{make_leaf(f.expression), 0});
    if (height > 0) {
      for (const auto& j : f.justifications) {
        const Assertion& a = d_.assertions()[j.assertion];
        std::vector<const std::vector<Entry>*> lists;
        bool empty = false;
        for (std::size_t p : j.premises) {
          lists.push_back(&proofs(p, height - 1));
          if (lists.back()->empty()) empty = true;
        }
        if (empty) continue;
        std::vector<std::size_t> pick(lists.size(), 0);
        while (true) {
          std::vector<ProofNode> premises;
          std::size_t size = 1;
          for (std::size_t i = 0; i < lists.size(); ++i) {
            premises.push_back((*lists[i])[pick[i]].proof);
            size += (*lists[i])[pick[i]].size;
          }
          out.push_back(Entry{make_step(f.expression, a.id, j.witness, std::move(premises)), size});
          std::size_t i = 0;
          while (i < pick.size() && ++pick[i] == lists[i]->size()) pick[i++] = 0;
          if (i == pick.size()) break;
        }
      }
    }
    std::stable_sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) { return x.size < y.size; });
    if (out.size() > max_count_) out.erase(out.begin() + static_cast<std::ptrdiff_t>(max_count_), out.end());
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const DeductiveSystem& d_;
  const Saturation& sat_;
  std::size_t max_count_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Entry>> memo_;
};

}  // namespace

Saturation saturate(const DeductiveSystem& d, const Statement& s, const SaturationBounds& b) {
  return Saturator(d, s, b).run();
}

std::vector<ProofTree> oracle_proofs(const DeductiveSystem& d, const Saturation& sat, const Expression& goal,
                                     std::size_t max_count) {
  auto it = sat.index.find(goal);
  if (it == sat.index.end()) {
    throw Error(ErrorCode::goal_not_derived, "goal '" + d.grammar().render_text(goal) + "' was not derived");
  }
  ProofEnumerator en(d, sat, max_count);
  std::vector<ProofTree> out;
  for (const auto& e : en.proofs(it->second, sat.rounds)) out.push_back(e.proof);
  return out;
}

std::vector<ProofTree> oracle_proofs(const DeductiveSystem& d, const Statement& s, const SaturationBounds& b,
                                     const Expression& goal, std::size_t max_count) {
  return oracle_proofs(d, saturate(d, s, b), goal, max_count);
}

bool provable(const DeductiveSystem& d, const Statement& s, const SaturationBounds& b) {
  return saturate(d, s, b).contains(s.goal);
}

std::vector<std::string> derived_lines(const Grammar& g, const Saturation& sat) {
  std::vector<std::string> out;
  out.reserve(sat.facts.size());
  for (const auto& f : sat.facts) out.push_back(g.render_text(f.expression));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pls
