#include "pls/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "pls/error.hpp"
#include "pls/oracle.hpp"
#include "pls/proof.hpp"
#include "pls/search.hpp"
#include "pls/system.hpp"

namespace pls {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
}

void print_stats(std::ostream& out, const SearchOutcome& o) {
  const SearchStats& s = o.stats;
  out << "status " << to_string(o.status) << "\n";
  if (o.status == SearchStatus::limit_reached) out << "limit " << to_string(o.limit) << "\n";
  out << "nodes " << s.nodes() << "\n"
      << "enodes " << s.enodes << "\n"
      << "anodes " << s.anodes << "\n"
      << "expansions " << s.expansions << "\n"
      << "spts " << s.spts << "\n"
      << "spts_dropped " << s.spts_dropped << "\n"
      << "tuples_tested " << s.tuples_tested << "\n"
      << "tuples_unified " << s.tuples_unified << "\n"
      << "duplicate_expressions " << s.duplicate_expressions << "\n"
      << "wall_seconds " << s.wall_seconds << "\n";
}

void print_violations(std::ostream& err, const Verdict& v) {
  for (const auto& x : v.violations) err << x.path << ": " << x.message << "\n";
}

struct ProveArgs {
  std::string system;
  std::string statement;
  SearchLimits limits;
  std::string output;
  bool trace = false;
};

int cmd_prove(const ProveArgs& a, std::ostream& out, std::ostream& err) {
  DeductiveSystem d = load_system_file(a.system);
  const Statement& s = d.statement(a.statement);
  SearchOptions options;
  if (a.trace) options.trace = &err;
  SearchState state(d, s, options);
  SearchOutcome o = state.run(a.limits);
  print_stats(out, o);
  if (o.status != SearchStatus::proved) return kFailed;

  std::string text = serialize_proof(d.grammar(), *o.proof);
  if (!a.output.empty()) {
    write_file(a.output, text);
    text = read_file(a.output);
  }
  ProofTree reread = parse_proof(d, text);
  Verdict v = check_statement_proof(d, s, reread);
  if (!v.valid() || !(reread == *o.proof)) {
    err << "internal error: emitted proof failed re-verification\n";
    print_violations(err, v);
    return kFailed;
  }
  out << "inferences " << inference_count(reread) << "\n"
      << "height " << proof_height(reread) << "\n";
  if (a.output.empty()) out << text;
  return kOk;
}

int cmd_verify(const std::string& system, const std::string& proof, const std::string& statement, std::ostream& out,
               std::ostream& err) {
  DeductiveSystem d = load_system_file(system);
  const Statement& s = d.statement(statement);
  ProofTree t = parse_proof(d, read_file(proof));
  Verdict v = check_statement_proof(d, s, t);
  if (!v.valid()) {
    out << "invalid " << v.violations.size() << " violation(s)\n";
    print_violations(err, v);
    return kFailed;
  }
  out << "valid inferences " << inference_count(t) << "\n";
  return kOk;
}

int cmd_oracle(const std::string& system, const std::string& statement, const SaturationBounds& b,
               const std::string& dump, std::ostream& out) {
  DeductiveSystem d = load_system_file(system);
  const Statement& s = d.statement(statement);
  Saturation sat = saturate(d, s, b);
  if (!dump.empty()) {
    std::string text;
    for (const auto& line : derived_lines(d.grammar(), sat)) text += line + "\n";
    write_file(dump, text);
  }
  bool derived = sat.contains(s.goal);
  out << "universe " << sat.universe_size << "\n"
      << "rounds " << sat.rounds << "\n"
      << "fixpoint " << (sat.fixpoint ? "yes" : "no") << "\n"
      << "derived " << sat.facts.size() << "\n"
      << "goal " << (derived ? "derived" : "not-derived") << "\n";
  if (derived) {
    const Fact* f = sat.find(s.goal);
    out << "goal_round " << f->round << "\n";
  }
  return derived ? kOk : kFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof search and verification for pure logical frameworks", "pls"};
  app.require_subcommand(1);

  ProveArgs prove;
  auto* p = app.add_subcommand("prove", "search for a proof of a statement");
  p->add_option("system", prove.system, "system file (.pls)")->required();
  p->add_option("--statement", prove.statement, "statement id")->required();
  p->add_option("--max-depth", prove.limits.max_depth, "a-node levels below the root")->check(CLI::PositiveNumber);
  p->add_option("--max-nodes", prove.limits.max_nodes, "PVT node cap")->check(CLI::PositiveNumber);
  p->add_option("--max-spts", prove.limits.max_spts_per_node, "SPTs kept per PVT node")->check(CLI::PositiveNumber);
  p->add_option("--timeout", prove.limits.timeout_seconds, "seconds")->check(CLI::PositiveNumber);
  p->add_option("-o,--output", prove.output, "write the proof here (.plp)");
  p->add_flag("--trace", prove.trace, "event trace on stderr");

  std::string v_system, v_proof, v_statement;
  auto* v = app.add_subcommand("verify", "check a proof file against a statement");
  v->add_option("system", v_system, "system file (.pls)")->required();
  v->add_option("proof", v_proof, "proof file (.plp)")->required();
  v->add_option("--statement", v_statement, "statement id")->required();

  std::string o_system, o_statement, o_dump;
  SaturationBounds bounds;
  auto* o = app.add_subcommand("oracle", "bounded forward saturation");
  o->add_option("system", o_system, "system file (.pls)")->required();
  o->add_option("--statement", o_statement, "statement id")->required();
  o->add_option("--max-size", bounds.max_expression_tokens, "token bound on substitution images")
      ->check(CLI::PositiveNumber);
  o->add_option("--max-rounds", bounds.max_rounds, "saturation rounds")->check(CLI::PositiveNumber);
  o->add_option("--max-universe", bounds.max_universe, "universe size cap")->check(CLI::PositiveNumber);
  o->add_option("--dump-derived", o_dump, "write derived expressions, sorted, one per line");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (p->parsed()) return cmd_prove(prove, out, err);
    if (v->parsed()) return cmd_verify(v_system, v_proof, v_statement, out, err);
    return cmd_oracle(o_system, o_statement, bounds, o_dump, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace pls
