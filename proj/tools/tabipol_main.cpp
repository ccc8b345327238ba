// tabipol: Craig-Lyndon and access interpolation on clausal tableaux.
//
// Exit codes: 0 success, 1 verification failure, 2 no proof found,
// 3 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tabipol/access.hpp"
#include "tabipol/clausify.hpp"
#include "tabipol/interpolate.hpp"
#include "tabipol/parse.hpp"
#include "tabipol/prover.hpp"
#include "tabipol/tableau_json.hpp"
#include "tabipol/transforms.hpp"

using namespace tabipol;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kNoProof = 2;
constexpr int kInputError = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LogicError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Formula load_formula(const std::string& path) {
  try {
    return parse_formula(slurp(path));
  } catch (const ParseError& e) {
    throw LogicError(path + ": parse error at byte " +
                     std::to_string(e.span.start) + ": " + e.what());
  }
}

Tableau load_tableau(const std::string& path) {
  return parse_tableau(slurp(path));
}

struct BudgetFlags {
  int depth = 12;
  long inferences = 1'000'000;
  int timeout_ms = 10'000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--depth", depth, "iterative deepening bound");
    cmd->add_option("--max-inferences", inferences, "inference limit");
    cmd->add_option("--timeout-ms", timeout_ms, "wall clock limit");
  }
  ProofBudget budget() const { return {depth, inferences, timeout_ms}; }
};

struct PipelineFlags {
  BudgetFlags budget;
  std::string prover = "connection";
  std::string side_policy = "prefer-red";
  bool verify = true;
  bool equality = false;
  bool k_in_f = false;
  std::vector<std::string> grounding;

  void attach(CLI::App* cmd, bool with_equality = true) {
    budget.attach(cmd);
    cmd->add_option("--prover", prover, "connection or hyper")
        ->check(CLI::IsMember({"connection", "hyper"}));
    cmd->add_option("--side-policy", side_policy,
                    "tie break for shared clauses")
        ->check(CLI::IsMember({"prefer-red", "prefer-blue"}));
    cmd->add_flag("--verify,!--no-verify", verify,
                  "re-prove and check the result (default on)");
    if (with_equality) {
      cmd->add_flag("--equality", equality,
                    "add axioms for the predicate eq/2");
      cmd->add_flag("--k-in-f", k_in_f,
                    "put the grounding constant into the left partition");
      cmd->add_option("--ground", grounding,
                      "VAR=TERM grounding override (repeatable)");
    }
  }

  InterpolateOptions options() const {
    InterpolateOptions o;
    o.budget = budget.budget();
    o.verify_budget = budget.budget();
    o.prover = prover == "hyper" ? InterpolateOptions::Prover::Hyper
                                 : InterpolateOptions::Prover::Connection;
    o.side_policy = side_policy == "prefer-blue" ? SidePolicy::PreferBlue
                                                 : SidePolicy::PreferRed;
    o.verify = verify;
    o.equality = equality;
    o.k_in_f = k_in_f;
    for (const auto& g : grounding) {
      size_t eq = g.find('=');
      if (eq == std::string::npos)
        throw LogicError("--ground expects VAR=TERM, got " + g);
      o.grounding.insert_or_assign(g.substr(0, eq),
                                   parse_term(g.substr(eq + 1)));
    }
    return o;
  }
};

int report_result(const InterpolationResult& r, bool tree) {
  std::cout << print_formula(r.interpolant) << "\n";
  if (tree) std::cout << print_tableau(r.tableau);
  if (r.verification) {
    std::cout << r.verification->str() << "\n";
    if (!r.verification->passed()) return kVerificationFailed;
  }
  return kOk;
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find(sep, pos);
    std::string item = text.substr(
        pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!item.empty()) out.push_back(item);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// L1,L2 with the comma at paren depth zero
std::pair<Literal, Literal> parse_pair(const std::string& item) {
  int depth = 0;
  for (size_t i = 0; i < item.size(); ++i) {
    if (item[i] == '(') ++depth;
    if (item[i] == ')') --depth;
    if (item[i] == ',' && depth == 0)
      return {parse_literal(item.substr(0, i)),
              parse_literal(item.substr(i + 1))};
  }
  throw LogicError("--pairs expects items of the form L1,L2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interpolation on clausal first-order tableaux"};
  app.require_subcommand(1);

  auto* prove = app.add_subcommand(
      "prove", "refute a sentence, or prove an entailment with --goal");
  std::string prove_file, prove_goal, prove_prover = "connection";
  BudgetFlags prove_budget;
  prove->add_option("file", prove_file, "input sentence (.fol)")->required();
  prove->add_option("--goal", prove_goal, "prove file |= goal instead");
  prove->add_option("--prover", prove_prover, "connection or hyper")
      ->check(CLI::IsMember({"connection", "hyper"}));
  prove_budget.attach(prove);

  auto* cl = app.add_subcommand("clausify", "print a clausal form");
  std::string cl_file, cl_side = "left";
  bool cl_negate = false, cl_definitional = false;
  cl->add_option("file", cl_file, "input sentence (.fol)")->required();
  cl->add_flag("--negate", cl_negate, "clausify the negation");
  cl->add_flag("--definitional", cl_definitional,
               "structure-preserving form for relativized sentences");
  cl->add_option("--side", cl_side, "left or right definer names")
      ->check(CLI::IsMember({"left", "right"}));

  auto* ip = app.add_subcommand("interpolate", "Craig-Lyndon interpolation");
  std::string ip_f, ip_g, ip_format = "text";
  PipelineFlags ip_flags;
  ip->add_option("left", ip_f, "first input (.fol)")->required();
  ip->add_option("right", ip_g, "second input (.fol)")->required();
  ip->add_option("--format", ip_format, "text or tree")
      ->check(CLI::IsMember({"text", "tree"}));
  ip_flags.attach(ip);

  auto* ih = app.add_subcommand("interpolate-horn",
                                "interpolation preserving a Horn left input");
  std::string ih_f, ih_g, ih_format = "text";
  PipelineFlags ih_flags;
  ih->add_option("left", ih_f, "first input (.fol), Horn")->required();
  ih->add_option("right", ih_g, "second input (.fol)")->required();
  ih->add_option("--format", ih_format, "text or tree")
      ->check(CLI::IsMember({"text", "tree"}));
  ih_flags.attach(ih);

  auto* ai = app.add_subcommand("access-interpolate",
                                "interpolation for relativized sentences");
  std::string ai_f, ai_g, ai_format = "text";
  PipelineFlags ai_flags;
  ai->add_option("left", ai_f, "first input (.fol), relativized")->required();
  ai->add_option("right", ai_g, "second input (.fol), relativized")
      ->required();
  ai->add_option("--format", ai_format, "text or tree")
      ->check(CLI::IsMember({"text", "tree"}));
  ai_flags.attach(ai, /*with_equality=*/false);

  auto* tr = app.add_subcommand("transform", "restructure a proof tree");
  std::string tr_kind, tr_file, tr_set, tr_pairs, tr_left, tr_right;
  bool tr_trace = false;
  tr->add_option("kind", tr_kind,
                 "eager | regular | leaf-only | contiguous | to-aci")
      ->required()
      ->check(CLI::IsMember(
          {"eager", "regular", "leaf-only", "contiguous", "to-aci"}));
  tr->add_option("file", tr_file, "input tableau (.tab)")->required();
  tr->add_option("--set", tr_set,
                 "semicolon-separated literals for leaf-only (default: all "
                 "negative labels)");
  tr->add_option("--pairs", tr_pairs,
                 "semicolon-separated literal pairs L1,L2 for contiguous");
  tr->add_option("--left", tr_left,
                 "left input sentence for to-aci pair derivation");
  tr->add_option("--right", tr_right, "right input sentence");
  tr->add_flag("--trace", tr_trace, "print the conversion trace");

  auto* ve = app.add_subcommand("verify", "check a candidate interpolant");
  std::string ve_kind, ve_f, ve_g, ve_h;
  BudgetFlags ve_budget;
  ve->add_option("kind", ve_kind, "craig-lyndon or access")
      ->required()
      ->check(CLI::IsMember({"craig-lyndon", "access"}));
  ve->add_option("left", ve_f, "first input (.fol)")->required();
  ve->add_option("right", ve_g, "second input (.fol)")->required();
  ve->add_option("candidate", ve_h, "candidate interpolant (.fol)")
      ->required();
  ve_budget.attach(ve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prove) {
      Formula f = load_formula(prove_file);
      Formula target =
          prove_goal.empty()
              ? f
              : Formula::conj(
                    {f, Formula::negation(load_formula(prove_goal))});
      Namer namer;
      ClausalForm cf = clausify(target, namer);
      std::vector<InputClause> cs;
      for (const auto& c : cf.clauses) cs.push_back({c, Side::Red, {}});
      if (cs.empty()) {
        std::cerr << "input is a tautology; nothing to refute\n";
        return kNoProof;
      }
      ProveResult r = prove_prover == "hyper"
                          ? prove_hyper(cs, prove_budget.budget())
                          : prove_connection(cs, GoalPolicy::NegativeClauses,
                                             prove_budget.budget());
      if (!r.proved()) {
        std::cerr << "no proof within the budget\n";
        return kNoProof;
      }
      std::cout << print_tableau(*r.tableau);
      return kOk;
    }

    if (*cl) {
      Formula f = load_formula(cl_file);
      Namer namer;
      if (cl_definitional) {
        Side side = cl_side == "right" ? Side::Blue : Side::Red;
        Formula rel = to_relativized(f);
        if (cl_negate) rel = negate_relativized(rel);
        DefClausalForm d = definitional_clausify(rel, side, namer);
        std::cout << d.cf.str();
      } else {
        if (cl_negate) f = Formula::negation(f);
        std::cout << clausify(f, namer).str();
      }
      return kOk;
    }

    if (*ip)
      return report_result(interpolate(load_formula(ip_f), load_formula(ip_g),
                                       ip_flags.options()),
                           ip_format == "tree");

    if (*ih)
      return report_result(
          interpolate_horn(load_formula(ih_f), load_formula(ih_g),
                           ih_flags.options()),
          ih_format == "tree");

    if (*ai)
      return report_result(
          access_interpolate(load_formula(ai_f), load_formula(ai_g),
                             ai_flags.options()),
          ai_format == "tree");

    if (*tr) {
      Tableau t = load_tableau(tr_file);
      TransformTrace trace;
      Tableau out = t;
      if (tr_kind == "eager") {
        out = remove_uneagerness(t, &trace);
      } else if (tr_kind == "regular") {
        out = remove_irregularities(t, &trace);
      } else if (tr_kind == "leaf-only") {
        std::vector<Literal> s;
        if (!tr_set.empty()) {
          for (const auto& item : split_on(tr_set, ';'))
            s.push_back(parse_literal(item));
        } else {
          auto negs = negative_labels(t);
          s.assign(negs.begin(), negs.end());
        }
        out = make_leaf_only(t, s, &trace);
      } else if (tr_kind == "contiguous") {
        std::vector<std::pair<Literal, Literal>> pairs;
        if (!tr_pairs.empty())
          for (const auto& item : split_on(tr_pairs, ';'))
            pairs.push_back(parse_pair(item));
        else
          pairs = structural_contiguity_pairs(t);
        out = make_contiguous(t, pairs, &trace);
      } else {  // to-aci
        if (!tr_left.empty() && !tr_right.empty()) {
          Namer namer;
          AciContext ctx = make_aci_context(load_formula(tr_left),
                                            load_formula(tr_right), namer);
          out = to_aci(t, ctx, &trace);
        } else {
          out = to_aci_auto(t, &trace);
        }
      }
      std::cout << print_tableau(out);
      if (tr_trace) std::cout << trace.str();
      return kOk;
    }

    if (*ve) {
      Formula f = load_formula(ve_f);
      Formula g = load_formula(ve_g);
      Formula h = load_formula(ve_h);
      VerificationReport r =
          ve_kind == "access"
              ? verify_access(f, g, h, ve_budget.budget())
              : verify_craig_lyndon(f, g, h, ve_budget.budget());
      std::cout << r.str() << "\n";
      return r.passed() ? kOk : kVerificationFailed;
    }
  } catch (const ProverGaveUp& e) {
    std::cerr << e.what() << "\n";
    return kNoProof;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
