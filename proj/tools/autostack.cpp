// Command-line front end: groups, rewriting systems, constructions and
// checks. Exit status 0 on success, 1 when a verification fails (the report
// is still written), 2 on usage, input or resource errors.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "autostack/cprs.hpp"
#include "autostack/fftp.hpp"
#include "autostack/fixtures.hpp"
#include "autostack/json_io.hpp"

namespace {

using namespace autostack;
using io::Json;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string group;
  std::string rules;
  std::string flow;
  std::string order = "srev";
  std::string format = "json";
  std::string output;
  std::string route = "by-pair";
  std::string word;
  std::string from;
  std::string to;
  std::string fixture;
  std::size_t radius = 0;
  std::size_t max_k = 4;
  std::size_t max_len = 6;
  std::size_t profile_len = 10;
  std::size_t pairs = 0;
  std::size_t n = 5;
  std::size_t step_limit = 100000;
  std::optional<std::size_t> k;
  // Resource guards.
  std::size_t max_ball = 2'000'000;
  std::size_t max_states = 200'000;
  std::size_t max_enum = 12;
};

struct Output {
  Json json;
  std::string text;
  std::string dot;
  bool ok = true;
};

std::string fmt(Alphabet const& a, Word const& w) {
  return w.empty() ? std::string("1") : a.format(w);
}

void guard_len(Config const& c, std::size_t len, char const* what) {
  if (len > c.max_enum) {
    throw UsageError(std::string(what) + " " + std::to_string(len) +
                     " exceeds the enumeration guard --max-enum " +
                     std::to_string(c.max_enum));
  }
}

void guard_states(Config const& c, std::size_t states, char const* what) {
  if (states > c.max_states) {
    throw UsageError(std::string(what) + " has " + std::to_string(states) +
                     " states, above the guard --max-states " +
                     std::to_string(c.max_states));
  }
}

GroupSpec load_group(Config const& c) {
  if (c.group.empty()) {
    throw UsageError("--group is required");
  }
  return io::group_from_json(io::load_file(c.group));
}

// Accepts a rewriting system file, or any report holding one under "rules".
Cprs load_rules(Config const& c) {
  if (c.rules.empty()) {
    throw UsageError("--rules is required");
  }
  Json j = io::load_file(c.rules);
  if (j.is_object() && !j.contains("alphabet") && j.contains("rules")) {
    j = j["rules"];
  }
  Cprs r = io::cprs_from_json(j);
  guard_states(c, r.rules.machine().num_states(), "the rule automaton");
  return r;
}

Ball make_ball(Config const& c, GroupSpec g, std::size_t radius, Order o) {
  return Ball(std::move(g), radius, o, c.max_ball);
}

void same_alphabet(GroupSpec const& g, Cprs const& r) {
  if (!(g.alphabet() == r.alphabet())) {
    throw UsageError("the group and the rewriting system use different "
                     "alphabets");
  }
}

Output cmd_ball(Config const& c) {
  Ball ball = make_ball(c, load_group(c), c.radius, parse_order(c.order));
  Output out;
  out.json = io::to_json(ball);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    out.text += std::to_string(ball.length(i)) + "\t" +
                fmt(ball.alphabet(), ball.nf(i)) + "\t" +
                to_string(ball.element(i)) + "\n";
  }
  return out;
}

Output cmd_fftp(Config const& c) {
  guard_len(c, c.max_len, "--max-len");
  Ball ball = make_ball(c, load_group(c), std::max(c.max_len, c.max_k),
                        parse_order(c.order));
  FftpReport rep = fftp_search(ball, c.max_k, c.max_len);
  Output out;
  out.json = io::to_json(rep, ball.alphabet());
  out.ok = rep.verified();
  out.text = rep.k ? "least k: " + std::to_string(*rep.k)
                   : "none up to k = " + std::to_string(rep.max_k);
  out.text += " (words up to length " + std::to_string(rep.max_len) + ")\n";
  for (auto const& [k, w] : rep.counterexamples) {
    out.text += "k = " + std::to_string(k) + " fails at " +
                fmt(ball.alphabet(), w) + "\n";
  }
  return out;
}

// The constant from --k, or from a search bounded by --max-k and --max-len.
std::size_t fftp_constant(Config const& c, GroupSpec const& g, Order o) {
  if (c.k) {
    return *c.k;
  }
  guard_len(c, c.max_len, "--max-len");
  Ball ball = make_ball(c, g, std::max(c.max_len, c.max_k), o);
  FftpReport rep = fftp_search(ball, c.max_k, c.max_len);
  if (!rep.k) {
    throw UsageError("no constant up to --max-k " + std::to_string(c.max_k) +
                     " works; pass --k explicitly");
  }
  return *rep.k;
}

WitnessAutomaton witness_automaton(Config const& c, GroupSpec const& g,
                                   std::size_t k, Order o) {
  Ball ball = make_ball(c, g, 4 * k + 2, o);
  guard_states(c, 2 * ball.size(), "the witness automaton");
  return build_witness_automaton(ball, k);
}

Output cmd_witness(Config const& c) {
  GroupSpec g = load_group(c);
  Order o = parse_order(c.order);
  std::size_t k = fftp_constant(c, g, o);
  WitnessAutomaton m = witness_automaton(c, g, k, o);
  Output out;
  out.json = io::to_json(m.language);
  out.dot = fsa::to_dot(m.language.machine(),
                        m.language.alphabet().symbol_names());
  out.text = "k = " + std::to_string(k) + "\nraw states " +
             std::to_string(m.raw.num_states()) + "\nminimal states " +
             std::to_string(m.language.machine().num_states()) + "\n";
  return out;
}

Output cmd_refine(Config const& c) {
  GroupSpec g = load_group(c);
  Order o = parse_order(c.order);
  std::size_t k = fftp_constant(c, g, o);
  WitnessAutomaton m = witness_automaton(c, g, k, o);
  SyncLanguage lp = to_Lprime(m.language);
  SyncLanguage lpp = to_Lpp(lp);
  Cprs r(lpp, o);
  Output out;
  out.json = {{"k", k},
              {"states",
               {{"L", m.language.machine().num_states()},
                {"Lprime", lp.machine().num_states()},
                {"Lpp", lpp.machine().num_states()}}},
              {"rules", io::to_json(r)}};
  out.dot = fsa::to_dot(lpp.machine(), lpp.alphabet().symbol_names());
  out.text = "k = " + std::to_string(k) + "\nstates L " +
             std::to_string(m.language.machine().num_states()) + ", L' " +
             std::to_string(lp.machine().num_states()) + ", L'' " +
             std::to_string(lpp.machine().num_states()) + "\n";
  if (c.pairs > 0) {
    guard_len(c, c.pairs, "--pairs");
    out.json["pairs"] = io::tuples_to_json(lpp, c.pairs);
  }
  return out;
}

std::string report_text(VerifyReport const& rep) {
  std::string s;
  for (auto const& r : rep.results) {
    s += std::string(to_string(r.check)) + ": " + (r.pass ? "pass" : "FAIL") +
         " (" + std::to_string(r.examined) + " examined, " +
         std::to_string(r.failures) + " failures, length <= " +
         std::to_string(r.bound) + ")\n";
    for (auto const& v : r.violations) {
      s += "  " + v + "\n";
    }
  }
  return s;
}

Output cmd_theorem_a(Config const& c) {
  GroupSpec g = load_group(c);
  Cprs r = load_rules(c);
  same_alphabet(g, r);
  guard_len(c, c.max_len, "--max-len");
  std::size_t k = c.k.value_or(fsa::pumping_bound(r.rules.machine()));
  std::size_t need = std::max(theorem_a_radius(r.alphabet(), k), c.max_len);
  Ball ball = make_ball(c, g, std::max(c.radius, need), r.order);

  TheoremAOptions opt;
  opt.k = c.k;
  if (c.route == "by-state") {
    opt.route = SuffixRoute::by_state;
  }
  Output out;
  std::optional<std::pair<Cprs, TheoremAReport>> built;
  try {
    built = theorem_a_construct(r, ball, opt);
  } catch (Error const& e) {
    out.ok = false;
    out.json = {{"pass", false}, {"error", e.what()}, {"k", k}};
    out.text = std::string("construction failed: ") + e.what() + "\n";
    return out;
  }
  auto const& [s, rep] = *built;
  guard_states(c, s.rules.machine().num_states(), "the bounded system");
  VerifyReport ver = verify_cprs(s, ball, c.max_len, all_checks());
  BoundednessProfile prof = boundedness_constant(s, c.profile_len);
  out.ok = ver.pass();
  out.json = {{"pass", ver.pass()},
              {"report", io::to_json(rep, r.alphabet())},
              {"verification", io::to_json(ver)},
              {"boundedness", io::to_json(prof)},
              {"rules", io::to_json(s)}};
  out.dot = fsa::to_dot(s.rules.machine(), s.rules.alphabet().symbol_names());
  out.text = "k = " + std::to_string(rep.k) + ", n = " + to_string(rep.n) +
             ", states " + std::to_string(rep.rules_states) +
             ", longest middle word " + std::to_string(rep.longest_middle) +
             "\nboundedness by length:";
  for (auto v : prof.constants) {
    out.text += " " + std::to_string(v);
  }
  out.text += "\n" + report_text(ver);
  return out;
}

Output cmd_flow(Config const& c) {
  GroupSpec g = load_group(c);
  Cprs r = load_rules(c);
  same_alphabet(g, r);
  Ball ball = make_ball(c, g, c.radius ? c.radius : 5, r.order);
  Rewriter rw(r);
  FlowTable ft = flow_function(rw, ball);
  Output out;
  out.json = io::to_json(ft, ball);
  std::size_t moved = std::count_if(ft.entries.begin(), ft.entries.end(),
                                    [](FlowEntry const& e) { return !e.fixed; });
  out.text = std::to_string(ft.entries.size()) + " edges, " +
             std::to_string(moved) + " moved, bound " +
             std::to_string(ft.bound) + "\n";
  for (auto const& e : ft.entries) {
    if (!e.fixed) {
      out.text += "(" + fmt(ball.alphabet(), ft.normal_forms[e.element]) +
                  ", " + ball.alphabet().name(e.letter) + ") -> " +
                  fmt(ball.alphabet(), e.label) + "\n";
    }
  }
  return out;
}

Output cmd_verify_geo(Config const& c) {
  GroupSpec g = load_group(c);
  if (c.flow.empty()) {
    throw UsageError("--flow is required");
  }
  Json j = io::load_file(c.flow);
  std::size_t radius = j.value("radius", std::size_t{0});
  Order o = parse_order(j.value("order", std::string("srev")));
  Ball ball = make_ball(c, g, radius, o);
  FlowTable ft = io::flow_from_json(j, ball);
  GeoReport rep = verify_geodesic_autostackable(ft, ball);
  Output out;
  out.ok = rep.pass();
  out.json = io::to_json(rep);
  out.text = std::string(rep.pass() ? "pass" : "FAIL") + ": " +
             std::to_string(rep.edges) + " edges, " +
             std::to_string(rep.moved) + " moved, " +
             std::to_string(rep.skipped) + " leave the ball\n";
  for (auto const& v : rep.violations) {
    out.text += "  " + v + "\n";
  }
  return out;
}

Output cmd_almost_convex(Config const& c) {
  GroupSpec g = load_group(c);
  Cprs r = load_rules(c);
  same_alphabet(g, r);
  if (!c.k) {
    throw UsageError("--k (the constant of the bounded system) is required");
  }
  std::size_t k = *c.k;
  Ball ball = make_ball(c, g, c.n + 2, r.order);
  Rewriter rw(r);
  auto const& a = ball.alphabet();
  Output out;
  if (!c.from.empty() || !c.to.empty()) {
    std::size_t x = ball.find_word(a.parse(c.from));
    std::size_t y = ball.find_word(a.parse(c.to));
    if (x == Ball::npos || y == Ball::npos) {
      throw UsageError("--from and --to must lie in the ball of radius n + 2");
    }
    ConvexPath p = almost_convex_path(rw, ball, x, y, c.n, k);
    out.json = io::to_json(p, a);
    out.text = fmt(a, p.label) + " (length " + std::to_string(p.label.size()) +
               ", bound " + std::to_string(p.bound) + ")\n";
    return out;
  }
  std::size_t pairs = 0;
  std::size_t longest = 0;
  std::size_t bound = 0;
  std::vector<std::string> failures;
  std::size_t failed = 0;
  for (std::size_t m = 0; m <= c.n; ++m) {
    auto [lo, hi] = ball.sphere(m);
    for (std::size_t x = lo; x < hi; ++x) {
      for (std::size_t y = lo; y < hi; ++y) {
        std::size_t d =
            ball.find(g.multiply(g.inverse(ball.element(x)), ball.element(y)));
        if (d == Ball::npos || ball.length(d) > 2) {
          continue;
        }
        ++pairs;
        try {
          ConvexPath p = almost_convex_path(rw, ball, x, y, m, k);
          longest = std::max(longest, p.label.size());
          bound = p.bound;
        } catch (Error const& e) {
          if (++failed <= 20) {
            failures.push_back("(" + fmt(a, ball.nf(x)) + ", " +
                               fmt(a, ball.nf(y)) + "): " + e.what());
          }
        }
      }
    }
  }
  out.ok = failed == 0;
  out.json = {{"pass", out.ok},     {"pairs", pairs},   {"failures", failed},
              {"longest", longest}, {"bound", bound},   {"n", c.n},
              {"k", k},             {"violations", failures}};
  out.text = std::string(out.ok ? "pass" : "FAIL") + ": " +
             std::to_string(pairs) + " pairs, longest path " +
             std::to_string(longest) + ", bound " + std::to_string(bound) +
             "\n";
  for (auto const& f : failures) {
    out.text += "  " + f + "\n";
  }
  return out;
}

Output cmd_rewrite(Config const& c) {
  Cprs r = load_rules(c);
  auto const& a = r.alphabet();
  Word w = a.parse(c.word);
  Rewriter rw(r);
  RewriteTrace trace;
  Output out;
  Word nf;
  try {
    nf = rw.normal_form(w, c.step_limit, &trace);
  } catch (Error const& e) {
    out.ok = false;
    out.json = {{"word", io::word_to_json(a, w)}, {"error", e.what()}};
    out.text = std::string("rewriting failed: ") + e.what() + "\n";
    return out;
  }
  Json steps = Json::array();
  out.text = fmt(a, w) + "\n";
  for (auto const& s : trace.steps) {
    steps.push_back({{"prefix_length", s.prefix_length},
                     {"left", io::word_to_json(a, s.left)},
                     {"right", io::word_to_json(a, s.right)},
                     {"result", io::word_to_json(a, s.result)}});
    out.text += "  -> " + fmt(a, s.result) + "   [" + fmt(a, s.left) +
                " -> " + fmt(a, s.right) + "]\n";
  }
  out.json = {{"word", io::word_to_json(a, w)},
              {"normal_form", io::word_to_json(a, nf)},
              {"steps", steps}};
  out.text += "normal form " + fmt(a, nf) + "\n";
  return out;
}

Output cmd_export(Config const& c) {
  Output out;
  int sources = !c.fixture.empty() + !c.group.empty() + !c.rules.empty();
  if (sources != 1) {
    throw UsageError("export needs exactly one of --fixture, --group, --rules");
  }
  std::optional<Cprs> rules;
  if (!c.fixture.empty()) {
    if (c.fixture == "z2") {
      out.json = io::to_json(fixtures::z2());
    } else if (c.fixture == "z2xz2") {
      out.json = io::to_json(fixtures::z2_by_swap());
    } else if (c.fixture == "d-infinity") {
      out.json = io::to_json(fixtures::d_infinity());
    } else if (c.fixture == "klein-four") {
      out.json = io::to_json(fixtures::klein_four());
    } else if (c.fixture == "z2xz2-rules") {
      rules = fixtures::z2_by_swap_rules();
    } else {
      throw UsageError("unknown fixture '" + c.fixture + "'");
    }
  } else if (!c.group.empty()) {
    out.json = io::to_json(load_group(c));
  } else {
    rules = load_rules(c);
  }
  if (rules) {
    out.json = io::to_json(*rules);
    out.dot = fsa::to_dot(rules->rules.machine(),
                          rules->rules.alphabet().symbol_names());
    out.text = std::to_string(rules->rules.machine().num_states()) +
               " states\n";
    if (c.pairs > 0) {
      guard_len(c, c.pairs, "--pairs");
      out.json = io::tuples_to_json(rules->rules, c.pairs);
      for (auto const& t : rules->rules.enumerate(c.pairs)) {
        out.text += fmt(rules->alphabet(), t[0]) + " -> " +
                    fmt(rules->alphabet(), t[1]) + "\n";
      }
    }
  } else {
    out.text = io::dump(out.json);
  }
  return out;
}

void emit(Config const& c, Output const& out) {
  std::string body;
  if (c.format == "json") {
    body = io::dump(out.json);
  } else if (c.format == "text") {
    body = out.text;
  } else {
    if (out.dot.empty()) {
      throw UsageError("this command has no DOT output");
    }
    body = out.dot;
  }
  if (c.output.empty()) {
    std::cout << body << std::flush;
  } else {
    std::ofstream f(c.output);
    if (!(f << body)) {
      throw UsageError("cannot write " + c.output);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Falsification by fellow traveller, prefix rewriting and "
               "autostackability"};
  app.require_subcommand(1);

  auto formats = CLI::IsMember({"json", "dot", "text"});
  auto orders = CLI::IsMember({"srev", "shortlex"});
  auto common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "json, dot or text")
        ->check(formats);
    s->add_option("-o,--output", c.output, "write here instead of stdout");
    s->add_option("--max-ball", c.max_ball, "guard: largest ball")
        ->check(CLI::PositiveNumber);
    s->add_option("--max-states", c.max_states, "guard: largest automaton")
        ->check(CLI::PositiveNumber);
    s->add_option("--max-enum", c.max_enum, "guard: longest enumeration")
        ->check(CLI::PositiveNumber);
  };
  auto group = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--group", c.group, "group file")
                  ->check(CLI::ExistingFile);
    if (required) {
      o->required();
    }
  };
  auto rules = [&](CLI::App* s) {
    s->add_option("--rules", c.rules, "rewriting system file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto k_option = [&](CLI::App* s, char const* help) {
    s->add_option("--k", c.k, help)->check(CLI::PositiveNumber);
  };

  auto* ball = app.add_subcommand("ball", "normal forms of a ball");
  group(ball, true);
  ball->add_option("--radius", c.radius)->required()->check(
      CLI::NonNegativeNumber);
  ball->add_option("--order", c.order)->check(orders);
  common(ball);

  auto* fftp = app.add_subcommand("fftp-check", "search the FFTP constant");
  group(fftp, true);
  fftp->add_option("--max-k", c.max_k)->check(CLI::PositiveNumber);
  fftp->add_option("--max-len", c.max_len)->check(CLI::PositiveNumber);
  fftp->add_option("--order", c.order)->check(orders);
  common(fftp);

  auto* witness =
      app.add_subcommand("witness-automaton", "automaton of shorter witnesses");
  group(witness, true);
  k_option(witness, "fellow travelling constant; searched when absent");
  witness->add_option("--max-k", c.max_k)->check(CLI::PositiveNumber);
  witness->add_option("--max-len", c.max_len)->check(CLI::PositiveNumber);
  witness->add_option("--order", c.order)->check(orders);
  common(witness);

  auto* refine = app.add_subcommand(
      "refine-cprs", "witness automaton refined to a rewriting system");
  group(refine, true);
  k_option(refine, "fellow travelling constant; searched when absent");
  refine->add_option("--max-k", c.max_k)->check(CLI::PositiveNumber);
  refine->add_option("--max-len", c.max_len)->check(CLI::PositiveNumber);
  refine->add_option("--order", c.order)->check(orders);
  refine->add_option("--pairs", c.pairs, "also list rules up to this length");
  common(refine);

  auto* theorem = app.add_subcommand(
      "theorem-a", "bounded rewriting system with the same normal forms");
  group(theorem, true);
  rules(theorem);
  k_option(theorem, "constant replacing the rule automaton's state count");
  theorem->add_option("--radius", c.radius, "ball radius (at least the need)");
  theorem->add_option("--max-len", c.max_len, "verification length")
      ->check(CLI::PositiveNumber);
  theorem->add_option("--profile-len", c.profile_len,
                      "longest pair length for the boundedness profile");
  theorem->add_option("--route", c.route)->check(
      CLI::IsMember({"by-pair", "by-state"}));
  common(theorem);

  auto* flow = app.add_subcommand("flow", "flow function on a ball");
  group(flow, true);
  rules(flow);
  flow->add_option("--radius", c.radius, "ball radius (default 5)");
  common(flow);

  auto* geo =
      app.add_subcommand("verify-geo", "check a flow table for geodesic "
                                       "autostackability");
  group(geo, true);
  geo->add_option("--flow", c.flow, "flow table file")
      ->required()
      ->check(CLI::ExistingFile);
  common(geo);

  auto* convex =
      app.add_subcommand("almost-convex", "short paths between sphere points");
  group(convex, true);
  rules(convex);
  k_option(convex, "constant of the bounded system");
  convex->add_option("--n", c.n, "largest sphere radius");
  convex->add_option("--from", c.from, "single pair: first word");
  convex->add_option("--to", c.to, "single pair: second word");
  common(convex);

  auto* rewrite = app.add_subcommand("rewrite", "normal form with its trace");
  rules(rewrite);
  rewrite->add_option("--word", c.word)->required();
  rewrite->add_option("--step-limit", c.step_limit)->check(
      CLI::PositiveNumber);
  common(rewrite);

  auto* exp = app.add_subcommand("export", "canonical JSON or DOT");
  exp->add_option("--fixture", c.fixture,
                  "z2, z2xz2, d-infinity, klein-four or z2xz2-rules");
  group(exp, false);
  exp->add_option("--rules", c.rules, "rewriting system file")
      ->check(CLI::ExistingFile);
  exp->add_option("--pairs", c.pairs, "list rules up to this length");
  common(exp);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? exit_ok : exit_usage;
  }

  try {
    Output out;
    if (*ball) {
      out = cmd_ball(c);
    } else if (*fftp) {
      out = cmd_fftp(c);
    } else if (*witness) {
      out = cmd_witness(c);
    } else if (*refine) {
      out = cmd_refine(c);
    } else if (*theorem) {
      out = cmd_theorem_a(c);
    } else if (*flow) {
      out = cmd_flow(c);
    } else if (*geo) {
      out = cmd_verify_geo(c);
    } else if (*convex) {
      out = cmd_almost_convex(c);
    } else if (*rewrite) {
      out = cmd_rewrite(c);
    } else {
      out = cmd_export(c);
    }
    emit(c, out);
    return out.ok ? exit_ok : exit_failed;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (std::bad_alloc const&) {
    std::cerr << "error: out of memory; lower the bounds or the guards\n";
    return exit_usage;
  }
}
