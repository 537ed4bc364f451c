// Acceptance run: one PASS/FAIL line per criterion, preceded by the evidence
// it rests on. Exits non-zero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "autostack/cprs.hpp"
#include "autostack/fftp.hpp"
#include "autostack/fixtures.hpp"
#include "oracles.hpp"

using namespace autostack;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string const& what) {
    notes.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    pass = pass && ok;
  }
  void note(std::string const& what) { notes.push_back("      " + what); }
};

std::string fmt(Alphabet const& a, Word const& w) {
  return w.empty() ? std::string("1") : a.format(w);
}

std::string list(std::vector<std::size_t> const& v) {
  std::string s;
  for (auto x : v) {
    s += (s.empty() ? "" : " ") + std::to_string(x);
  }
  return s;
}

// Shared systems, built on first use.

struct Z2System {
  std::size_t k = 0;
  Cprs lpp;
};

Z2System const& z2_refined() {
  static Z2System s = [] {
    Ball small(fixtures::z2(), 6, Order::srev);
    std::size_t k = *fftp_search(small, 6, 6).k;
    Ball ball(fixtures::z2(), 4 * k + 2, Order::srev);
    auto m = build_witness_automaton(ball, k);
    return Z2System{k, Cprs(to_Lpp(to_Lprime(m.language)), Order::srev)};
  }();
  return s;
}

struct Bounded {
  Cprs s;
  TheoremAReport report;
};

Bounded build_bounded(Cprs const& r, GroupSpec const& g,
                      std::optional<std::size_t> k) {
  std::size_t kk = k.value_or(fsa::pumping_bound(r.rules.machine()));
  Ball ball(g, std::max<std::size_t>(theorem_a_radius(r.alphabet(), kk), 8),
            r.order);
  TheoremAOptions o;
  o.k = k;
  auto [s, rep] = theorem_a_construct(r, ball, o);
  return Bounded{std::move(s), std::move(rep)};
}

Bounded const& swap_bounded() {
  static Bounded b = build_bounded(fixtures::z2_by_swap_rules(),
                                   fixtures::z2_by_swap(), 3);
  return b;
}

Bounded const& z2_bounded() {
  static Bounded b = build_bounded(z2_refined().lpp, fixtures::z2(), 5);
  return b;
}

// Criterion 1.

// Words a^i, a^i t a^j and a^i t a^j t with j != 0, a^i a run of a or of A.
bool swap_normal_form(Alphabet const& a, Word const& w) {
  Letter la = a.letter("a"), lA = a.letter("A"), lt = a.letter("t");
  std::size_t i = 0;
  auto power = [&] {
    std::size_t start = i;
    if (i < w.size() && (w[i] == la || w[i] == lA)) {
      Letter x = w[i];
      while (i < w.size() && w[i] == x) {
        ++i;
      }
    }
    return i - start;
  };
  power();
  if (i == w.size()) {
    return true;
  }
  if (w[i++] != lt) {
    return false;
  }
  std::size_t j = power();
  if (i == w.size()) {
    return true;
  }
  return w[i] == lt && i + 1 == w.size() && j > 0;
}

Outcome criterion1() {
  Outcome o;
  GroupSpec g = fixtures::z2_by_swap();
  Ball ball(g, 6, Order::shortlex);
  Cprs r = fixtures::z2_by_swap_rules();
  Rewriter rw(r);
  auto const& a = r.alphabet();
  o.require(equivalent(r.rules, fixtures::z2_by_swap_rules_direct().rules),
            "rule families agree with the independently built rule automaton");
  std::size_t words = 0, wrong_nf = 0, wrong_shape = 0, irreducible = 0;
  std::set<std::size_t> reached;
  for (auto const& w : oracle::words_up_to(4, 6)) {
    ++words;
    Word nf = rw.normal_form(w, 1000);
    std::size_t e = ball.find_word(w);
    if (nf != ball.nf(e)) {
      if (++wrong_nf <= 5) {
        o.note("normal form of " + fmt(a, w) + " is " + fmt(a, nf) +
               ", ball says " + fmt(a, ball.nf(e)));
      }
    }
    reached.insert(e);
    bool irr = rw.irreducible(w);
    irreducible += irr;
    if (irr != swap_normal_form(a, w)) {
      if (++wrong_shape <= 5) {
        o.note(fmt(a, w) + (irr ? " is irreducible but not of the form "
                                : " has the normal form shape but reduces"));
      }
    }
  }
  o.require(wrong_nf == 0, std::to_string(words) +
                               " words of length <= 6 rewrite to the shortlex "
                               "ball normal form (" +
                               std::to_string(wrong_nf) + " mismatches)");
  o.require(wrong_shape == 0,
            std::to_string(irreducible) +
                " irreducible words, exactly the words a^i, a^i t a^j, "
                "a^i t a^j t (j != 0) (" +
                std::to_string(wrong_shape) + " mismatches)");
  o.require(reached.size() == ball.size(),
            "every element of B(6) reached (" + std::to_string(ball.size()) +
                ")");
  return o;
}

// Criterion 2.

Outcome criterion2() {
  Outcome o;
  GroupSpec g = fixtures::z2();
  Ball small(g, 6, Order::srev);
  FftpReport rep = fftp_search(small, 6, 6);
  o.require(rep.k.has_value(), "fftp_search on Z2 finds a constant");
  if (!rep.k) {
    return o;
  }
  std::size_t k = *rep.k;
  o.note("least constant k = " + std::to_string(k) + " over " +
         std::to_string(rep.words_checked) + " words of length <= 6");
  Ball ball(g, 4 * k + 2, Order::srev);
  auto m = build_witness_automaton(ball, k);
  o.note("witness automaton: " + std::to_string(m.raw.num_states()) +
         " raw states, " + std::to_string(m.language.machine().num_states()) +
         " minimal");
  std::set<std::pair<Word, Word>> from_m;
  for (auto const& t : m.language.enumerate(6)) {
    from_m.emplace(t[0], t[1]);
  }
  auto brute = bruteforce_L(ball, 4 * k, 6);
  std::set<std::pair<Word, Word>> oracle(brute.begin(), brute.end());
  std::size_t only_m = 0, only_oracle = 0;
  for (auto const& p : from_m) {
    only_m += !oracle.contains(p);
  }
  for (auto const& p : oracle) {
    only_oracle += !from_m.contains(p);
  }
  o.require(only_m == 0 && only_oracle == 0,
            "automaton language equals the brute-force pair set for |u| <= 6 (" +
                std::to_string(oracle.size()) + " pairs; " +
                std::to_string(only_m) + " only in the automaton, " +
                std::to_string(only_oracle) + " only in the oracle)");
  return o;
}

// Criterion 3.

Outcome criterion3() {
  Outcome o;
  auto const& [k, lpp] = z2_refined();
  auto const& a = lpp.alphabet();
  o.note("k = " + std::to_string(k) + ", refined system has " +
         std::to_string(lpp.rules.machine().num_states()) + " states");
  Ball ball(fixtures::z2(), 5, Order::srev);
  auto rep = verify_cprs(lpp, ball, 5, all_checks());
  for (auto const& c : rep.results) {
    o.require(c.pass, std::string(to_string(c.check)) + " on " +
                          std::to_string(c.examined) + " items up to length " +
                          std::to_string(c.bound));
  }
  std::size_t longer = 0;
  for (auto const& t : lpp.rules.enumerate(5)) {
    longer += t[1].size() > t[0].size();
  }
  o.require(longer == 0, "no rule with |u| <= 5 lengthens its left side");
  Rewriter rw(lpp);
  std::set<Word> irreducible, normal;
  for (auto const& w : oracle::words_up_to(4, 5)) {
    if (rw.irreducible(w)) {
      irreducible.insert(w);
    }
  }
  for (auto const& [e, w] : oracle::least_words(fixtures::z2(), 5,
                                                Order::srev)) {
    normal.insert(w);
  }
  o.require(irreducible == normal,
            "irreducible words of length <= 5 are the srev-least words (" +
                std::to_string(irreducible.size()) + " of " +
                std::to_string(normal.size()) + ")");
  (void)a;
  return o;
}

// Criterion 4.

void bounded_checks(Outcome& o, std::string const& name, Cprs const& input,
                    Bounded const& b, std::size_t profile_len) {
  auto const& rep = b.report;
  o.note(name + ": k = " + std::to_string(rep.k) +
         (rep.k_overridden ? " (set)" : " (rule automaton states)") +
         ", N = " + to_string(rep.n) + ", " +
         std::to_string(rep.rules_states) + " states");
  BoundednessProfile p = boundedness_constant(b.s, profile_len);
  o.note(name + ": constant by length 0.." + std::to_string(profile_len) +
         ": " + list(p.constants));
  std::size_t c6 = p.constants[6], c8 = p.constants[8], c10 = p.constants[10];
  o.require(c6 == c8 && c8 == c10,
            name + ": boundedness constant stable over lengths 6, 8, 10 (" +
                std::to_string(c6) + ", " + std::to_string(c8) + ", " +
                std::to_string(c10) + ")");
  std::size_t longest = 0;
  for (auto const& m : rep.middle_words) {
    longest = std::max(longest, m.size());
  }
  o.require(longest <= 2 * rep.k - 1,
            name + ": middle words at most 2k - 1 = " +
                std::to_string(2 * rep.k - 1) + " letters (longest " +
                std::to_string(longest) + ")");
  o.require(rep.longest_overhang <= long(rep.k),
            name + ": |v2| - |u2 l| at most k (largest " +
                std::to_string(rep.longest_overhang) + ")");
  Rewriter rs(b.s), rr(input);
  std::size_t differ = 0, words = 0;
  for (auto const& w : oracle::words_up_to(input.alphabet().size(), 5)) {
    ++words;
    differ += rs.irreducible(w) != rr.irreducible(w);
  }
  o.require(differ == 0, name + ": same irreducible words as the input on " +
                             std::to_string(words) + " words of length <= 5");
}

Outcome criterion4() {
  Outcome o;
  Cprs swap = fixtures::z2_by_swap_rules();
  Bounded literal = build_bounded(swap, fixtures::z2_by_swap(), std::nullopt);
  bounded_checks(o, "swap extension, literal k", swap, literal, 80);
  bounded_checks(o, "swap extension, k = 3", swap, swap_bounded(), 24);
  bounded_checks(o, "Z2 refined, k = 5", z2_refined().lpp, z2_bounded(), 24);
  return o;
}

// Criterion 5.

Outcome criterion5() {
  Outcome o;
  Ball ball(fixtures::z2(), 5, Order::srev);
  Rewriter rw(z2_bounded().s);
  FlowTable ft = flow_function(rw, ball);
  GeoReport rep = verify_geodesic_autostackable(ft, ball);
  o.note(std::to_string(rep.edges) + " edges in B(5), " +
         std::to_string(rep.moved) + " moved, bound " +
         std::to_string(ft.bound));
  o.require(rep.skipped == 0, "every replacement path stays in the ball (" +
                                  std::to_string(rep.skipped) + " leave)");
  o.require(rep.alpha_violations == 0,
            "alpha strictly decreases along every moved edge (" +
                std::to_string(rep.alpha_violations) + " violations)");
  o.require(rep.endpoint_violations == 0, "same endpoints (" +
                                              std::to_string(
                                                  rep.endpoint_violations) +
                                              " violations)");
  o.require(rep.bound_violations == 0, "labels within the recorded bound");
  o.require(rep.fixed_violations == 0, "tree edges fixed");
  o.require(rep.normal_form_violations == 0, "normal forms geodesic");
  for (auto const& v : rep.violations) {
    o.note(v);
  }
  return o;
}

// Criterion 6.

void convex_checks(Outcome& o, std::string const& name, GroupSpec const& g,
                   Cprs const& s, std::size_t k) {
  Ball ball(g, 7, s.order);
  Rewriter rw(s);
  std::size_t const bound = 2 * (4 * k + 4) * ball.alphabet().size();
  std::size_t pairs = 0, bad = 0, longest = 0;
  for (std::size_t n = 0; n <= 5; ++n) {
    auto [lo, hi] = ball.sphere(n);
    for (std::size_t x = lo; x < hi; ++x) {
      for (std::size_t y = lo; y < hi; ++y) {
        std::size_t d =
            ball.find(g.multiply(g.inverse(ball.element(x)), ball.element(y)));
        if (d == Ball::npos || ball.length(d) > 2) {
          continue;
        }
        ++pairs;
        bool ok = true;
        std::string why;
        try {
          ConvexPath p = almost_convex_path(rw, ball, x, y, n, k);
          std::size_t v = x;
          for (Letter b : p.label) {
            v = ball.neighbour(v, b);
            ok = ok && v != Ball::npos && ball.length(v) <= n;
            if (v == Ball::npos) {
              break;
            }
          }
          ok = ok && v == y && p.label.size() <= bound;
          longest = std::max(longest, p.label.size());
          why = "path " + fmt(ball.alphabet(), p.label);
        } catch (Error const& e) {
          ok = false;
          why = e.what();
        }
        if (!ok && ++bad <= 5) {
          o.note(name + ": (" + fmt(ball.alphabet(), ball.nf(x)) + ", " +
                 fmt(ball.alphabet(), ball.nf(y)) + "): " + why);
        }
      }
    }
  }
  o.require(bad == 0, name + ": " + std::to_string(pairs) +
                          " sphere pairs, n <= 5, joined inside B(n); longest " +
                          std::to_string(longest) + " <= 2(4k + 4)|A| = " +
                          std::to_string(bound));
}

Outcome criterion6() {
  Outcome o;
  convex_checks(o, "swap extension, k = 3", fixtures::z2_by_swap(),
                swap_bounded().s, 3);
  convex_checks(o, "Z2 refined, k = 5", fixtures::z2(), z2_bounded().s, 5);
  return o;
}

// Criterion 7.

Outcome criterion7() {
  Outcome o;
  Ball ball(fixtures::z2_by_swap(), 10, Order::shortlex);
  FftpReport rep = fftp_search(ball, 4, 10);
  o.note(std::to_string(rep.words_checked) + " words of length <= 10, " +
         std::to_string(rep.non_geodesic) + " not geodesic");
  o.require(!rep.k.has_value(), "no constant k <= 4 works up to length 10");
  std::set<std::size_t> shown;
  for (auto const& [k, w] : rep.counterexamples) {
    bool genuine = !is_geodesic(ball, w) && !witness(ball, w, k).has_value();
    o.require(genuine, "k = " + std::to_string(k) + ": " +
                           fmt(ball.alphabet(), w) +
                           " is not geodesic and has no shorter " +
                           std::to_string(k) + "-fellow travelling word");
    shown.insert(k);
  }
  o.require(shown == std::set<std::size_t>{0, 1, 2, 3, 4},
            "a counterexample for every k <= 4");
  o.note("bounded search: evidence for small k only, not a proof");
  return o;
}

// Criterion 8.

using fsa::Dfa;
using fsa::State;
using fsa::Symbol;
using fsa::SymbolWord;

Dfa random_dfa(std::mt19937& rng, std::size_t states, std::size_t symbols) {
  std::uniform_int_distribution<State> target(0, State(states - 1));
  std::bernoulli_distribution acc(0.4);
  std::vector<bool> accepting(states);
  for (std::size_t q = 0; q < states; ++q) {
    accepting[q] = acc(rng);
  }
  std::vector<State> table(states * symbols);
  for (auto& t : table) {
    t = target(rng);
  }
  return Dfa(symbols, 0, accepting, table);
}

std::vector<SymbolWord> symbol_words(std::size_t symbols, std::size_t max_len) {
  std::vector<SymbolWord> out;
  for (auto const& w : oracle::words_up_to(symbols, max_len)) {
    out.emplace_back(w.begin(), w.end());
  }
  return out;
}

// Words of length at most n.
Dfa short_words(std::size_t symbols, std::size_t n) {
  std::vector<bool> acc(n + 2, true);
  acc[n + 1] = false;
  std::vector<State> table;
  for (std::size_t q = 0; q <= n + 1; ++q) {
    for (std::size_t a = 0; a < symbols; ++a) {
      table.push_back(State(std::min(q + 1, n + 1)));
    }
  }
  return Dfa(symbols, 0, acc, table);
}

Alphabet letters(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::string(1, char('a' + i)));
  }
  return Alphabet(names, names, names);
}

Outcome criterion8() {
  Outcome o;
  constexpr int trials = 250;
  std::mt19937 rng(20260515);
  std::uniform_int_distribution<std::size_t> nstates(1, 6), nsym(1, 3);

  int demorgan = 0;
  for (int t = 0; t < trials; ++t) {
    std::size_t k = nsym(rng);
    Dfa x = random_dfa(rng, nstates(rng), k), y = random_dfa(rng, nstates(rng), k);
    bool ok =
        fsa::equivalent(fsa::complement(fsa::unite(x, y)),
                        fsa::intersect(fsa::complement(x), fsa::complement(y))) &&
        fsa::equivalent(fsa::complement(fsa::intersect(x, y)),
                        fsa::unite(fsa::complement(x), fsa::complement(y)));
    for (auto const& w : symbol_words(k, 5)) {
      bool in = !(x.accepts(w) || y.accepts(w));
      ok = ok && fsa::complement(fsa::unite(x, y)).accepts(w) == in;
    }
    demorgan += ok;
  }
  o.require(demorgan == trials, "De Morgan laws: " + std::to_string(demorgan) +
                                    "/" + std::to_string(trials));

  int quotient = 0;
  for (int t = 0; t < trials; ++t) {
    std::size_t k = nsym(rng);
    Dfa p = random_dfa(rng, nstates(rng), k);
    Dfa s = fsa::intersect(random_dfa(rng, nstates(rng), k), short_words(k, 4));
    Dfa q = fsa::right_quotient(p, s);
    auto ys = symbol_words(k, 4);
    bool ok = true;
    for (auto const& x : symbol_words(k, 4)) {
      bool want = false;
      for (auto const& y : ys) {
        if (s.accepts(y)) {
          SymbolWord xy = x;
          xy.insert(xy.end(), y.begin(), y.end());
          if (p.accepts(xy)) {
            want = true;
            break;
          }
        }
      }
      ok = ok && q.accepts(x) == want;
    }
    quotient += ok;
  }
  o.require(quotient == trials,
            "right quotient against enumeration of both factors: " +
                std::to_string(quotient) + "/" + std::to_string(trials));

  int projection = 0;
  for (int t = 0; t < trials; ++t) {
    std::size_t n0 = nsym(rng), n1 = nsym(rng);
    PaddedAlphabet pa({letters(n0), letters(n1)});
    std::size_t len = pa.num_symbols() > 8 ? 3 : 4;
    SyncLanguage l(pa, fsa::intersect(random_dfa(rng, nstates(rng),
                                                 pa.num_symbols()),
                                      short_words(pa.num_symbols(), len)));
    bool ok = true;
    for (std::size_t c = 0; c < 2; ++c) {
      std::set<Word> want;
      for (auto const& tup : l.enumerate(len)) {
        want.insert(tup[c]);
      }
      std::set<Word> got;
      for (auto const& w : fsa::enumerate_up_to(project(l, c), len + 1)) {
        got.emplace(w.begin(), w.end());
      }
      ok = ok && got == want;
    }
    projection += ok;
  }
  o.require(projection == trials,
            "projection against tuple enumeration: " +
                std::to_string(projection) + "/" + std::to_string(trials));

  int padding = 0;
  std::uniform_int_distribution<std::size_t> wl(0, 3), count(1, 4);
  for (int t = 0; t < trials; ++t) {
    std::size_t k = nsym(rng);
    Alphabet a = letters(k);
    PaddedAlphabet pa({a, a});
    std::uniform_int_distribution<Letter> pick(0, Letter(k - 1));
    auto random_word = [&] {
      Word w(wl(rng));
      for (auto& x : w) {
        x = pick(rng);
      }
      return w;
    };
    std::vector<std::vector<Word>> ls, ks;
    for (std::size_t i = count(rng); i > 0; --i) {
      ls.push_back({random_word(), random_word()});
    }
    for (std::size_t i = count(rng); i > 0; --i) {
      ks.push_back({random_word(), random_word()});
    }
    std::set<std::vector<Word>> want;
    for (auto const& u : ls) {
      for (auto const& v : ks) {
        want.insert({concat(u[0], v[0]), concat(u[1], v[1])});
      }
    }
    SyncLanguage lk = sync_concat(SyncLanguage::from_tuples(pa, ls),
                                  SyncLanguage::from_tuples(pa, ks));
    auto got = lk.enumerate(6);
    bool ok = std::set<std::vector<Word>>(got.begin(), got.end()) == want;
    // Every accepted string pads each coordinate only at its end.
    for (auto const& w : fsa::enumerate_up_to(lk.machine(), 6)) {
      ok = ok && pa.pad_words(pa.unpad(w)) == w;
    }
    padding += ok;
  }
  o.require(padding == trials,
            "synchronous concatenation pads at the end: " +
                std::to_string(padding) + "/" + std::to_string(trials));

  int pumped = 0, pump_trials = 0;
  while (pump_trials < trials) {
    std::size_t k = nsym(rng);
    Dfa m = fsa::minimize(random_dfa(rng, nstates(rng), k));
    std::size_t n = fsa::pumping_bound(m);
    std::vector<SymbolWord> long_words;
    for (auto const& w : fsa::enumerate_up_to(m, n + 2)) {
      if (w.size() >= n) {
        long_words.push_back(w);
      }
    }
    if (long_words.empty()) {
      continue;
    }
    ++pump_trials;
    bool ok = true;
    for (std::size_t i = 0; i < long_words.size() && i < 40; ++i) {
      SymbolWord const& w = long_words[i];
      // First repeated state among the first n + 1 positions of the run.
      std::map<State, std::size_t> seen;
      State q = m.start();
      std::size_t x = 0, y = 0;
      for (std::size_t j = 0; j <= n; ++j) {
        auto [it, fresh] = seen.emplace(q, j);
        if (!fresh) {
          x = it->second;
          y = j;
          break;
        }
        q = m.next(q, w[j]);
      }
      ok = ok && y > x && y <= n;
      for (std::size_t r = 0; r <= 3 && ok; ++r) {
        SymbolWord v(w.begin(), w.begin() + x);
        for (std::size_t c = 0; c < r; ++c) {
          v.insert(v.end(), w.begin() + x, w.begin() + y);
        }
        v.insert(v.end(), w.begin() + y, w.end());
        ok = m.accepts(v);
      }
    }
    pumped += ok;
  }
  o.require(pumped == trials,
            "pumped words stay accepted (0 to 3 copies): " +
                std::to_string(pumped) + "/" + std::to_string(trials));
  return o;
}

struct Criterion {
  int id;
  char const* title;
  double budget;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "swap extension normal forms", 10, criterion1},
      {2, "witness automaton against brute force on Z2", 60, criterion2},
      {3, "refined system is length non-increasing, property L, convergent",
       60, criterion3},
      {4, "bounded system construction", 300, criterion4},
      {5, "geodesic flow function on B(5)", 60, criterion5},
      {6, "almost convexity paths", 60, criterion6},
      {7, "swap extension fails FFTP for small k", 300, criterion7},
      {8, "automaton algebra properties", 30, criterion8},
  };
  int failed = 0;
  for (auto const& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    bool in_time = secs <= c.budget;
    for (auto const& n : o.notes) {
      std::cout << "  " << n << "\n";
    }
    bool pass = o.pass && in_time;
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.1f s of %.0f s", secs, c.budget);
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL")
              << "  " << c.title << " (" << timing
              << (in_time ? "" : ", over budget") << ")\n\n"
              << std::flush;
  }
  std::cout << (8 - failed) << " of 8 criteria pass\n";
  return failed == 0 ? 0 : 1;
}
