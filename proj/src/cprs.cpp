#include "autostack/cprs.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

namespace autostack {

using fsa::Dfa;
using fsa::Nfa;
using fsa::State;
using fsa::Symbol;
using fsa::SymbolWord;

namespace {

constexpr std::size_t max_listed = 20;

void note(CheckResult& r, std::string what) {
  r.pass = false;
  ++r.failures;
  if (r.violations.size() < max_listed) {
    r.violations.push_back(std::move(what));
  }
}

std::vector<Word> words_up_to(std::size_t letters, std::size_t max_len) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) {
      continue;
    }
    for (Letter a = 0; a < letters; ++a) {
      Word w = out[i];
      w.push_back(a);
      out.push_back(std::move(w));
    }
  }
  return out;
}

Word last_of(Word const& w) {
  return w.empty() ? Word{} : Word{w.back()};
}

// A shortest accepted symbol word, if any.
std::optional<SymbolWord> shortest_member(Dfa const& m) {
  auto dist = m.distance_to_accept();
  State q = m.start();
  if (dist[q] == fsa::no_state) {
    return std::nullopt;
  }
  SymbolWord out;
  while (dist[q] != 0) {
    for (Symbol s = 0; s < m.num_symbols(); ++s) {
      State r = m.next(q, s);
      if (dist[r] != fsa::no_state && dist[r] + 1 == dist[q]) {
        out.push_back(s);
        q = r;
        break;
      }
    }
  }
  return out;
}

Dfa symbol_word(PaddedAlphabet const& p, std::vector<Word> const& tuple) {
  return Dfa::from_words(p.num_symbols(), {p.pad_words(tuple)});
}

// Pad-free pairs of equal length, any letters.
Dfa pad_free_star(PaddedAlphabet const& p) {
  std::vector<State> table(2 * p.num_symbols(), 1);
  for (Symbol s = 0; s < p.num_symbols(); ++s) {
    if (!p.is_pad(s, 0) && !p.is_pad(s, 1)) {
      table[s] = 0;
    }
  }
  return Dfa(p.num_symbols(), 0, {true, false}, table);
}

// Pairs (u, v), |v| < |u|, v ending in `c`; `c` equal to the alphabet size
// stands for v empty.
Dfa ended_prefixes(PaddedAlphabet const& p, unsigned c) {
  // 0: pad-free, 1: just read (.,c), 2: padding, 3: dead.
  std::size_t const ns = p.num_symbols();
  unsigned const pad = p.pad(1);
  std::vector<State> table(4 * ns, 3);
  for (Symbol s = 0; s < ns; ++s) {
    if (p.is_pad(s, 0)) {
      continue;
    }
    unsigned b = p.component(s, 1);
    if (b != pad) {
      if (c != pad) {
        table[0 * ns + s] = b == c ? 1 : 0;
        table[1 * ns + s] = b == c ? 1 : 0;
      }
    } else {
      if (c == pad) {
        table[0 * ns + s] = 2;
      } else {
        table[1 * ns + s] = 2;
      }
      table[2 * ns + s] = 2;
    }
  }
  return Dfa(ns, 0, {false, false, true, false}, table);
}

// Pairs with more than `k` letters of the second word beyond the first.
Dfa overhang_above(PaddedAlphabet const& p, std::size_t k) {
  std::size_t const ns = p.num_symbols();
  State const top = State(k + 1);
  std::vector<bool> accepting(k + 2, false);
  accepting[top] = true;
  std::vector<State> table((k + 2) * ns);
  for (State q = 0; q <= top; ++q) {
    for (Symbol s = 0; s < ns; ++s) {
      bool extra = p.is_pad(s, 0);
      table[q * ns + s] = extra ? std::min<State>(q + 1, top) : q;
    }
  }
  return Dfa(ns, 0, accepting, table);
}

// Words of weight below n.
Dfa weight_below(Alphabet const& a, Weight const& n) {
  std::vector<Weight> values{Weight(0)};
  std::map<Weight, State> ids{{Weight(0), 0}};
  std::vector<State> table;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (Letter x = 0; x < a.size(); ++x) {
      Weight w = values[i] + a.weight(x);
      if (w >= n) {
        table.push_back(fsa::no_state);
        continue;
      }
      auto [it, fresh] = ids.emplace(w, State(values.size()));
      if (fresh) {
        values.push_back(w);
      }
      table.push_back(it->second);
    }
  }
  State dead = State(values.size());
  for (auto& t : table) {
    if (t == fsa::no_state) {
      t = dead;
    }
  }
  table.insert(table.end(), a.size(), dead);
  std::vector<bool> accepting(values.size(), true);
  accepting.push_back(false);
  return Dfa(a.size(), 0, accepting, table);
}

// Pairs (x, m y) for (x, y) accepted by `tail`. The letters of x wait in a
// queue until the matching letter of y arrives.
Dfa prepend_second(PaddedAlphabet const& p, Word const& m, Dfa const& tail) {
  struct Config {
    State q;
    std::uint32_t pos;
    bool x_end, z_end;
    Word queue;
    auto operator<=>(Config const&) const = default;
  };
  unsigned const pad0 = p.pad(0), pad1 = p.pad(1);
  auto live = tail.distance_to_accept();
  std::map<Config, State> ids;
  std::vector<Config> configs;
  auto intern = [&](Config const& c) {
    auto [it, fresh] = ids.emplace(c, State(configs.size()));
    if (fresh) {
      configs.push_back(c);
    }
    return it->second;
  };
  auto flush = [&](Config& c) {
    for (Letter x : c.queue) {
      c.q = tail.next(c.q, p.encode({x, pad1}));
    }
    c.queue.clear();
  };
  intern({tail.start(), 0, false, false, {}});
  std::size_t const ns = p.num_symbols();
  std::vector<State> table;
  std::vector<bool> accepting;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    Config const c = configs[i];
    Config end = c;
    flush(end);
    accepting.push_back(c.pos == m.size() && tail.accepting(end.q));
    for (Symbol s = 0; s < ns; ++s) {
      unsigned x = p.component(s, 0), z = p.component(s, 1);
      Config d = c;
      bool ok = true;
      if (x == pad0) {
        d.x_end = true;
      } else {
        ok = !c.x_end;
        d.queue.push_back(Letter(x));
      }
      if (d.pos < m.size()) {
        ok = ok && z == m[d.pos];
        ++d.pos;
      } else if (z == pad1) {
        d.z_end = true;
      } else if (c.z_end) {
        ok = false;
      } else if (!d.queue.empty()) {
        d.q = tail.next(d.q, p.encode({d.queue.front(), z}));
        d.queue.erase(d.queue.begin());
      } else {
        d.q = tail.next(d.q, p.encode({pad0, z}));
      }
      if (ok && d.z_end) {
        flush(d);
      }
      ok = ok && live[d.q] != fsa::no_state;
      table.push_back(ok ? intern(d) : fsa::no_state);
    }
  }
  State sink = State(configs.size());
  for (auto& t : table) {
    if (t == fsa::no_state) {
      t = sink;
    }
  }
  table.insert(table.end(), ns, sink);
  accepting.push_back(false);
  return fsa::minimize(Dfa(ns, 0, accepting, table));
}

// Union of many automata, merged pairwise to keep operands small.
Dfa unite_all(std::size_t num_symbols, std::vector<Dfa> parts) {
  if (parts.empty()) {
    return Dfa::empty(num_symbols);
  }
  while (parts.size() > 1) {
    std::vector<Dfa> next;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      next.push_back(fsa::unite(parts[i], parts[i + 1]));
    }
    if (parts.size() % 2 == 1) {
      next.push_back(std::move(parts.back()));
    }
    parts = std::move(next);
  }
  return std::move(parts.front());
}

}  // namespace

Cprs::Cprs(SyncLanguage r, Order o) : rules(std::move(r)), order(o) {
  auto const& p = rules.alphabet();
  if (p.arity() != 2 || !(p.base(0) == p.base(1))) {
    throw Error("rewriting rules must be pairs over one alphabet");
  }
}

// ---------------------------------------------------------------------------
// Rewriting

Rewriter::Rewriter(Cprs system, std::size_t window)
    : system_(std::move(system)),
      left_sides_(project(system_.rules, 0)),
      window_(window == 0 ? system_.rules.machine().num_states() : window) {}

std::optional<Word> Rewriter::right_side(Word const& left) const {
  auto it = cache_.find(left);
  if (it != cache_.end()) {
    return it->second;
  }
  auto const& p = system_.rules.alphabet();
  Dfa const& m = system_.rules.machine();
  auto const ordered = system_.alphabet().ordered();
  unsigned const pad0 = p.pad(0), pad1 = p.pad(1);
  std::size_t const len = left.size();
  std::size_t const nq = m.num_states();
  std::optional<Word> found;

  for (std::size_t target = 0; target <= len + window_ && !found; ++target) {
    std::size_t const total = std::max(len, target);
    auto first = [&](std::size_t t) { return t < len ? unsigned(left[t]) : pad0; };
    std::vector<std::vector<bool>> reach(total + 1, std::vector<bool>(nq));
    reach[0][m.start()] = true;
    for (std::size_t t = 0; t < total; ++t) {
      for (State q = 0; q < nq; ++q) {
        if (!reach[t][q]) {
          continue;
        }
        if (t < target) {
          for (Letter b : ordered) {
            reach[t + 1][m.next(q, p.encode({first(t), b}))] = true;
          }
        } else {
          reach[t + 1][m.next(q, p.encode({first(t), pad1}))] = true;
        }
      }
    }
    std::vector<bool> good(nq);
    bool any = false;
    for (State q = 0; q < nq; ++q) {
      good[q] = reach[total][q] && m.accepting(q);
      any = any || good[q];
    }
    if (!any) {
      continue;
    }
    Word v(target);
    for (std::size_t t = total; t-- > 0;) {
      std::vector<bool> prev(nq);
      if (t < target) {
        for (Letter b : ordered) {
          Symbol s = p.encode({first(t), b});
          bool hit = false;
          for (State q = 0; q < nq; ++q) {
            if (reach[t][q] && good[m.next(q, s)]) {
              prev[q] = true;
              hit = true;
            }
          }
          if (hit) {
            v[t] = b;
            break;
          }
        }
      } else {
        Symbol s = p.encode({first(t), pad1});
        for (State q = 0; q < nq; ++q) {
          prev[q] = reach[t][q] && good[m.next(q, s)];
        }
      }
      good = std::move(prev);
    }
    found = std::move(v);
  }
  cache_.emplace(left, found);
  return found;
}

std::optional<std::pair<std::size_t, Word>> Rewriter::reducible_prefix(
    Word const& w) const {
  State q = left_sides_.start();
  for (std::size_t i = 0;; ++i) {
    if (left_sides_.accepting(q)) {
      Word left(w.begin(), w.begin() + std::ptrdiff_t(i));
      auto right = right_side(left);
      if (!right) {
        throw Error("no right side of " + system_.alphabet().format(left) +
                    " within the window; the rules look unbounded");
      }
      return std::pair{i, std::move(*right)};
    }
    if (i == w.size()) {
      return std::nullopt;
    }
    q = left_sides_.next(q, w[i]);
  }
}

bool Rewriter::irreducible(Word const& w) const {
  State q = left_sides_.start();
  for (std::size_t i = 0;; ++i) {
    if (left_sides_.accepting(q)) {
      return false;
    }
    if (i == w.size()) {
      return true;
    }
    q = left_sides_.next(q, w[i]);
  }
}

Word Rewriter::rewrite_once(Word const& w) const {
  auto r = reducible_prefix(w);
  if (!r) {
    return w;
  }
  Word out = std::move(r->second);
  out.insert(out.end(), w.begin() + std::ptrdiff_t(r->first), w.end());
  return out;
}

Word Rewriter::normal_form(Word const& w,
                           std::size_t step_limit,
                           RewriteTrace* trace) const {
  if (step_limit == 0) {
    throw Error("step limit must be positive");
  }
  if (trace) {
    trace->start = w;
    trace->steps.clear();
  }
  std::set<Word> seen{w};
  Word cur = w;
  for (std::size_t step = 0;; ++step) {
    auto r = reducible_prefix(cur);
    if (!r) {
      return cur;
    }
    if (step == step_limit) {
      throw Error("rewriting " + system_.alphabet().format(w) +
                  " did not stop within " + std::to_string(step_limit) +
                  " steps");
    }
    Word next = r->second;
    next.insert(next.end(), cur.begin() + std::ptrdiff_t(r->first), cur.end());
    if (trace) {
      trace->steps.push_back(
          {r->first, prefix(cur, r->first), r->second, next});
    }
    if (!seen.insert(next).second) {
      throw Error("rewriting " + system_.alphabet().format(w) +
                  " revisits " + system_.alphabet().format(next));
    }
    cur = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// Verification

std::string_view to_string(Check c) {
  switch (c) {
    case Check::convergent:
      return "convergent";
    case Check::weight_nonincreasing:
      return "weight-nonincreasing";
    case Check::property_L:
      return "property-L";
    case Check::normal_forms_match:
      return "normal-forms-match";
  }
  return "?";
}

Check parse_check(std::string_view name) {
  for (Check c : all_checks()) {
    if (to_string(c) == name) {
      return c;
    }
  }
  throw Error("unknown check: " + std::string(name));
}

std::vector<Check> all_checks() {
  return {Check::convergent, Check::weight_nonincreasing, Check::property_L,
          Check::normal_forms_match};
}

bool VerifyReport::pass() const {
  return std::all_of(results.begin(), results.end(),
                     [](CheckResult const& r) { return r.pass; });
}

VerifyReport verify_cprs(Cprs const& r,
                         Ball const& ball,
                         std::size_t max_len,
                         std::vector<Check> const& checks) {
  if (ball.radius() < max_len) {
    throw Error("verify_cprs: ball radius below the word length bound");
  }
  if (!(ball.alphabet() == r.alphabet())) {
    throw Error("verify_cprs: ball and rules use different alphabets");
  }
  Rewriter rw(r);
  auto const& alpha = r.alphabet();
  auto const& g = ball.spec();
  auto fmt = [&](Word const& w) {
    return w.empty() ? std::string("1") : alpha.format(w);
  };
  std::size_t const limit = std::max<std::size_t>(1, ball.size() * max_len);
  VerifyReport report;
  for (Check check : checks) {
    CheckResult res;
    res.check = check;
    res.bound = max_len;
    switch (check) {
      case Check::convergent: {
        std::map<Element, Word> reached;
        for (auto const& w : words_up_to(alpha.size(), max_len)) {
          ++res.examined;
          Word nf;
          try {
            nf = rw.normal_form(w, limit);
          } catch (Error const& e) {
            note(res, e.what());
            continue;
          }
          Element e = g.evaluate(w);
          if (!(g.evaluate(nf) == e)) {
            note(res, fmt(w) + " rewrites to the different element " + fmt(nf));
            continue;
          }
          auto [it, fresh] = reached.emplace(e, nf);
          if (!fresh && it->second != nf) {
            note(res, "two irreducible words " + fmt(it->second) + " and " +
                          fmt(nf) + " for one element");
          }
        }
        break;
      }
      case Check::normal_forms_match: {
        for (auto const& w : words_up_to(alpha.size(), max_len)) {
          ++res.examined;
          bool expected = ball.nf(g.evaluate(w)) == w;
          if (rw.irreducible(w) != expected) {
            note(res, fmt(w) + (expected ? " is a normal form but reducible"
                                         : " is irreducible but not a normal form"));
          }
        }
        break;
      }
      case Check::weight_nonincreasing: {
        for (auto const& t : r.rules.enumerate(max_len)) {
          ++res.examined;
          if (word_weight(alpha, t[1]) > word_weight(alpha, t[0])) {
            note(res, "(" + fmt(t[0]) + ", " + fmt(t[1]) + ") increases weight");
          }
        }
        break;
      }
      case Check::property_L: {
        for (auto const& t : r.rules.enumerate(max_len)) {
          Word const& u = t[0];
          if (u.empty() || !rw.irreducible(prefix(u, u.size() - 1))) {
            continue;
          }
          ++res.examined;
          try {
            Word nf = rw.normal_form(t[1], limit);
            if (last_of(nf) != last_of(t[1])) {
              note(res, "(" + fmt(u) + ", " + fmt(t[1]) +
                            ") ends differently from its normal form " + fmt(nf));
            }
          } catch (Error const& e) {
            note(res, e.what());
          }
        }
        break;
      }
    }
    report.results.push_back(std::move(res));
  }
  return report;
}

Cprs restrict_min_reducible(Cprs const& r) {
  Alphabet const& a = r.alphabet();
  Dfa reducible = fsa::concatenate(project(r.rules, 0), all_words(a));
  Dfa normal = fsa::complement(reducible);
  return Cprs(coordinate_restrict(r.rules, 0, append_letter(a, normal)),
              r.order);
}

Dfa weight_threshold(Alphabet const& a, Weight const& n) {
  if (n <= 0) {
    throw Error("weight threshold must be positive");
  }
  Dfa below = weight_below(a, n);
  return fsa::minimize(fsa::difference(append_letter(a, below), below));
}

// ---------------------------------------------------------------------------
// Bounded system

namespace {

class TheoremA {
 public:
  TheoremA(Cprs const& rprime, Ball const& ball, TheoremAOptions const& opt)
      : r_(rprime),
        ball_(ball),
        opt_(opt),
        p_(rprime.rules.alphabet()),
        a_(rprime.alphabet()),
        m_(rprime.rules.machine()) {}

  std::pair<Cprs, TheoremAReport> run() {
    check_input();
    report_.automaton_states = fsa::pumping_bound(m_);
    report_.k_overridden = opt_.k.has_value();
    k_ = opt_.k.value_or(report_.automaton_states);
    if (k_ == 0) {
      throw Error("theorem_a_construct: k must be positive");
    }
    report_.k = k_;
    n_ = Weight(std::int64_t(2 * k_)) * a_.max_weight();
    report_.n = n_;
    std::size_t longest = 0;
    while (Weight(std::int64_t(longest + 1)) * a_.min_weight() < n_) {
      ++longest;
    }
    std::size_t need = theorem_a_radius(a_, k_);
    if (ball_.radius() < need) {
      throw Error("theorem_a_construct: needs a ball of radius at least " +
                  std::to_string(need) + ", got " +
                  std::to_string(ball_.radius()));
    }
    longest_ = longest;
    SyncLanguage s1 = build_s1();
    weight_ = weight_threshold(a_, n_);
    SyncLanguage s2 = opt_.route == SuffixRoute::by_state ? s2_by_state()
                                                          : s2_by_pair();
    std::sort(middles_.begin(), middles_.end());
    middles_.erase(std::unique(middles_.begin(), middles_.end()),
                   middles_.end());
    report_.middle_words = middles_;
    Cprs s(unite(s1, s2), r_.order);
    report_.rules_states = s.rules.machine().num_states();
    return {std::move(s), std::move(report_)};
  }

 private:
  void check_input() {
    if (!(ball_.alphabet() == a_)) {
      throw Error("theorem_a_construct: ball and rules use different alphabets");
    }
    if (!equivalent(restrict_min_reducible(r_).rules, r_.rules)) {
      throw Error("theorem_a_construct: left sides must be minimally reducible");
    }
    for (auto const& t : r_.rules.enumerate(opt_.weight_check_length)) {
      if (word_weight(a_, t[1]) > word_weight(a_, t[0])) {
        throw Error("theorem_a_construct: the input increases weight at (" +
                    a_.format(t[0]) + ", " + a_.format(t[1]) + ")");
      }
    }
  }

  Word const& nf(Element const& e) const {
    std::size_t i = ball_.find(e);
    if (i == Ball::npos) {
      throw Error("theorem_a_construct: element outside the ball");
    }
    return ball_.nf(i);
  }

  SyncLanguage build_s1() {
    Rewriter rw(r_);
    Dfa lefts = fsa::intersect(project(r_.rules, 0), weight_below(a_, n_));
    std::vector<std::vector<Word>> tuples;
    for (auto const& sw : fsa::enumerate_up_to(lefts, longest_)) {
      Word u(sw.begin(), sw.end());
      Word v = nf(ball_.spec().evaluate(u));
      Word check = rw.normal_form(u, ball_.size() * (u.size() + 1));
      if (check != v) {
        throw Error("theorem_a_construct: the input's normal form of " +
                    a_.format(u) + " is not the ball's normal form");
      }
      tuples.push_back({std::move(u), std::move(v)});
    }
    report_.s1_rules = tuples.size();
    return SyncLanguage::from_tuples(p_, tuples);
  }

  // The word nf(x y^-1), checked against the bound 2k - 1.
  Word middle(Word const& x, Word const& y) {
    auto const& g = ball_.spec();
    Element e = g.multiply(g.evaluate(x), g.inverse(g.evaluate(y)));
    std::size_t i = ball_.find(e);
    if (i == Ball::npos || ball_.length(i) > 2 * k_ - 1) {
      throw Error("theorem_a_construct: the middle word for (" +
                  a_.format(x) + ", " + a_.format(y) +
                  ") is longer than 2k - 1 = " + std::to_string(2 * k_ - 1));
    }
    report_.longest_middle = std::max(report_.longest_middle, ball_.length(i));
    middles_.push_back(ball_.nf(i));
    return ball_.nf(i);
  }

  void check_overhang(SyncLanguage const& tails) {
    if (!fsa::intersect(tails.machine(), overhang_above(p_, k_)).empty_language()) {
      throw Error("theorem_a_construct: a suffix pair has |v2| > |u2 l| + k");
    }
    // Largest overhang, counted up to k.
    for (std::size_t j = std::size_t(std::max<long>(report_.longest_overhang, 0)) + 1;
         j <= k_; ++j) {
      if (fsa::intersect(tails.machine(), overhang_above(p_, j - 1))
              .empty_language()) {
        break;
      }
      report_.longest_overhang = long(j);
    }
  }

  // Suffix pairs that may follow state q, restricted to the weight split.
  SyncLanguage const& tails(State q) {
    auto it = tails_.find(q);
    if (it == tails_.end()) {
      SyncLanguage t = coordinate_restrict(SyncLanguage(p_, m_.with_start(q)),
                                           0, weight_);
      check_overhang(t);
      it = tails_.emplace(q, std::move(t)).first;
    }
    return it->second;
  }

  // Tail language for prefixes still running in both coordinates.
  std::optional<SyncLanguage> running_tail(State q) {
    SyncLanguage const& t = tails(q);
    auto member = shortest_member(t.machine());
    if (!member) {
      return std::nullopt;
    }
    auto pair = p_.unpad(*member);
    Word m = middle(pair[0], pair[1]);
    return SyncLanguage(p_, prepend_second(p_, m, t.machine()));
  }

  // Tail language for prefixes whose second word ended in `c` (the
  // alphabet size standing for the empty word).
  std::optional<SyncLanguage> ended_tail(State q, unsigned c) {
    SyncLanguage const& t = tails(q);
    auto member = shortest_member(t.machine());
    if (!member) {
      return std::nullopt;
    }
    Word x = p_.unpad(*member)[0];
    Word last = c == p_.pad(1) ? Word{} : Word{Letter(c)};
    Word right = middle(x, last);
    right.insert(right.end(), last.begin(), last.end());
    Dfa xs = project(t, 0);
    auto out = coordinate_restrict(
        coordinate_restrict(SyncLanguage::universe(p_), 0, xs), 1,
        single_word(a_, right));
    return out;
  }

  // Prefix automaton over letters: sets of (state of the rules, tag). Tags
  // 0..na mean both words still running, the second last reading letter
  // tag (na: none yet); na+1+c means the second word ended in c.
  struct Prefixes {
    std::vector<std::vector<std::uint64_t>> subsets;
    std::vector<State> table;  // subset x letter, no_state when empty
  };

  Prefixes prefixes() {
    std::size_t const na = a_.size();
    std::uint64_t const tags = 2 * na + 2;
    unsigned const pad1 = p_.pad(1);
    auto live = m_.distance_to_accept();
    Prefixes out;
    std::unordered_map<std::vector<std::uint64_t>, State,
                       boost::hash<std::vector<std::uint64_t>>>
        ids;
    auto intern = [&](std::vector<std::uint64_t> set) -> State {
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      if (set.empty()) {
        return fsa::no_state;
      }
      auto [it, fresh] = ids.emplace(set, State(out.subsets.size()));
      if (fresh) {
        out.subsets.push_back(std::move(set));
      }
      return it->second;
    };
    intern({std::uint64_t(m_.start()) * tags + na});
    for (std::size_t i = 0; i < out.subsets.size(); ++i) {
      for (Letter a = 0; a < na; ++a) {
        std::vector<std::uint64_t> next;
        auto add = [&](State q, std::uint64_t tag) {
          if (live[q] != fsa::no_state) {
            next.push_back(std::uint64_t(q) * tags + tag);
          }
        };
        for (std::uint64_t item : out.subsets[i]) {
          State q = State(item / tags);
          std::uint64_t tag = item % tags;
          if (tag <= na) {
            for (Letter b = 0; b < na; ++b) {
              add(m_.next(q, p_.encode({a, b})), b);
            }
            add(m_.next(q, p_.encode({a, pad1})), na + 1 + tag);
          } else {
            add(m_.next(q, p_.encode({a, pad1})), tag);
          }
        }
        State id = intern(std::move(next));
        out.table.push_back(id);
      }
    }
    return out;
  }

  SyncLanguage s2_by_state() {
    std::size_t const na = a_.size();
    std::uint64_t const tags = 2 * na + 2;
    Prefixes pre = prefixes();
    std::size_t const ns = p_.num_symbols();
    Nfa nfa(ns);
    for (std::size_t i = 0; i < pre.subsets.size(); ++i) {
      nfa.add_state(false);
    }
    nfa.add_start(0);
    for (std::size_t i = 0; i < pre.subsets.size(); ++i) {
      for (Letter a = 0; a < na; ++a) {
        State to = pre.table[i * na + a];
        if (to != fsa::no_state) {
          nfa.add_transition(State(i), p_.encode({a, a}), to);
        }
      }
    }
    // Tail machines keyed by (state, kind); kind na + 1 + c for ended.
    std::map<std::pair<State, std::uint64_t>, std::optional<State>> starts;
    auto tail_start = [&](State q, std::uint64_t kind) -> std::optional<State> {
      auto key = std::pair{q, kind};
      auto it = starts.find(key);
      if (it != starts.end()) {
        return it->second;
      }
      std::optional<SyncLanguage> t =
          kind == 0 ? running_tail(q) : ended_tail(q, unsigned(kind - na - 1));
      std::optional<State> s;
      if (t && !t->machine().empty_language()) {
        Dfa const& d = t->machine();
        State base = State(nfa.num_states());
        for (State x = 0; x < d.num_states(); ++x) {
          nfa.add_state(d.accepting(x));
        }
        for (State x = 0; x < d.num_states(); ++x) {
          for (Symbol c = 0; c < ns; ++c) {
            nfa.add_transition(base + x, c, base + d.next(x, c));
          }
        }
        s = base + d.start();
        ++report_.s2_classes;
      }
      starts.emplace(key, s);
      return s;
    };
    for (std::size_t i = 0; i < pre.subsets.size(); ++i) {
      std::set<std::pair<State, std::uint64_t>> wanted;
      for (std::uint64_t item : pre.subsets[i]) {
        State q = State(item / tags);
        std::uint64_t tag = item % tags;
        wanted.emplace(q, tag <= na ? 0 : tag);
      }
      for (auto [q, kind] : wanted) {
        if (auto s = tail_start(q, kind)) {
          nfa.add_epsilon(State(i), *s);
        }
      }
    }
    return SyncLanguage(p_, fsa::determinize_minimize(nfa));
  }

  SyncLanguage s2_by_pair() {
    std::size_t const na = a_.size();
    std::uint64_t const tags = 2 * na + 2;
    Prefixes pre = prefixes();
    std::set<State> running, ended;
    for (auto const& set : pre.subsets) {
      for (std::uint64_t item : set) {
        (item % tags <= na ? running : ended).insert(State(item / tags));
      }
    }
    std::size_t const max_len = longest_ + 1 + k_;
    Dfa diag_prefix = pad_free_star(p_);
    std::vector<Dfa> pieces;
    auto add_piece = [&](Dfa const& lang, Word const& x, Word const& right) {
      Dfa prefixes = project(SyncLanguage(p_, lang), 0);
      if (prefixes.empty_language()) {
        return;
      }
      pieces.push_back(fsa::concatenate(diagonal(a_, prefixes).machine(),
                                        symbol_word(p_, {x, right})));
      ++report_.s2_classes;
    };

    std::set<std::pair<Word, Word>> pairs;
    for (State q : running) {
      for (auto const& t : tails(q).enumerate(max_len)) {
        pairs.emplace(t[0], t[1]);
      }
    }
    for (auto const& [x, y] : pairs) {
      ++report_.suffix_pairs;
      Word m = middle(x, y);
      Dfa tail = symbol_word(p_, {x, y});
      Dfa quotient = fsa::right_quotient(
          fsa::intersect(m_, fsa::concatenate(diag_prefix, tail)), tail);
      Word right = m;
      right.insert(right.end(), y.begin(), y.end());
      add_piece(quotient, x, right);
    }

    std::set<Word> xs;
    for (State q : ended) {
      for (auto const& t : tails(q).enumerate(max_len)) {
        xs.insert(t[0]);
      }
    }
    for (Word const& x : xs) {
      Dfa tail = symbol_word(p_, {x, Word{}});
      for (unsigned c = 0; c <= na; ++c) {
        Dfa quotient = fsa::right_quotient(
            fsa::intersect(m_, fsa::concatenate(ended_prefixes(p_, c), tail)),
            tail);
        if (quotient.empty_language()) {
          continue;
        }
        ++report_.suffix_pairs;
        Word last = c == na ? Word{} : Word{Letter(c)};
        Word right = middle(x, last);
        right.insert(right.end(), last.begin(), last.end());
        add_piece(quotient, x, right);
      }
    }
    return SyncLanguage(p_, unite_all(p_.num_symbols(), std::move(pieces)));
  }

  Cprs const& r_;
  Ball const& ball_;
  TheoremAOptions opt_;
  PaddedAlphabet const& p_;
  Alphabet const& a_;
  Dfa const& m_;
  std::size_t k_ = 0;
  Weight n_;
  std::size_t longest_ = 0;
  Dfa weight_;
  TheoremAReport report_;
  std::vector<Word> middles_;
  std::map<State, SyncLanguage> tails_;
};

}  // namespace

std::size_t theorem_a_radius(Alphabet const& a, std::size_t k) {
  Weight n = Weight(std::int64_t(2 * k)) * a.max_weight();
  // Longest word of weight below n.
  std::size_t longest = 0;
  while (Weight(std::int64_t(longest + 1)) * a.min_weight() < n) {
    ++longest;
  }
  return std::max(longest, 2 * k - 1);
}

std::pair<Cprs, TheoremAReport> theorem_a_construct(
    Cprs const& rprime,
    Ball const& ball,
    TheoremAOptions const& options) {
  return TheoremA(rprime, ball, options).run();
}

bool BoundednessProfile::grows() const {
  return constants.size() >= 2 &&
         constants.back() > constants[constants.size() - 2];
}

BoundednessProfile boundedness_constant(Cprs const& s, std::size_t max_len) {
  auto const& p = s.rules.alphabet();
  Dfa const& m = s.rules.machine();
  std::size_t const nq = m.num_states();
  // Best remainder per (state, diverged); -1 when unreachable.
  std::vector<long> cur(2 * nq, -1), next(2 * nq);
  cur[2 * m.start()] = 0;
  BoundednessProfile out;
  std::size_t best = 0;
  for (std::size_t len = 0;; ++len) {
    for (State q = 0; q < nq; ++q) {
      if (m.accepting(q)) {
        for (int d = 0; d < 2; ++d) {
          if (cur[2 * q + d] > 0) {
            best = std::max(best, std::size_t(cur[2 * q + d]));
          }
        }
      }
    }
    out.constants.push_back(best);
    if (len == max_len) {
      break;
    }
    std::fill(next.begin(), next.end(), -1);
    for (State q = 0; q < nq; ++q) {
      for (int d = 0; d < 2; ++d) {
        long v = cur[2 * q + d];
        if (v < 0) {
          continue;
        }
        for (Symbol c = 0; c < p.num_symbols(); ++c) {
          unsigned x = p.component(c, 0), y = p.component(c, 1);
          bool same = x == y;  // never two pads
          int nd = d == 0 && same ? 0 : 1;
          long nv = nd == 0 ? 0 : v + long(x != p.pad(0)) + long(y != p.pad(1));
          long& slot = next[2 * m.next(q, c) + nd];
          slot = std::max(slot, nv);
        }
      }
    }
    std::swap(cur, next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Flow function

FlowEntry const* FlowTable::find(std::size_t element, Letter a) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), std::pair{element, a},
      [](FlowEntry const& e, std::pair<std::size_t, Letter> const& key) {
        return std::pair{e.element, e.letter} < key;
      });
  if (it == entries.end() || it->element != element || it->letter != a) {
    return nullptr;
  }
  return &*it;
}

FlowEntry* FlowTable::find(std::size_t element, Letter a) {
  return const_cast<FlowEntry*>(std::as_const(*this).find(element, a));
}

FlowTable flow_function(Rewriter const& s, Ball const& ball) {
  auto const& alpha = ball.alphabet();
  if (!(alpha == s.system().alphabet())) {
    throw Error("flow_function: ball and rules use different alphabets");
  }
  FlowTable ft;
  ft.ball = &ball;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    Word const& nf = ball.nf(i);
    if (!s.irreducible(nf)) {
      throw Error("flow_function: the normal form " + alpha.format(nf) +
                  " is reducible; the system does not match the ball");
    }
    ft.normal_forms.push_back(nf);
  }
  for (std::size_t i = 0; i < ball.size(); ++i) {
    Word const& nf = ft.normal_forms[i];
    for (Letter a = 0; a < alpha.size(); ++a) {
      std::size_t j = ball.neighbour(i, a);
      if (j == Ball::npos) {
        continue;
      }
      FlowEntry e{i, a, Word{a}, false};
      Word w = nf;
      w.push_back(a);
      if ((!nf.empty() && nf.back() == alpha.inverse(a)) || s.irreducible(w)) {
        e.fixed = true;
      } else {
        auto r = s.reducible_prefix(w);
        if (!r || r->first != w.size()) {
          throw Error("flow_function: no rule with left side " +
                      alpha.format(w));
        }
        Word const& right = r->second;
        std::size_t c = common_prefix_length(nf, right);
        Word label = invert_word(alpha, suffix_from(nf, c));
        Word tail = suffix_from(right, c);
        label.insert(label.end(), tail.begin(), tail.end());
        e.label = free_reduce(alpha, label);
      }
      ft.bound = std::max(ft.bound, e.label.size());
      ft.entries.push_back(std::move(e));
    }
  }
  return ft;
}

bool GeoReport::pass() const {
  return alpha_violations == 0 && endpoint_violations == 0 &&
         fixed_violations == 0 && bound_violations == 0 &&
         normal_form_violations == 0;
}

GeoReport verify_geodesic_autostackable(FlowTable const& ft, Ball const& ball) {
  auto const& alpha = ball.alphabet();
  GeoReport rep;
  auto flag = [&](std::size_t& counter, std::string what) {
    ++counter;
    if (rep.violations.size() < max_listed) {
      rep.violations.push_back(std::move(what));
    }
  };
  auto fmt = [&](Word const& w) {
    return w.empty() ? std::string("1") : alpha.format(w);
  };
  if (ft.normal_forms.size() != ball.size()) {
    throw Error("verify_geodesic_autostackable: table built on another ball");
  }
  for (std::size_t i = 0; i < ball.size(); ++i) {
    Word const& nf = ft.normal_forms[i];
    if (nf.size() != ball.length(i) || ball.find_word(nf) != i) {
      flag(rep.normal_form_violations,
           "normal form " + fmt(nf) + " is not a geodesic for its element");
    }
  }
  for (auto const& e : ft.entries) {
    ++rep.edges;
    std::size_t const i = e.element;
    std::size_t const j = ball.neighbour(i, e.letter);
    std::string const name =
        "edge (" + fmt(ft.normal_forms[i]) + ", " + alpha.name(e.letter) + ")";
    Word const& nf = ft.normal_forms[i];
    Word w = nf;
    w.push_back(e.letter);
    bool tree = (!nf.empty() && nf.back() == alpha.inverse(e.letter)) ||
                (j != Ball::npos && ft.normal_forms[j] == w);
    bool own = e.label == Word{e.letter};
    if (tree && !own) {
      flag(rep.fixed_violations, name + " is a tree edge but is moved");
    }
    if (e.label.size() > ft.bound) {
      flag(rep.bound_violations, name + " has a label longer than the bound");
    }
    if (own) {
      continue;
    }
    ++rep.moved;
    std::size_t const alpha2 = ball.length(i) + ball.length(j);
    std::size_t x = i;
    bool left = false;
    for (Letter b : e.label) {
      std::size_t y = ball.neighbour(x, b);
      FlowEntry const* f = y == Ball::npos ? nullptr : ft.find(x, b);
      if (f == nullptr) {
        left = true;
        break;
      }
      if (f->label != Word{b} && ball.length(x) + ball.length(y) >= alpha2) {
        flag(rep.alpha_violations,
             name + ": replacement edge (" + fmt(ft.normal_forms[x]) + ", " +
                 alpha.name(b) + ") does not lower alpha");
      }
      x = y;
    }
    if (left) {
      ++rep.skipped;
      continue;
    }
    if (x != j) {
      flag(rep.endpoint_violations, name + ": label " + fmt(e.label) +
                                        " ends elsewhere");
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Almost convexity

namespace {

// Follows the rewriting chain from x along a towards the element x·a one
// step outside the sphere, stopping where the last edge would enter it.
Word chain(Rewriter const& s,
           Ball const& ball,
           std::size_t x,
           Letter a,
           std::vector<Letter>& letters) {
  auto const& alpha = ball.alphabet();
  std::size_t const target = ball.neighbour(x, a);
  if (target == Ball::npos) {
    throw Error("almost_convex_path: ball too small");
  }
  Word const& goal = ball.nf(target);
  Word path;
  std::set<Letter> seen{a};
  letters.push_back(a);
  while (goal.empty() || goal.back() != a) {
    Word w = ball.nf(x);
    w.push_back(a);
    auto r = s.reducible_prefix(w);
    if (!r || r->first != w.size()) {
      throw Error("almost_convex_path: " + alpha.format(w) +
                  " is not minimally reducible");
    }
    Word const& right = r->second;
    std::size_t c = common_prefix_length(ball.nf(x), right);
    Word rest = suffix_from(right, c);
    if (rest.empty()) {
      throw Error("almost_convex_path: rule right side ends inside the tree");
    }
    Letter next = rest.back();
    rest.pop_back();
    Word piece = invert_word(alpha, suffix_from(ball.nf(x), c));
    piece.insert(piece.end(), rest.begin(), rest.end());
    for (Letter b : piece) {
      x = ball.neighbour(x, b);
      if (x == Ball::npos) {
        throw Error("almost_convex_path: ball too small");
      }
    }
    path.insert(path.end(), piece.begin(), piece.end());
    if (ball.neighbour(x, next) != target) {
      throw Error("almost_convex_path: rule does not preserve the element");
    }
    if (!seen.insert(next).second) {
      throw Error("almost_convex_path: chain letter " + alpha.name(next) +
                  " repeats");
    }
    letters.push_back(next);
    a = next;
  }
  return path;
}

}  // namespace

ConvexPath almost_convex_path(Rewriter const& s,
                              Ball const& ball,
                              std::size_t g,
                              std::size_t h,
                              std::size_t n,
                              std::size_t k) {
  auto const& alpha = ball.alphabet();
  if (g >= ball.size() || h >= ball.size() || ball.length(g) != n ||
      ball.length(h) != n) {
    throw Error("almost_convex_path: both elements must lie on the sphere");
  }
  if (n + 2 > ball.radius()) {
    throw Error("almost_convex_path: needs a ball of radius n + 2");
  }
  ConvexPath out;
  out.bound = 2 * (4 * k + 4) * alpha.size();
  auto const ordered = alpha.ordered();
  if (g != h) {
    std::optional<std::pair<Letter, Letter>> outside;
    bool done = false;
    for (Letter a : ordered) {
      if (ball.neighbour(g, a) == h) {
        out.label = {a};
        done = true;
        break;
      }
    }
    for (Letter a : ordered) {
      if (done) {
        break;
      }
      std::size_t mid = ball.neighbour(g, a);
      for (Letter b : ordered) {
        if (ball.neighbour(mid, b) != h) {
          continue;
        }
        if (ball.length(mid) <= n) {
          out.label = {a, b};
          done = true;
          break;
        }
        if (!outside) {
          outside = std::pair{a, b};
        }
      }
    }
    if (!done) {
      if (!outside) {
        throw Error("almost_convex_path: the elements are further than 2 apart");
      }
      auto [a, b] = *outside;
      Word first = chain(s, ball, g, a, out.chain);
      Word second = chain(s, ball, h, alpha.inverse(b), out.chain);
      out.label = first;
      Word back = invert_word(alpha, second);
      out.label.insert(out.label.end(), back.begin(), back.end());
    }
  }
  std::size_t x = g;
  for (Letter b : out.label) {
    x = ball.neighbour(x, b);
    if (x == Ball::npos || ball.length(x) > n) {
      throw Error("almost_convex_path: path leaves B(" + std::to_string(n) +
                  ")");
    }
  }
  if (x != h) {
    throw Error("almost_convex_path: path ends at the wrong element");
  }
  if (out.label.size() > out.bound) {
    throw Error("almost_convex_path: path longer than 2(4k + 4)|A|");
  }
  return out;
}

}  // namespace autostack
