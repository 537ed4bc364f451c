#include "autostack/fsa.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

namespace autostack::fsa {

namespace {

struct VectorHash {
  std::size_t operator()(std::vector<State> const& v) const {
    return boost::hash_range(v.begin(), v.end());
  }
};

std::uint64_t pair_key(State a, State b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Predecessor lists per symbol, stored contiguously.
struct Inverse {
  std::vector<std::size_t> offset;  // (symbol * n + target) -> start
  std::vector<State> source;

  Inverse(Dfa const& m) {
    std::size_t const n = m.num_states(), k = m.num_symbols();
    offset.assign(n * k + 1, 0);
    for (State q = 0; q < n; ++q) {
      for (Symbol a = 0; a < k; ++a) {
        ++offset[a * n + m.next(q, a) + 1];
      }
    }
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    source.resize(n * k);
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (State q = 0; q < n; ++q) {
      for (Symbol a = 0; a < k; ++a) {
        source[fill[a * n + m.next(q, a)]++] = q;
      }
    }
  }

  std::span<State const> of(std::size_t n, Symbol a, State target) const {
    std::size_t i = a * n + target;
    return {source.data() + offset[i], source.data() + offset[i + 1]};
  }
};

Dfa product(Dfa const& a, Dfa const& b, Combine kind) {
  if (a.num_symbols() != b.num_symbols()) {
    throw Error("automata are over different symbol sets");
  }
  std::size_t const k = a.num_symbols();
  std::unordered_map<std::uint64_t, State> id;
  std::vector<std::pair<State, State>> pairs;
  std::vector<bool> accepting;
  std::vector<State> table;
  auto intern = [&](State p, State q) {
    auto [it, fresh] = id.emplace(pair_key(p, q), State(pairs.size()));
    if (fresh) {
      pairs.emplace_back(p, q);
      bool x = a.accepting(p), y = b.accepting(q);
      switch (kind) {
        case Combine::union_: accepting.push_back(x || y); break;
        case Combine::intersect: accepting.push_back(x && y); break;
        default: accepting.push_back(x && !y); break;
      }
    }
    return it->second;
  };
  intern(a.start(), b.start());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    for (Symbol s = 0; s < k; ++s) {
      table.push_back(intern(a.next(p, s), b.next(q, s)));
    }
  }
  return Dfa(k, 0, std::move(accepting), std::move(table));
}

}  // namespace

Dfa::Dfa(std::size_t num_symbols,
         State start,
         std::vector<bool> accepting,
         std::vector<State> table)
    : num_symbols_(num_symbols),
      start_(start),
      accepting_(std::move(accepting)),
      table_(std::move(table)) {
  if (accepting_.empty()) {
    throw Error("an automaton needs at least one state");
  }
  if (table_.size() != accepting_.size() * num_symbols_) {
    throw Error("transition table is not complete");
  }
  if (start_ >= accepting_.size()) {
    throw Error("start state out of range");
  }
  for (State t : table_) {
    if (t >= accepting_.size()) {
      throw Error("transition target out of range");
    }
  }
}

Dfa Dfa::empty(std::size_t num_symbols) {
  return Dfa(num_symbols, 0, {false}, std::vector<State>(num_symbols, 0));
}

Dfa Dfa::universal(std::size_t num_symbols) {
  return Dfa(num_symbols, 0, {true}, std::vector<State>(num_symbols, 0));
}

Dfa Dfa::from_words(std::size_t num_symbols,
                    std::vector<SymbolWord> const& words) {
  // Trie with a sink at index 0.
  std::vector<bool> accepting{false, false};
  std::vector<State> table(2 * num_symbols, 0);
  for (auto const& w : words) {
    State q = 1;
    for (Symbol a : w) {
      if (a >= num_symbols) {
        throw Error("symbol out of range");
      }
      State& t = table[q * num_symbols + a];
      if (t == 0) {
        t = State(accepting.size());
        accepting.push_back(false);
        table.resize(table.size() + num_symbols, 0);
      }
      q = table[q * num_symbols + a];
    }
    accepting[q] = true;
  }
  return minimize(Dfa(num_symbols, 1, std::move(accepting), std::move(table)));
}

State Dfa::run(State from, std::span<Symbol const> w) const {
  State q = from;
  for (Symbol a : w) {
    if (a >= num_symbols_) {
      throw Error("symbol out of range");
    }
    q = next(q, a);
  }
  return q;
}

bool Dfa::accepts(std::span<Symbol const> w) const {
  return accepting(run(start_, w));
}

Dfa Dfa::with_start(State q) const {
  return Dfa(num_symbols_, q, accepting_, table_);
}

Dfa Dfa::with_accepting(std::vector<bool> accepting) const {
  return Dfa(num_symbols_, start_, std::move(accepting), table_);
}

std::vector<State> Dfa::distance_to_accept() const {
  std::size_t const n = num_states();
  Inverse inv(*this);
  std::vector<State> dist(n, no_state);
  std::deque<State> queue;
  for (State q = 0; q < n; ++q) {
    if (accepting_[q]) {
      dist[q] = 0;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Symbol a = 0; a < num_symbols_; ++a) {
      for (State p : inv.of(n, a, q)) {
        if (dist[p] == no_state) {
          dist[p] = dist[q] + 1;
          queue.push_back(p);
        }
      }
    }
  }
  return dist;
}

std::vector<bool> Dfa::reachable() const {
  std::vector<bool> seen(num_states(), false);
  std::vector<State> stack{start_};
  seen[start_] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol a = 0; a < num_symbols_; ++a) {
      State t = next(q, a);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

bool Dfa::empty_language() const {
  auto seen = reachable();
  for (State q = 0; q < num_states(); ++q) {
    if (seen[q] && accepting_[q]) {
      return false;
    }
  }
  return true;
}

Nfa Nfa::from_dfa(Dfa const& m) {
  Nfa out(m.num_symbols());
  for (State q = 0; q < m.num_states(); ++q) {
    out.add_state(m.accepting(q));
  }
  for (State q = 0; q < m.num_states(); ++q) {
    for (Symbol a = 0; a < m.num_symbols(); ++a) {
      out.add_transition(q, a, m.next(q, a));
    }
  }
  out.add_start(m.start());
  return out;
}

State Nfa::add_state(bool accepting) {
  accepting_.push_back(accepting);
  out_.emplace_back();
  eps_.emplace_back();
  return State(accepting_.size() - 1);
}

void Nfa::add_transition(State from, Symbol a, State to) {
  if (a >= num_symbols_) {
    throw Error("symbol out of range");
  }
  out_.at(from).emplace_back(a, to);
}

void Nfa::add_epsilon(State from, State to) {
  eps_.at(from).push_back(to);
}

namespace {

void close(Nfa const& m, std::vector<State>& set, std::vector<char>& mark) {
  std::vector<State> stack(set.begin(), set.end());
  for (State q : set) {
    mark[q] = 1;
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State t : m.epsilons(q)) {
      if (!mark[t]) {
        mark[t] = 1;
        set.push_back(t);
        stack.push_back(t);
      }
    }
  }
  for (State q : set) {
    mark[q] = 0;
  }
  std::sort(set.begin(), set.end());
}

}  // namespace

bool Nfa::accepts(std::span<Symbol const> w) const {
  std::vector<char> mark(num_states(), 0);
  std::vector<State> cur = starts_;
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  close(*this, cur, mark);
  for (Symbol a : w) {
    std::vector<State> nxt;
    for (State q : cur) {
      for (auto [s, t] : out_[q]) {
        if (s == a && !mark[t]) {
          mark[t] = 1;
          nxt.push_back(t);
        }
      }
    }
    for (State q : nxt) {
      mark[q] = 0;
    }
    cur = std::move(nxt);
    close(*this, cur, mark);
  }
  return std::any_of(cur.begin(), cur.end(),
                     [&](State q) { return accepting_[q]; });
}

Dfa determinize(Nfa const& m) {
  std::size_t const k = m.num_symbols();
  std::vector<char> mark(m.num_states(), 0);
  std::unordered_map<std::vector<State>, State, VectorHash> id;
  std::vector<std::vector<State>> sets;
  std::vector<bool> accepting;
  std::vector<State> table;
  auto intern = [&](std::vector<State> set) {
    auto it = id.find(set);
    if (it != id.end()) {
      return it->second;
    }
    State q = State(sets.size());
    bool acc = std::any_of(set.begin(), set.end(),
                           [&](State s) { return m.accepting(s); });
    accepting.push_back(acc);
    id.emplace(set, q);
    sets.push_back(std::move(set));
    return q;
  };
  std::vector<State> init = m.starts();
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  close(m, init, mark);
  intern(std::move(init));
  std::vector<std::vector<State>> bucket(k);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (auto& b : bucket) {
      b.clear();
    }
    for (State q : sets[i]) {
      for (auto [a, t] : m.transitions(q)) {
        bucket[a].push_back(t);
      }
    }
    for (Symbol a = 0; a < k; ++a) {
      auto& b = bucket[a];
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
      std::vector<State> set = b;
      close(m, set, mark);
      table.push_back(intern(std::move(set)));
    }
  }
  return Dfa(k, 0, std::move(accepting), std::move(table));
}

Dfa minimize(Dfa const& m) {
  std::size_t const k = m.num_symbols();
  // Restrict to reachable states.
  auto seen = m.reachable();
  std::vector<State> old_of;
  std::vector<State> new_of(m.num_states(), no_state);
  for (State q = 0; q < m.num_states(); ++q) {
    if (seen[q]) {
      new_of[q] = State(old_of.size());
      old_of.push_back(q);
    }
  }
  std::size_t const n = old_of.size();
  std::vector<State> table(n * k);
  std::vector<bool> accepting(n);
  for (State i = 0; i < n; ++i) {
    accepting[i] = m.accepting(old_of[i]);
    for (Symbol a = 0; a < k; ++a) {
      table[i * k + a] = new_of[m.next(old_of[i], a)];
    }
  }
  Dfa trimmed(k, new_of[m.start()], accepting, std::move(table));
  Inverse inv(trimmed);

  // Refinable partition: blocks are contiguous ranges of `elems`.
  std::vector<State> elems(n), loc(n), blk(n, 0);
  std::vector<std::size_t> first, end, mid;
  std::iota(elems.begin(), elems.end(), 0);
  std::stable_partition(elems.begin(), elems.end(),
                        [&](State q) { return accepting[q]; });
  std::size_t n_acc = std::count(accepting.begin(), accepting.end(), true);
  if (n_acc > 0) {
    first.push_back(0);
    end.push_back(n_acc);
  }
  if (n_acc < n) {
    first.push_back(n_acc);
    end.push_back(n);
  }
  mid = first;
  for (std::size_t i = 0; i < n; ++i) {
    loc[elems[i]] = State(i);
    blk[elems[i]] = (n_acc > 0 && i >= n_acc) ? 1 : 0;
  }
  std::vector<char> in_work(first.size(), 1);
  std::vector<State> work;
  for (State b = 0; b < first.size(); ++b) {
    work.push_back(b);
  }
  std::vector<State> touched, splitter;
  while (!work.empty()) {
    State b = work.back();
    work.pop_back();
    in_work[b] = 0;
    splitter.assign(elems.begin() + first[b], elems.begin() + end[b]);
    for (Symbol a = 0; a < k; ++a) {
      for (State t : splitter) {
        for (State s : inv.of(n, a, t)) {
          State y = blk[s];
          if (loc[s] >= mid[y]) {
            if (mid[y] == first[y]) {
              touched.push_back(y);
            }
            std::size_t j = mid[y]++;
            State other = elems[j];
            std::swap(elems[j], elems[loc[s]]);
            loc[other] = loc[s];
            loc[s] = State(j);
          }
        }
      }
      for (State y : touched) {
        if (mid[y] == end[y]) {
          mid[y] = first[y];
          continue;
        }
        State z = State(first.size());
        first.push_back(first[y]);
        end.push_back(mid[y]);
        mid.push_back(first[y]);
        first[y] = mid[y];
        for (std::size_t i = first[z]; i < end[z]; ++i) {
          blk[elems[i]] = z;
        }
        if (in_work[y]) {
          in_work.push_back(1);
          work.push_back(z);
        } else {
          bool z_smaller = end[z] - first[z] <= end[y] - first[y];
          in_work.push_back(z_smaller ? 1 : 0);
          if (z_smaller) {
            work.push_back(z);
          } else {
            in_work[y] = 1;
            work.push_back(y);
          }
        }
      }
      touched.clear();
    }
  }

  // Canonical breadth-first numbering of the blocks.
  std::size_t const nb = first.size();
  std::vector<State> order(nb, no_state);
  std::vector<State> queue{blk[trimmed.start()]};
  order[queue[0]] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    State rep = elems[first[queue[i]]];
    for (Symbol a = 0; a < k; ++a) {
      State t = blk[trimmed.next(rep, a)];
      if (order[t] == no_state) {
        order[t] = State(queue.size());
        queue.push_back(t);
      }
    }
  }
  std::vector<bool> out_acc(nb);
  std::vector<State> out_table(nb * k);
  for (State i = 0; i < nb; ++i) {
    State rep = elems[first[queue[i]]];
    out_acc[i] = accepting[rep];
    for (Symbol a = 0; a < k; ++a) {
      out_table[i * k + a] = order[blk[trimmed.next(rep, a)]];
    }
  }
  return Dfa(k, 0, std::move(out_acc), std::move(out_table));
}

Dfa determinize_minimize(Nfa const& m) {
  return minimize(determinize(m));
}

Dfa combine(Combine kind, Dfa const& m1, Dfa const& m2) {
  switch (kind) {
    case Combine::union_:
    case Combine::intersect:
    case Combine::difference:
      return minimize(product(m1, m2, kind));
    case Combine::complement:
    case Combine::star:
      return combine(kind, m1);
    case Combine::concat: {
      if (m1.num_symbols() != m2.num_symbols()) {
        throw Error("automata are over different symbol sets");
      }
      Nfa n = Nfa::from_dfa(m1);
      State offset = State(n.num_states());
      for (State q = 0; q < m1.num_states(); ++q) {
        n.set_accepting(q, false);
      }
      for (State q = 0; q < m2.num_states(); ++q) {
        n.add_state(m2.accepting(q));
      }
      for (State q = 0; q < m2.num_states(); ++q) {
        for (Symbol a = 0; a < m2.num_symbols(); ++a) {
          n.add_transition(offset + q, a, offset + m2.next(q, a));
        }
      }
      for (State q = 0; q < m1.num_states(); ++q) {
        if (m1.accepting(q)) {
          n.add_epsilon(q, offset + m2.start());
        }
      }
      return determinize_minimize(n);
    }
  }
  throw Error("unknown combinator");
}

Dfa combine(Combine kind, Dfa const& m1) {
  switch (kind) {
    case Combine::complement: {
      std::vector<bool> acc(m1.num_states());
      for (State q = 0; q < m1.num_states(); ++q) {
        acc[q] = !m1.accepting(q);
      }
      return minimize(m1.with_accepting(std::move(acc)));
    }
    case Combine::star: {
      Nfa n = Nfa::from_dfa(m1);
      State s = n.add_state(true);
      n.add_epsilon(s, m1.start());
      for (State q = 0; q < m1.num_states(); ++q) {
        if (m1.accepting(q)) {
          n.add_epsilon(q, s);
        }
      }
      Nfa fresh(m1.num_symbols());
      // Replace the start set by the new state only.
      for (State q = 0; q < n.num_states(); ++q) {
        fresh.add_state(n.accepting(q));
      }
      for (State q = 0; q < n.num_states(); ++q) {
        for (auto [a, t] : n.transitions(q)) {
          fresh.add_transition(q, a, t);
        }
        for (State t : n.epsilons(q)) {
          fresh.add_epsilon(q, t);
        }
      }
      fresh.add_start(s);
      return determinize_minimize(fresh);
    }
    default:
      throw Error("combinator needs two operands");
  }
}

Dfa right_quotient(Dfa const& p, Dfa const& s) {
  if (p.num_symbols() != s.num_symbols()) {
    throw Error("automata are over different symbol sets");
  }
  std::size_t const k = p.num_symbols();
  std::size_t const np = p.num_states(), ns = s.num_states();
  Inverse ip(p), is(s);
  std::vector<bool> good(np * ns, false);
  std::vector<std::pair<State, State>> stack;
  for (State a = 0; a < np; ++a) {
    for (State b = 0; b < ns; ++b) {
      if (p.accepting(a) && s.accepting(b)) {
        good[a * ns + b] = true;
        stack.emplace_back(a, b);
      }
    }
  }
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    for (Symbol c = 0; c < k; ++c) {
      auto pa = ip.of(np, c, a);
      if (pa.empty()) {
        continue;
      }
      for (State y : is.of(ns, c, b)) {
        for (State x : pa) {
          if (!good[x * ns + y]) {
            good[x * ns + y] = true;
            stack.emplace_back(x, y);
          }
        }
      }
    }
  }
  std::vector<bool> acc(np);
  for (State q = 0; q < np; ++q) {
    acc[q] = good[q * ns + s.start()];
  }
  return minimize(p.with_accepting(std::move(acc)));
}

std::vector<SymbolWord> enumerate_up_to(Dfa const& m, std::size_t max_length) {
  auto dist = m.distance_to_accept();
  std::vector<SymbolWord> out;
  if (dist[m.start()] == no_state || dist[m.start()] > max_length) {
    return out;
  }
  std::vector<std::pair<SymbolWord, State>> level{{{}, m.start()}};
  for (std::size_t len = 0; !level.empty(); ++len) {
    std::vector<std::pair<SymbolWord, State>> next_level;
    for (auto& [w, q] : level) {
      if (m.accepting(q)) {
        out.push_back(w);
      }
      if (len == max_length) {
        continue;
      }
      for (Symbol a = 0; a < m.num_symbols(); ++a) {
        State t = m.next(q, a);
        if (dist[t] != no_state && dist[t] <= max_length - len - 1) {
          SymbolWord v = w;
          v.push_back(a);
          next_level.emplace_back(std::move(v), t);
        }
      }
    }
    level = std::move(next_level);
  }
  return out;
}

bool equivalent(Dfa const& a, Dfa const& b) {
  return product(a, b, Combine::difference).empty_language() &&
         product(b, a, Combine::difference).empty_language();
}

bool included(Dfa const& a, Dfa const& b) {
  return product(a, b, Combine::difference).empty_language();
}

std::size_t pumping_bound(Dfa const& m) {
  return minimize(m).num_states();
}

State find_sink(Dfa const& m) {
  for (State q = 0; q < m.num_states(); ++q) {
    if (m.accepting(q)) {
      continue;
    }
    bool loops = true;
    for (Symbol a = 0; a < m.num_symbols() && loops; ++a) {
      loops = m.next(q, a) == q;
    }
    if (loops) {
      return q;
    }
  }
  return no_state;
}

std::string to_dot(Dfa const& m, std::vector<std::string> const& symbol_names) {
  if (symbol_names.size() != m.num_symbols()) {
    throw Error("one name per symbol is required");
  }
  State sink = find_sink(m);
  std::ostringstream out;
  out << "digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n";
  for (State q = 0; q < m.num_states(); ++q) {
    if (q == sink) {
      continue;
    }
    out << "  q" << q << " [shape="
        << (m.accepting(q) ? "doublecircle" : "circle") << "];\n";
  }
  out << "  init -> q" << m.start() << ";\n";
  for (State q = 0; q < m.num_states(); ++q) {
    if (q == sink) {
      continue;
    }
    std::vector<std::pair<State, std::string>> edges;
    for (Symbol a = 0; a < m.num_symbols(); ++a) {
      State t = m.next(q, a);
      if (t == sink) {
        continue;
      }
      auto it = std::find_if(edges.begin(), edges.end(),
                             [&](auto const& e) { return e.first == t; });
      if (it == edges.end()) {
        edges.emplace_back(t, symbol_names[a]);
      } else {
        it->second += "," + symbol_names[a];
      }
    }
    for (auto const& [t, label] : edges) {
      out << "  q" << q << " -> q" << t << " [label=\"" << label << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace autostack::fsa
