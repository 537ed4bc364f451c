// Deterministic and nondeterministic finite automata over dense symbol sets.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "autostack/words.hpp"

namespace autostack::fsa {

using State = std::uint32_t;
using Symbol = std::uint32_t;
using SymbolWord = std::vector<Symbol>;

inline constexpr State no_state = static_cast<State>(-1);

/// Complete deterministic automaton. Symbols are `0..num_symbols()-1`.
class Dfa {
 public:
  Dfa() = default;
  Dfa(std::size_t num_symbols,
      State start,
      std::vector<bool> accepting,
      std::vector<State> table);

  /// One non-accepting sink.
  static Dfa empty(std::size_t num_symbols);
  /// Accepts every word.
  static Dfa universal(std::size_t num_symbols);
  /// Accepts exactly the given words (minimized).
  static Dfa from_words(std::size_t num_symbols,
                        std::vector<SymbolWord> const& words);

  std::size_t num_symbols() const noexcept { return num_symbols_; }
  std::size_t num_states() const noexcept { return accepting_.size(); }
  State start() const noexcept { return start_; }
  bool accepting(State q) const { return accepting_[q]; }
  std::vector<bool> const& accepting_states() const { return accepting_; }
  State next(State q, Symbol a) const {
    return table_[static_cast<std::size_t>(q) * num_symbols_ + a];
  }
  std::vector<State> const& table() const noexcept { return table_; }

  State run(State from, std::span<Symbol const> w) const;
  bool accepts(std::span<Symbol const> w) const;

  Dfa with_start(State q) const;
  Dfa with_accepting(std::vector<bool> accepting) const;

  /// Minimum number of symbols needed to reach an accepting state from each
  /// state; `no_state` where none is reachable.
  std::vector<State> distance_to_accept() const;
  std::vector<bool> reachable() const;
  bool empty_language() const;

 private:
  std::size_t num_symbols_ = 0;
  State start_ = 0;
  std::vector<bool> accepting_;
  std::vector<State> table_;
};

/// Nondeterministic automaton with epsilon moves.
class Nfa {
 public:
  explicit Nfa(std::size_t num_symbols) : num_symbols_(num_symbols) {}

  static Nfa from_dfa(Dfa const& m);

  State add_state(bool accepting = false);
  void add_transition(State from, Symbol a, State to);
  void add_epsilon(State from, State to);
  void add_start(State q) { starts_.push_back(q); }
  void set_accepting(State q, bool value = true) { accepting_[q] = value; }

  std::size_t num_symbols() const noexcept { return num_symbols_; }
  std::size_t num_states() const noexcept { return accepting_.size(); }
  std::vector<State> const& starts() const noexcept { return starts_; }
  bool accepting(State q) const { return accepting_[q]; }
  auto const& transitions(State q) const { return out_[q]; }
  auto const& epsilons(State q) const { return eps_[q]; }

  bool accepts(std::span<Symbol const> w) const;

 private:
  std::size_t num_symbols_;
  std::vector<State> starts_;
  std::vector<bool> accepting_;
  std::vector<std::vector<std::pair<Symbol, State>>> out_;
  std::vector<std::vector<State>> eps_;
};

Dfa determinize(Nfa const& m);
/// Minimal complete automaton with states numbered in breadth-first order
/// from the start, so equal languages give identical tables.
Dfa minimize(Dfa const& m);
Dfa determinize_minimize(Nfa const& m);
inline Dfa determinize_minimize(Dfa const& m) { return minimize(m); }

enum class Combine { union_, intersect, complement, concat, star, difference };

/// Rational and boolean operations; `m2` is ignored for complement and star.
Dfa combine(Combine kind, Dfa const& m1, Dfa const& m2);
Dfa combine(Combine kind, Dfa const& m1);

inline Dfa unite(Dfa const& a, Dfa const& b) {
  return combine(Combine::union_, a, b);
}
inline Dfa intersect(Dfa const& a, Dfa const& b) {
  return combine(Combine::intersect, a, b);
}
inline Dfa difference(Dfa const& a, Dfa const& b) {
  return combine(Combine::difference, a, b);
}
inline Dfa complement(Dfa const& a) { return combine(Combine::complement, a); }
inline Dfa concatenate(Dfa const& a, Dfa const& b) {
  return combine(Combine::concat, a, b);
}
inline Dfa star(Dfa const& a) { return combine(Combine::star, a); }

/// { w | exists s in L(s) with ws in L(p) }.
Dfa right_quotient(Dfa const& p, Dfa const& s);

/// Accepted words of length at most `max_length`, in shortlex order.
std::vector<SymbolWord> enumerate_up_to(Dfa const& m, std::size_t max_length);

bool equivalent(Dfa const& a, Dfa const& b);
/// `a` is a subset of `b`.
bool included(Dfa const& a, Dfa const& b);

/// State count of the minimal automaton.
std::size_t pumping_bound(Dfa const& m);

/// Index of a non-accepting state whose transitions all loop, if any.
State find_sink(Dfa const& m);

std::string to_dot(Dfa const& m, std::vector<std::string> const& symbol_names);

}  // namespace autostack::fsa
