// Falsification by fellow traveller: constant search, witnesses, and the
// witness automaton with its refinement into a property-L rewriting system.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "autostack/group.hpp"
#include "autostack/synclang.hpp"

namespace autostack {

struct FftpReport {
  std::size_t max_k = 0;
  std::size_t max_len = 0;
  /// Least constant that works for every word up to `max_len`, if one does
  /// not exceed `max_k`.
  std::optional<std::size_t> k;
  /// For each failing constant c, a shortlex-least non-geodesic word with no
  /// c-fellow-travelling shorter representative.
  std::vector<std::pair<std::size_t, Word>> counterexamples;
  std::size_t words_checked = 0;
  std::size_t non_geodesic = 0;

  bool verified() const { return k.has_value(); }
};

/// Exhaustive search over all words of length at most `max_len`. Needs a
/// ball of radius at least max(max_len, max_k).
FftpReport fftp_search(Ball const& ball, std::size_t max_k, std::size_t max_len);

/// Shortest, then order-least, v with |v| < |u|, v = u and u, v k-fellow
/// travelling. Throws when u is geodesic.
std::optional<Word> witness(Ball const& ball, Word const& u, std::size_t k);

/// A v = u, v < u in the ball's order, 2k-fellow travelling u, built by
/// splitting u at its longest common suffix with its normal form. Throws
/// when u is already normal or k fails for an intermediate word.
Word split_witness(Ball const& ball, Word const& u, std::size_t k);

/// The automaton accepting padded pairs (u, v) with u = v, v < u and u, v
/// 4k-fellow travelling.
struct WitnessAutomaton {
  std::size_t k = 0;
  Order order = Order::srev;
  /// Complete machine before minimization. For srev its states are the
  /// elements of B(4k) (plain, then padded), followed by the state entered on
  /// a decisive decrease and the fail state.
  fsa::Dfa raw;
  SyncLanguage language;
};

/// Needs a ball of radius at least 4k + 2.
WitnessAutomaton build_witness_automaton(Ball const& ball, std::size_t k);

/// Every pair with |u| <= max_len, u = v, v < u in the ball's order and
/// fellow-travelling distance at most `bound`, sorted.
std::vector<std::pair<Word, Word>> bruteforce_L(Ball const& ball,
                                                std::size_t bound,
                                                std::size_t max_len);

/// Restricts left sides to (normal form)·(letter), the normal forms being
/// the words that are no left side.
SyncLanguage to_Lprime(SyncLanguage const& l);

/// Keeps, for each left side, only the right sides of greatest length
/// deficit and then least last letter (the empty word first).
SyncLanguage to_Lpp(SyncLanguage const& lprime);

/// Pairs whose second coordinate is exactly `pads` letters shorter.
fsa::Dfa length_deficit(PaddedAlphabet const& p, std::size_t pads);

}  // namespace autostack
