// Synchronously regular languages of word pairs and triples.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "autostack/fsa.hpp"
#include "autostack/words.hpp"

namespace autostack {

/// Product alphabet of arity 2 or 3 where each coordinate also has a padding
/// symbol. A symbol is encoded as the mixed-radix number of its components,
/// component `i` ranging over `0..base(i).size()` with the top value standing
/// for the pad. The all-pad tuple would be the largest code and is excluded.
class PaddedAlphabet {
 public:
  PaddedAlphabet() = default;
  explicit PaddedAlphabet(std::vector<Alphabet> bases);

  std::size_t arity() const noexcept { return bases_.size(); }
  Alphabet const& base(std::size_t i) const { return bases_.at(i); }
  std::size_t num_symbols() const noexcept { return num_symbols_; }

  /// Component values: a letter, or `pad(i)`.
  unsigned pad(std::size_t i) const { return unsigned(bases_.at(i).size()); }
  unsigned component(fsa::Symbol s, std::size_t i) const {
    return (s / radix_[i]) % (unsigned(bases_[i].size()) + 1);
  }
  bool is_pad(fsa::Symbol s, std::size_t i) const {
    return component(s, i) == pad(i);
  }
  fsa::Symbol encode(std::vector<unsigned> const& components) const;
  std::vector<unsigned> decode(fsa::Symbol s) const;

  std::string symbol_name(fsa::Symbol s) const;
  std::vector<std::string> symbol_names() const;

  /// Pads shorter words at the end.
  fsa::SymbolWord pad_words(std::vector<Word> const& words) const;
  /// Inverse of `pad_words`; throws on ill-padded input.
  std::vector<Word> unpad(fsa::SymbolWord const& sequence) const;

  /// Sequences in which every coordinate's pads form a suffix.
  fsa::Dfa well_padded() const;

  /// Language of sequences whose `coordinate` (unpadded) lies in `x`.
  fsa::Dfa lift(std::size_t coordinate, fsa::Dfa const& x) const;

  friend bool operator==(PaddedAlphabet const&, PaddedAlphabet const&) =
      default;

 private:
  std::vector<Alphabet> bases_;
  std::vector<unsigned> radix_;
  std::size_t num_symbols_ = 0;
};

/// A regular set of padded tuples. The machine is always intersected with
/// the well-padding filter and minimized.
class SyncLanguage {
 public:
  SyncLanguage() = default;
  SyncLanguage(PaddedAlphabet alphabet, fsa::Dfa const& machine);

  static SyncLanguage from_tuples(PaddedAlphabet alphabet,
                                  std::vector<std::vector<Word>> const& tuples);
  static SyncLanguage universe(PaddedAlphabet alphabet);
  static SyncLanguage empty(PaddedAlphabet alphabet);

  PaddedAlphabet const& alphabet() const noexcept { return alphabet_; }
  fsa::Dfa const& machine() const noexcept { return machine_; }

  bool accepts(std::vector<Word> const& tuple) const;
  /// Accepted tuples whose padded length is at most `max_length`, in the
  /// shortlex order of their symbol sequences.
  std::vector<std::vector<Word>> enumerate(std::size_t max_length) const;

 private:
  PaddedAlphabet alphabet_;
  fsa::Dfa machine_;
};

SyncLanguage diagonal_star(Alphabet const& a);
/// Pairs (w, w) with w in `x`.
SyncLanguage diagonal(Alphabet const& a, fsa::Dfa const& x);

/// Coordinate-wise concatenation of unpadded tuples, padded afterwards.
/// Throws when the result needs more than `max_lag` buffered letters in
/// some coordinate, which happens when the result is not synchronous.
SyncLanguage sync_concat(SyncLanguage const& l,
                         SyncLanguage const& k,
                         std::size_t max_lag = 64);

fsa::Dfa project(SyncLanguage const& l, std::size_t coordinate);

SyncLanguage coordinate_restrict(SyncLanguage const& l,
                                 std::size_t coordinate,
                                 fsa::Dfa const& x);

SyncLanguage unite(SyncLanguage const& l, SyncLanguage const& k);
SyncLanguage intersect(SyncLanguage const& l, SyncLanguage const& k);
SyncLanguage difference(SyncLanguage const& l, SyncLanguage const& k);
bool equivalent(SyncLanguage const& l, SyncLanguage const& k);

/// Dfa over letters accepting every word of the alphabet.
fsa::Dfa all_words(Alphabet const& a);
/// Dfa accepting a single word.
fsa::Dfa single_word(Alphabet const& a, Word const& w);
/// Dfa over letters from a list of words.
fsa::Dfa word_set(Alphabet const& a, std::vector<Word> const& words);
/// Words of L followed by one letter.
fsa::Dfa append_letter(Alphabet const& a, fsa::Dfa const& l);

}  // namespace autostack
