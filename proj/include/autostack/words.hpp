// Letters, words and the orders and weights defined on them.
#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace autostack {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Letter = std::uint16_t;
using Word = std::vector<Letter>;
using Weight = boost::rational<std::int64_t>;

enum class Order { srev, shortlex };

Order parse_order(std::string_view name);
std::string_view to_string(Order order);

/// A finite inverse-closed alphabet with a total order and positive weights.
///
/// Letters are dense indices `0..size()-1`. The involution is declared by the
/// user and is formal: two letters that happen to be equal in some group are
/// still distinct letters unless declared to be mutually inverse.
class Alphabet {
 public:
  Alphabet() = default;

  /// `inverse[i]` names the inverse of `names[i]`; `order` lists every letter
  /// from least to greatest; `weights` may be empty (all weights one).
  Alphabet(std::vector<std::string> names,
           std::vector<std::string> const& inverse,
           std::vector<std::string> const& order,
           std::vector<Weight> weights = {});

  /// Letters are ordered as listed and every weight is one.
  static Alphabet with_pairs(
      std::vector<std::pair<std::string, std::string>> const& pairs);

  std::size_t size() const noexcept { return names_.size(); }
  std::string const& name(Letter a) const { return names_.at(a); }
  Letter inverse(Letter a) const { return inverse_.at(a); }
  std::size_t rank(Letter a) const { return rank_.at(a); }
  bool precedes(Letter a, Letter b) const { return rank(a) < rank(b); }
  Weight const& weight(Letter a) const { return weights_.at(a); }
  Weight max_weight() const;
  Weight min_weight() const;
  bool unit_weights() const;

  /// Letters sorted from least to greatest.
  std::vector<Letter> ordered() const;

  Letter letter(std::string_view name) const;
  bool contains(std::string_view name) const;

  /// Words are written as space separated letter names, or as a run of
  /// letter names matched greedily (longest name first). "" and "1" denote
  /// the empty word.
  Word parse(std::string_view text) const;
  std::string format(Word const& w) const;

  void check(Word const& w) const;

  std::vector<std::string> const& names() const noexcept { return names_; }

  friend bool operator==(Alphabet const&, Alphabet const&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Letter> inverse_;
  std::vector<std::size_t> rank_;
  std::vector<Weight> weights_;
};

Word invert_word(Alphabet const& alphabet, Word const& w);
Word free_reduce(Alphabet const& alphabet, Word const& w);

/// Short reverse lexicographic (`srev`) or shortlex comparison.
std::strong_ordering compare(Alphabet const& alphabet,
                             Word const& u,
                             Word const& v,
                             Order order);

inline bool less(Alphabet const& alphabet,
                 Word const& u,
                 Word const& v,
                 Order order) {
  return compare(alphabet, u, v, order) < 0;
}

Weight word_weight(Alphabet const& alphabet, Word const& w);

Word concat(Word u, Word const& v);
Word prefix(Word const& w, std::size_t n);
Word suffix_from(Word const& w, std::size_t n);
std::size_t common_prefix_length(Word const& u, Word const& v);

/// Number-like text for a weight: "3" or "3/2".
std::string to_string(Weight const& w);
Weight parse_weight(std::string_view text);

}  // namespace autostack
