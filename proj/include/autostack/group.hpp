// Group backends with solvable word problem and tables of Cayley balls.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autostack/words.hpp"

namespace autostack {

/// Canonical backend coordinates of a group element.
struct Element {
  std::vector<std::int64_t> coords;
  std::uint32_t finite = 0;

  friend auto operator<=>(Element const&, Element const&) = default;
  friend bool operator==(Element const&, Element const&) = default;
};

struct ElementHash {
  std::size_t operator()(Element const& e) const;
};

std::string to_string(Element const& e);

enum class GroupKind { free_abelian, monomial, finite_table };

std::string_view to_string(GroupKind kind);
GroupKind parse_group_kind(std::string_view name);

/// A group together with an alphabet mapped into it.
///
/// Monomial backends are Z^n extended by a finite group of signed
/// permutations, elements (v, s) with (v1, s1)(v2, s2) = (v1 + s1 v2, s1 s2).
/// A signed permutation is written as a list p of length n with e_j sent to
/// sign(p[j]) e_{|p[j]|-1}. The first listed permutation must be the
/// identity and the list must be closed under composition.
class GroupSpec {
 public:
  GroupSpec() = default;

  static GroupSpec free_abelian(Alphabet alphabet,
                                std::size_t rank,
                                std::vector<std::vector<std::int64_t>> gens);
  static GroupSpec monomial(Alphabet alphabet,
                            std::size_t rank,
                            std::vector<std::vector<int>> action,
                            std::vector<Element> gens);
  static GroupSpec finite_table(Alphabet alphabet,
                                std::vector<std::vector<std::uint32_t>> table,
                                std::vector<std::uint32_t> gens);

  GroupKind kind() const noexcept { return kind_; }
  std::size_t rank() const noexcept { return rank_; }
  Alphabet const& alphabet() const noexcept { return alphabet_; }
  std::vector<std::vector<int>> const& action() const noexcept {
    return action_;
  }
  std::vector<std::vector<std::uint32_t>> const& table() const noexcept {
    return table_;
  }
  Element const& generator(Letter a) const { return gens_.at(a); }

  Element identity() const;
  Element multiply(Element const& x, Element const& y) const;
  Element inverse(Element const& x) const;
  Element times_letter(Element const& x, Letter a) const {
    return multiply(x, gens_[a]);
  }
  Element evaluate(Word const& w) const;

 private:
  void validate();
  std::vector<std::int64_t> act(std::uint32_t s,
                                std::vector<std::int64_t> const& v) const;

  GroupKind kind_ = GroupKind::free_abelian;
  std::size_t rank_ = 0;
  Alphabet alphabet_;
  std::vector<std::vector<int>> action_;
  std::vector<std::vector<std::uint32_t>> table_;  // finite composition
  std::vector<std::uint32_t> finite_inverse_;
  std::uint32_t finite_identity_ = 0;
  std::vector<Element> gens_;
};

/// Elements of word length at most `radius`, with their geodesic length and
/// order-least geodesic normal form, indexed in breadth-first order with
/// each sphere sorted by normal form.
class Ball {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Ball(GroupSpec spec,
       std::size_t radius,
       Order order,
       std::size_t entry_limit = 1'000'000);

  GroupSpec const& spec() const noexcept { return spec_; }
  Alphabet const& alphabet() const noexcept { return spec_.alphabet(); }
  std::size_t radius() const noexcept { return radius_; }
  Order order() const noexcept { return order_; }
  std::size_t size() const noexcept { return elements_.size(); }

  std::size_t find(Element const& g) const;
  bool contains(Element const& g) const { return find(g) != npos; }
  /// Index of `g`; throws when it lies outside the ball.
  std::size_t index(Element const& g) const;

  Element const& element(std::size_t i) const { return elements_.at(i); }
  std::size_t length(std::size_t i) const { return lengths_.at(i); }
  Word const& nf(std::size_t i) const { return nfs_.at(i); }
  std::size_t length(Element const& g) const { return lengths_[index(g)]; }
  Word const& nf(Element const& g) const { return nfs_[index(g)]; }

  /// Index of element(i)·a, or npos outside the ball.
  std::size_t neighbour(std::size_t i, Letter a) const {
    return neighbours_[i * alphabet().size() + a];
  }
  /// Index range of the sphere of radius n.
  std::pair<std::size_t, std::size_t> sphere(std::size_t n) const;

  /// Index of the element represented by `w`, or npos.
  std::size_t find_word(Word const& w) const;

 private:
  GroupSpec spec_;
  std::size_t radius_;
  Order order_;
  std::vector<Element> elements_;
  std::vector<std::size_t> lengths_;
  std::vector<Word> nfs_;
  std::vector<std::size_t> sphere_start_;
  std::vector<std::size_t> neighbours_;
  std::vector<std::pair<Element, std::size_t>> sorted_;  // lookup table
};

std::size_t geodesic_length(Ball const& ball, Element const& g);
Word const& nf_of(Ball const& ball, Element const& g);

/// Maximum over n of the distance between the length-n prefixes.
std::size_t fellow_travel_distance(Ball const& ball, Word const& u, Word const& v);

bool is_geodesic(Ball const& ball, Word const& w);

}  // namespace autostack
