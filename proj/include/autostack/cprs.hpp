// Convergent prefix-rewriting systems: rewriting, verification, the bounded
// system construction, flow functions and almost-convexity paths.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autostack/group.hpp"
#include "autostack/synclang.hpp"

namespace autostack {

/// Rewriting rules (left, right) over one alphabet, with the order that
/// ranks the expected normal forms.
struct Cprs {
  SyncLanguage rules;
  Order order = Order::srev;

  Cprs() = default;
  Cprs(SyncLanguage rules, Order order);

  Alphabet const& alphabet() const { return rules.alphabet().base(0); }
};

struct RewriteStep {
  std::size_t prefix_length = 0;
  Word left;
  Word right;
  Word result;
};

struct RewriteTrace {
  Word start;
  std::vector<RewriteStep> steps;
};

/// Leftmost-shortest-prefix rewriting with the srev-least right side.
class Rewriter {
 public:
  /// `window` bounds how much longer than the left side a right side may be;
  /// zero means the number of states of the rule automaton, beyond which
  /// the shortest right side never lies.
  explicit Rewriter(Cprs system, std::size_t window = 0);

  Cprs const& system() const noexcept { return system_; }

  /// Length of the shortest reducible prefix and its chosen right side.
  std::optional<std::pair<std::size_t, Word>> reducible_prefix(
      Word const& w) const;
  bool irreducible(Word const& w) const;

  /// srev-least right side of a rule with the given left side.
  std::optional<Word> right_side(Word const& left) const;

  /// One step; returns `w` unchanged when it is irreducible.
  Word rewrite_once(Word const& w) const;

  /// Throws when the step limit is reached or a word repeats.
  Word normal_form(Word const& w,
                   std::size_t step_limit,
                   RewriteTrace* trace = nullptr) const;

 private:
  Cprs system_;
  fsa::Dfa left_sides_;
  std::size_t window_;
  mutable std::map<Word, std::optional<Word>> cache_;
};

enum class Check { convergent, weight_nonincreasing, property_L, normal_forms_match };

std::string_view to_string(Check c);
Check parse_check(std::string_view name);
std::vector<Check> all_checks();

struct CheckResult {
  Check check = Check::convergent;
  std::size_t bound = 0;
  bool pass = true;
  std::size_t examined = 0;
  std::size_t failures = 0;
  /// The first few failures, formatted.
  std::vector<std::string> violations;
};

struct VerifyReport {
  std::vector<CheckResult> results;
  bool pass() const;
};

/// Exhaustive checks over all words, or enumerated rules, up to `max_len`.
/// The ball must have radius at least `max_len`.
VerifyReport verify_cprs(Cprs const& r,
                         Ball const& ball,
                         std::size_t max_len,
                         std::vector<Check> const& checks);

/// Pairs whose left side is a normal form followed by one letter.
Cprs restrict_min_reducible(Cprs const& r);

/// Words x with wt(x without its last letter) < n <= wt(x).
fsa::Dfa weight_threshold(Alphabet const& a, Weight const& n);

enum class SuffixRoute {
  /// One quotient of the rules per suffix pair (u2 l, v2).
  by_pair,
  /// One pass over the rule automaton: the suffix pairs that can follow a
  /// given state all share the same element difference.
  by_state,
};

struct TheoremAOptions {
  /// Replaces the state count of the rule automaton as the constant k.
  std::optional<std::size_t> k;
  SuffixRoute route = SuffixRoute::by_pair;
  /// Largest left-side length enumerated when checking that the input never
  /// increases weight.
  std::size_t weight_check_length = 6;
};

struct TheoremAReport {
  std::size_t k = 0;
  std::size_t automaton_states = 0;
  bool k_overridden = false;
  Weight n;
  std::size_t s1_rules = 0;
  std::size_t s2_classes = 0;
  std::size_t suffix_pairs = 0;
  std::vector<Word> middle_words;
  std::size_t longest_middle = 0;
  /// Largest |v2| - |u2 l| over all suffix pairs.
  long longest_overhang = 0;
  std::size_t rules_states = 0;
};

/// Smallest ball radius the construction accepts for constant k.
std::size_t theorem_a_radius(Alphabet const& a, std::size_t k);

/// Builds S = S1 ∪ S2 from a system whose left sides are minimally
/// reducible. Needs a ball that holds every word of weight below n plus
/// one letter.
std::pair<Cprs, TheoremAReport> theorem_a_construct(
    Cprs const& rprime,
    Ball const& ball,
    TheoremAOptions const& options = {});

struct BoundednessProfile {
  /// constants[n]: the constant over pairs of padded length at most n.
  std::vector<std::size_t> constants;
  std::size_t constant() const { return constants.back(); }
  /// Whether the constant still rose at the last length.
  bool grows() const;
};

/// Largest |l'| + |r'| after stripping common prefixes, over pairs of
/// padded length up to `max_len`.
BoundednessProfile boundedness_constant(Cprs const& s, std::size_t max_len);

struct FlowEntry {
  std::size_t element = 0;
  Letter letter = 0;
  Word label;
  bool fixed = false;
};

/// Replacement paths for every directed edge with both ends in the ball,
/// together with the normal forms used.
struct FlowTable {
  Ball const* ball = nullptr;
  std::vector<Word> normal_forms;
  std::vector<FlowEntry> entries;
  std::size_t bound = 0;

  /// Entry of edge (element, letter), or null.
  FlowEntry const* find(std::size_t element, Letter a) const;
  FlowEntry* find(std::size_t element, Letter a);
};

FlowTable flow_function(Rewriter const& s, Ball const& ball);

struct GeoReport {
  std::size_t edges = 0;
  std::size_t moved = 0;
  std::size_t skipped = 0;
  std::size_t alpha_violations = 0;
  std::size_t endpoint_violations = 0;
  std::size_t fixed_violations = 0;
  std::size_t bound_violations = 0;
  std::size_t normal_form_violations = 0;
  std::vector<std::string> violations;

  bool pass() const;
};

GeoReport verify_geodesic_autostackable(FlowTable const& ft, Ball const& ball);

struct ConvexPath {
  Word label;
  std::size_t bound = 0;
  /// Letters entering each segment of the rewriting chains.
  std::vector<Letter> chain;
};

/// A path from g to h (ball indices) inside B(n), for g, h on the sphere of
/// radius n at distance at most 2. `k` is the constant of the bounded
/// system. Throws when a precondition or the length bound fails, when the
/// path leaves B(n), or when a chain letter repeats.
ConvexPath almost_convex_path(Rewriter const& s,
                              Ball const& ball,
                              std::size_t g,
                              std::size_t h,
                              std::size_t n,
                              std::size_t k);

}  // namespace autostack
