#include <doctest.h>

#include <random>
#include <set>

#include "autostack/synclang.hpp"

using namespace autostack;

namespace {

Alphabet ab() { return Alphabet({"a", "b"}, {"a", "b"}, {"a", "b"}); }

using Tuple = std::vector<Word>;

Word random_word(std::mt19937& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, 1);
  Word w(len(rng));
  for (auto& x : w) {
    x = Letter(pick(rng));
  }
  return w;
}

std::vector<Tuple> random_tuples(std::mt19937& rng,
                                 std::size_t arity,
                                 std::size_t count) {
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < count; ++i) {
    Tuple t;
    for (std::size_t j = 0; j < arity; ++j) {
      t.push_back(random_word(rng, 3));
    }
    out.push_back(t);
  }
  return out;
}

std::set<Tuple> as_set(std::vector<Tuple> const& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("padding") {
  PaddedAlphabet p({ab(), ab()});
  CHECK(p.num_symbols() == 8);
  auto seq = p.pad_words({ab().parse("ab"), ab().parse("a")});
  REQUIRE(seq.size() == 2);
  CHECK(p.symbol_name(seq[0]) == "(a,a)");
  CHECK(p.symbol_name(seq[1]) == "(b,$)");
  CHECK(p.pad_words({Word{}, Word{}}).empty());
  CHECK_THROWS_AS(p.unpad({p.encode({2, 0}), p.encode({0, 0})}), Error);
  CHECK_THROWS_AS(p.encode({2, 2}), Error);
}

TEST_CASE("pad and unpad round trip") {
  std::mt19937 rng(3);
  PaddedAlphabet p2({ab(), ab()});
  PaddedAlphabet p3({ab(), ab(), ab()});
  for (int trial = 0; trial < 300; ++trial) {
    Tuple t{random_word(rng, 6), random_word(rng, 6)};
    CHECK(p2.unpad(p2.pad_words(t)) == t);
    t.push_back(random_word(rng, 6));
    CHECK(p3.unpad(p3.pad_words(t)) == t);
  }
}

TEST_CASE("diagonal") {
  auto a = ab();
  auto d = diagonal_star(a);
  CHECK(d.accepts({a.parse("ab"), a.parse("ab")}));
  CHECK_FALSE(d.accepts({a.parse("ab"), a.parse("ba")}));
  CHECK(d.accepts({Word{}, Word{}}));
  CHECK(fsa::equivalent(project(d, 0), all_words(a)));
  CHECK(fsa::equivalent(project(d, 1), all_words(a)));
}

TEST_CASE("concatenation moves padding to the end") {
  auto a = ab();
  PaddedAlphabet p({a, a});
  auto l = SyncLanguage::from_tuples(p, {{a.parse("a"), Word{}}});
  auto k = SyncLanguage::from_tuples(p, {{Word{}, a.parse("b")}});
  auto lk = sync_concat(l, k);
  CHECK(lk.machine().accepts(fsa::SymbolWord{p.encode({0, 1})}));
  CHECK_FALSE(lk.machine().accepts(
      fsa::SymbolWord{p.encode({0, 2}), p.encode({2, 1})}));
  CHECK(lk.enumerate(4) == std::vector<Tuple>{{a.parse("a"), a.parse("b")}});
  auto one = SyncLanguage::from_tuples(p, {{Word{}, Word{}}});
  auto d = diagonal_star(a);
  CHECK(equivalent(sync_concat(one, d), d));
  CHECK(equivalent(sync_concat(d, one), d));
}

TEST_CASE("concatenation that is not synchronous is refused") {
  auto a = ab();
  PaddedAlphabet p({a, a});
  // (a^n, lambda) followed by the diagonal of b*.
  fsa::Dfa astar(2, 0, {true, false}, {0, 1, 1, 1});
  auto l = coordinate_restrict(
      coordinate_restrict(SyncLanguage::universe(p), 0, astar), 1,
      single_word(a, Word{}));
  fsa::Dfa bstar(2, 0, {true, false}, {1, 0, 1, 1});
  auto k = diagonal(a, bstar);
  CHECK_THROWS_AS(sync_concat(l, k, 16), Error);
}

TEST_CASE("concatenation of finite languages against brute force") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 250; ++trial) {
    std::size_t arity = trial % 5 == 0 ? 3 : 2;
    std::vector<Alphabet> bases(arity, ab());
    PaddedAlphabet p(bases);
    auto ls = random_tuples(rng, arity, 1 + trial % 4);
    auto ks = random_tuples(rng, arity, 1 + (trial / 4) % 4);
    std::vector<Tuple> want;
    for (auto const& u : ls) {
      for (auto const& v : ks) {
        Tuple t;
        for (std::size_t i = 0; i < arity; ++i) {
          t.push_back(concat(u[i], v[i]));
        }
        want.push_back(t);
      }
    }
    auto got = sync_concat(SyncLanguage::from_tuples(p, ls),
                           SyncLanguage::from_tuples(p, ks));
    CHECK(as_set(got.enumerate(6)) == as_set(want));
    CHECK(equivalent(got, SyncLanguage::from_tuples(p, want)));
    CHECK(fsa::equivalent(fsa::intersect(got.machine(), p.well_padded()),
                          got.machine()));
  }
}

TEST_CASE("concatenation is associative") {
  std::mt19937 rng(9);
  PaddedAlphabet p({ab(), ab()});
  for (int trial = 0; trial < 50; ++trial) {
    auto x = SyncLanguage::from_tuples(p, random_tuples(rng, 2, 3));
    auto y = SyncLanguage::from_tuples(p, random_tuples(rng, 2, 3));
    auto z = SyncLanguage::from_tuples(p, random_tuples(rng, 2, 3));
    CHECK(equivalent(sync_concat(sync_concat(x, y), z),
                     sync_concat(x, sync_concat(y, z))));
  }
  // Infinite operands: the diagonal star is idempotent.
  auto d = diagonal_star(ab());
  CHECK(equivalent(sync_concat(d, d), d));
}

TEST_CASE("projection and restriction") {
  auto a = ab();
  PaddedAlphabet p({a, a});
  auto l = SyncLanguage::from_tuples(
      p, {{a.parse("ab"), a.parse("a")}, {a.parse("b"), a.parse("bba")}});
  CHECK(fsa::equivalent(project(l, 0),
                        word_set(a, {a.parse("ab"), a.parse("b")})));
  CHECK(fsa::equivalent(project(l, 1),
                        word_set(a, {a.parse("a"), a.parse("bba")})));
  CHECK_THROWS_AS(project(l, 2), Error);
  // Second coordinate ending in a keeps both pairs; ending in b none.
  auto ends_a = fsa::concatenate(all_words(a), single_word(a, a.parse("a")));
  auto ends_b = fsa::concatenate(all_words(a), single_word(a, a.parse("b")));
  CHECK(equivalent(coordinate_restrict(l, 1, ends_a), l));
  CHECK(coordinate_restrict(l, 1, ends_b).enumerate(5).empty());
  CHECK(equivalent(coordinate_restrict(l, 0, all_words(a)), l));
}

TEST_CASE("projection of a diagonal embedding is the identity") {
  std::mt19937 rng(21);
  auto a = ab();
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<fsa::State> target(0, 3);
    std::vector<fsa::State> table(8);
    for (auto& t : table) {
      t = target(rng);
    }
    std::vector<bool> acc{bool(trial & 1), bool(trial & 2), bool(trial & 4),
                          bool(trial & 8)};
    fsa::Dfa x(2, 0, acc, table);
    auto d = diagonal(a, x);
    CHECK(fsa::equivalent(project(d, 0), x));
    CHECK(fsa::equivalent(project(d, 1), x));
    for (auto const& t : d.enumerate(6)) {
      CHECK(t[0] == t[1]);
    }
  }
}
