#include <doctest.h>

#include <map>
#include <random>

#include "autostack/fixtures.hpp"

using namespace autostack;

namespace {

std::vector<Word> words_up_to(std::size_t letters, std::size_t max_len) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) {
      continue;
    }
    for (Letter a = 0; a < letters; ++a) {
      Word w = out[i];
      w.push_back(a);
      out.push_back(w);
    }
  }
  return out;
}

// Least geodesic of every element reached by words of length <= r.
std::map<Element, Word> brute_nf(GroupSpec const& g, std::size_t r, Order o) {
  std::map<Element, Word> best;
  for (auto const& w : words_up_to(g.alphabet().size(), r)) {
    Element e = g.evaluate(w);
    auto it = best.find(e);
    if (it == best.end()) {
      best.emplace(e, w);
    } else if (less(g.alphabet(), w, it->second, o)) {
      it->second = w;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("evaluation in the swap extension") {
  auto g = fixtures::z2_by_swap();
  auto const& a = g.alphabet();
  CHECK(g.evaluate(a.parse("tat")) == Element{{0, 1}, 0});
  CHECK(g.evaluate(a.parse("tt")) == g.identity());
  CHECK(g.evaluate(a.parse("tT")) == g.identity());
  CHECK(g.evaluate(a.parse("atat")) == Element{{1, 1}, 0});
  // Relators: [a,b], t^2, tat b^-1.
  Word b = a.parse("tat"), bi = a.parse("tAt");
  Word comm = concat(concat(concat(a.parse("a"), b), a.parse("A")), bi);
  CHECK(g.evaluate(comm) == g.identity());
  CHECK(g.evaluate(concat(b, bi)) == g.identity());
}

TEST_CASE("evaluation is a monoid morphism") {
  std::mt19937 rng(1);
  for (auto const& g : {fixtures::z2(), fixtures::z2_by_swap(),
                        fixtures::d_infinity(), fixtures::klein_four()}) {
    std::uniform_int_distribution<int> pick(0, int(g.alphabet().size()) - 1);
    std::uniform_int_distribution<int> len(0, 8);
    for (int trial = 0; trial < 200; ++trial) {
      Word u(len(rng)), v(len(rng));
      for (auto& x : u) x = Letter(pick(rng));
      for (auto& x : v) x = Letter(pick(rng));
      CHECK(g.evaluate(concat(u, v)) ==
            g.multiply(g.evaluate(u), g.evaluate(v)));
      CHECK(g.multiply(g.evaluate(u), g.inverse(g.evaluate(u))) ==
            g.identity());
      CHECK(g.evaluate(invert_word(g.alphabet(), u)) ==
            g.inverse(g.evaluate(u)));
    }
  }
}

TEST_CASE("backend validation") {
  Alphabet a({"p"}, {"p"}, {"p"});
  CHECK_THROWS_AS(GroupSpec::finite_table(a, {{0, 1}, {1, 1}}, {1}), Error);
  CHECK_THROWS_AS(
      GroupSpec::finite_table(a, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {1}),
      Error);  // p is declared an involution but has order 3
  Alphabet xy({"x", "X"}, {"X", "x"}, {"x", "X"});
  CHECK_THROWS_AS(GroupSpec::free_abelian(xy, 1, {{1}, {1}}), Error);
  CHECK_THROWS_AS(GroupSpec::monomial(xy, 2, {{1, 2}, {2, 1}, {-1, 2}},
                                      {Element{{1, 0}, 0}, Element{{-1, 0}, 0}}),
                  Error);  // not closed under composition
}

TEST_CASE("small balls") {
  Ball z(fixtures::z2(), 1, Order::srev);
  CHECK(z.size() == 5);
  Ball w(fixtures::z2_by_swap(), 1, Order::shortlex);
  CHECK(w.size() == 4);
  Ball z3(fixtures::z2(), 3, Order::srev);
  auto const& a = z3.alphabet();
  CHECK(a.format(z3.nf(Element{{1, 1}, 0})) == "yx");
  CHECK(a.format(z3.nf(Element{{2, 0}, 0})) == "xx");
  CHECK(z3.length(Element{{2, 0}, 0}) == 2);
  CHECK(z3.nf(z3.spec().identity()).empty());
  CHECK(z3.length(std::size_t(0)) == 0);
  CHECK_THROWS_AS(z3.nf(Element{{4, 0}, 0}), Error);
  Ball w4(fixtures::z2_by_swap(), 4, Order::shortlex);
  CHECK(w4.alphabet().format(w4.nf(Element{{0, 1}, 0})) == "tat");
}

TEST_CASE("balls agree with brute force") {
  for (auto const& g : {fixtures::z2(), fixtures::z2_by_swap(),
                        fixtures::d_infinity(), fixtures::klein_four()}) {
    for (Order o : {Order::srev, Order::shortlex}) {
      Ball ball(g, 4, o);
      auto want = brute_nf(g, 4, o);
      CHECK(ball.size() == want.size());
      for (auto const& [e, w] : want) {
        REQUIRE(ball.contains(e));
        CHECK(ball.nf(e) == w);
        CHECK(ball.length(e) == w.size());
      }
      // Prefix closure of normal forms.
      for (std::size_t i = 1; i < ball.size(); ++i) {
        Word const& w = ball.nf(i);
        Word head = prefix(w, w.size() - 1);
        Element up = g.times_letter(ball.element(i),
                                    g.alphabet().inverse(w.back()));
        CHECK(ball.nf(up) == head);
      }
    }
  }
}

TEST_CASE("fellow travelling and geodesics") {
  Ball z(fixtures::z2(), 6, Order::srev);
  auto const& a = z.alphabet();
  CHECK(fellow_travel_distance(z, a.parse("xy"), a.parse("xy")) == 0);
  CHECK(fellow_travel_distance(z, a.parse("xX"), Word{}) == 1);
  CHECK(fellow_travel_distance(z, a.parse("yxY"), a.parse("x")) == 2);
  CHECK(is_geodesic(z, Word{}));
  CHECK_FALSE(is_geodesic(z, a.parse("xyX")));
  Ball w(fixtures::z2_by_swap(), 4, Order::shortlex);
  auto const& b = w.alphabet();
  CHECK_FALSE(is_geodesic(w, b.parse("tT")));
  CHECK(is_geodesic(w, b.parse("ata")));
  CHECK_THROWS_AS(fellow_travel_distance(w, b.parse("aaaaa"), Word{}), Error);
}
