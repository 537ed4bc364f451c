#include "autostack/fixtures.hpp"

namespace autostack::fixtures {

GroupSpec z2() {
  Alphabet a({"x", "X", "y", "Y"}, {"X", "x", "Y", "y"}, {"x", "X", "y", "Y"});
  return GroupSpec::free_abelian(a, 2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
}

GroupSpec z2_by_swap() {
  Alphabet a({"a", "A", "t", "T"}, {"A", "a", "T", "t"}, {"a", "A", "t", "T"});
  return GroupSpec::monomial(a, 2, {{1, 2}, {2, 1}},
                             {Element{{1, 0}, 0}, Element{{-1, 0}, 0},
                              Element{{0, 0}, 1}, Element{{0, 0}, 1}});
}

GroupSpec d_infinity() {
  // s = (0; flip), t = (1; flip): st is the translation by -1.
  Alphabet a({"s", "t"}, {"s", "t"}, {"s", "t"});
  return GroupSpec::monomial(a, 1, {{1}, {-1}},
                             {Element{{0}, 1}, Element{{1}, 1}});
}

GroupSpec klein_four() {
  Alphabet a({"p", "q"}, {"p", "q"}, {"p", "q"});
  return GroupSpec::finite_table(
      a, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, {1, 2});
}

}  // namespace autostack::fixtures

namespace autostack::fixtures {

namespace {

struct Builder {
  Alphabet a = z2_by_swap().alphabet();
  PaddedAlphabet p{{a, a}};

  fsa::Dfa word(std::string_view w) const { return single_word(a, a.parse(w)); }
  fsa::Dfa star(std::string_view w) const { return fsa::star(word(w)); }
  fsa::Dfa plus(std::string_view w) const {
    return fsa::concatenate(word(w), star(w));
  }
  // a^i for every integer i.
  fsa::Dfa power() const { return fsa::unite(star("a"), star("A")); }
  // a^j for every non-zero j.
  fsa::Dfa nonzero() const { return fsa::unite(plus("a"), plus("A")); }

  SyncLanguage pair(std::string_view u, std::string_view v) const {
    return SyncLanguage::from_tuples(p, {{a.parse(u), a.parse(v)}});
  }
  SyncLanguage diag(fsa::Dfa const& x) const { return diagonal(a, x); }
};

SyncLanguage cat(SyncLanguage const& l, SyncLanguage const& k) {
  return sync_concat(l, k);
}

}  // namespace

Cprs z2_by_swap_rules() {
  Builder b;
  fsa::Dfa const pow = b.power();
  fsa::Dfa const pow_t = fsa::concatenate(pow, b.word("t"));
  fsa::Dfa const pow_t_j = fsa::concatenate(pow_t, b.nonzero());

  // a^i a^-sgn(i) -> a^(i - sgn(i))
  SyncLanguage cancel = unite(cat(b.diag(b.star("a")), b.pair("aA", "")),
                              cat(b.diag(b.star("A")), b.pair("Aa", "")));
  SyncLanguage f1 = cancel;
  // a^i t a^j a^-sgn(j) -> a^i t a^(j - sgn(j))
  SyncLanguage f2 = cat(b.diag(pow_t), cancel);
  // a^i t t -> a^i
  SyncLanguage f3 = cat(b.diag(pow), b.pair("tt", ""));
  // a^i t a^j t t -> a^i t a^j
  SyncLanguage f4 = cat(b.diag(pow_t_j), b.pair("tt", ""));
  // a^i t a^j t a^e -> a^(i+e) t a^j t, through (a^i, a^(i+e)).
  SyncLanguage up = unite(cat(b.diag(b.star("a")), b.pair("", "a")),
                          cat(b.diag(b.star("A")), b.pair("A", "")));
  SyncLanguage down = unite(cat(b.diag(b.star("A")), b.pair("", "A")),
                            cat(b.diag(b.star("a")), b.pair("a", "")));
  SyncLanguage middle = cat(cat(b.pair("t", "t"), b.diag(b.nonzero())),
                            b.pair("t", "t"));
  SyncLanguage f5 = unite(cat(cat(up, middle), b.pair("a", "")),
                          cat(cat(down, middle), b.pair("A", "")));
  // T is the letter t^-1 and equals t.
  SyncLanguage g1 = cat(b.diag(pow), b.pair("T", "t"));
  SyncLanguage g2 = cat(b.diag(pow), b.pair("tT", ""));
  SyncLanguage g3 = cat(b.diag(pow_t_j), b.pair("T", "t"));
  SyncLanguage g4 = cat(b.diag(pow_t_j), b.pair("tT", ""));

  SyncLanguage all = f1;
  for (auto const* l : {&f2, &f3, &f4, &f5, &g1, &g2, &g3, &g4}) {
    all = unite(all, *l);
  }
  return Cprs(all, Order::shortlex);
}

Cprs z2_by_swap_rules_direct() {
  Builder b;
  GroupSpec g = z2_by_swap();
  Ball ball(g, 4, Order::shortlex);
  // Normal form acceptor: (a* | A*) (t (a+ | A+) t?)?
  enum : fsa::State { start, pos, neg, t1, pos2, neg2, t2, out };
  Letter const a = 0, A = 1, t = 2;
  auto nf_next = [&](fsa::State s, Letter x) -> fsa::State {
    switch (s) {
      case start:
        return x == a ? pos : x == A ? neg : x == t ? t1 : out;
      case pos:
        return x == a ? pos : x == t ? t1 : out;
      case neg:
        return x == A ? neg : x == t ? t1 : out;
      case t1:
        return x == a ? pos2 : x == A ? neg2 : out;
      case pos2:
        return x == a ? pos2 : x == t ? t2 : out;
      case neg2:
        return x == A ? neg2 : x == t ? t2 : out;
      default:
        return out;
    }
  };
  // Configuration: u's acceptor state (out once u left N, which must be its
  // last letter), u ended, v's acceptor state, v ended, difference.
  struct Config {
    fsa::State u, v;
    bool u_end, v_end;
    std::size_t diff;
    auto operator<=>(Config const&) const = default;
  };
  std::map<Config, fsa::State> ids;
  std::vector<Config> configs;
  auto intern = [&](Config const& c) {
    auto [it, fresh] = ids.emplace(c, fsa::State(configs.size()));
    if (fresh) {
      configs.push_back(c);
    }
    return it->second;
  };
  intern({start, start, false, false, 0});
  std::size_t const ns = b.p.num_symbols();
  std::vector<fsa::State> table;
  std::vector<bool> accepting;
  fsa::State const dead = fsa::no_state;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    Config c = configs[i];
    accepting.push_back(c.u == out && c.diff == 0 && c.v != out);
    for (fsa::Symbol s = 0; s < ns; ++s) {
      unsigned x = b.p.component(s, 0), y = b.p.component(s, 1);
      bool xpad = x == b.p.pad(0), ypad = y == b.p.pad(1);
      Config d = c;
      bool ok = true;
      if (xpad) {
        ok = c.u == out || c.u_end;
        d.u_end = true;
      } else {
        ok = !c.u_end && c.u != out;
        d.u = nf_next(c.u, Letter(x));
      }
      if (ypad) {
        d.v_end = true;
      } else {
        ok = ok && !c.v_end;
        d.v = nf_next(c.v, Letter(y));
        ok = ok && d.v != out;
      }
      if (ok) {
        Element e = ball.element(c.diff);
        if (!xpad) {
          e = g.multiply(g.generator(b.a.inverse(Letter(x))), e);
        }
        if (!ypad) {
          e = g.times_letter(e, Letter(y));
        }
        d.diff = ball.find(e);
        ok = d.diff != Ball::npos;
      }
      table.push_back(ok ? intern(d) : dead);
    }
  }
  fsa::State sink = fsa::State(configs.size());
  for (auto& q : table) {
    if (q == dead) {
      q = sink;
    }
  }
  table.insert(table.end(), ns, sink);
  accepting.push_back(false);
  return Cprs(SyncLanguage(b.p, fsa::Dfa(ns, 0, accepting, table)),
              Order::shortlex);
}

}  // namespace autostack::fixtures
