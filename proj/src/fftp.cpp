#include "autostack/fftp.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>

namespace autostack {

namespace {

constexpr std::uint8_t inf = 0xFF;

// Difference tables over the elements of B(cap).
struct DiffTable {
  std::size_t nb = 0, na = 0;
  std::vector<std::size_t> run;  // (i, a, b) -> a^-1 g_i b
  std::vector<std::size_t> end;  // (i, a) -> a^-1 g_i
  std::vector<std::uint8_t> len;

  DiffTable(Ball const& ball, std::size_t cap) {
    auto const& g = ball.spec();
    nb = ball.sphere(cap).second;
    na = ball.alphabet().size();
    run.assign(nb * na * na, Ball::npos);
    end.assign(nb * na, Ball::npos);
    len.resize(nb);
    auto inside = [&](Element const& e) {
      std::size_t j = ball.find(e);
      return j < nb ? j : Ball::npos;
    };
    for (std::size_t i = 0; i < nb; ++i) {
      len[i] = std::uint8_t(ball.length(i));
      for (Letter a = 0; a < na; ++a) {
        Element left = g.multiply(g.generator(ball.alphabet().inverse(a)),
                                  ball.element(i));
        end[i * na + a] = inside(left);
        for (Letter b = 0; b < na; ++b) {
          run[(i * na + a) * na + b] = inside(g.times_letter(left, b));
        }
      }
    }
  }
};

void require_radius(Ball const& ball, std::size_t r, char const* what) {
  if (ball.radius() < r) {
    throw Error(std::string(what) + " needs a ball of radius at least " +
                std::to_string(r) + ", got " + std::to_string(ball.radius()));
  }
}

struct Search {
  Ball const& ball;
  DiffTable table;
  std::size_t max_len;
  std::size_t max_k;
  FftpReport report;
  std::size_t worst = 0;
  std::vector<std::optional<Word>> counter;
  std::vector<std::vector<std::uint8_t>> dp;  // per depth: [run | end]
  Word u;

  Search(Ball const& b, std::size_t k, std::size_t len)
      : ball(b), table(b, k), max_len(len), max_k(k), counter(k + 1) {
    dp.assign(len + 1, std::vector<std::uint8_t>(2 * table.nb, inf));
    dp[0][0] = 0;
  }

  void visit(std::size_t depth, std::size_t element) {
    if (depth == max_len) {
      return;
    }
    std::size_t const nb = table.nb, na = table.na;
    for (Letter a = 0; a < na; ++a) {
      auto const& cur = dp[depth];
      auto& nxt = dp[depth + 1];
      std::fill(nxt.begin(), nxt.end(), inf);
      for (std::size_t i = 0; i < nb; ++i) {
        std::uint8_t vr = cur[i], ve = cur[nb + i];
        if (vr != inf) {
          std::size_t const* row = &table.run[(i * na + a) * na];
          for (Letter b = 0; b < na; ++b) {
            std::size_t j = row[b];
            if (j != Ball::npos) {
              std::uint8_t v = std::max(vr, table.len[j]);
              nxt[j] = std::min(nxt[j], v);
            }
          }
        }
        std::uint8_t v0 = std::min(vr, ve);
        if (v0 != inf) {
          std::size_t j = table.end[i * na + a];
          if (j != Ball::npos) {
            std::uint8_t v = std::max(v0, table.len[j]);
            nxt[nb + j] = std::min(nxt[nb + j], v);
          }
        }
      }
      std::size_t child = ball.neighbour(element, a);
      if (child == Ball::npos) {
        throw Error("fftp_search: word escapes the ball");
      }
      u.push_back(a);
      ++report.words_checked;
      if (ball.length(child) < u.size()) {
        ++report.non_geodesic;
        std::uint8_t ku = nxt[nb + 0];
        std::size_t need = ku == inf ? max_k + 1 : ku;
        worst = std::max(worst, need);
        for (std::size_t c = 0; c < need && c <= max_k; ++c) {
          auto& best = counter[c];
          if (!best || less(ball.alphabet(), u, *best, Order::shortlex)) {
            best = u;
          }
        }
      }
      visit(depth + 1, child);
      u.pop_back();
    }
  }
};

}  // namespace

FftpReport fftp_search(Ball const& ball, std::size_t max_k, std::size_t max_len) {
  require_radius(ball, std::max(max_len, max_k), "fftp_search");
  if (max_k >= inf) {
    throw Error("fftp_search: max_k too large");
  }
  Search s(ball, max_k, max_len);
  s.report.max_k = max_k;
  s.report.max_len = max_len;
  s.visit(0, 0);
  if (s.worst <= max_k) {
    s.report.k = s.worst;
  }
  for (std::size_t c = 0; c <= max_k; ++c) {
    if (s.counter[c]) {
      s.report.counterexamples.emplace_back(c, *s.counter[c]);
    }
  }
  return std::move(s.report);
}

std::optional<Word> witness(Ball const& ball, Word const& u, std::size_t k) {
  auto const& g = ball.spec();
  auto const& alpha = ball.alphabet();
  alpha.check(u);
  std::size_t const n = u.size();
  // prefix[i] = u(i), suffix[i] = u(i)^-1 u
  std::vector<Element> prefix{g.identity()};
  for (Letter a : u) {
    prefix.push_back(g.times_letter(prefix.back(), a));
  }
  std::size_t iu = ball.find(prefix.back());
  if (iu == Ball::npos) {
    throw Error("witness: word endpoint lies outside the ball");
  }
  if (ball.length(iu) == n) {
    throw Error("witness: '" + alpha.format(u) + "' is geodesic");
  }
  auto len_of = [&](Element const& e) -> std::size_t {
    std::size_t i = ball.find(e);
    return i == Ball::npos ? std::numeric_limits<std::size_t>::max()
                           : ball.length(i);
  };
  std::vector<Element> suffix(n + 1);
  std::vector<bool> tail_ok(n + 2, true);  // tail_ok[m]: suffixes from m fit
  for (std::size_t i = 0; i <= n; ++i) {
    suffix[i] = g.multiply(g.inverse(prefix[i]), prefix.back());
  }
  for (std::size_t i = n + 1; i-- > 0;) {
    tail_ok[i] = tail_ok[i + 1] && len_of(suffix[i]) <= k;
  }
  // Forward sets of reachable differences u(i)^-1 v(i).
  std::vector<std::map<Element, bool>> reach(n);
  reach[0][g.identity()] = true;
  std::size_t have = 1;
  for (std::size_t m = 0; m < n; ++m) {
    if (m == have) {
      for (auto const& [d, unused] : reach[m - 1]) {
        Element left = g.multiply(g.generator(alpha.inverse(u[m - 1])), d);
        for (Letter b = 0; b < alpha.size(); ++b) {
          Element e = g.times_letter(left, b);
          if (len_of(e) <= k) {
            reach[m][e] = true;
          }
        }
      }
      ++have;
    }
    if (!tail_ok[m] || !reach[m].count(suffix[m])) {
      continue;
    }
    Word v(m);
    if (ball.order() == Order::srev) {
      // Order-least: choose letters from the right.
      Element d = suffix[m];
      for (std::size_t i = m; i-- > 0;) {
        for (Letter b : alpha.ordered()) {
          Element prev = g.multiply(g.multiply(g.generator(u[i]), d),
                                    g.generator(alpha.inverse(b)));
          if (reach[i].count(prev)) {
            v[i] = b;
            d = prev;
            break;
          }
        }
      }
    } else {
      // Order-least: choose letters from the left, guided by which
      // differences can still reach the target.
      std::vector<std::map<Element, bool>> back(m + 1);
      back[m][suffix[m]] = true;
      for (std::size_t i = m; i-- > 0;) {
        for (auto const& [d, unused] : reach[i]) {
          Element left = g.multiply(g.generator(alpha.inverse(u[i])), d);
          for (Letter b = 0; b < alpha.size(); ++b) {
            if (back[i + 1].count(g.times_letter(left, b))) {
              back[i][d] = true;
              break;
            }
          }
        }
      }
      Element cur = g.identity();
      for (std::size_t i = 0; i < m; ++i) {
        Element left = g.multiply(g.generator(alpha.inverse(u[i])), cur);
        for (Letter b : alpha.ordered()) {
          Element e = g.times_letter(left, b);
          if (back[i + 1].count(e)) {
            v[i] = b;
            cur = e;
            break;
          }
        }
      }
    }
    return v;
  }
  return std::nullopt;
}

Word split_witness(Ball const& ball, Word const& u, std::size_t k) {
  auto const& alpha = ball.alphabet();
  auto const& g = ball.spec();
  std::size_t iu = ball.find(g.evaluate(u));
  if (iu == Ball::npos) {
    throw Error("split_witness: word endpoint lies outside the ball");
  }
  Word const& w = ball.nf(iu);
  if (w == u) {
    throw Error("split_witness: '" + alpha.format(u) +
                "' is already a normal form");
  }
  auto checked = [&](Word const& x) {
    auto v = witness(ball, x, k);
    if (!v) {
      throw Error("split_witness: " + std::to_string(k) +
                  " is not a fellow traveller constant for '" +
                  alpha.format(x) + "'");
    }
    return *v;
  };
  Word v;
  if (ball.length(iu) < u.size()) {
    v = checked(u);
  } else {
    std::size_t common = 0;
    while (common < u.size() &&
           u[u.size() - 1 - common] == w[w.size() - 1 - common]) {
      ++common;
    }
    Word u1 = prefix(u, u.size() - common);
    Word u2 = suffix_from(u, u.size() - common);
    Letter l = w[w.size() - 1 - common];
    Word probe = u1;
    probe.push_back(alpha.inverse(l));
    Word v1 = checked(probe);
    Word v2 = v1.size() + 1 == u1.size() ? v1 : checked(v1);
    v = v2;
    v.push_back(l);
    v.insert(v.end(), u2.begin(), u2.end());
  }
  if (!less(alpha, v, u, ball.order()) || g.evaluate(v) != g.evaluate(u) ||
      fellow_travel_distance(ball, u, v) > 2 * k) {
    throw Error("split_witness: postcondition failed for '" +
                alpha.format(u) + "'");
  }
  return v;
}

WitnessAutomaton build_witness_automaton(Ball const& ball, std::size_t k) {
  require_radius(ball, 4 * k + 2, "build_witness_automaton");
  auto const& g = ball.spec();
  auto const& alpha = ball.alphabet();
  PaddedAlphabet p({alpha, alpha});
  std::size_t const nb = ball.sphere(4 * k).second;
  std::size_t const ns = p.num_symbols();
  auto inner = [&](Element const& e) {
    std::size_t j = ball.find(e);
    return j < nb ? j : Ball::npos;
  };
  WitnessAutomaton out;
  out.k = k;
  out.order = ball.order();
  if (ball.order() == Order::srev) {
    // Plain states 0..nb-1, padded nb..2nb-1, then the decrease state and F.
    fsa::State const lam = fsa::State(2 * nb), fail = lam + 1;
    std::vector<bool> accepting(2 * nb + 2, false);
    accepting[nb] = true;
    accepting[lam] = true;
    std::vector<fsa::State> table((2 * nb + 2) * ns, fail);
    for (fsa::State s = 0; s < fail; ++s) {
      bool padded = s >= nb && s < lam;
      std::size_t gi = s == lam ? 0 : (padded ? s - nb : s);
      for (fsa::Symbol c = 0; c < ns; ++c) {
        if (p.is_pad(c, 0)) {
          continue;
        }
        Letter a = Letter(p.component(c, 0));
        bool bpad = p.is_pad(c, 1);
        if (padded && !bpad) {
          continue;
        }
        Element d = g.multiply(g.generator(alpha.inverse(a)), ball.element(gi));
        if (!bpad) {
          d = g.times_letter(d, Letter(p.component(c, 1)));
        }
        std::size_t j = inner(d);
        if (j == Ball::npos) {
          continue;
        }
        bool decrease = false;
        if (!bpad) {
          Letter b = Letter(p.component(c, 1));
          decrease = alpha.precedes(b, a) || (s == lam && a == b);
        }
        fsa::State t;
        if (j == 0 && !bpad && decrease) {
          t = lam;
        } else {
          t = fsa::State(bpad ? nb + j : j);
        }
        table[s * ns + c] = t;
      }
    }
    out.raw = fsa::Dfa(ns, 0, accepting, table);
  } else {
    // Shortlex: the first differing letter pair decides, so each difference
    // carries a three-way verdict (equal, v smaller, v larger) and a padding
    // flag; padded states are accepting whatever the verdict.
    auto id = [&](std::size_t gi, int verdict, bool padded) {
      return fsa::State((gi * 3 + std::size_t(verdict)) * 2 + (padded ? 1 : 0));
    };
    fsa::State const fail = fsa::State(nb * 6);
    std::vector<bool> accepting(nb * 6 + 1, false);
    for (int verdict = 0; verdict < 3; ++verdict) {
      accepting[id(0, verdict, true)] = true;
    }
    accepting[id(0, 1, false)] = true;
    std::vector<fsa::State> table((nb * 6 + 1) * ns, fail);
    for (std::size_t gi = 0; gi < nb; ++gi) {
      for (int verdict = 0; verdict < 3; ++verdict) {
        for (bool padded : {false, true}) {
          fsa::State s = id(gi, verdict, padded);
          for (fsa::Symbol c = 0; c < ns; ++c) {
            if (p.is_pad(c, 0)) {
              continue;
            }
            Letter a = Letter(p.component(c, 0));
            bool bpad = p.is_pad(c, 1);
            if (padded && !bpad) {
              continue;
            }
            Element d =
                g.multiply(g.generator(alpha.inverse(a)), ball.element(gi));
            int next_verdict = verdict;
            if (!bpad) {
              Letter b = Letter(p.component(c, 1));
              d = g.times_letter(d, b);
              if (verdict == 0 && a != b) {
                next_verdict = alpha.precedes(b, a) ? 1 : 2;
              }
            }
            std::size_t j = inner(d);
            if (j == Ball::npos) {
              continue;
            }
            table[s * ns + c] = id(j, next_verdict, bpad);
          }
        }
      }
    }
    out.raw = fsa::Dfa(ns, 0, accepting, table);
  }
  out.language = SyncLanguage(p, out.raw);
  return out;
}

std::vector<std::pair<Word, Word>> bruteforce_L(Ball const& ball,
                                                std::size_t bound,
                                                std::size_t max_len) {
  require_radius(ball, std::max(bound, max_len), "bruteforce_L");
  auto const& alpha = ball.alphabet();
  std::map<std::size_t, std::vector<Word>> bucket;
  std::vector<std::pair<Word, std::size_t>> frontier{{Word{}, 0}};
  bucket[0].push_back({});
  for (std::size_t len = 0; len < max_len; ++len) {
    std::vector<std::pair<Word, std::size_t>> next;
    for (auto const& [w, i] : frontier) {
      for (Letter a = 0; a < alpha.size(); ++a) {
        std::size_t j = ball.neighbour(i, a);
        if (j == Ball::npos) {
          throw Error("bruteforce_L: word escapes the ball");
        }
        Word x = w;
        x.push_back(a);
        bucket[j].push_back(x);
        next.emplace_back(std::move(x), j);
      }
    }
    frontier = std::move(next);
  }
  auto const& g = ball.spec();
  std::vector<std::pair<Word, Word>> out;
  for (auto const& [unused, words] : bucket) {
    for (auto const& u : words) {
      for (auto const& v : words) {
        if (!less(alpha, v, u, ball.order())) {
          continue;
        }
        bool ok = true;
        Element gu = g.identity(), gv = g.identity();
        for (std::size_t t = 1; t <= u.size() && ok; ++t) {
          gu = g.times_letter(gu, u[t - 1]);
          if (t <= v.size()) {
            gv = g.times_letter(gv, v[t - 1]);
          }
          std::size_t i = ball.find(g.multiply(g.inverse(gu), gv));
          ok = i != Ball::npos && ball.length(i) <= bound;
        }
        if (ok) {
          out.emplace_back(u, v);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SyncLanguage to_Lprime(SyncLanguage const& l) {
  Alphabet const& a = l.alphabet().base(0);
  fsa::Dfa normal = fsa::complement(project(l, 0));
  return coordinate_restrict(l, 0, append_letter(a, normal));
}

fsa::Dfa length_deficit(PaddedAlphabet const& p, std::size_t pads) {
  // Count pads in the second coordinate; any pad in the first is rejected.
  std::size_t const ns = p.num_symbols();
  fsa::State const dead = fsa::State(pads + 1);
  std::vector<bool> accepting(pads + 2, false);
  accepting[pads] = true;
  std::vector<fsa::State> table((pads + 2) * ns, dead);
  for (fsa::State s = 0; s <= pads; ++s) {
    for (fsa::Symbol c = 0; c < ns; ++c) {
      if (p.is_pad(c, 0)) {
        continue;
      }
      fsa::State t = p.is_pad(c, 1) ? s + 1 : (s == 0 ? 0 : dead);
      table[s * ns + c] = std::min(t, dead);
    }
  }
  return fsa::Dfa(ns, 0, accepting, table);
}

SyncLanguage to_Lpp(SyncLanguage const& lprime) {
  auto const& p = lprime.alphabet();
  Alphabet const& a = p.base(1);
  SyncLanguage universe = SyncLanguage::universe(p);
  SyncLanguage blocked = SyncLanguage::empty(p);
  SyncLanguage out = SyncLanguage::empty(p);
  // Right sides: the empty word first, then ending in each letter in order.
  std::vector<fsa::Dfa> endings{single_word(a, Word{})};
  for (Letter x : a.ordered()) {
    endings.push_back(
        fsa::concatenate(all_words(a), single_word(a, Word{x})));
  }
  for (std::size_t i = 3; i-- > 0;) {
    SyncLanguage level(p, fsa::intersect(lprime.machine(), length_deficit(p, i)));
    for (auto const& ending : endings) {
      SyncLanguage piece =
          difference(coordinate_restrict(level, 1, ending), blocked);
      out = unite(out, piece);
      blocked =
          unite(blocked, coordinate_restrict(universe, 0, project(piece, 0)));
    }
  }
  return out;
}

}  // namespace autostack
