// Brute-force reference computations shared by the tests.
#pragma once

#include <map>
#include <vector>

#include "autostack/group.hpp"

namespace oracle {

using namespace autostack;

inline std::vector<Word> words_up_to(std::size_t letters, std::size_t max_len) {
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

// Least word for every element reached by words of length <= r.
inline std::map<Element, Word> least_words(GroupSpec const& g,
                                           std::size_t r,
                                           Order o) {
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

// Word length of every element reached by words of length <= r.
inline std::map<Element, std::size_t> lengths(GroupSpec const& g, std::size_t r) {
  std::map<Element, std::size_t> out;
  for (auto const& [e, w] : least_words(g, r, Order::shortlex)) {
    out.emplace(e, w.size());
  }
  return out;
}

// Fellow-travel distance measured with a length table.
inline std::size_t distance(GroupSpec const& g,
                            std::map<Element, std::size_t> const& len,
                            Word const& u,
                            Word const& v) {
  std::size_t worst = 0;
  for (std::size_t n = 0; n <= std::max(u.size(), v.size()); ++n) {
    Element d = g.multiply(g.inverse(g.evaluate(prefix(u, n))),
                           g.evaluate(prefix(v, n)));
    worst = std::max(worst, len.at(d));
  }
  return worst;
}

}  // namespace oracle
