#include "autostack/words.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>

namespace autostack {

Order parse_order(std::string_view name) {
  if (name == "srev") {
    return Order::srev;
  }
  if (name == "shortlex") {
    return Order::shortlex;
  }
  throw Error("unknown order kind '" + std::string(name) + "'");
}

std::string_view to_string(Order order) {
  return order == Order::srev ? "srev" : "shortlex";
}

Alphabet::Alphabet(std::vector<std::string> names,
                   std::vector<std::string> const& inverse,
                   std::vector<std::string> const& order,
                   std::vector<Weight> weights)
    : names_(std::move(names)), weights_(std::move(weights)) {
  std::size_t const n = names_.size();
  if (n == 0) {
    throw Error("alphabet must be non-empty");
  }
  if (n > 0xFFFF) {
    throw Error("alphabet too large");
  }
  std::unordered_map<std::string, Letter> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (names_[i].empty()) {
      throw Error("letter names must be non-empty");
    }
    if (!index.emplace(names_[i], static_cast<Letter>(i)).second) {
      throw Error("duplicate letter '" + names_[i] + "'");
    }
  }
  auto lookup = [&](std::string const& s) {
    auto it = index.find(s);
    if (it == index.end()) {
      throw Error("letter '" + s + "' is not in the alphabet");
    }
    return it->second;
  };
  if (inverse.size() != n) {
    throw Error("the involution must be total");
  }
  inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inverse_[i] = lookup(inverse[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (inverse_[inverse_[i]] != i) {
      throw Error("inverse of '" + names_[i] + "' is not an involution");
    }
  }
  if (order.size() != n) {
    throw Error("the order must list every letter exactly once");
  }
  rank_.assign(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    Letter a = lookup(order[r]);
    if (rank_[a] != n) {
      throw Error("letter '" + order[r] + "' appears twice in the order");
    }
    rank_[a] = r;
  }
  if (weights_.empty()) {
    weights_.assign(n, Weight(1));
  }
  if (weights_.size() != n) {
    throw Error("one weight per letter is required");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (weights_[i] <= 0) {
      throw Error("weight of '" + names_[i] + "' must be positive");
    }
  }
}

Alphabet Alphabet::with_pairs(
    std::vector<std::pair<std::string, std::string>> const& pairs) {
  std::vector<std::string> names, inverse;
  for (auto const& [a, b] : pairs) {
    names.push_back(a);
    inverse.push_back(b);
    if (a != b) {
      names.push_back(b);
      inverse.push_back(a);
    }
  }
  return Alphabet(names, inverse, names);
}

Weight Alphabet::max_weight() const {
  return *std::max_element(weights_.begin(), weights_.end());
}

Weight Alphabet::min_weight() const {
  return *std::min_element(weights_.begin(), weights_.end());
}

bool Alphabet::unit_weights() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](Weight const& w) { return w == 1; });
}

std::vector<Letter> Alphabet::ordered() const {
  std::vector<Letter> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[rank_[i]] = static_cast<Letter>(i);
  }
  return out;
}

Letter Alphabet::letter(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) {
      return static_cast<Letter>(i);
    }
  }
  throw Error("letter '" + std::string(name) + "' is not in the alphabet");
}

bool Alphabet::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Word Alphabet::parse(std::string_view text) const {
  Word out;
  if (text.empty() || text == "1") {
    return out;
  }
  if (text.find(' ') != std::string_view::npos) {
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
      out.push_back(letter(token));
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t best = 0;
    Letter best_letter = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      auto const& nm = names_[i];
      if (nm.size() > best && text.substr(pos, nm.size()) == nm) {
        best = nm.size();
        best_letter = static_cast<Letter>(i);
      }
    }
    if (best == 0) {
      throw Error("cannot parse word '" + std::string(text) + "' at offset " +
                  std::to_string(pos));
    }
    out.push_back(best_letter);
    pos += best;
  }
  return out;
}

std::string Alphabet::format(Word const& w) const {
  bool single = std::all_of(names_.begin(), names_.end(),
                            [](auto const& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i > 0) {
      out += ' ';
    }
    out += name(w[i]);
  }
  return out;
}

void Alphabet::check(Word const& w) const {
  for (Letter a : w) {
    if (a >= size()) {
      throw Error("letter index " + std::to_string(a) +
                  " is not in the alphabet");
    }
  }
}

Word invert_word(Alphabet const& alphabet, Word const& w) {
  alphabet.check(w);
  Word out(w.rbegin(), w.rend());
  for (Letter& a : out) {
    a = alphabet.inverse(a);
  }
  return out;
}

Word free_reduce(Alphabet const& alphabet, Word const& w) {
  alphabet.check(w);
  Word out;
  out.reserve(w.size());
  for (Letter a : w) {
    if (!out.empty() && out.back() == alphabet.inverse(a)) {
      out.pop_back();
    } else {
      out.push_back(a);
    }
  }
  return out;
}

std::strong_ordering compare(Alphabet const& alphabet,
                             Word const& u,
                             Word const& v,
                             Order order) {
  alphabet.check(u);
  alphabet.check(v);
  if (u.size() != v.size()) {
    return u.size() <=> v.size();
  }
  if (order == Order::srev) {
    for (std::size_t i = u.size(); i-- > 0;) {
      if (u[i] != v[i]) {
        return alphabet.rank(u[i]) <=> alphabet.rank(v[i]);
      }
    }
  } else {
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] != v[i]) {
        return alphabet.rank(u[i]) <=> alphabet.rank(v[i]);
      }
    }
  }
  return std::strong_ordering::equal;
}

Weight word_weight(Alphabet const& alphabet, Word const& w) {
  alphabet.check(w);
  Weight total(0);
  for (Letter a : w) {
    total += alphabet.weight(a);
  }
  return total;
}

Word concat(Word u, Word const& v) {
  u.insert(u.end(), v.begin(), v.end());
  return u;
}

Word prefix(Word const& w, std::size_t n) {
  return Word(w.begin(), w.begin() + std::min(n, w.size()));
}

Word suffix_from(Word const& w, std::size_t n) {
  return Word(w.begin() + std::min(n, w.size()), w.end());
}

std::size_t common_prefix_length(Word const& u, Word const& v) {
  std::size_t n = 0;
  while (n < u.size() && n < v.size() && u[n] == v[n]) {
    ++n;
  }
  return n;
}

std::string to_string(Weight const& w) {
  if (w.denominator() == 1) {
    return std::to_string(w.numerator());
  }
  return std::to_string(w.numerator()) + "/" + std::to_string(w.denominator());
}

Weight parse_weight(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error("malformed weight '" + std::string(text) + "'");
    }
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Weight(parse_int(text));
  }
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) {
    throw Error("malformed weight '" + std::string(text) + "'");
  }
  return Weight(parse_int(text.substr(0, slash)), den);
}

}  // namespace autostack
