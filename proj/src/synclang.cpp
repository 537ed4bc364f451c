#include "autostack/synclang.hpp"

#include <algorithm>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

namespace autostack {

using fsa::Dfa;
using fsa::Nfa;
using fsa::State;
using fsa::Symbol;
using fsa::SymbolWord;

PaddedAlphabet::PaddedAlphabet(std::vector<Alphabet> bases)
    : bases_(std::move(bases)) {
  if (bases_.size() < 2 || bases_.size() > 3) {
    throw Error("padded alphabets have arity 2 or 3");
  }
  unsigned r = 1;
  for (auto const& b : bases_) {
    radix_.push_back(r);
    r *= unsigned(b.size()) + 1;
  }
  num_symbols_ = r - 1;
}

Symbol PaddedAlphabet::encode(std::vector<unsigned> const& components) const {
  if (components.size() != arity()) {
    throw Error("tuple arity does not match the alphabet");
  }
  Symbol s = 0;
  for (std::size_t i = 0; i < arity(); ++i) {
    if (components[i] > pad(i)) {
      throw Error("component out of range");
    }
    s += components[i] * radix_[i];
  }
  if (s >= num_symbols_) {
    throw Error("the all-padding tuple is not a symbol");
  }
  return s;
}

std::vector<unsigned> PaddedAlphabet::decode(Symbol s) const {
  std::vector<unsigned> out(arity());
  for (std::size_t i = 0; i < arity(); ++i) {
    out[i] = component(s, i);
  }
  return out;
}

std::string PaddedAlphabet::symbol_name(Symbol s) const {
  std::string out = "(";
  for (std::size_t i = 0; i < arity(); ++i) {
    if (i > 0) {
      out += ",";
    }
    unsigned c = component(s, i);
    out += c == pad(i) ? std::string("$") : bases_[i].name(Letter(c));
  }
  return out + ")";
}

std::vector<std::string> PaddedAlphabet::symbol_names() const {
  std::vector<std::string> out;
  for (Symbol s = 0; s < num_symbols_; ++s) {
    out.push_back(symbol_name(s));
  }
  return out;
}

SymbolWord PaddedAlphabet::pad_words(std::vector<Word> const& words) const {
  if (words.size() != arity()) {
    throw Error("tuple arity does not match the alphabet");
  }
  std::size_t len = 0;
  for (std::size_t i = 0; i < arity(); ++i) {
    bases_[i].check(words[i]);
    len = std::max(len, words[i].size());
  }
  SymbolWord out(len);
  std::vector<unsigned> c(arity());
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t i = 0; i < arity(); ++i) {
      c[i] = t < words[i].size() ? words[i][t] : pad(i);
    }
    out[t] = encode(c);
  }
  return out;
}

std::vector<Word> PaddedAlphabet::unpad(SymbolWord const& sequence) const {
  std::vector<Word> out(arity());
  std::vector<bool> ended(arity(), false);
  for (Symbol s : sequence) {
    if (s >= num_symbols_) {
      throw Error("symbol out of range");
    }
    for (std::size_t i = 0; i < arity(); ++i) {
      unsigned c = component(s, i);
      if (c == pad(i)) {
        ended[i] = true;
      } else if (ended[i]) {
        throw Error("ill-padded sequence: letter after padding");
      } else {
        out[i].push_back(Letter(c));
      }
    }
  }
  return out;
}

Dfa PaddedAlphabet::well_padded() const {
  // State = set of padded coordinates as a bit mask; the last state is dead.
  std::size_t const masks = std::size_t(1) << arity();
  State const dead = State(masks);
  std::vector<bool> accepting(masks + 1, true);
  accepting[dead] = false;
  std::vector<State> table((masks + 1) * num_symbols_, dead);
  for (State m = 0; m < masks; ++m) {
    for (Symbol s = 0; s < num_symbols_; ++s) {
      State next = m;
      bool ok = true;
      for (std::size_t i = 0; i < arity(); ++i) {
        if (is_pad(s, i)) {
          next |= State(1) << i;
        } else if (m & (State(1) << i)) {
          ok = false;
        }
      }
      table[m * num_symbols_ + s] = ok ? next : dead;
    }
  }
  return fsa::minimize(Dfa(num_symbols_, 0, accepting, table));
}

Dfa PaddedAlphabet::lift(std::size_t coordinate, Dfa const& x) const {
  if (coordinate >= arity()) {
    throw Error("bad coordinate");
  }
  if (x.num_symbols() != bases_[coordinate].size()) {
    throw Error("automaton is not over the coordinate alphabet");
  }
  std::vector<State> table(x.num_states() * num_symbols_);
  for (State q = 0; q < x.num_states(); ++q) {
    for (Symbol s = 0; s < num_symbols_; ++s) {
      unsigned c = component(s, coordinate);
      table[q * num_symbols_ + s] = c == pad(coordinate) ? q : x.next(q, c);
    }
  }
  return Dfa(num_symbols_, x.start(), x.accepting_states(), table);
}

SyncLanguage::SyncLanguage(PaddedAlphabet alphabet, Dfa const& machine)
    : alphabet_(std::move(alphabet)) {
  if (machine.num_symbols() != alphabet_.num_symbols()) {
    throw Error("machine is not over the padded alphabet");
  }
  machine_ = fsa::intersect(machine, alphabet_.well_padded());
}

SyncLanguage SyncLanguage::from_tuples(
    PaddedAlphabet alphabet, std::vector<std::vector<Word>> const& tuples) {
  std::vector<SymbolWord> words;
  for (auto const& t : tuples) {
    words.push_back(alphabet.pad_words(t));
  }
  Dfa m = Dfa::from_words(alphabet.num_symbols(), words);
  return SyncLanguage(std::move(alphabet), m);
}

SyncLanguage SyncLanguage::universe(PaddedAlphabet alphabet) {
  Dfa m = Dfa::universal(alphabet.num_symbols());
  return SyncLanguage(std::move(alphabet), m);
}

SyncLanguage SyncLanguage::empty(PaddedAlphabet alphabet) {
  Dfa m = Dfa::empty(alphabet.num_symbols());
  return SyncLanguage(std::move(alphabet), m);
}

bool SyncLanguage::accepts(std::vector<Word> const& tuple) const {
  return machine_.accepts(alphabet_.pad_words(tuple));
}

std::vector<std::vector<Word>> SyncLanguage::enumerate(
    std::size_t max_length) const {
  std::vector<std::vector<Word>> out;
  for (auto const& w : fsa::enumerate_up_to(machine_, max_length)) {
    out.push_back(alphabet_.unpad(w));
  }
  return out;
}

SyncLanguage diagonal_star(Alphabet const& a) {
  PaddedAlphabet p({a, a});
  // 0: reading the diagonal, 1: dead.
  std::vector<State> table(2 * p.num_symbols(), 1);
  for (Letter x = 0; x < a.size(); ++x) {
    table[p.encode({x, x})] = 0;
  }
  return SyncLanguage(p, Dfa(p.num_symbols(), 0, {true, false}, table));
}

SyncLanguage diagonal(Alphabet const& a, Dfa const& x) {
  return coordinate_restrict(diagonal_star(a), 0, x);
}

namespace {

// Configuration of the machine recognising a coordinate-wise concatenation.
// Each coordinate is reading its first factor (U), its second factor (V), or
// has ended (E). Letters of second factors are buffered until every
// coordinate can contribute to the next tuple fed to the right operand.
enum Phase : std::uint32_t { U = 0, V = 1, E = 2 };

constexpr State done = fsa::no_state;

struct Config {
  State l = 0;  // `done` once the left operand has accepted
  State k = 0;
  std::vector<Phase> phase;
  std::vector<Word> buffer;

  std::vector<std::uint32_t> key() const {
    std::vector<std::uint32_t> out{l, k};
    for (std::size_t i = 0; i < phase.size(); ++i) {
      out.push_back(phase[i]);
      out.push_back(std::uint32_t(buffer[i].size()));
      out.insert(out.end(), buffer[i].begin(), buffer[i].end());
    }
    return out;
  }
};

struct KeyHash {
  std::size_t operator()(std::vector<std::uint32_t> const& v) const {
    return boost::hash_range(v.begin(), v.end());
  }
};

class ConcatBuilder {
 public:
  ConcatBuilder(SyncLanguage const& l, SyncLanguage const& k, std::size_t lag)
      : p_(l.alphabet()),
        l_(l.machine()),
        k_(k.machine()),
        l_dist_(l_.distance_to_accept()),
        k_dist_(k_.distance_to_accept()),
        max_lag_(lag),
        nfa_(p_.num_symbols()) {}

  Dfa build() {
    Config init;
    init.l = l_.start();
    init.k = k_.start();
    init.phase.assign(p_.arity(), U);
    init.buffer.assign(p_.arity(), Word{});
    if (!alive(init)) {
      return Dfa::empty(p_.num_symbols());
    }
    nfa_.add_start(intern(init));
    for (std::size_t i = 0; i < configs_.size(); ++i) {
      Config c = configs_[i];
      State from = State(i);
      for (std::size_t j = 0; j < p_.arity(); ++j) {
        if (c.phase[j] != U) {
          continue;
        }
        Config d = c;
        d.phase[j] = V;
        if (finish_left(d)) {
          nfa_.add_epsilon(from, intern(d));
        }
      }
      for (Symbol s = 0; s < p_.num_symbols(); ++s) {
        Config d = c;
        if (step(d, s)) {
          nfa_.add_transition(from, s, intern(d));
        }
      }
    }
    return fsa::determinize_minimize(nfa_);
  }

 private:
  bool alive(Config const& c) const {
    if (c.l != done && l_dist_[c.l] == fsa::no_state) {
      return false;
    }
    return k_dist_[c.k] != fsa::no_state;
  }

  // Marks the left operand finished once no coordinate is in U.
  bool finish_left(Config& c) const {
    if (c.l == done) {
      return true;
    }
    if (std::find(c.phase.begin(), c.phase.end(), U) != c.phase.end()) {
      return true;
    }
    if (!l_.accepting(c.l)) {
      return false;
    }
    c.l = done;
    return true;
  }

  void feed_right(Config& c) const {
    for (;;) {
      std::vector<unsigned> tuple(p_.arity());
      bool any_letter = false;
      for (std::size_t i = 0; i < p_.arity(); ++i) {
        if (c.phase[i] == U) {
          return;
        }
        if (!c.buffer[i].empty()) {
          tuple[i] = c.buffer[i].front();
          any_letter = true;
        } else if (c.phase[i] == E) {
          tuple[i] = p_.pad(i);
        } else {
          return;
        }
      }
      if (!any_letter) {
        return;
      }
      c.k = k_.next(c.k, p_.encode(tuple));
      for (auto& b : c.buffer) {
        if (!b.empty()) {
          b.erase(b.begin());
        }
      }
    }
  }

  bool step(Config& c, Symbol s) const {
    std::vector<unsigned> to_left(p_.arity());
    bool feeds_left = false;
    for (std::size_t i = 0; i < p_.arity(); ++i) {
      unsigned x = p_.component(s, i);
      bool pad = x == p_.pad(i);
      switch (c.phase[i]) {
        case U:
          if (pad) {
            return false;
          }
          to_left[i] = x;
          feeds_left = true;
          break;
        case V:
          if (pad) {
            c.phase[i] = E;
          } else {
            c.buffer[i].push_back(Letter(x));
            if (c.buffer[i].size() > max_lag_) {
              throw Error(
                  "sync_concat: coordinates drift apart without bound; the "
                  "concatenation is not synchronous");
            }
          }
          to_left[i] = p_.pad(i);
          break;
        case E:
          if (!pad) {
            return false;
          }
          to_left[i] = p_.pad(i);
          break;
      }
    }
    if (feeds_left) {
      c.l = l_.next(c.l, p_.encode(to_left));
    }
    feed_right(c);
    return alive(c);
  }

  // Whether the input may stop here: every coordinate still reading its
  // first factor ends both factors now.
  bool accepting(Config c) const {
    for (auto& ph : c.phase) {
      if (ph == U) {
        ph = V;
      }
    }
    if (!finish_left(c)) {
      return false;
    }
    for (auto& ph : c.phase) {
      ph = E;
    }
    feed_right(c);
    for (auto const& b : c.buffer) {
      if (!b.empty()) {
        return false;
      }
    }
    return k_.accepting(c.k);
  }

  State intern(Config const& c) {
    auto key = c.key();
    auto it = ids_.find(key);
    if (it != ids_.end()) {
      return it->second;
    }
    State q = nfa_.add_state(accepting(c));
    ids_.emplace(std::move(key), q);
    configs_.push_back(c);
    return q;
  }

  PaddedAlphabet const& p_;
  Dfa const& l_;
  Dfa const& k_;
  std::vector<State> l_dist_, k_dist_;
  std::size_t max_lag_;
  Nfa nfa_;
  std::vector<Config> configs_;
  std::unordered_map<std::vector<std::uint32_t>, State, KeyHash> ids_;
};

void same_alphabet(SyncLanguage const& l, SyncLanguage const& k) {
  if (!(l.alphabet() == k.alphabet())) {
    throw Error("languages are over different padded alphabets");
  }
}

}  // namespace

SyncLanguage sync_concat(SyncLanguage const& l,
                         SyncLanguage const& k,
                         std::size_t max_lag) {
  same_alphabet(l, k);
  ConcatBuilder b(l, k, max_lag);
  return SyncLanguage(l.alphabet(), b.build());
}

Dfa project(SyncLanguage const& l, std::size_t coordinate) {
  auto const& p = l.alphabet();
  if (coordinate >= p.arity()) {
    throw Error("bad coordinate");
  }
  auto const& m = l.machine();
  Nfa n(p.base(coordinate).size());
  for (State q = 0; q < m.num_states(); ++q) {
    n.add_state(m.accepting(q));
  }
  for (State q = 0; q < m.num_states(); ++q) {
    for (Symbol s = 0; s < p.num_symbols(); ++s) {
      unsigned c = p.component(s, coordinate);
      if (c == p.pad(coordinate)) {
        n.add_epsilon(q, m.next(q, s));
      } else {
        n.add_transition(q, c, m.next(q, s));
      }
    }
  }
  n.add_start(m.start());
  return fsa::determinize_minimize(n);
}

SyncLanguage coordinate_restrict(SyncLanguage const& l,
                                 std::size_t coordinate,
                                 Dfa const& x) {
  Dfa lifted = l.alphabet().lift(coordinate, x);
  return SyncLanguage(l.alphabet(), fsa::intersect(l.machine(), lifted));
}

SyncLanguage unite(SyncLanguage const& l, SyncLanguage const& k) {
  same_alphabet(l, k);
  return SyncLanguage(l.alphabet(), fsa::unite(l.machine(), k.machine()));
}

SyncLanguage intersect(SyncLanguage const& l, SyncLanguage const& k) {
  same_alphabet(l, k);
  return SyncLanguage(l.alphabet(), fsa::intersect(l.machine(), k.machine()));
}

SyncLanguage difference(SyncLanguage const& l, SyncLanguage const& k) {
  same_alphabet(l, k);
  return SyncLanguage(l.alphabet(),
                      fsa::difference(l.machine(), k.machine()));
}

bool equivalent(SyncLanguage const& l, SyncLanguage const& k) {
  same_alphabet(l, k);
  return fsa::equivalent(l.machine(), k.machine());
}

Dfa all_words(Alphabet const& a) {
  return Dfa::universal(a.size());
}

Dfa single_word(Alphabet const& a, Word const& w) {
  return word_set(a, {w});
}

Dfa word_set(Alphabet const& a, std::vector<Word> const& words) {
  std::vector<SymbolWord> sw;
  for (auto const& w : words) {
    a.check(w);
    sw.emplace_back(w.begin(), w.end());
  }
  return Dfa::from_words(a.size(), sw);
}

Dfa append_letter(Alphabet const& a, Dfa const& l) {
  std::vector<SymbolWord> letters;
  for (Letter x = 0; x < a.size(); ++x) {
    letters.push_back({x});
  }
  return fsa::concatenate(l, Dfa::from_words(a.size(), letters));
}

}  // namespace autostack
