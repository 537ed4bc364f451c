#include "autostack/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace autostack::io {

namespace {

Json const& field(Json const& j, char const* key) {
  if (!j.is_object()) {
    throw FormatError(std::string("expected an object holding '") + key + "'");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return *it;
}

template <class T>
T get(Json const& j, char const* what) {
  try {
    return j.get<T>();
  } catch (Json::exception const&) {
    throw FormatError(std::string("malformed ") + what);
  }
}

template <class T>
T get(Json const& j, char const* key, char const* what) {
  return get<T>(field(j, key), what);
}

std::vector<std::int64_t> int_vector(Json const& j, char const* what) {
  return get<std::vector<std::int64_t>>(j, what);
}

}  // namespace

Json to_json(Alphabet const& a) {
  Json j;
  j["letters"] = a.names();
  Json inverse = Json::object();
  Json weight = Json::object();
  for (Letter x = 0; x < a.size(); ++x) {
    inverse[a.name(x)] = a.name(a.inverse(x));
    weight[a.name(x)] = to_string(a.weight(x));
  }
  j["inverse"] = inverse;
  std::vector<std::string> order;
  for (Letter x : a.ordered()) {
    order.push_back(a.name(x));
  }
  j["order"] = order;
  j["weight"] = weight;
  return j;
}

Alphabet alphabet_from_json(Json const& j) {
  auto letters = get<std::vector<std::string>>(j, "letters", "letter list");
  auto inverse_map =
      get<std::map<std::string, std::string>>(j, "inverse", "inverse table");
  std::vector<std::string> inverse;
  for (auto const& x : letters) {
    auto it = inverse_map.find(x);
    if (it == inverse_map.end()) {
      throw FormatError("letter '" + x + "' has no declared inverse");
    }
    inverse.push_back(it->second);
  }
  if (inverse_map.size() != letters.size()) {
    throw FormatError("the inverse table names unknown letters");
  }
  std::vector<std::string> order =
      j.contains("order") ? get<std::vector<std::string>>(j, "order", "order")
                          : letters;
  std::vector<Weight> weights;
  if (j.contains("weight")) {
    auto w = get<std::map<std::string, std::string>>(j, "weight", "weights");
    for (auto const& x : letters) {
      auto it = w.find(x);
      if (it == w.end()) {
        throw FormatError("letter '" + x + "' has no weight");
      }
      weights.push_back(parse_weight(it->second));
    }
  }
  return Alphabet(std::move(letters), inverse, order, std::move(weights));
}

Json word_to_json(Alphabet const& a, Word const& w) {
  Json j = Json::array();
  for (Letter x : w) {
    j.push_back(a.name(x));
  }
  return j;
}

Word word_from_json(Alphabet const& a, Json const& j) {
  Word w;
  for (auto const& name : get<std::vector<std::string>>(j, "word")) {
    if (!a.contains(name)) {
      throw FormatError("unknown letter '" + name + "'");
    }
    w.push_back(a.letter(name));
  }
  return w;
}

Json dfa_to_json(fsa::Dfa const& m, std::vector<std::string> const& symbols) {
  Json j;
  j["alphabet"] = symbols;
  j["states"] = m.num_states();
  j["start"] = m.start();
  std::vector<fsa::State> accepting;
  std::vector<std::vector<fsa::State>> transitions(m.num_states());
  for (fsa::State q = 0; q < m.num_states(); ++q) {
    if (m.accepting(q)) {
      accepting.push_back(q);
    }
    for (fsa::Symbol a = 0; a < m.num_symbols(); ++a) {
      transitions[q].push_back(m.next(q, a));
    }
  }
  j["accepting"] = accepting;
  j["transitions"] = transitions;
  return j;
}

fsa::Dfa dfa_from_json(Json const& j, std::vector<std::string> const& symbols) {
  if (get<std::vector<std::string>>(j, "alphabet", "symbol list") != symbols) {
    throw FormatError("automaton symbols do not match the alphabet");
  }
  auto states = get<std::size_t>(j, "states", "state count");
  auto start = get<std::size_t>(j, "start", "start state");
  auto accepting =
      get<std::vector<std::size_t>>(j, "accepting", "accepting states");
  auto transitions = get<std::vector<std::vector<std::size_t>>>(
      j, "transitions", "transition table");
  if (states == 0 || start >= states || transitions.size() != states) {
    throw FormatError("inconsistent automaton size");
  }
  std::vector<bool> acc(states, false);
  for (auto q : accepting) {
    if (q >= states) {
      throw FormatError("accepting state out of range");
    }
    acc[q] = true;
  }
  std::vector<fsa::State> table;
  for (auto const& row : transitions) {
    if (row.size() != symbols.size()) {
      throw FormatError("transition row of the wrong width");
    }
    for (auto t : row) {
      if (t >= states) {
        throw FormatError("transition target out of range");
      }
      table.push_back(fsa::State(t));
    }
  }
  return fsa::Dfa(symbols.size(), fsa::State(start), std::move(acc),
                  std::move(table));
}

Json to_json(SyncLanguage const& l) {
  auto const& p = l.alphabet();
  Json j;
  Json coords = Json::array();
  for (std::size_t i = 0; i < p.arity(); ++i) {
    coords.push_back(to_json(p.base(i)));
  }
  j["coordinates"] = coords;
  j["pad"] = "$";
  j["machine"] = dfa_to_json(l.machine(), p.symbol_names());
  return j;
}

SyncLanguage sync_from_json(Json const& j) {
  Json const& coords = field(j, "coordinates");
  if (!coords.is_array() || coords.empty()) {
    throw FormatError("coordinates must be a non-empty array");
  }
  if (get<std::string>(j, "pad", "pad symbol") != "$") {
    throw FormatError("the pad symbol must be '$'");
  }
  std::vector<Alphabet> bases;
  for (auto const& c : coords) {
    bases.push_back(alphabet_from_json(c));
  }
  PaddedAlphabet p(std::move(bases));
  fsa::Dfa m = dfa_from_json(field(j, "machine"), p.symbol_names());
  return SyncLanguage(std::move(p), m);
}

Json tuples_to_json(SyncLanguage const& l, std::size_t max_len) {
  auto tuples = l.enumerate(max_len);
  std::sort(tuples.begin(), tuples.end());
  Json j = Json::array();
  for (auto const& t : tuples) {
    Json row = Json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
      row.push_back(word_to_json(l.alphabet().base(i), t[i]));
    }
    j.push_back(row);
  }
  return j;
}

Json element_to_json(GroupSpec const& g, Element const& e) {
  switch (g.kind()) {
    case GroupKind::free_abelian: return e.coords;
    case GroupKind::monomial:
      return Json{{"translation", e.coords}, {"part", e.finite}};
    case GroupKind::finite_table: return e.finite;
  }
  return nullptr;
}

Element element_from_json(GroupSpec const& g, Json const& j) {
  Element e;
  switch (g.kind()) {
    case GroupKind::free_abelian:
      e.coords = int_vector(j, "vector element");
      break;
    case GroupKind::monomial:
      e.coords = int_vector(field(j, "translation"), "translation");
      e.finite = get<std::uint32_t>(j, "part", "finite part");
      if (e.finite >= g.action().size()) {
        throw FormatError("finite part out of range");
      }
      break;
    case GroupKind::finite_table:
      e.finite = get<std::uint32_t>(j, "table element");
      if (e.finite >= g.table().size()) {
        throw FormatError("table element out of range");
      }
      break;
  }
  if (g.kind() != GroupKind::finite_table && e.coords.size() != g.rank()) {
    throw FormatError("element of the wrong rank");
  }
  return e;
}

Json to_json(GroupSpec const& g) {
  Json j;
  j["kind"] = to_string(g.kind());
  j["alphabet"] = to_json(g.alphabet());
  switch (g.kind()) {
    case GroupKind::free_abelian: j["rank"] = g.rank(); break;
    case GroupKind::monomial:
      j["rank"] = g.rank();
      j["action"] = g.action();
      break;
    case GroupKind::finite_table: j["table"] = g.table(); break;
  }
  Json gens = Json::object();
  auto const& a = g.alphabet();
  for (Letter x = 0; x < a.size(); ++x) {
    gens[a.name(x)] = element_to_json(g, g.generator(x));
  }
  j["generators"] = gens;
  return j;
}

GroupSpec group_from_json(Json const& j) {
  GroupKind kind;
  try {
    kind = parse_group_kind(get<std::string>(j, "kind", "group kind"));
  } catch (FormatError const&) {
    throw;
  } catch (Error const& e) {
    throw FormatError(e.what());
  }
  Alphabet a = alphabet_from_json(field(j, "alphabet"));
  Json const& gens = field(j, "generators");
  if (!gens.is_object() || gens.size() != a.size()) {
    throw FormatError("one generator image per letter is required");
  }
  auto image = [&](Letter x) -> Json const& {
    auto it = gens.find(a.name(x));
    if (it == gens.end()) {
      throw FormatError("letter '" + a.name(x) + "' has no generator image");
    }
    return *it;
  };
  switch (kind) {
    case GroupKind::free_abelian: {
      auto rank = get<std::size_t>(j, "rank", "rank");
      std::vector<std::vector<std::int64_t>> v;
      for (Letter x = 0; x < a.size(); ++x) {
        v.push_back(int_vector(image(x), "generator vector"));
      }
      return GroupSpec::free_abelian(a, rank, v);
    }
    case GroupKind::monomial: {
      auto rank = get<std::size_t>(j, "rank", "rank");
      auto action =
          get<std::vector<std::vector<int>>>(j, "action", "signed permutations");
      std::vector<Element> v;
      for (Letter x = 0; x < a.size(); ++x) {
        Json const& e = image(x);
        v.push_back(Element{int_vector(field(e, "translation"), "translation"),
                            get<std::uint32_t>(e, "part", "finite part")});
      }
      return GroupSpec::monomial(a, rank, action, v);
    }
    case GroupKind::finite_table: {
      auto table = get<std::vector<std::vector<std::uint32_t>>>(
          j, "table", "multiplication table");
      std::vector<std::uint32_t> v;
      for (Letter x = 0; x < a.size(); ++x) {
        v.push_back(get<std::uint32_t>(image(x), "table element"));
      }
      return GroupSpec::finite_table(a, table, v);
    }
  }
  throw FormatError("unknown group kind");
}

Json to_json(Ball const& ball) {
  Json j = Json::array();
  for (std::size_t i = 0; i < ball.size(); ++i) {
    j.push_back({{"element", element_to_json(ball.spec(), ball.element(i))},
                 {"length", ball.length(i)},
                 {"nf", word_to_json(ball.alphabet(), ball.nf(i))}});
  }
  return j;
}

Json to_json(Cprs const& r) {
  return {{"alphabet", to_json(r.alphabet())},
          {"rules", to_json(r.rules)},
          {"order", to_string(r.order)}};
}

Cprs cprs_from_json(Json const& j) {
  Alphabet a = alphabet_from_json(field(j, "alphabet"));
  SyncLanguage rules = sync_from_json(field(j, "rules"));
  auto const& p = rules.alphabet();
  if (p.arity() != 2 || !(p.base(0) == a) || !(p.base(1) == a)) {
    throw FormatError("rules must be pairs over the declared alphabet");
  }
  Order order;
  try {
    order = parse_order(get<std::string>(j, "order", "order"));
  } catch (FormatError const&) {
    throw;
  } catch (Error const& e) {
    throw FormatError(e.what());
  }
  return Cprs(std::move(rules), order);
}

Json to_json(FlowTable const& ft, Ball const& ball) {
  auto const& a = ball.alphabet();
  Json edges = Json::array();
  for (auto const& e : ft.entries) {
    std::size_t j = ball.neighbour(e.element, e.letter);
    edges.push_back(
        {{"element", element_to_json(ball.spec(), ball.element(e.element))},
         {"nf", word_to_json(a, ft.normal_forms.at(e.element))},
         {"letter", a.name(e.letter)},
         {"label", word_to_json(a, e.label)},
         {"fixed", e.fixed},
         {"alpha_endpoints", {ball.length(e.element), ball.length(j)}}});
  }
  return {{"bound", ft.bound},
          {"edges", edges},
          {"order", to_string(ball.order())},
          {"radius", ball.radius()}};
}

FlowTable flow_from_json(Json const& j, Ball const& ball) {
  auto const& a = ball.alphabet();
  FlowTable ft;
  ft.ball = &ball;
  ft.bound = get<std::size_t>(j, "bound", "bound");
  if (get<std::size_t>(j, "radius", "radius") != ball.radius() ||
      get<std::string>(j, "order", "order") != to_string(ball.order())) {
    throw FormatError("the flow table was written for another ball");
  }
  ft.normal_forms.assign(ball.size(), Word{});
  std::vector<bool> seen(ball.size(), false);
  Json const& edges = field(j, "edges");
  if (!edges.is_array()) {
    throw FormatError("edges must be an array");
  }
  for (auto const& e : edges) {
    std::size_t i =
        ball.find(element_from_json(ball.spec(), field(e, "element")));
    if (i == Ball::npos) {
      throw FormatError("flow table element outside the ball");
    }
    auto letter = get<std::string>(e, "letter", "letter");
    if (!a.contains(letter)) {
      throw FormatError("unknown letter '" + letter + "'");
    }
    Word nf = word_from_json(a, field(e, "nf"));
    if (seen[i] && ft.normal_forms[i] != nf) {
      throw FormatError("two normal forms recorded for one element");
    }
    seen[i] = true;
    ft.normal_forms[i] = std::move(nf);
    ft.entries.push_back({i, a.letter(letter), word_from_json(a, field(e, "label")),
                          get<bool>(e, "fixed", "fixed flag")});
  }
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (!seen[i] && ball.size() > 1) {
      throw FormatError("the flow table does not cover the ball");
    }
  }
  std::sort(ft.entries.begin(), ft.entries.end(),
            [](FlowEntry const& x, FlowEntry const& y) {
              return std::pair(x.element, x.letter) <
                     std::pair(y.element, y.letter);
            });
  for (std::size_t k = 1; k < ft.entries.size(); ++k) {
    if (ft.entries[k - 1].element == ft.entries[k].element &&
        ft.entries[k - 1].letter == ft.entries[k].letter) {
      throw FormatError("duplicate flow table edge");
    }
  }
  return ft;
}

Json to_json(CheckResult const& r) {
  return {{"check", to_string(r.check)},
          {"bound", r.bound},
          {"pass", r.pass},
          {"examined", r.examined},
          {"failures", r.failures},
          {"violations", r.violations}};
}

Json to_json(VerifyReport const& r) {
  Json checks = Json::array();
  for (auto const& c : r.results) {
    checks.push_back(to_json(c));
  }
  return {{"pass", r.pass()}, {"checks", checks}};
}

Json to_json(GeoReport const& r) {
  return {{"check", "geodesic-autostackable"},
          {"pass", r.pass()},
          {"edges", r.edges},
          {"moved", r.moved},
          {"skipped", r.skipped},
          {"alpha_violations", r.alpha_violations},
          {"endpoint_violations", r.endpoint_violations},
          {"fixed_violations", r.fixed_violations},
          {"bound_violations", r.bound_violations},
          {"normal_form_violations", r.normal_form_violations},
          {"violations", r.violations}};
}

Json to_json(FftpReport const& r, Alphabet const& a) {
  Json j;
  j["k"] = r.k ? Json(*r.k) : Json(nullptr);
  j["max_k"] = r.max_k;
  j["max_len"] = r.max_len;
  j["verified"] = r.verified();
  j["words_checked"] = r.words_checked;
  j["non_geodesic"] = r.non_geodesic;
  Json ce = Json::array();
  for (auto const& [k, w] : r.counterexamples) {
    ce.push_back({{"k", k}, {"word", word_to_json(a, w)}});
  }
  j["counterexamples"] = ce;
  if (!r.counterexamples.empty()) {
    j["counterexample"] = word_to_json(a, r.counterexamples.back().second);
  }
  return j;
}

Json to_json(TheoremAReport const& r, Alphabet const& a) {
  Json middles = Json::array();
  for (auto const& m : r.middle_words) {
    middles.push_back(word_to_json(a, m));
  }
  return {{"k", r.k},
          {"automaton_states", r.automaton_states},
          {"k_overridden", r.k_overridden},
          {"n", to_string(r.n)},
          {"s1_rules", r.s1_rules},
          {"s2_classes", r.s2_classes},
          {"suffix_pairs", r.suffix_pairs},
          {"middle_words", middles},
          {"longest_middle", r.longest_middle},
          {"longest_overhang", r.longest_overhang},
          {"rules_states", r.rules_states}};
}

Json to_json(BoundednessProfile const& p) {
  return {{"constants", p.constants},
          {"constant", p.constants.empty() ? 0 : p.constant()},
          {"grows", p.grows()}};
}

Json to_json(ConvexPath const& p, Alphabet const& a) {
  return {{"label", word_to_json(a, p.label)},
          {"length", p.label.size()},
          {"bound", p.bound},
          {"chain", word_to_json(a, p.chain)}};
}

std::string dump(Json const& j) { return j.dump(2) + "\n"; }

Json load_file(std::filesystem::path const& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot read " + path.string());
  }
  try {
    return Json::parse(in);
  } catch (Json::exception const& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_file(std::filesystem::path const& path, Json const& j) {
  std::ofstream out(path);
  if (!out) {
    throw FormatError("cannot write " + path.string());
  }
  out << dump(j);
  if (!out) {
    throw FormatError("failed writing " + path.string());
  }
}

}  // namespace autostack::io
