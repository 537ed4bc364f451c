#include "autostack/group.hpp"

#include <algorithm>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

namespace autostack {

std::size_t ElementHash::operator()(Element const& e) const {
  std::size_t h = boost::hash_range(e.coords.begin(), e.coords.end());
  boost::hash_combine(h, e.finite);
  return h;
}

std::string to_string(Element const& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    out += (i ? "," : "") + std::to_string(e.coords[i]);
  }
  return out + ";" + std::to_string(e.finite) + ")";
}

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::free_abelian: return "free-abelian";
    case GroupKind::monomial: return "monomial";
    case GroupKind::finite_table: return "finite-table";
  }
  return "?";
}

GroupKind parse_group_kind(std::string_view name) {
  if (name == "free-abelian") {
    return GroupKind::free_abelian;
  }
  if (name == "monomial") {
    return GroupKind::monomial;
  }
  if (name == "finite-table") {
    return GroupKind::finite_table;
  }
  throw Error("unknown group kind '" + std::string(name) + "'");
}

GroupSpec GroupSpec::free_abelian(Alphabet alphabet,
                                  std::size_t rank,
                                  std::vector<std::vector<std::int64_t>> gens) {
  std::vector<int> id(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    id[i] = int(i) + 1;
  }
  std::vector<Element> elems;
  for (auto& v : gens) {
    elems.push_back(Element{std::move(v), 0});
  }
  GroupSpec g = monomial(std::move(alphabet), rank, {id}, std::move(elems));
  g.kind_ = GroupKind::free_abelian;
  return g;
}

GroupSpec GroupSpec::monomial(Alphabet alphabet,
                              std::size_t rank,
                              std::vector<std::vector<int>> action,
                              std::vector<Element> gens) {
  GroupSpec g;
  g.kind_ = GroupKind::monomial;
  g.rank_ = rank;
  g.alphabet_ = std::move(alphabet);
  g.action_ = std::move(action);
  g.gens_ = std::move(gens);
  if (g.action_.empty()) {
    throw Error("the finite part needs at least the identity");
  }
  for (auto const& p : g.action_) {
    if (p.size() != rank) {
      throw Error("signed permutation has the wrong size");
    }
    std::vector<bool> hit(rank, false);
    for (int x : p) {
      std::size_t j = std::size_t(x < 0 ? -x : x);
      if (j == 0 || j > rank || hit[j - 1]) {
        throw Error("not a signed permutation");
      }
      hit[j - 1] = true;
    }
  }
  for (std::size_t i = 0; i < rank; ++i) {
    if (g.action_[0][i] != int(i) + 1) {
      throw Error("the first signed permutation must be the identity");
    }
  }
  // Composition table: (s t) v = s (t v).
  std::size_t const n = g.action_.size();
  g.table_.assign(n, std::vector<std::uint32_t>(n));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      std::vector<int> st(rank);
      for (std::size_t j = 0; j < rank; ++j) {
        int tj = g.action_[t][j];
        int target = g.action_[s][std::size_t(std::abs(tj)) - 1];
        st[j] = tj < 0 ? -target : target;
      }
      auto it = std::find(g.action_.begin(), g.action_.end(), st);
      if (it == g.action_.end()) {
        throw Error("the signed permutations are not closed under composition");
      }
      g.table_[s][t] = std::uint32_t(it - g.action_.begin());
    }
  }
  for (auto const& e : g.gens_) {
    if (e.coords.size() != rank || e.finite >= n) {
      throw Error("generator image out of range");
    }
  }
  g.validate();
  return g;
}

GroupSpec GroupSpec::finite_table(Alphabet alphabet,
                                  std::vector<std::vector<std::uint32_t>> table,
                                  std::vector<std::uint32_t> gens) {
  GroupSpec g;
  g.kind_ = GroupKind::finite_table;
  g.alphabet_ = std::move(alphabet);
  g.table_ = std::move(table);
  std::size_t const n = g.table_.size();
  if (n == 0) {
    throw Error("empty multiplication table");
  }
  for (auto const& row : g.table_) {
    if (row.size() != n) {
      throw Error("multiplication table is not square");
    }
    for (auto x : row) {
      if (x >= n) {
        throw Error("multiplication table entry out of range");
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (g.table_[g.table_[x][y]][z] != g.table_[x][g.table_[y][z]]) {
          throw Error("multiplication table is not associative");
        }
      }
    }
  }
  for (auto x : gens) {
    if (x >= n) {
      throw Error("generator image out of range");
    }
    g.gens_.push_back(Element{{}, x});
  }
  g.validate();
  return g;
}

void GroupSpec::validate() {
  std::size_t const n = table_.size();
  bool found = false;
  for (std::uint32_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x) {
      ok = table_[e][x] == x && table_[x][e] == x;
    }
    if (ok) {
      finite_identity_ = e;
      found = true;
    }
  }
  if (!found) {
    throw Error("the finite part has no identity");
  }
  finite_inverse_.assign(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    bool ok = false;
    for (std::uint32_t y = 0; y < n && !ok; ++y) {
      if (table_[x][y] == finite_identity_ && table_[y][x] == finite_identity_) {
        finite_inverse_[x] = y;
        ok = true;
      }
    }
    if (!ok) {
      throw Error("element " + std::to_string(x) + " has no inverse");
    }
  }
  if (gens_.size() != alphabet_.size()) {
    throw Error("one generator image per letter is required");
  }
  for (Letter a = 0; a < alphabet_.size(); ++a) {
    if (gens_[alphabet_.inverse(a)] != inverse(gens_[a])) {
      throw Error("image of the inverse of '" + alphabet_.name(a) +
                  "' is not the inverse of its image");
    }
  }
}

std::vector<std::int64_t> GroupSpec::act(
    std::uint32_t s, std::vector<std::int64_t> const& v) const {
  std::vector<std::int64_t> out(rank_, 0);
  for (std::size_t j = 0; j < rank_; ++j) {
    int p = action_[s][j];
    std::size_t i = std::size_t(std::abs(p)) - 1;
    out[i] += p < 0 ? -v[j] : v[j];
  }
  return out;
}

Element GroupSpec::identity() const {
  return Element{std::vector<std::int64_t>(rank_, 0), finite_identity_};
}

Element GroupSpec::multiply(Element const& x, Element const& y) const {
  Element out;
  out.finite = table_[x.finite][y.finite];
  if (rank_ > 0) {
    out.coords = act(x.finite, y.coords);
    for (std::size_t i = 0; i < rank_; ++i) {
      out.coords[i] += x.coords[i];
    }
  }
  return out;
}

Element GroupSpec::inverse(Element const& x) const {
  // (v, s)^-1 = (-s^-1 v, s^-1)
  Element out;
  out.finite = finite_inverse_[x.finite];
  if (rank_ > 0) {
    out.coords = act(out.finite, x.coords);
    for (auto& c : out.coords) {
      c = -c;
    }
  }
  return out;
}

Element GroupSpec::evaluate(Word const& w) const {
  alphabet_.check(w);
  Element g = identity();
  for (Letter a : w) {
    g = times_letter(g, a);
  }
  return g;
}

Ball::Ball(GroupSpec spec,
           std::size_t radius,
           Order order,
           std::size_t entry_limit)
    : spec_(std::move(spec)), radius_(radius), order_(order) {
  auto const& a = spec_.alphabet();
  std::unordered_map<Element, std::size_t, ElementHash> index;
  elements_.push_back(spec_.identity());
  lengths_.push_back(0);
  nfs_.emplace_back();
  index.emplace(elements_[0], 0);
  sphere_start_ = {0, 1};
  for (std::size_t n = 0; n < radius_; ++n) {
    std::size_t lo = sphere_start_[n], hi = sphere_start_[n + 1];
    std::unordered_map<Element, Word, ElementHash> fresh;
    for (std::size_t i = lo; i < hi; ++i) {
      for (Letter l = 0; l < a.size(); ++l) {
        Element g = spec_.times_letter(elements_[i], l);
        if (index.count(g)) {
          continue;
        }
        Word cand = nfs_[i];
        cand.push_back(l);
        auto [it, inserted] = fresh.emplace(g, cand);
        if (!inserted && less(a, cand, it->second, order_)) {
          it->second = std::move(cand);
        }
      }
    }
    std::vector<std::pair<Word, Element>> level;
    for (auto& [g, w] : fresh) {
      level.emplace_back(std::move(w), g);
    }
    std::sort(level.begin(), level.end(), [&](auto const& x, auto const& y) {
      return less(a, x.first, y.first, order_);
    });
    if (elements_.size() + level.size() > entry_limit) {
      throw Error("ball of radius " + std::to_string(radius_) +
                  " exceeds the entry limit of " + std::to_string(entry_limit));
    }
    for (auto& [w, g] : level) {
      index.emplace(g, elements_.size());
      elements_.push_back(g);
      lengths_.push_back(n + 1);
      nfs_.push_back(std::move(w));
    }
    sphere_start_.push_back(elements_.size());
  }
  neighbours_.assign(elements_.size() * a.size(), npos);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (Letter l = 0; l < a.size(); ++l) {
      auto it = index.find(spec_.times_letter(elements_[i], l));
      if (it != index.end()) {
        neighbours_[i * a.size() + l] = it->second;
      }
    }
  }
  sorted_.reserve(elements_.size());
  for (auto& [g, i] : index) {
    sorted_.emplace_back(g, i);
  }
  std::sort(sorted_.begin(), sorted_.end());
}

std::size_t Ball::find(Element const& g) const {
  auto it = std::lower_bound(
      sorted_.begin(), sorted_.end(), g,
      [](auto const& entry, Element const& x) { return entry.first < x; });
  if (it == sorted_.end() || it->first != g) {
    return npos;
  }
  return it->second;
}

std::size_t Ball::index(Element const& g) const {
  std::size_t i = find(g);
  if (i == npos) {
    throw Error("element " + to_string(g) + " lies outside the ball of radius " +
                std::to_string(radius_));
  }
  return i;
}

std::pair<std::size_t, std::size_t> Ball::sphere(std::size_t n) const {
  if (n > radius_) {
    throw Error("sphere radius exceeds the ball");
  }
  return {sphere_start_[n], sphere_start_[n + 1]};
}

std::size_t Ball::find_word(Word const& w) const {
  alphabet().check(w);
  std::size_t i = 0;
  for (Letter a : w) {
    i = neighbour(i, a);
    if (i == npos) {
      return find(spec_.evaluate(w));
    }
  }
  return i;
}

std::size_t geodesic_length(Ball const& ball, Element const& g) {
  return ball.length(g);
}

Word const& nf_of(Ball const& ball, Element const& g) {
  return ball.nf(g);
}

std::size_t fellow_travel_distance(Ball const& ball,
                                   Word const& u,
                                   Word const& v) {
  auto const& spec = ball.spec();
  Element gu = spec.identity(), gv = spec.identity();
  std::size_t best = 0;
  std::size_t const n = std::max(u.size(), v.size());
  for (std::size_t t = 0; t <= n; ++t) {
    if (t > 0 && t <= u.size()) {
      gu = spec.times_letter(gu, u[t - 1]);
    }
    if (t > 0 && t <= v.size()) {
      gv = spec.times_letter(gv, v[t - 1]);
    }
    Element diff = spec.multiply(spec.inverse(gu), gv);
    std::size_t i = ball.find(diff);
    if (i == Ball::npos) {
      throw Error("prefix difference escapes the ball of radius " +
                  std::to_string(ball.radius()));
    }
    best = std::max(best, ball.length(i));
  }
  return best;
}

bool is_geodesic(Ball const& ball, Word const& w) {
  std::size_t i = ball.find_word(w);
  if (i == Ball::npos) {
    throw Error("word endpoint lies outside the ball");
  }
  return ball.length(i) == w.size();
}

}  // namespace autostack
