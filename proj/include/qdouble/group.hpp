// Copyright 2026 The qdouble Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdouble {

/// Index of a group element. Element 0 is always the identity.
using Elem = int;

inline constexpr int kMaxGroupOrder = 24;
inline constexpr int kMaxGeneratorPoints = 8;

/// Finite group stored as a Cayley table.
class FiniteGroup {
 public:
  /// Validates the table (closure, identity at index 0, inverses, associativity).
  FiniteGroup(std::string name, int order, std::vector<Elem> table,
              std::vector<std::string> names)
      : name_(std::move(name)), order_(order), table_(std::move(table)),
        names_(std::move(names)) {
    if (order_ <= 0) throw std::invalid_argument("group order must be positive");
    if (static_cast<int>(table_.size()) != order_ * order_)
      throw std::invalid_argument("cayley table has wrong size");
    if (static_cast<int>(names_.size()) != order_)
      throw std::invalid_argument("element name list has wrong size");
    for (Elem x : table_)
      if (x < 0 || x >= order_) throw std::invalid_argument("cayley entry out of range");
    for (Elem a = 0; a < order_; ++a)
      if (mul(0, a) != a || mul(a, 0) != a)
        throw std::invalid_argument("element 0 is not a two-sided identity");
    inv_.assign(order_, -1);
    for (Elem a = 0; a < order_; ++a) {
      for (Elem b = 0; b < order_; ++b) {
        if (mul(a, b) == 0) {
          if (mul(b, a) != 0)
            throw std::invalid_argument("left and right inverses differ for " + names_[a]);
          inv_[a] = b;
          break;
        }
      }
      if (inv_[a] < 0) throw std::invalid_argument("no inverse for " + names_[a]);
    }
    for (Elem a = 0; a < order_; ++a)
      for (Elem b = 0; b < order_; ++b)
        for (Elem c = 0; c < order_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("cayley table is not associative at (" + names_[a] +
                                        ", " + names_[b] + ", " + names_[c] + ")");
  }

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[a * order_ + b]; }
  Elem mul(Elem a, Elem b, Elem c) const { return mul(mul(a, b), c); }
  Elem inv(Elem a) const { return inv_[a]; }
  /// g x g^{-1}
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }
  const std::string& element_name(Elem a) const { return names_[a]; }
  const std::vector<std::string>& element_names() const { return names_; }
  const std::vector<Elem>& table() const { return table_; }

  bool is_abelian() const {
    for (Elem a = 0; a < order_; ++a)
      for (Elem b = 0; b < a; ++b)
        if (!commute(a, b)) return false;
    return true;
  }

  /// Finds an element by display name; -1 when absent.
  Elem find(std::string_view n) const {
    for (Elem a = 0; a < order_; ++a)
      if (names_[a] == n) return a;
    return -1;
  }

 private:
  std::string name_;
  int order_;
  std::vector<Elem> table_;
  std::vector<std::string> names_;
  std::vector<Elem> inv_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Conjugacy class C with representative r = c_1 and transversal q_i (c_i = q_i r q_i^{-1}).
struct ConjugacyClass {
  int index = 0;
  std::string name;
  Elem representative = 0;
  std::vector<Elem> elements;
  std::vector<Elem> transversal;

  int size() const { return static_cast<int>(elements.size()); }

  /// Position i of `g` inside the class, or -1.
  int position(Elem g) const {
    auto it = std::find(elements.begin(), elements.end(), g);
    return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
  }
};

/// Subgroup of a parent group, with an induced stand-alone group for representation theory.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<Elem> members) : parent_(std::move(parent)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
    if (members_.empty() || members_.front() != parent_->identity())
      throw std::invalid_argument("subgroup must contain the identity");
    local_.assign(parent_->order(), -1);
    for (int i = 0; i < static_cast<int>(members_.size()); ++i) local_[members_[i]] = i;
    for (Elem a : members_) {
      if (local_[parent_->inv(a)] < 0) throw std::invalid_argument("subgroup not closed under inverse");
      for (Elem b : members_)
        if (local_[parent_->mul(a, b)] < 0)
          throw std::invalid_argument("subgroup not closed under product");
    }
  }

  const FiniteGroup& parent() const { return *parent_; }
  const GroupPtr& parent_ptr() const { return parent_; }
  const std::vector<Elem>& members() const { return members_; }
  int order() const { return static_cast<int>(members_.size()); }
  bool contains(Elem g) const { return local_[g] >= 0; }
  /// Index of `g` inside `members()`, or -1.
  int local_index(Elem g) const { return local_[g]; }
  const std::vector<int>& local_map() const { return local_; }

  /// The subgroup as a group of its own; local element i is members()[i].
  FiniteGroup as_group(std::string name) const {
    const int n = order();
    std::vector<Elem> table(n * n);
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) {
      names[i] = parent_->element_name(members_[i]);
      for (int j = 0; j < n; ++j) table[i * n + j] = local_[parent_->mul(members_[i], members_[j])];
    }
    return FiniteGroup(std::move(name), n, std::move(table), std::move(names));
  }

 private:
  GroupPtr parent_;
  std::vector<Elem> members_;
  std::vector<int> local_;
};

/// Result of writing g = q_i n with n in the centralizer of the class representative.
struct Factorization {
  int coset = 0;
  Elem centralizer_part = 0;
};

namespace detail {

using Perm = std::vector<std::uint8_t>;

inline Perm perm_compose(const Perm& a, const Perm& b) {  // (a b)(x) = a(b(x))
  Perm out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[x] = a[b[x]];
  return out;
}

inline std::string cycle_notation(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == start) continue;
    out += '(';
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      first = false;
      x = p[x];
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

inline std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> lengths;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (std::size_t x = start; !seen[x]; x = p[x]) {
      seen[x] = true;
      ++len;
    }
    if (len > 1) lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

inline std::string cycle_type_name(const std::vector<int>& type) {
  if (type.empty()) return "e";
  if (type == std::vector<int>{2}) return "transposition";
  if (type == std::vector<int>{2, 2}) return "double-transposition";
  if (type.size() == 1) return std::to_string(type[0]) + "-cycle";
  std::string out;
  for (std::size_t i = 0; i < type.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(type[i]);
  }
  return out;
}

/// Closure of a set of permutations; identity first, then lexicographic order.
inline std::vector<Perm> close_permutations(const std::vector<Perm>& gens, std::size_t points,
                                            int max_order) {
  Perm id(points);
  std::iota(id.begin(), id.end(), std::uint8_t{0});
  std::set<Perm> seen{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& p : frontier) {
      for (const Perm& g : gens) {
        Perm q = perm_compose(g, p);
        if (seen.insert(q).second) {
          if (static_cast<int>(seen.size()) > max_order)
            throw std::invalid_argument("generated group exceeds order " + std::to_string(max_order));
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};  // std::set order is lexicographic, identity smallest
}

inline std::shared_ptr<FiniteGroup> group_from_perms(std::string name, const std::vector<Perm>& gens,
                                                     std::size_t points) {
  auto elems = close_permutations(gens, points, kMaxGroupOrder);
  const int n = static_cast<int>(elems.size());
  std::map<Perm, int> index;
  for (int i = 0; i < n; ++i) index[elems[i]] = i;
  std::vector<Elem> table(n * n);
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) {
    names[i] = cycle_notation(elems[i]);
    for (int j = 0; j < n; ++j) table[i * n + j] = index.at(perm_compose(elems[i], elems[j]));
  }
  return std::make_shared<FiniteGroup>(std::move(name), n, std::move(table), std::move(names));
}

inline int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Cyclic group Z_n; elements e, g, g^2, ...
inline GroupPtr cyclic_group(int n) {
  if (n < 1 || n > kMaxGroupOrder) throw std::invalid_argument("Z<n> needs 1 <= n <= 24");
  std::vector<Elem> table(n * n);
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a));
    for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  }
  return std::make_shared<FiniteGroup>("Z" + std::to_string(n), n, std::move(table), std::move(names));
}

inline GroupPtr symmetric_group(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("S<n> needs 1 <= n <= 4");
  using detail::Perm;
  std::vector<Perm> gens;
  if (n >= 2) {
    Perm t(n), c(n);
    std::iota(t.begin(), t.end(), std::uint8_t{0});
    std::swap(t[0], t[1]);
    for (int i = 0; i < n; ++i) c[i] = static_cast<std::uint8_t>((i + 1) % n);
    gens = {t, c};
  }
  return detail::group_from_perms("S" + std::to_string(n), gens, n);
}

/// Dihedral group of order 2n acting on the vertices of an n-gon.
inline GroupPtr dihedral_group(int n) {
  if (n < 3 || 2 * n > kMaxGroupOrder) throw std::invalid_argument("D<n> needs 3 <= n <= 12");
  using detail::Perm;
  Perm rot(n), ref(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = static_cast<std::uint8_t>((i + 1) % n);
    ref[i] = static_cast<std::uint8_t>(n - 1 - i);
  }
  return detail::group_from_perms("D" + std::to_string(n), {rot, ref}, n);
}

/// Quaternion group {±1, ±i, ±j, ±k}.
inline GroupPtr quaternion_group() {
  // Unit quaternions as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k.
  struct Q {
    int sign;
    int axis;
  };
  static constexpr std::array<std::array<int, 4>, 4> axis_prod{{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};
  static constexpr std::array<std::array<int, 4>, 4> sign_prod{{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}}};
  const std::array<Q, 8> elems{{{1, 0}, {-1, 0}, {1, 1}, {-1, 1}, {1, 2}, {-1, 2}, {1, 3}, {-1, 3}}};
  const std::array<const char*, 8> names{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  auto index_of = [&](Q q) {
    for (int i = 0; i < 8; ++i)
      if (elems[i].sign == q.sign && elems[i].axis == q.axis) return i;
    return -1;
  };
  std::vector<Elem> table(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      Q p{elems[a].sign * elems[b].sign * sign_prod[elems[a].axis][elems[b].axis],
          axis_prod[elems[a].axis][elems[b].axis]};
      table[a * 8 + b] = index_of(p);
    }
  return std::make_shared<FiniteGroup>("Q8", 8, std::move(table),
                                       std::vector<std::string>(names.begin(), names.end()));
}

/// Parses generator lines in cycle notation, e.g. "(1 2)(3 4)"; lines may also be separated by ';'.
inline GroupPtr group_from_generators(std::string_view text, std::string name = "gen") {
  using detail::Perm;
  std::vector<std::vector<std::vector<int>>> gens;  // generator -> cycles -> points
  int max_point = 0;
  std::string line;
  auto flush = [&](const std::string& ln) {
    std::vector<std::vector<int>> cycles;
    std::size_t pos = 0;
    bool any = false;
    while (pos < ln.size()) {
      char c = ln[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
        continue;
      }
      if (c != '(') throw std::invalid_argument("expected '(' in generator '" + ln + "'");
      auto close = ln.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("unbalanced '(' in generator '" + ln + "'");
      std::istringstream in(ln.substr(pos + 1, close - pos - 1));
      std::vector<int> cyc;
      std::string tok;
      while (in >> tok) {
        int p = detail::parse_int(tok, "point");
        if (p < 1 || p > kMaxGeneratorPoints)
          throw std::invalid_argument("generator points must lie in 1..8");
        cyc.push_back(p);
        max_point = std::max(max_point, p);
      }
      std::set<int> uniq(cyc.begin(), cyc.end());
      if (uniq.size() != cyc.size()) throw std::invalid_argument("repeated point in cycle of '" + ln + "'");
      cycles.push_back(std::move(cyc));
      pos = close + 1;
      any = true;
    }
    if (any) gens.push_back(std::move(cycles));
  };
  for (char c : text) {
    if (c == '\n' || c == ';') {
      flush(line);
      line.clear();
    } else {
      line += c;
    }
  }
  flush(line);
  if (gens.empty()) throw std::invalid_argument("no generators given");
  const std::size_t points = std::max(1, max_point);
  std::vector<Perm> perms;
  for (const auto& cycles : gens) {
    Perm p(points);
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    std::vector<bool> used(points, false);
    for (const auto& cyc : cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        int from = cyc[i] - 1;
        if (used[from]) throw std::invalid_argument("cycles in one generator must be disjoint");
        used[from] = true;
        p[from] = static_cast<std::uint8_t>(cyc[(i + 1) % cyc.size()] - 1);
      }
    }
    perms.push_back(std::move(p));
  }
  return detail::group_from_perms(std::move(name), perms, points);
}

/// Builds a group from a preset name (Z<n>, S<n>, D<n>, Q8) or cycle-notation generators.
inline GroupPtr build_group(std::string_view spec) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  spec = trim(spec);
  if (spec.empty()) throw std::invalid_argument("empty group spec");
  if (spec.front() == '(') return group_from_generators(spec);
  if (spec == "Q8") return quaternion_group();
  if (spec.size() >= 2) {
    int n = detail::parse_int(spec.substr(1), "group parameter");
    switch (spec.front()) {
      case 'Z': return cyclic_group(n);
      case 'S': return symmetric_group(n);
      case 'D': return dihedral_group(n);
      default: break;
    }
  }
  throw std::invalid_argument("unknown group spec '" + std::string(spec) +
                              "' (expected Z<n>, S<n>, D<n>, Q8 or cycle generators)");
}

/// Conjugacy classes in order of their smallest element; representative = smallest element,
/// and each transversal element q_i is the smallest g with g r g^{-1} = c_i.
inline std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<int> owner(n, -1);
  std::vector<ConjugacyClass> classes;
  for (Elem r = 0; r < n; ++r) {
    if (owner[r] >= 0) continue;
    ConjugacyClass c;
    c.index = static_cast<int>(classes.size());
    c.representative = r;
    std::vector<Elem> q_of(n, -1);
    for (Elem x = 0; x < n; ++x) {
      Elem y = g.conj(x, r);
      if (q_of[y] < 0) q_of[y] = x;
    }
    for (Elem y = 0; y < n; ++y) {
      if (q_of[y] < 0) continue;
      c.elements.push_back(y);
      c.transversal.push_back(q_of[y]);
      owner[y] = c.index;
    }
    classes.push_back(std::move(c));
  }

  // Names: cycle types for permutation groups, representative names otherwise.
  bool perm_names = true;
  for (const auto& nm : g.element_names())
    if (nm != "e" && (nm.empty() || nm.front() != '(')) perm_names = false;
  std::map<std::string, int> count;
  for (auto& c : classes) {
    const std::string& rep = g.element_name(c.representative);
    if (c.representative == g.identity()) {
      c.name = "e";
    } else if (perm_names) {
      // Recover the cycle type from the cycle notation string.
      std::vector<int> type;
      int len = 0;
      for (char ch : rep) {
        if (ch == '(') len = 1;
        else if (ch == ' ') ++len;
        else if (ch == ')') type.push_back(len);
      }
      std::sort(type.rbegin(), type.rend());
      c.name = detail::cycle_type_name(type);
    } else {
      c.name = rep;
    }
    ++count[c.name];
  }
  for (auto& c : classes)
    if (count[c.name] > 1) c.name += "_" + std::to_string(c.index);
  return classes;
}

inline Subgroup centralizer(const GroupPtr& g, Elem r) {
  std::vector<Elem> members;
  for (Elem x = 0; x < g->order(); ++x)
    if (g->commute(x, r)) members.push_back(x);
  return Subgroup(g, std::move(members));
}

/// Unique (i, n) with g = q_i n and n in Z_G(r).
inline Factorization factorize(const FiniteGroup& g, const ConjugacyClass& c, Elem x) {
  const int i = c.position(g.conj(x, c.representative));
  if (i < 0) throw std::logic_error("factorize: conjugate of representative not in class");
  return {i, g.mul(g.inv(c.transversal[i]), x)};
}

}  // namespace qdouble
