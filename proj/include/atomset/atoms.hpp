// Copyright 2026 The Atomset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ATOMSET_ATOMS_HPP_
#define ATOMSET_ATOMS_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atomset {

// Base error type for all precondition and invariant violations.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a documented operation precondition does not hold.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

// An element of the countably infinite atom universe. Atoms carry no
// structure beyond equality; `index` is the position in the fixed global
// enumeration and gives the canonical total order.
class Atom {
 public:
  constexpr Atom() = default;
  constexpr explicit Atom(std::uint32_t index) : index_(index) {}

  constexpr std::uint32_t index() const { return index_; }

  friend constexpr auto operator<=>(Atom, Atom) = default;

 private:
  std::uint32_t index_ = 0;
};

// A finite set of atoms, stored sorted and duplicate-free. Doubles as the
// "support" of a symbolic object and as an explicit finite set value.
class AtomSet {
 public:
  AtomSet() = default;
  AtomSet(std::initializer_list<Atom> atoms)
      : AtomSet(std::vector<Atom>(atoms)) {}
  explicit AtomSet(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  }

  static AtomSet of_indices(std::initializer_list<std::uint32_t> indices) {
    std::vector<Atom> atoms;
    atoms.reserve(indices.size());
    for (std::uint32_t i : indices) atoms.emplace_back(i);
    return AtomSet(std::move(atoms));
  }

  // First n atoms of the global enumeration.
  static AtomSet first(std::uint32_t n) {
    std::vector<Atom> atoms;
    atoms.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) atoms.emplace_back(i);
    return AtomSet(std::move(atoms));
  }

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  bool contains(Atom a) const {
    return std::binary_search(atoms_.begin(), atoms_.end(), a);
  }

  bool contains_all(const AtomSet& other) const {
    return std::includes(atoms_.begin(), atoms_.end(), other.atoms_.begin(),
                         other.atoms_.end());
  }

  bool disjoint_with(const AtomSet& other) const {
    auto it = atoms_.begin();
    auto jt = other.atoms_.begin();
    while (it != atoms_.end() && jt != other.atoms_.end()) {
      if (*it < *jt) {
        ++it;
      } else if (*jt < *it) {
        ++jt;
      } else {
        return false;
      }
    }
    return true;
  }

  AtomSet union_with(const AtomSet& other) const {
    std::vector<Atom> out;
    out.reserve(atoms_.size() + other.atoms_.size());
    std::set_union(atoms_.begin(), atoms_.end(), other.atoms_.begin(),
                   other.atoms_.end(), std::back_inserter(out));
    return AtomSet(UncheckedTag{}, std::move(out));
  }

  AtomSet intersect_with(const AtomSet& other) const {
    std::vector<Atom> out;
    std::set_intersection(atoms_.begin(), atoms_.end(), other.atoms_.begin(),
                          other.atoms_.end(), std::back_inserter(out));
    return AtomSet(UncheckedTag{}, std::move(out));
  }

  AtomSet minus(const AtomSet& other) const {
    std::vector<Atom> out;
    std::set_difference(atoms_.begin(), atoms_.end(), other.atoms_.begin(),
                        other.atoms_.end(), std::back_inserter(out));
    return AtomSet(UncheckedTag{}, std::move(out));
  }

  AtomSet with(Atom a) const { return union_with(AtomSet{a}); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }

  friend auto operator<=>(const AtomSet&, const AtomSet&) = default;

 private:
  struct UncheckedTag {};
  AtomSet(UncheckedTag, std::vector<Atom> sorted) : atoms_(std::move(sorted)) {}

  std::vector<Atom> atoms_;
};

// The n lowest-order atoms outside `avoid`, in increasing order. This is the
// single fresh-witness policy used everywhere; every witness-producing
// operation inherits its determinism from it.
inline std::vector<Atom> fresh_atoms(std::size_t n, const AtomSet& avoid) {
  std::vector<Atom> out;
  out.reserve(n);
  for (std::uint32_t i = 0; out.size() < n; ++i) {
    Atom a(i);
    if (!avoid.contains(a)) out.push_back(a);
  }
  return out;
}

inline Atom fresh_atom(const AtomSet& avoid) { return fresh_atoms(1, avoid)[0]; }

// A permutation of the atom universe moving only finitely many atoms.
class FinitePermutation {
 public:
  FinitePermutation() = default;

  static FinitePermutation identity() { return FinitePermutation(); }

  static FinitePermutation transposition(Atom a, Atom b) {
    FinitePermutation sigma;
    if (a != b) {
      sigma.map_[a] = b;
      sigma.map_[b] = a;
    }
    return sigma;
  }

  // Builds the permutation from pairwise disjoint cycles.
  static FinitePermutation from_cycles(
      const std::vector<std::vector<Atom>>& cycles) {
    FinitePermutation sigma;
    std::set<Atom> seen;
    for (const auto& cycle : cycles) {
      for (Atom a : cycle) {
        if (!seen.insert(a).second) {
          throw PreconditionError("cycles are not pairwise disjoint");
        }
      }
      if (cycle.size() < 2) continue;
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        sigma.map_[cycle[i]] = cycle[(i + 1) % cycle.size()];
      }
    }
    return sigma;
  }

  Atom apply(Atom a) const {
    auto it = map_.find(a);
    return it == map_.end() ? a : it->second;
  }

  AtomSet apply(const AtomSet& s) const {
    std::vector<Atom> out;
    out.reserve(s.size());
    for (Atom a : s) out.push_back(apply(a));
    return AtomSet(std::move(out));
  }

  FinitePermutation inverse() const {
    FinitePermutation sigma;
    for (const auto& [from, to] : map_) sigma.map_[to] = from;
    return sigma;
  }

  // Composition: (this->after(other))(x) == this(other(x)).
  FinitePermutation after(const FinitePermutation& other) const {
    FinitePermutation sigma;
    std::set<Atom> domain;
    for (const auto& [from, to] : map_) domain.insert(from);
    for (const auto& [from, to] : other.map_) domain.insert(from);
    for (Atom a : domain) {
      Atom image = apply(other.apply(a));
      if (image != a) sigma.map_[a] = image;
    }
    return sigma;
  }

  bool is_identity() const { return map_.empty(); }

  bool fixes_pointwise(const AtomSet& s) const {
    for (Atom a : s) {
      if (apply(a) != a) return false;
    }
    return true;
  }

  AtomSet moved_atoms() const {
    std::vector<Atom> out;
    out.reserve(map_.size());
    for (const auto& [from, to] : map_) out.push_back(from);
    return AtomSet(std::move(out));
  }

  // Disjoint cycle decomposition, each cycle starting from its least atom,
  // cycles ordered by that least atom.
  std::vector<std::vector<Atom>> cycles() const {
    std::vector<std::vector<Atom>> out;
    std::set<Atom> done;
    for (const auto& [start, unused] : map_) {
      if (done.count(start) > 0) continue;
      std::vector<Atom> cycle;
      Atom a = start;
      do {
        cycle.push_back(a);
        done.insert(a);
        a = apply(a);
      } while (a != start);
      out.push_back(std::move(cycle));
    }
    return out;
  }

  friend bool operator==(const FinitePermutation& a,
                         const FinitePermutation& b) {
    return a.map_ == b.map_;
  }

 private:
  // Non-fixed points only; always a bijection on its domain.
  std::map<Atom, Atom> map_;
};

// Session-scoped naming of atoms. Identifiers of the form x<digits> denote
// the atom with that index directly; any other identifier is an alias bound
// to the lowest index not yet taken by an alias or an explicitly referenced
// atom. One table per session keeps canonical output reproducible.
class NameTable {
 public:
  // Returns the index encoded by an explicit name ("x12" -> 12), if any.
  static std::optional<std::uint32_t> explicit_index(const std::string& name) {
    if (name.size() < 2 || name[0] != 'x') return std::nullopt;
    std::uint64_t value = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') return std::nullopt;
      value = value * 10 + static_cast<std::uint64_t>(name[i] - '0');
      if (value > 0xffffffffull) throw Error("atom index out of range: " + name);
    }
    return static_cast<std::uint32_t>(value);
  }

  static bool valid_atom_name(const std::string& name) {
    if (name.empty() || name == "star") return false;
    if (name[0] < 'a' || name[0] > 'z') return false;
    for (char c : name) {
      if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) {
        return false;
      }
    }
    return true;
  }

  // Marks an explicitly referenced atom so no alias is bound to it.
  void reserve(Atom a) {
    if (auto it = name_by_atom_.find(a); it != name_by_atom_.end()) {
      throw Error("atom x" + std::to_string(a.index()) +
                  " is already bound to alias '" + it->second + "'");
    }
    used_.insert(a);
  }

  // Resolves a name to an atom, binding a new alias if needed.
  Atom bind(const std::string& name) {
    if (!valid_atom_name(name)) throw Error("invalid atom name: '" + name + "'");
    if (auto index = explicit_index(name)) {
      Atom a(*index);
      reserve(a);
      return a;
    }
    if (auto it = atom_by_name_.find(name); it != atom_by_name_.end()) {
      return it->second;
    }
    std::uint32_t i = 0;
    while (used_.count(Atom(i)) > 0) ++i;
    Atom a(i);
    used_.insert(a);
    atom_by_name_[name] = a;
    name_by_atom_[a] = name;
    return a;
  }

  std::optional<Atom> lookup(const std::string& name) const {
    auto it = atom_by_name_.find(name);
    if (it == atom_by_name_.end()) return std::nullopt;
    return it->second;
  }

  std::string name_of(Atom a) const {
    auto it = name_by_atom_.find(a);
    if (it != name_by_atom_.end()) return it->second;
    return "x" + std::to_string(a.index());
  }

 private:
  std::map<std::string, Atom> atom_by_name_;
  std::map<Atom, std::string> name_by_atom_;
  std::set<Atom> used_;
};

}  // namespace atomset

#endif  // ATOMSET_ATOMS_HPP_
