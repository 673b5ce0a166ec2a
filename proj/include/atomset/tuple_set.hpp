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

#ifndef ATOMSET_TUPLE_SET_HPP_
#define ATOMSET_TUPLE_SET_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "atomset/atoms.hpp"
#include "atomset/card.hpp"

namespace atomset {

// Per-coordinate label inside a cell: either a context atom the coordinate is
// pinned to, or a fresh block id (1-based). Coordinates with equal codes are
// exactly the coordinates forced equal.
class CellCode {
 public:
  static CellCode param(Atom a) { return CellCode(static_cast<std::int64_t>(a.index())); }
  static CellCode fresh(std::uint32_t block) {
    if (block == 0) throw PreconditionError("fresh block ids are 1-based");
    return CellCode(-static_cast<std::int64_t>(block));
  }

  bool is_param() const { return value_ >= 0; }
  bool is_fresh() const { return value_ < 0; }
  Atom atom() const {
    if (!is_param()) throw PreconditionError("not a param code");
    return Atom(static_cast<std::uint32_t>(value_));
  }
  std::uint32_t fresh_index() const {
    if (!is_fresh()) throw PreconditionError("not a fresh code");
    return static_cast<std::uint32_t>(-value_);
  }

  friend auto operator<=>(CellCode, CellCode) = default;

 private:
  explicit CellCode(std::int64_t value) : value_(value) {}
  // >= 0: atom index; < 0: fresh block -value.
  std::int64_t value_;
};

// One orbit of k-tuples under the permutations fixing the context pointwise:
// coordinates are equal exactly when their codes coincide, param coordinates
// equal their atom, and fresh blocks take pairwise distinct values outside
// the whole context. Fresh blocks are renumbered 1..f in order of first
// occurrence, so structural equality is orbit equality.
class Cell {
 public:
  explicit Cell(std::vector<CellCode> codes) : codes_(std::move(codes)) {
    std::map<std::uint32_t, std::uint32_t> renumber;
    for (CellCode& code : codes_) {
      if (!code.is_fresh()) continue;
      auto [it, inserted] = renumber.emplace(
          code.fresh_index(), static_cast<std::uint32_t>(renumber.size() + 1));
      code = CellCode::fresh(it->second);
    }
  }

  std::uint32_t arity() const { return static_cast<std::uint32_t>(codes_.size()); }

  std::uint32_t fresh_block_count() const {
    std::uint32_t max_fresh = 0;
    for (CellCode code : codes_) {
      if (code.is_fresh()) max_fresh = std::max(max_fresh, code.fresh_index());
    }
    return max_fresh;
  }

  AtomSet param_atoms() const {
    std::vector<Atom> atoms;
    for (CellCode code : codes_) {
      if (code.is_param()) atoms.push_back(code.atom());
    }
    return AtomSet(std::move(atoms));
  }

  const std::vector<CellCode>& codes() const { return codes_; }

  friend auto operator<=>(const Cell&, const Cell&) = default;

 private:
  std::vector<CellCode> codes_;
};

// Every canonical cell of arity k over the given context. The cells partition
// A^k, which is what makes the Boolean algebra structural.
inline std::vector<Cell> all_cells(std::uint32_t k, const AtomSet& context) {
  std::vector<Cell> out;
  // Set partitions of the k coordinates as restricted growth strings; block
  // ids appear in order of their least coordinate.
  std::vector<std::uint32_t> rgs(k, 0);
  std::function<void(std::uint32_t, std::uint32_t)> fill_blocks =
      [&](std::uint32_t pos, std::uint32_t used_blocks) {
        if (pos == k) {
          // Label each block with a distinct context atom or with Fresh.
          std::vector<std::optional<Atom>> labels(used_blocks);
          std::vector<bool> taken(context.size(), false);
          std::function<void(std::uint32_t)> fill_labels =
              [&](std::uint32_t block) {
                if (block == used_blocks) {
                  std::vector<CellCode> codes;
                  codes.reserve(k);
                  std::vector<std::uint32_t> fresh_id(used_blocks, 0);
                  std::uint32_t next_fresh = 1;
                  for (std::uint32_t b = 0; b < used_blocks; ++b) {
                    if (!labels[b].has_value()) fresh_id[b] = next_fresh++;
                  }
                  for (std::uint32_t i = 0; i < k; ++i) {
                    std::uint32_t b = rgs[i];
                    codes.push_back(labels[b].has_value()
                                        ? CellCode::param(*labels[b])
                                        : CellCode::fresh(fresh_id[b]));
                  }
                  out.emplace_back(std::move(codes));
                  return;
                }
                labels[block] = std::nullopt;
                fill_labels(block + 1);
                for (std::size_t ai = 0; ai < context.size(); ++ai) {
                  if (taken[ai]) continue;
                  taken[ai] = true;
                  labels[block] = context.atoms()[ai];
                  fill_labels(block + 1);
                  taken[ai] = false;
                }
              };
          fill_labels(0);
          return;
        }
        for (std::uint32_t b = 0; b <= used_blocks; ++b) {
          rgs[pos] = b;
          fill_blocks(pos + 1, std::max(used_blocks, b + 1));
        }
      };
  if (k == 0) {
    out.emplace_back(std::vector<CellCode>{});
  } else {
    fill_blocks(0, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// A definable subset of A^k with parameters from `context`, stored as a
// disjoint union of canonical cells. Equality over the same context is
// structural equality.
class TupleSet {
 public:
  TupleSet(std::uint32_t k, AtomSet context, std::vector<Cell> cells)
      : k_(k), context_(std::move(context)), cells_(std::move(cells)) {
    for (const Cell& cell : cells_) {
      if (cell.arity() != k_) throw PreconditionError("cell arity mismatch");
      if (!context_.contains_all(cell.param_atoms())) {
        throw PreconditionError("cell parameter outside context");
      }
    }
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  }

  static TupleSet empty(std::uint32_t k, AtomSet context = {}) {
    return TupleSet(k, std::move(context), {});
  }

  static TupleSet full(std::uint32_t k, AtomSet context = {}) {
    std::vector<Cell> cells = all_cells(k, context);
    return TupleSet(k, std::move(context), std::move(cells));
  }

  std::uint32_t arity() const { return k_; }
  const AtomSet& context() const { return context_; }
  const std::vector<Cell>& cells() const { return cells_; }

  bool has_cell(const Cell& cell) const {
    return std::binary_search(cells_.begin(), cells_.end(), cell);
  }

  friend bool operator==(const TupleSet&, const TupleSet&) = default;

 private:
  std::uint32_t k_;
  AtomSet context_;
  std::vector<Cell> cells_;
};

namespace detail {

// Refines one cell from `from` to the larger context `to`: enumerate, for
// each fresh block, whether it lands on one of the newly visible atoms
// (injectively) or stays outside `to`.
inline void refine_cell(const Cell& cell, const AtomSet& to_minus_from,
                        std::vector<Cell>& out) {
  std::uint32_t f = cell.fresh_block_count();
  const std::vector<Atom>& new_atoms = to_minus_from.atoms();
  std::vector<std::optional<Atom>> assignment(f);
  std::vector<bool> taken(new_atoms.size(), false);
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t block) {
    if (block == f) {
      std::vector<CellCode> codes = cell.codes();
      for (CellCode& code : codes) {
        if (code.is_fresh() && assignment[code.fresh_index() - 1].has_value()) {
          code = CellCode::param(*assignment[code.fresh_index() - 1]);
        }
      }
      out.emplace_back(std::move(codes));
      return;
    }
    assignment[block] = std::nullopt;
    rec(block + 1);
    for (std::size_t ai = 0; ai < new_atoms.size(); ++ai) {
      if (taken[ai]) continue;
      taken[ai] = true;
      assignment[block] = new_atoms[ai];
      rec(block + 1);
      taken[ai] = false;
    }
  };
  rec(0);
}

}  // namespace detail

// Re-expresses X over the larger context S'. Extension is unchanged on every
// window containing S'.
inline TupleSet ts_rebase(const TupleSet& x, const AtomSet& new_context) {
  if (!new_context.contains_all(x.context())) {
    throw PreconditionError("rebase target must contain the current context");
  }
  AtomSet delta = new_context.minus(x.context());
  if (delta.empty()) return TupleSet(x.arity(), new_context, x.cells());
  std::vector<Cell> cells;
  for (const Cell& cell : x.cells()) detail::refine_cell(cell, delta, cells);
  return TupleSet(x.arity(), new_context, std::move(cells));
}

inline TupleSet ts_union(const TupleSet& x, const TupleSet& y) {
  if (x.arity() != y.arity()) throw PreconditionError("arity mismatch");
  AtomSet context = x.context().union_with(y.context());
  TupleSet xr = ts_rebase(x, context);
  TupleSet yr = ts_rebase(y, context);
  std::vector<Cell> cells = xr.cells();
  cells.insert(cells.end(), yr.cells().begin(), yr.cells().end());
  return TupleSet(x.arity(), std::move(context), std::move(cells));
}

inline TupleSet ts_intersect(const TupleSet& x, const TupleSet& y) {
  if (x.arity() != y.arity()) throw PreconditionError("arity mismatch");
  AtomSet context = x.context().union_with(y.context());
  TupleSet xr = ts_rebase(x, context);
  TupleSet yr = ts_rebase(y, context);
  std::vector<Cell> cells;
  std::set_intersection(xr.cells().begin(), xr.cells().end(),
                        yr.cells().begin(), yr.cells().end(),
                        std::back_inserter(cells));
  return TupleSet(x.arity(), std::move(context), std::move(cells));
}

inline TupleSet ts_complement(const TupleSet& x) {
  std::vector<Cell> universe = all_cells(x.arity(), x.context());
  std::vector<Cell> cells;
  std::set_difference(universe.begin(), universe.end(), x.cells().begin(),
                      x.cells().end(), std::back_inserter(cells));
  return TupleSet(x.arity(), x.context(), std::move(cells));
}

inline TupleSet ts_minus(const TupleSet& x, const TupleSet& y) {
  if (x.arity() != y.arity()) throw PreconditionError("arity mismatch");
  AtomSet context = x.context().union_with(y.context());
  TupleSet xr = ts_rebase(x, context);
  TupleSet yr = ts_rebase(y, context);
  std::vector<Cell> cells;
  std::set_difference(xr.cells().begin(), xr.cells().end(), yr.cells().begin(),
                      yr.cells().end(), std::back_inserter(cells));
  return TupleSet(x.arity(), std::move(context), std::move(cells));
}

// Infinite iff some cell has a fresh block; otherwise each all-param cell
// holds exactly one tuple.
inline CardClass ts_card(const TupleSet& x) {
  std::uint64_t pinned = 0;
  for (const Cell& cell : x.cells()) {
    if (cell.fresh_block_count() > 0) return CardClass::Infinite();
    ++pinned;
  }
  return CardClass::Finite(pinned);
}

// Closed-form count of tuples over the first N atoms; the window must
// contain the context.
inline std::uint64_t ts_count_window(const TupleSet& x, std::uint32_t window) {
  for (Atom a : x.context()) {
    if (a.index() >= window) {
      throw PreconditionError("window does not contain the context");
    }
  }
  std::uint64_t total = 0;
  std::uint64_t outside = window - x.context().size();
  for (const Cell& cell : x.cells()) {
    total += falling_factorial(outside, cell.fresh_block_count());
  }
  return total;
}

inline TupleSet ts_apply_perm(const TupleSet& x, const FinitePermutation& sigma) {
  AtomSet context = sigma.apply(x.context());
  std::vector<Cell> cells;
  cells.reserve(x.cells().size());
  for (const Cell& cell : x.cells()) {
    std::vector<CellCode> codes = cell.codes();
    for (CellCode& code : codes) {
      if (code.is_param()) code = CellCode::param(sigma.apply(code.atom()));
    }
    cells.emplace_back(std::move(codes));
  }
  return TupleSet(x.arity(), std::move(context), std::move(cells));
}

inline bool ts_extensionally_equal(const TupleSet& x, const TupleSet& y) {
  if (x.arity() != y.arity()) return false;
  AtomSet context = x.context().union_with(y.context());
  return ts_rebase(x, context).cells() == ts_rebase(y, context).cells();
}

// The minimal support: atoms of the context that fail the invariance test
// under a transposition with a fresh atom.
inline AtomSet ts_support(const TupleSet& x) {
  std::vector<Atom> needed;
  for (Atom a : x.context()) {
    Atom b = fresh_atom(x.context());
    FinitePermutation swap = FinitePermutation::transposition(a, b);
    if (!ts_extensionally_equal(x, ts_apply_perm(x, swap))) needed.push_back(a);
  }
  return AtomSet(std::move(needed));
}

// X re-expressed over exactly its minimal support.
inline TupleSet ts_minimize(const TupleSet& x) {
  AtomSet support = ts_support(x);
  if (support == x.context()) return x;
  std::vector<Cell> kept;
  for (const Cell& cell : all_cells(x.arity(), support)) {
    std::vector<Cell> refined;
    detail::refine_cell(cell, x.context().minus(support), refined);
    bool all_in = std::all_of(refined.begin(), refined.end(),
                              [&](const Cell& c) { return x.has_cell(c); });
    if (all_in) kept.push_back(cell);
  }
  TupleSet result(x.arity(), support, std::move(kept));
  if (!ts_extensionally_equal(result, x)) {
    throw Error("support minimization failed to preserve the extension");
  }
  return result;
}

// Drops context atoms no cell can see. A set with a fresh cell sees the whole
// context through the freshness constraint; an all-pinned set only sees its
// cell atoms, so the extension is unchanged. Canonical printing relies on the
// tightened form being reconstructible from its own rendering.
inline TupleSet ts_tighten(const TupleSet& x) {
  for (const Cell& cell : x.cells()) {
    if (cell.fresh_block_count() > 0) return x;
  }
  AtomSet mentioned;
  for (const Cell& cell : x.cells()) mentioned = mentioned.union_with(cell.param_atoms());
  return TupleSet(x.arity(), std::move(mentioned), x.cells());
}

// Existential projection onto the given coordinates (0-based, strictly
// increasing). The image of a cell is exactly the restricted cell.
inline TupleSet ts_project(const TupleSet& x, const std::vector<std::uint32_t>& coords) {
  if (coords.empty()) throw PreconditionError("projection needs at least one coordinate");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= x.arity()) throw PreconditionError("projection coordinate out of range");
    if (i > 0 && coords[i] <= coords[i - 1]) {
      throw PreconditionError("projection coordinates must be strictly increasing");
    }
  }
  std::vector<Cell> cells;
  cells.reserve(x.cells().size());
  for (const Cell& cell : x.cells()) {
    std::vector<CellCode> codes;
    codes.reserve(coords.size());
    for (std::uint32_t c : coords) codes.push_back(cell.codes()[c]);
    cells.emplace_back(std::move(codes));
  }
  return TupleSet(static_cast<std::uint32_t>(coords.size()), x.context(),
                  std::move(cells));
}

}  // namespace atomset

#endif  // ATOMSET_TUPLE_SET_HPP_
