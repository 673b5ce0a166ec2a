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

#ifndef ATOMSET_DEFINABLE_MAP_HPP_
#define ATOMSET_DEFINABLE_MAP_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atomset/atoms.hpp"
#include "atomset/card.hpp"

namespace atomset {

// Orbit of inputs under the permutations fixing the parameter set P
// pointwise: the sets s with s ∩ P = trace and |s| = size.
struct OrbitDescriptor {
  AtomSet trace;
  std::uint32_t size = 0;

  bool is_singleton() const { return trace.size() == size; }
  std::uint32_t free_part() const { return size - static_cast<std::uint32_t>(trace.size()); }

  friend auto operator<=>(const OrbitDescriptor&, const OrbitDescriptor&) = default;
};

// Output recipe for one input orbit. Equivariance under the stabilizer of the
// input forces this shape: the image keeps either none or all of the input's
// part outside P, plus a fixed subset of P. (A permutation fixing P and the
// trace while permuting the free part must fix the image, so the image meets
// the free part in nothing or everything; the rest of the image must be fixed
// by every such permutation, hence lies inside P.)
struct MapRule {
  AtomSet out_params;
  bool include_fresh = false;

  friend auto operator<=>(const MapRule&, const MapRule&) = default;
};

// A rank-bounded equivariant self-map of the finite atom sets, given by one
// rule per input orbit. Total on sets of size at most `rank`; the image of s
// is always contained in P ∪ s.
class DefinableMap {
 public:
  DefinableMap(AtomSet params, std::uint32_t rank,
               std::map<OrbitDescriptor, MapRule> rules)
      : params_(std::move(params)), rank_(rank), rules_(std::move(rules)) {
    for (auto& [descriptor, rule] : rules_) {
      if (!params_.contains_all(descriptor.trace) || descriptor.size > rank_ ||
          descriptor.trace.size() > descriptor.size) {
        throw PreconditionError("invalid input orbit descriptor");
      }
      if (!params_.contains_all(rule.out_params)) {
        throw PreconditionError("rule output mentions an atom outside the parameter set");
      }
      if (descriptor.free_part() == 0) rule.include_fresh = false;
      std::uint32_t out_size =
          static_cast<std::uint32_t>(rule.out_params.size()) +
          (rule.include_fresh ? descriptor.free_part() : 0);
      if (out_size > rank_) {
        throw PreconditionError("rule output exceeds the rank bound");
      }
    }
    for (const OrbitDescriptor& descriptor : all_descriptors(params_, rank_)) {
      if (rules_.find(descriptor) == rules_.end()) {
        throw PreconditionError("rule table is not total: missing an input orbit");
      }
    }
    if (rules_.size() != all_descriptors(params_, rank_).size()) {
      throw PreconditionError("rule table mentions an unexpected input orbit");
    }
  }

  static std::vector<OrbitDescriptor> all_descriptors(const AtomSet& params,
                                                      std::uint32_t rank) {
    std::vector<OrbitDescriptor> out;
    for (std::uint32_t size = 0; size <= rank; ++size) {
      for (std::uint64_t mask = 0; mask < (1ull << params.size()); ++mask) {
        std::vector<Atom> trace;
        for (std::size_t i = 0; i < params.size(); ++i) {
          if (mask & (1ull << i)) trace.push_back(params.atoms()[i]);
        }
        if (trace.size() > size) continue;
        out.push_back({AtomSet(std::move(trace)), size});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  static DefinableMap identity(AtomSet params, std::uint32_t rank) {
    std::map<OrbitDescriptor, MapRule> rules;
    for (const OrbitDescriptor& d : all_descriptors(params, rank)) {
      rules[d] = MapRule{d.trace, true};
    }
    return DefinableMap(std::move(params), rank, std::move(rules));
  }

  const AtomSet& params() const { return params_; }
  std::uint32_t rank() const { return rank_; }
  const std::map<OrbitDescriptor, MapRule>& rules() const { return rules_; }

  const MapRule& rule_for(const OrbitDescriptor& d) const {
    auto it = rules_.find(d);
    if (it == rules_.end()) throw Error("missing rule");  // unreachable: table is total
    return it->second;
  }

  OrbitDescriptor descriptor_of(const AtomSet& s) const {
    if (s.size() > rank_) {
      throw PreconditionError("set exceeds the map's rank bound");
    }
    return {s.intersect_with(params_), static_cast<std::uint32_t>(s.size())};
  }

  friend bool operator==(const DefinableMap&, const DefinableMap&) = default;

 private:
  AtomSet params_;
  std::uint32_t rank_;
  std::map<OrbitDescriptor, MapRule> rules_;
};

inline AtomSet map_eval(const DefinableMap& f, const AtomSet& s) {
  OrbitDescriptor d = f.descriptor_of(s);
  const MapRule& rule = f.rule_for(d);
  AtomSet out = rule.out_params;
  if (rule.include_fresh) out = out.union_with(s.minus(f.params()));
  return out;
}

// The image of an input orbit is always a full orbit; this is its descriptor.
inline OrbitDescriptor map_image_descriptor(const DefinableMap& f,
                                            const OrbitDescriptor& d) {
  const MapRule& rule = f.rule_for(d);
  std::uint32_t out_size =
      static_cast<std::uint32_t>(rule.out_params.size()) +
      (rule.include_fresh ? d.free_part() : 0);
  return {rule.out_params, out_size};
}

// Canonical member of an orbit, via the lowest-unused fresh policy.
inline AtomSet orbit_representative(const DefinableMap& f, const OrbitDescriptor& d) {
  return d.trace.union_with(AtomSet(fresh_atoms(d.free_part(), f.params())));
}

struct SurjectivityResult {
  bool surjective = false;
  std::optional<OrbitDescriptor> missing_orbit;
};

// Surjective iff every orbit descriptor is the image of some rule.
inline SurjectivityResult map_is_surjective(const DefinableMap& f) {
  std::vector<OrbitDescriptor> images;
  for (const auto& [d, rule] : f.rules()) images.push_back(map_image_descriptor(f, d));
  std::sort(images.begin(), images.end());
  for (const OrbitDescriptor& d : DefinableMap::all_descriptors(f.params(), f.rank())) {
    if (!std::binary_search(images.begin(), images.end(), d)) {
      return {false, d};
    }
  }
  return {true, std::nullopt};
}

struct InjectivityResult {
  bool injective = false;
  // Two distinct inputs with the same image, when not injective.
  std::optional<std::pair<AtomSet, AtomSet>> collision;
};

// Injective iff every non-singleton orbit keeps its free part and no two
// rules land on the same image orbit. Collisions come with explicit inputs.
inline InjectivityResult map_is_injective(const DefinableMap& f) {
  for (const auto& [d, rule] : f.rules()) {
    if (d.free_part() > 0 && !rule.include_fresh) {
      // The whole orbit collapses onto one output set.
      std::vector<Atom> pool = fresh_atoms(d.free_part() + 1, f.params());
      AtomSet s1 = d.trace.union_with(
          AtomSet(std::vector<Atom>(pool.begin(), pool.end() - 1)));
      std::vector<Atom> tail(pool.begin(), pool.end() - 2);
      tail.push_back(pool.back());
      AtomSet s2 = d.trace.union_with(AtomSet(std::move(tail)));
      return {false, std::make_pair(std::move(s1), std::move(s2))};
    }
  }
  std::map<OrbitDescriptor, OrbitDescriptor> image_to_input;
  for (const auto& [d, rule] : f.rules()) {
    OrbitDescriptor image = map_image_descriptor(f, d);
    auto [it, inserted] = image_to_input.emplace(image, d);
    if (inserted) continue;
    const OrbitDescriptor& other = it->second;
    AtomSet s1, s2;
    if (image.is_singleton()) {
      s1 = orbit_representative(f, other);
      s2 = orbit_representative(f, d);
    } else {
      // Both rules keep their free parts, so they share every image with a
      // common free part choice.
      AtomSet shared(fresh_atoms(d.free_part(), f.params()));
      s1 = other.trace.union_with(shared);
      s2 = d.trace.union_with(shared);
    }
    return {false, std::make_pair(std::move(s1), std::move(s2))};
  }
  return {true, std::nullopt};
}

struct Trajectory {
  std::uint32_t preperiod = 0;
  std::uint32_t period = 0;
  std::vector<AtomSet> path;  // s, f(s), ... up to the first repeat
};

// Iterates f from s. The trajectory stays inside the powerset of P ∪ s, so
// it is eventually periodic; returns the exact preperiod and period.
inline Trajectory map_trajectory(const DefinableMap& f, const AtomSet& s) {
  Trajectory result;
  std::map<AtomSet, std::uint32_t> seen;
  AtomSet current = s;
  while (seen.find(current) == seen.end()) {
    seen[current] = static_cast<std::uint32_t>(result.path.size());
    result.path.push_back(current);
    current = map_eval(f, current);
  }
  result.preperiod = seen[current];
  result.period = static_cast<std::uint32_t>(result.path.size()) - result.preperiod;
  return result;
}

inline std::vector<OrbitDescriptor> map_preimage_orbits(const DefinableMap& f,
                                                        const OrbitDescriptor& target) {
  std::vector<OrbitDescriptor> out;
  for (const auto& [d, rule] : f.rules()) {
    if (map_image_descriptor(f, d) == target) out.push_back(d);
  }
  return out;
}

// Report for one instance of the surjective-implies-injective property,
// including full periodicity of every orbit representative.
struct TheoremReport {
  bool surjective = false;
  bool injective = false;
  bool all_periodic = false;  // every representative returns to itself
  std::uint32_t max_period = 0;
  bool pass = false;
  std::optional<std::pair<AtomSet, AtomSet>> collision;
  std::optional<AtomSet> nonperiodic_witness;
};

inline TheoremReport check_theorem_instance(const DefinableMap& f) {
  TheoremReport report;
  report.surjective = map_is_surjective(f).surjective;
  if (!report.surjective) {
    report.pass = true;  // hypothesis fails, nothing to check
    return report;
  }
  InjectivityResult inj = map_is_injective(f);
  report.injective = inj.injective;
  report.collision = inj.collision;
  report.all_periodic = true;
  for (const OrbitDescriptor& d : DefinableMap::all_descriptors(f.params(), f.rank())) {
    AtomSet rep = orbit_representative(f, d);
    Trajectory t = map_trajectory(f, rep);
    report.max_period = std::max(report.max_period, t.period);
    if (t.preperiod != 0) {
      report.all_periodic = false;
      if (!report.nonperiodic_witness) report.nonperiodic_witness = rep;
    }
  }
  report.pass = report.injective && report.all_periodic;
  return report;
}

}  // namespace atomset

#endif  // ATOMSET_DEFINABLE_MAP_HPP_
