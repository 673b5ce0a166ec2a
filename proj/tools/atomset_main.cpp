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

// Command-line front end. Set expressions are given inline or as @file
// arguments (.atomset files); map rule tables and finite-to-one tables are
// given as file paths. Exit codes: 0 success, 1 property violation or failed
// verification, 2 usage or parse errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "atomset/dsl.hpp"
#include "atomset/oracle.hpp"
#include "atomset/verify.hpp"

namespace {

using atomset::AtomSet;
using atomset::CardClass;
using atomset::NameTable;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : atomset::Error {
  explicit UsageError(const std::string& what) : Error(what) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Inline expression text, or the contents of an @-prefixed file.
std::string expression_text(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return read_file(arg.substr(1));
  return arg;
}

// One name table per invocation: all expressions are parsed first, then the
// names are bound in sorted order, so bindings do not depend on argument
// order.
struct Session {
  NameTable names;
  bool json = false;

  std::vector<atomset::dsl::CompiledObject> compile_all(
      const std::vector<std::string>& texts) {
    std::vector<atomset::dsl::Expr> parsed;
    parsed.reserve(texts.size());
    for (const std::string& text : texts) parsed.push_back(atomset::dsl::parse(text));
    std::vector<const atomset::dsl::Expr*> pointers;
    for (const atomset::dsl::Expr& e : parsed) pointers.push_back(&e);
    atomset::dsl::bind_names(pointers, names);
    std::vector<atomset::dsl::CompiledObject> out;
    out.reserve(parsed.size());
    for (const atomset::dsl::Expr& e : parsed) {
      out.push_back(atomset::dsl::compile(e, names));
    }
    return out;
  }

  atomset::dsl::CompiledObject compile_one(const std::string& text) {
    return compile_all({text})[0];
  }

  Json atoms_json(const AtomSet& atoms) const {
    Json out = Json::array();
    for (atomset::Atom a : atoms) out.push_back(names.name_of(a));
    return out;
  }

  void emit(const std::string& command, const std::string& input, const Json& result,
            const Json& certificate = nullptr) const {
    if (json) {
      Json envelope;
      envelope["command"] = command;
      envelope["input"] = input;
      envelope["result"] = result;
      if (!certificate.is_null()) envelope["certificate"] = certificate;
      std::cout << envelope.dump() << "\n";
    }
  }
};

Json card_json(const CardClass& card) {
  Json out;
  if (card.is_empty()) {
    out["card"] = "empty";
  } else if (card.is_infinite()) {
    out["card"] = "infinite";
  } else {
    out["card"] = "finite";
    out["count"] = card.finite_count();
  }
  return out;
}

CardClass classify_object(const atomset::dsl::CompiledObject& obj) {
  if (auto* tuples = std::get_if<atomset::TupleSet>(&obj)) return ts_card(*tuples);
  if (auto* basis = std::get_if<atomset::PQBasis>(&obj)) return pq_card(*basis);
  if (auto* family = std::get_if<atomset::KSubsetSet>(&obj)) return kss_card(*family);
  if (auto* rel = std::get_if<atomset::Relation>(&obj)) return rel_card(*rel);
  throw UsageError("classification applies to set and relation expressions");
}

AtomSet support_of(const atomset::dsl::CompiledObject& obj) {
  if (auto* tuples = std::get_if<atomset::TupleSet>(&obj)) return ts_support(*tuples);
  if (auto* basis = std::get_if<atomset::PQBasis>(&obj)) {
    return kss_support(pq_to_kss(*basis));
  }
  if (auto* family = std::get_if<atomset::KSubsetSet>(&obj)) return kss_support(*family);
  if (auto* rel = std::get_if<atomset::Relation>(&obj)) return rel_support(*rel);
  throw UsageError("support applies to set and relation expressions");
}

int run_classify(Session& session, const std::string& raw) {
  auto obj = session.compile_one(expression_text(raw));
  CardClass card = classify_object(obj);
  session.emit("classify", raw, card_json(card));
  if (!session.json) std::cout << card.to_string() << "\n";
  return kExitOk;
}

int run_support(Session& session, const std::string& raw) {
  auto obj = session.compile_one(expression_text(raw));
  AtomSet support = support_of(obj);
  Json result;
  result["support"] = session.atoms_json(support);
  session.emit("support", raw, result);
  if (!session.json) std::cout << atomset::dsl::print(support, session.names) << "\n";
  return kExitOk;
}

int run_nf(Session& session, const std::string& raw) {
  auto obj = session.compile_one(expression_text(raw));
  Json result;
  std::string canonical;
  if (auto* tuples = std::get_if<atomset::TupleSet>(&obj)) {
    atomset::TupleSet nf = ts_minimize(*tuples);
    canonical = atomset::dsl::print(nf, session.names);
    result["support"] = session.atoms_json(nf.context());
  } else if (auto* rel = std::get_if<atomset::Relation>(&obj)) {
    atomset::Relation nf = rel_normal_form(*rel);
    canonical = atomset::dsl::print(nf, session.names);
    result["support"] = session.atoms_json(nf.support());
  } else {
    atomset::KSubsetSet family = [&] {
      if (auto* basis = std::get_if<atomset::PQBasis>(&obj)) return pq_to_kss(*basis);
      return std::get<atomset::KSubsetSet>(obj);
    }();
    atomset::KSubsetSet nf = kss_normal_form(family);
    canonical = atomset::dsl::print(nf, session.names);
    result["support"] = session.atoms_json(nf.support());
    Json pairs = Json::array();
    for (const auto& [p, q] : nf.pairs()) {
      Json pair;
      pair["p"] = session.atoms_json(p);
      pair["q"] = session.atoms_json(q);
      pairs.push_back(pair);
    }
    result["h"] = pairs;
  }
  result["canonical"] = canonical;
  session.emit("nf", raw, result);
  if (!session.json) std::cout << canonical << "\n";
  return kExitOk;
}

int run_count(Session& session, const std::string& raw, std::uint32_t window) {
  auto obj = session.compile_one(expression_text(raw));
  std::uint64_t count = 0;
  if (auto* tuples = std::get_if<atomset::TupleSet>(&obj)) {
    count = ts_count_window(*tuples, window);
  } else if (auto* basis = std::get_if<atomset::PQBasis>(&obj)) {
    count = pq_count_window(*basis, window);
  } else if (auto* family = std::get_if<atomset::KSubsetSet>(&obj)) {
    count = kss_count_window(*family, window);
  } else if (auto* rel = std::get_if<atomset::Relation>(&obj)) {
    count = rel_count_window(*rel, window);
  } else {
    throw UsageError("count applies to set and relation expressions");
  }
  Json result;
  result["window"] = window;
  result["count"] = count;
  session.emit("count", raw, result);
  if (!session.json) std::cout << count << "\n";
  return kExitOk;
}

int run_equal(Session& session, const std::string& raw1, const std::string& raw2) {
  auto objs = session.compile_all({expression_text(raw1), expression_text(raw2)});
  const auto& a = objs[0];
  const auto& b = objs[1];
  bool equal = false;
  bool tuple_a = std::holds_alternative<atomset::TupleSet>(a);
  bool tuple_b = std::holds_alternative<atomset::TupleSet>(b);
  bool family_a = std::holds_alternative<atomset::PQBasis>(a) ||
                  std::holds_alternative<atomset::KSubsetSet>(a);
  bool family_b = std::holds_alternative<atomset::PQBasis>(b) ||
                  std::holds_alternative<atomset::KSubsetSet>(b);
  auto as_family = [](const atomset::dsl::CompiledObject& obj) {
    if (auto* basis = std::get_if<atomset::PQBasis>(&obj)) return pq_to_kss(*basis);
    return std::get<atomset::KSubsetSet>(obj);
  };
  if (tuple_a && tuple_b) {
    equal = ts_extensionally_equal(std::get<atomset::TupleSet>(a),
                                   std::get<atomset::TupleSet>(b));
  } else if (family_a && family_b) {
    equal = kss_extensionally_equal(as_family(a), as_family(b));
  } else if (std::holds_alternative<atomset::Relation>(a) &&
             std::holds_alternative<atomset::Relation>(b)) {
    equal = rel_extensionally_equal(std::get<atomset::Relation>(a),
                                    std::get<atomset::Relation>(b));
  } else if (std::holds_alternative<atomset::DefinableMap>(a) &&
             std::holds_alternative<atomset::DefinableMap>(b)) {
    equal = std::get<atomset::DefinableMap>(a) == std::get<atomset::DefinableMap>(b);
  } else {
    throw UsageError("equal requires two expressions of the same kind");
  }
  Json result;
  result["equal"] = equal;
  session.emit("equal", raw1 + " ~ " + raw2, result);
  if (!session.json) std::cout << (equal ? "equal" : "not equal") << "\n";
  return kExitOk;
}

const atomset::Relation& require_relation(const atomset::dsl::CompiledObject& obj) {
  if (auto* rel = std::get_if<atomset::Relation>(&obj)) return *rel;
  throw UsageError("expected a relation expression");
}

int run_rkl(Session& session, const std::string& raw) {
  auto obj = session.compile_one(expression_text(raw));
  const atomset::Relation& rel = require_relation(obj);
  atomset::RklVerdict verdict = rkl_decide(rel);
  bool left = verdict.side == atomset::RklVerdict::Side::kLeft;
  Json result;
  result["case"] = left ? "left" : "right";
  Json certificate;
  certificate["witness"] = session.atoms_json(verdict.witness);
  certificate["fiber"] = atomset::dsl::print(verdict.fiber, session.names);
  certificate["fiber_card"] = kss_card(verdict.fiber).to_string();
  session.emit("rkl", raw, result, certificate);
  if (!session.json) {
    std::cout << (left ? "left witness " : "right witness ")
              << atomset::dsl::print(verdict.witness, session.names)
              << " with infinite fiber "
              << atomset::dsl::print(verdict.fiber, session.names) << "\n";
  }
  return kExitOk;
}

int run_refute_family(Session& session, const std::string& raw, std::uint32_t k) {
  auto obj = session.compile_one(expression_text(raw));
  const atomset::Relation& rel = require_relation(obj);
  atomset::ContradictionCertificate cert = refute_disjoint_family(rel, k);
  Json result;
  result["case"] = cert.case_id;
  result["k"] = cert.k;
  Json certificate;
  Json pairs = Json::array();
  for (const auto& [p, q] : {std::make_pair(cert.p1, cert.q1),
                             std::make_pair(cert.p2, cert.q2)}) {
    Json pair;
    pair["p"] = session.atoms_json(p);
    pair["q"] = session.atoms_json(q);
    pairs.push_back(pair);
  }
  certificate["pairs"] = pairs;
  certificate["witness"] = session.atoms_json(cert.witness);
  session.emit("refute-family", raw, result, certificate);
  if (!session.json) {
    std::cout << "case " << cert.case_id << ": common element "
              << atomset::dsl::print(cert.witness, session.names) << " of basis(+"
              << atomset::dsl::print(cert.p1, session.names) << " -"
              << atomset::dsl::print(cert.q1, session.names) << ", " << k
              << ") and basis(+" << atomset::dsl::print(cert.p2, session.names)
              << " -" << atomset::dsl::print(cert.q2, session.names) << ", " << k
              << ")\n";
  }
  return kExitOk;
}

atomset::DefinableMap load_map(Session& session, const std::string& path) {
  atomset::dsl::Expr e = atomset::dsl::parse(read_file(path));
  if (e.kind != atomset::dsl::Expr::Kind::kMap) {
    throw UsageError("expected a map rule file: " + path);
  }
  atomset::dsl::bind_names({&e}, session.names);
  return std::get<atomset::DefinableMap>(atomset::dsl::compile(e, session.names));
}

int run_map_check(Session& session, const std::string& path) {
  atomset::DefinableMap f = load_map(session, path);
  atomset::SurjectivityResult surj = map_is_surjective(f);
  atomset::InjectivityResult inj = map_is_injective(f);
  atomset::TheoremReport report = check_theorem_instance(f);
  Json result;
  result["surjective"] = surj.surjective;
  result["injective"] = inj.injective;
  Json theorem;
  theorem["applicable"] = report.surjective;
  theorem["pass"] = report.pass;
  if (report.surjective) theorem["max_period"] = report.max_period;
  result["theorem"] = theorem;
  Json certificate;
  if (surj.missing_orbit) {
    Json missing;
    missing["p"] = session.atoms_json(surj.missing_orbit->trace);
    missing["k"] = surj.missing_orbit->size;
    certificate["missing_orbit"] = missing;
  }
  if (inj.collision) {
    certificate["collision"] = Json::array({
        session.atoms_json(inj.collision->first),
        session.atoms_json(inj.collision->second),
    });
  }
  session.emit("map check", path, result, certificate);
  if (!session.json) {
    std::cout << "surjective: " << (surj.surjective ? "yes" : "no")
              << ", injective: " << (inj.injective ? "yes" : "no") << "\n";
    if (report.surjective) {
      std::cout << "surjective-implies-injective instance: "
                << (report.pass ? "PASS" : "FAIL")
                << " (max period " << report.max_period << ")\n";
    } else {
      std::cout << "surjective-implies-injective instance: PASS (not surjective)\n";
    }
  }
  return report.pass ? kExitOk : kExitViolation;
}

int run_map_orbit(Session& session, const std::string& path, const std::string& raw_set) {
  atomset::DefinableMap f = load_map(session, path);
  AtomSet start = atomset::dsl::parse_atom_set(raw_set, session.names);
  atomset::Trajectory t = map_trajectory(f, start);
  Json result;
  result["preperiod"] = t.preperiod;
  result["period"] = t.period;
  Json path_json = Json::array();
  for (const AtomSet& s : t.path) path_json.push_back(session.atoms_json(s));
  result["path"] = path_json;
  session.emit("map orbit", path + " " + raw_set, result);
  if (!session.json) {
    std::cout << "preperiod " << t.preperiod << ", period " << t.period << ":";
    for (const AtomSet& s : t.path) {
      std::cout << " " << atomset::dsl::print(s, session.names);
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int run_oracle_classify(Session& session, const std::string& raw, std::uint32_t window) {
  auto obj = session.compile_one(expression_text(raw));
  std::uint32_t n1 = window, n2 = window + 2, n3 = window + 4;
  atomset::oracle::GrowthResult growth = std::visit(
      [&](const auto& value) -> atomset::oracle::GrowthResult {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, atomset::DefinableMap>) {
          throw UsageError("oracle classify applies to set and relation expressions");
        } else {
          return atomset::oracle::growth_classify(value, n1, n2, n3);
        }
      },
      obj);
  Json result;
  result["windows"] = Json::array({n1, n2, n3});
  result["growth"] = growth.to_string();
  session.emit("oracle classify", raw, result);
  if (!session.json) std::cout << growth.to_string() << "\n";
  return kExitOk;
}

int run_oracle_count(Session& session, const std::string& raw, std::uint32_t window) {
  auto obj = session.compile_one(expression_text(raw));
  std::uint64_t count = std::visit(
      [&](const auto& value) -> std::uint64_t {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, atomset::DefinableMap>) {
          throw UsageError("oracle count applies to set and relation expressions");
        } else {
          return atomset::oracle::enumerate(value, {window}).size();
        }
      },
      obj);
  Json result;
  result["window"] = window;
  result["count"] = count;
  session.emit("oracle count", raw, result);
  if (!session.json) std::cout << count << "\n";
  return kExitOk;
}

int run_oracle_rkl(Session& session, const std::string& raw, std::uint32_t window) {
  auto obj = session.compile_one(expression_text(raw));
  const atomset::Relation& rel = require_relation(obj);
  atomset::RklVerdict verdict = rkl_decide(rel);
  bool left = verdict.side == atomset::RklVerdict::Side::kLeft;
  std::vector<std::uint64_t> counts;
  for (std::uint32_t n : {window, window + 2, window + 4}) {
    std::uint64_t count = 0;
    if (left) {
      for (const AtomSet& t : atomset::oracle::all_ksets({n}, rel.n2())) {
        if (atomset::oracle::pair_in_relation(rel, verdict.witness, t)) ++count;
      }
    } else {
      for (const AtomSet& s : atomset::oracle::all_ksets({n}, rel.n1())) {
        if (atomset::oracle::pair_in_relation(rel, s, verdict.witness)) ++count;
      }
    }
    counts.push_back(count);
  }
  bool growing = counts[0] < counts[1] && counts[1] < counts[2];
  Json result;
  result["case"] = left ? "left" : "right";
  result["windows"] = Json::array({window, window + 2, window + 4});
  result["fiber_counts"] = counts;
  result["growing"] = growing;
  Json certificate;
  certificate["witness"] = session.atoms_json(verdict.witness);
  session.emit("oracle rkl", raw, result, certificate);
  if (!session.json) {
    std::cout << (left ? "left" : "right") << " witness "
              << atomset::dsl::print(verdict.witness, session.names)
              << ", fiber counts " << counts[0] << " " << counts[1] << " "
              << counts[2] << (growing ? " (growing)" : " (NOT growing)") << "\n";
  }
  return growing ? kExitOk : kExitViolation;
}

int run_wdstar(Session& session, const std::string& path) {
  atomset::FiniteToOneTable table =
      atomset::dsl::parse_table(read_file(path), session.names);
  std::vector<AtomSet> unions = atomset::wdstar_transform(table);
  AtomSet total;
  for (const AtomSet& u : unions) total = total.union_with(u);
  bool contained = true;
  for (const auto& [s, n] : table.entries()) contained = contained && total.contains_all(s);
  Json result;
  Json list = Json::array();
  for (const AtomSet& u : unions) list.push_back(session.atoms_json(u));
  result["unions"] = list;
  result["domain_contained"] = contained;
  session.emit("wdstar-transform", path, result);
  if (!session.json) {
    for (std::size_t i = 0; i < unions.size(); ++i) {
      std::cout << "A_" << i << " = " << atomset::dsl::print(unions[i], session.names)
                << "\n";
    }
    if (unions.empty()) std::cout << "(empty table)\n";
  }
  return contained ? kExitOk : kExitViolation;
}

int run_inexhaustible(Session& session, std::uint32_t n) {
  atomset::SplitWitness w = atomset::inexhaustible_finite_check(n);
  Json result;
  result["inexhaustible"] = false;
  Json split;
  split["left"] = session.atoms_json(w.left);
  split["right"] = session.atoms_json(w.right);
  result["split"] = split;
  session.emit("inexhaustible-check", std::to_string(n), result);
  if (!session.json) {
    std::cout << "not inexhaustible: split "
              << atomset::dsl::print(w.left, session.names) << " / "
              << atomset::dsl::print(w.right, session.names)
              << " admits no injection of the whole set into either side\n";
  }
  return kExitOk;
}

int run_verify_facts(Session& session, std::uint64_t seed,
                     std::optional<std::uint32_t> cases) {
  atomset::SuiteOptions options;
  options.seed = seed;
  if (cases) {
    options.witness_cases = *cases;
    options.normal_form_cases = *cases;
    options.rkl_cases = *cases;
    options.map_cases = *cases;
    options.map_permutation_cases = *cases / 2;
    options.boolean_cases = *cases;
    options.roundtrip_cases = *cases;
    options.table_cases = *cases;
  }
  std::vector<atomset::FactResult> results = atomset::run_fact_suite(options);
  bool all_pass = true;
  Json facts = Json::array();
  for (const atomset::FactResult& fact : results) {
    all_pass = all_pass && fact.pass;
    Json entry;
    entry["id"] = fact.id;
    entry["pass"] = fact.pass;
    entry["checked"] = fact.checked;
    entry["seconds"] = fact.seconds;
    if (!fact.detail.empty()) entry["detail"] = fact.detail;
    facts.push_back(entry);
    if (!session.json) {
      std::ostringstream line;
      line << (fact.pass ? "PASS " : "FAIL ") << fact.id << " — " << fact.summary
           << " (" << fact.checked << " checks, " << fact.seconds << "s)";
      if (!fact.detail.empty()) line << " [" << fact.detail << "]";
      std::cout << line.str() << "\n";
    }
  }
  Json result;
  result["facts"] = facts;
  result["all_pass"] = all_pass;
  session.emit("verify-facts", "seed=" + std::to_string(seed), result);
  if (!session.json) {
    std::cout << (all_pass ? "all facts verified" : "FAILURES detected") << "\n";
  }
  return all_pass ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symbolic calculus for definable sets over equality atoms"};
  app.require_subcommand(1);
  Session session;
  app.add_flag("--json", session.json, "machine-readable output");

  std::string expr1, expr2, file_arg, set_arg;
  std::uint32_t window = 8;
  std::uint32_t k_arg = 2;
  std::uint32_t n_arg = 2;
  std::uint64_t seed = 0;
  std::uint32_t cases = 0;
  bool cases_set = false;

  CLI::App* classify = app.add_subcommand("classify", "exact cardinality of an expression");
  classify->add_option("expr", expr1, "set expression or @file")->required();

  CLI::App* support = app.add_subcommand("support", "minimal support of an expression");
  support->add_option("expr", expr1)->required();

  CLI::App* nf = app.add_subcommand("nf", "canonical normal form over the minimal support");
  nf->add_option("expr", expr1)->required();

  CLI::App* count = app.add_subcommand("count", "closed-form count over the first N atoms");
  count->add_option("expr", expr1)->required();
  count->add_option("--window", window, "window size")->required();

  CLI::App* equal = app.add_subcommand("equal", "extensional equality of two expressions");
  equal->add_option("expr1", expr1)->required();
  equal->add_option("expr2", expr2)->required();

  CLI::App* rkl = app.add_subcommand("rkl", "fiber dichotomy witness for a relation");
  rkl->add_option("rel", expr1)->required();

  CLI::App* refute = app.add_subcommand("refute-family",
                                        "refute pairwise disjointness of the induced basis family");
  refute->add_option("rel", expr1)->required();
  refute->add_option("--k", k_arg, "basis arity")->required();

  CLI::App* map_cmd = app.add_subcommand("map", "rule-table map commands");
  map_cmd->require_subcommand(1);
  CLI::App* map_check = map_cmd->add_subcommand("check", "surjectivity, injectivity, periodicity");
  map_check->add_option("file", file_arg, ".atommap rule file")->required();
  CLI::App* map_orbit = map_cmd->add_subcommand("orbit", "trajectory of a set under the map");
  map_orbit->add_option("file", file_arg, ".atommap rule file")->required();
  map_orbit->add_option("set", set_arg, "explicit atom set, e.g. {a, x3}")->required();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force window evaluation");
  oracle_cmd->require_subcommand(1);
  CLI::App* oracle_classify = oracle_cmd->add_subcommand("classify", "growth over three windows");
  oracle_classify->add_option("expr", expr1)->required();
  oracle_classify->add_option("--window", window, "first window size")->required();
  CLI::App* oracle_count = oracle_cmd->add_subcommand("count", "enumeration count");
  oracle_count->add_option("expr", expr1)->required();
  oracle_count->add_option("--window", window, "window size")->required();
  CLI::App* oracle_rkl = oracle_cmd->add_subcommand("rkl", "validate fiber growth");
  oracle_rkl->add_option("rel", expr1)->required();
  oracle_rkl->add_option("--window", window, "first window size")->required();

  CLI::App* wdstar = app.add_subcommand("wdstar-transform", "fiber unions of a finite-to-one table");
  wdstar->add_option("file", file_arg, "table file")->required();

  CLI::App* inexhaustible = app.add_subcommand("inexhaustible-check",
                                               "witness split for a finite set");
  inexhaustible->add_option("n", n_arg, "set size (>= 2)")->required();

  CLI::App* verify = app.add_subcommand("verify-facts", "run the full reproducibility suite");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--cases", cases, "override randomized case counts")
      ->each([&](const std::string&) { cases_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (classify->parsed()) return run_classify(session, expr1);
    if (support->parsed()) return run_support(session, expr1);
    if (nf->parsed()) return run_nf(session, expr1);
    if (count->parsed()) return run_count(session, expr1, window);
    if (equal->parsed()) return run_equal(session, expr1, expr2);
    if (rkl->parsed()) return run_rkl(session, expr1);
    if (refute->parsed()) return run_refute_family(session, expr1, k_arg);
    if (map_cmd->parsed()) {
      if (map_check->parsed()) return run_map_check(session, file_arg);
      return run_map_orbit(session, file_arg, set_arg);
    }
    if (oracle_cmd->parsed()) {
      if (oracle_classify->parsed()) return run_oracle_classify(session, expr1, window);
      if (oracle_count->parsed()) return run_oracle_count(session, expr1, window);
      return run_oracle_rkl(session, expr1, window);
    }
    if (wdstar->parsed()) return run_wdstar(session, file_arg);
    if (inexhaustible->parsed()) return run_inexhaustible(session, n_arg);
    if (verify->parsed()) {
      return run_verify_facts(session, seed,
                              cases_set ? std::optional<std::uint32_t>(cases)
                                        : std::nullopt);
    }
  } catch (const atomset::dsl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const atomset::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitUsage;
  } catch (const atomset::Error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
