#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpt/amplify.hpp"
#include "dpt/certify.hpp"
#include "dpt/codec.hpp"
#include "dpt/core.hpp"
#include "dpt/error.hpp"
#include "dpt/spectral.hpp"
#include "dpt/tester.hpp"
#include "dpt/testgraph.hpp"

namespace dpt {

using nlohmann::json;

// FNV-1a over a canonical domain serialization; identifies the domain a table
// was encoded against.
inline std::string domain_hash(const Domain& dom) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&](std::int64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint8_t>(v >> (8 * b));
      h *= 1099511628211ULL;
    }
  };
  mix(dom.n());
  mix(dom.size());
  for (std::int64_t s = 0; s < dom.size(); ++s) {
    mix(dom.set(s).size());
    for (std::int32_t c : dom.set(s).coords()) mix(c);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline json rational_to_json(const Rational& q) {
  return json{{"frac", q.str()}, {"value", q.to_double()}};
}

inline json domain_to_json(const Domain& dom) {
  json sets = json::array();
  for (std::int64_t s = 0; s < dom.size(); ++s) {
    json coords = json::array();
    for (std::int32_t c : dom.set(s).coords()) coords.push_back(c);
    sets.push_back(std::move(coords));
  }
  return json{{"n", dom.n()}, {"sets", std::move(sets)}};
}

inline DomainPtr domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("sets"))
    throw InvalidArgument("domain json: need {n, sets}");
  std::int32_t n = j.at("n").get<std::int32_t>();
  std::vector<Subset> sets;
  for (const auto& row : j.at("sets"))
    sets.emplace_back(row.get<std::vector<std::int32_t>>(), n);
  return std::make_shared<const Domain>(n, std::move(sets));
}

inline json assignment_to_json(const Assignment& a) {
  json bits = json::array();
  for (auto b : a.bits()) bits.push_back(static_cast<int>(b));
  return json{{"n", a.n()}, {"bits", std::move(bits)}};
}

inline Assignment assignment_from_json(const json& j) {
  if (!j.is_object() || !j.contains("bits")) throw InvalidArgument("assignment json: need {bits}");
  auto raw = j.at("bits").get<std::vector<int>>();
  std::vector<std::uint8_t> bits;
  bits.reserve(raw.size());
  for (int b : raw) {
    if (b != 0 && b != 1) throw InvalidArgument("assignment json: bits must be 0/1");
    bits.push_back(static_cast<std::uint8_t>(b));
  }
  if (j.contains("n") && j.at("n").get<std::int64_t>() != static_cast<std::int64_t>(bits.size()))
    throw InvalidArgument("assignment json: n does not match bits length");
  return Assignment(std::move(bits));
}

// Canonical edge list: each undirected edge once as [min, max, w], self loops
// as [s, s, w], sorted lexicographically.
inline json graph_to_json(const TestGraph& g) {
  json edges = json::array();
  for (std::int64_t s = 0; s < g.size(); ++s) {
    auto row = g.row_neighbors(s);
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] >= static_cast<std::uint64_t>(s))
        edges.push_back(json::array({s, row[j], g.row_weight(s, j)}));
  }
  return json{{"domain", domain_to_json(*g.domain())}, {"edges", std::move(edges)}};
}

inline TestGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("edges"))
    throw InvalidArgument("graph json: need {domain, edges}");
  DomainPtr dom = domain_from_json(j.at("domain"));
  std::vector<std::array<std::int64_t, 3>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw InvalidArgument("graph json: edge must be [s,s',w]");
    edges.push_back({e[0].get<std::int64_t>(), e[1].get<std::int64_t>(), e[2].get<std::int64_t>()});
  }
  return build_from_edges(std::move(dom), edges);
}

inline json table_to_json(const DPTable& f) {
  json values = json::array();
  for (std::int64_t s = 0; s < f.size(); ++s) {
    json bits = json::array();
    for (auto b : f.value(s).bits()) bits.push_back(static_cast<int>(b));
    values.push_back(std::move(bits));
  }
  return json{{"domain_hash", domain_hash(*f.domain())}, {"values", std::move(values)}};
}

inline DPTable table_from_json(const json& j, DomainPtr dom) {
  if (!j.is_object() || !j.contains("values")) throw InvalidArgument("table json: need {values}");
  if (!dom) throw InvalidArgument("table json: null domain");
  if (j.contains("domain_hash") && j.at("domain_hash").get<std::string>() != domain_hash(*dom))
    throw InvalidArgument("table json: domain hash mismatch");
  std::vector<LocalAssignment> values;
  for (const auto& row : j.at("values")) {
    auto raw = row.get<std::vector<int>>();
    std::vector<std::uint8_t> bits;
    bits.reserve(raw.size());
    for (int b : raw) {
      if (b != 0 && b != 1) throw InvalidArgument("table json: bits must be 0/1");
      bits.push_back(static_cast<std::uint8_t>(b));
    }
    values.emplace_back(std::move(bits));
  }
  return DPTable(std::move(dom), std::move(values));
}

inline json spectral_to_json(const SpectralReport& r) {
  return json{{"lambda2", r.lambda2},   {"lambda_min", r.lambda_min}, {"lambda_g", r.lambda_g},
              {"residual", r.residual}, {"method", r.method},         {"regular", r.regular},
              {"connected", r.connected}};
}

inline json test_report_to_json(const TestReport& r) {
  json j{{"mode", r.mode}, {"rejection", r.rejection_estimate}};
  if (r.mode == "exact") j["rejection_exact"] = rational_to_json(r.rejection);
  if (r.mode == "monte-carlo") {
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["std_error"] = r.std_error;
  }
  return j;
}

inline json certificate_to_json(const Certificate& c) {
  json g{{"lambda_global", c.global.lambda_global},
         {"worst_local", c.global.worst_local},
         {"worst_coord", c.global.worst_coord},
         {"pass", c.global.pass}};
  json r{{"min_retention", rational_to_json(c.retention.min_retention)},
         {"worst_set", c.retention.worst_set},
         {"worst_coord", c.retention.worst_coord},
         {"pass", c.retention.pass}};
  json s{{"worst_tail", rational_to_json(c.sampling.worst_tail)},
         {"worst_set", c.sampling.worst_set},
         {"worst_subset", c.sampling.worst_subset},
         {"exhaustive", c.sampling.exhaustive},
         {"pass", c.sampling.pass}};
  if (!c.sampling.exhaustive) {
    s["samples_per_size"] = c.sampling.samples_per_size;
    s["seed"] = c.sampling.seed;
  }
  return json{{"lambda", rational_to_json(c.lambda)},
              {"rho", rational_to_json(c.rho)},
              {"condition_global", std::move(g)},
              {"condition_retention", std::move(r)},
              {"condition_sampling", std::move(s)},
              {"certified", c.certified}};
}

inline json soundness_to_json(const SoundnessBreakdown& s) {
  auto surd = [](const Surd& e) {
    return json{{"value", e.value()}, {"positive", e.sign() > 0}};
  };
  json j{{"e1", surd(s.e1)}, {"e2", surd(s.e2)}, {"e3", surd(s.e3)},
         {"K", s.k_value},   {"K_positive", s.k_positive}};
  if (s.k_exact) j["K_exact"] = rational_to_json(*s.k_exact);
  return j;
}

inline json conflict_profile_to_json(const ConflictProfile& p) {
  json beta_i = json::array();
  for (std::size_t i = 0; i < p.beta_by_coord.size(); ++i) {
    if (p.covered[i])
      beta_i.push_back(rational_to_json(p.beta_by_coord[i]));
    else
      beta_i.push_back(nullptr);
  }
  return json{{"beta", rational_to_json(p.beta)},
              {"conflicted_sets", p.conflicted_sets},
              {"conflict_counts", p.conflict_counts},
              {"beta_by_coord", std::move(beta_i)},
              {"case", to_string(p.case_label)},
              {"c", rational_to_json(p.c)},
              {"rho", rational_to_json(p.rho)}};
}

inline json expansion_to_json(const ExpansionEstimate& e) {
  return json{{"h", rational_to_json(e.h)},
              {"exact", e.exact},
              {"witness", e.witness},
              {"candidates", e.candidates}};
}

inline json amplification_to_json(const AmplificationReport& a) {
  return json{{"delta", rational_to_json(a.delta)},
              {"encoded_distance", rational_to_json(a.encoded_distance)},
              {"ratio", rational_to_json(a.ratio)},
              {"in_regime", a.in_regime},
              {"k", a.k}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed json in " + path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace dpt
