#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "dpt/adversary.hpp"
#include "dpt/certify.hpp"
#include "dpt/codec.hpp"
#include "dpt/core.hpp"
#include "dpt/error.hpp"
#include "dpt/io.hpp"
#include "dpt/tester.hpp"
#include "dpt/testgraph.hpp"

namespace dpt {

// One experiment instance: a planted assignment, an adversarial corruption, a
// test run, and a comparison of the measured agreement distance against the
// configured bound.
struct ExperimentRow {
  std::string family;
  std::int32_t n = 0, k = 0, t = 0;
  std::uint64_t seed = 0;
  std::string tester_mode;
  Rational delta_planted;
  bool epsilon_exact = false;
  Rational epsilon;               // exact mode
  double epsilon_value = 0.0;     // both modes
  Rational beta;
  std::string bound_kind;
  bool bound_exact = false;
  Rational bound;                 // exact when the bound is rational in epsilon
  double bound_value = 0.0;
  bool bound_defined = false;
  bool pass = false;
};

namespace detail {

inline Rational parse_rational_field(const json& j, const char* key, const Rational& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number_float()) return Rational::from_double(v.get<double>());
  throw InvalidArgument(std::string("experiment config: bad value for ") + key);
}

inline Assignment random_assignment(std::int32_t n, std::mt19937_64& eng) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(bounded(eng, 2));
  return Assignment(std::move(bits));
}

}  // namespace detail

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  Certificate certificate;  // soundness bound mode only
  bool certificate_ran = false;
  double soundness_k = 0.0;
  bool soundness_k_positive = false;
};

// Config keys: family (sliding | sliding-sparse | johnson | clique-slice),
// n, k, t; adversary {kind: random-sets | single-flip | cluster, delta,
// coord, cluster_fraction}; tester {mode: auto | exact | monte-carlo,
// trials}; bound {kind: retention | soundness, rho, lambda, c}; seeds as an
// array, or {base_seed, count}. Rationals may be strings ("1/33", "0.05"),
// integers, or floats.
inline ExperimentResult run_experiment(const json& config) {
  if (!config.is_object()) throw InvalidArgument("experiment config: not an object");
  std::string family = config.value("family", std::string());
  std::int32_t n = config.value("n", 0);
  std::int32_t k = config.value("k", 0);
  std::int32_t t = config.value("t", 0);

  TestGraph graph = [&] {
    if (family == "sliding") return build_sliding_window(n, k, false);
    if (family == "sliding-sparse") return build_sliding_window(n, k, true);
    if (family == "johnson") return build_johnson(n, k, t);
    if (family == "clique-slice") return build_clique_slice(n);
    throw InvalidArgument("experiment config: unknown family '" + family + "'");
  }();
  const DomainPtr& dom = graph.domain();

  json adv = config.value("adversary", json::object());
  std::string adv_kind = adv.value("kind", std::string("random-sets"));
  Rational delta = detail::parse_rational_field(adv, "delta", Rational(1, 10));

  json tester = config.value("tester", json::object());
  std::string tester_mode = tester.value("mode", std::string("auto"));
  std::int64_t trials = tester.value("trials", std::int64_t(20000));
  std::int64_t exact_cap = tester.value("exact_cap", std::int64_t(100000000));

  json bound_cfg = config.value("bound", json::object());
  std::string bound_kind = bound_cfg.value("kind", std::string("retention"));
  Rational rho = detail::parse_rational_field(bound_cfg, "rho", Rational(1, 2));

  std::vector<std::uint64_t> seeds;
  if (config.contains("seeds") && config.at("seeds").is_array()) {
    for (const auto& s : config.at("seeds")) seeds.push_back(s.get<std::uint64_t>());
  } else {
    std::uint64_t base = config.value("base_seed", std::uint64_t(1));
    std::int64_t count = config.value("count", std::int64_t(10));
    for (std::int64_t i = 0; i < count; ++i) seeds.push_back(base + static_cast<std::uint64_t>(i));
  }
  if (seeds.empty()) throw InvalidArgument("experiment config: no seeds");

  ExperimentResult result;
  Rational inv_k;  // 1/K when the soundness bound applies
  bool soundness_usable = false;
  if (bound_kind == "soundness") {
    Rational lambda = detail::parse_rational_field(bound_cfg, "lambda", Rational(1, 33));
    Rational c = detail::parse_rational_field(bound_cfg, "c", Rational(3, 40));
    SamplingStrategy strat;
    strat.seed = seeds[0];
    result.certificate = certify_coordinate_expansion(graph, lambda, rho, strat);
    result.certificate_ran = true;
    auto sb = soundness_constant(lambda, rho, c);
    result.soundness_k = sb.k_value;
    result.soundness_k_positive = sb.k_positive;
    soundness_usable = result.certificate.certified && sb.k_positive;
  } else if (bound_kind != "retention") {
    throw InvalidArgument("experiment config: unknown bound kind '" + bound_kind + "'");
  }

  for (std::uint64_t seed : seeds) {
    ExperimentRow row;
    row.family = family;
    row.n = n;
    row.k = k;
    row.t = (family == "johnson") ? t : 0;
    row.seed = seed;
    row.bound_kind = bound_kind;

    auto assign_eng = make_engine(seed, 100);
    Assignment a = detail::random_assignment(dom->n(), assign_eng);

    DPTable f = [&] {
      if (adv_kind == "random-sets") return corrupt_random_sets(a, dom, delta, seed);
      if (adv_kind == "single-flip") return per_set_single_flip(a, dom, seed);
      if (adv_kind == "cluster") {
        std::int32_t coord = adv.value("coord", 1);
        Rational frac = detail::parse_rational_field(adv, "cluster_fraction", Rational(1, 2));
        auto members = dom->sets_in(coord);
        if (members.empty()) throw InvalidArgument("experiment: cluster coordinate uncovered");
        if (frac.sign() < 0 || frac > Rational(1))
          throw InvalidArgument("experiment: cluster_fraction outside [0,1]");
        std::int64_t m = ceil_times(frac, static_cast<std::int64_t>(members.size()));
        auto pick_eng = make_engine(seed, 101);
        auto picks = sample_without_replacement(members.size(), m, pick_eng);
        std::vector<std::int64_t> b_sets;
        for (auto p : picks) b_sets.push_back(members[p]);
        return coordinate_cluster_flip(a, dom, coord, b_sets);
      }
      throw InvalidArgument("experiment config: unknown adversary '" + adv_kind + "'");
    }();

    row.delta_planted = dp_distance(f, dp_encode(a, dom));

    bool exact = tester_mode == "exact" ||
                 (tester_mode == "auto" && graph.total_weight() <= exact_cap);
    if (tester_mode != "exact" && tester_mode != "auto" && tester_mode != "monte-carlo")
      throw InvalidArgument("experiment config: unknown tester mode '" + tester_mode + "'");
    if (exact) {
      TestReport rep = rejection_probability_exact(f, graph, exact_cap);
      row.tester_mode = "exact";
      row.epsilon_exact = true;
      row.epsilon = rep.rejection;
      row.epsilon_value = rep.rejection_estimate;
    } else {
      TestReport rep = run_test_monte_carlo(f, graph, trials, seed);
      row.tester_mode = "monte-carlo";
      row.epsilon_value = rep.rejection_estimate;
    }

    row.beta = dp_distance(f, majority_decode(f).table);

    if (bound_kind == "retention") {
      // beta <= 2 epsilon / rho on clique-local families with retention rho.
      row.bound_defined = true;
      if (row.epsilon_exact) {
        row.bound_exact = true;
        row.bound = Rational(2) * row.epsilon / rho;
        row.bound_value = row.bound.to_double();
        row.pass = row.beta <= row.bound;
      } else {
        row.bound_value = 2.0 * row.epsilon_value / rho.to_double();
        row.pass = row.beta.to_double() <= row.bound_value;
      }
    } else {
      row.bound_defined = soundness_usable;
      if (soundness_usable) {
        double eps = row.epsilon_exact ? row.epsilon.to_double() : row.epsilon_value;
        row.bound_value = eps / result.soundness_k;
        row.pass = row.beta.to_double() <= row.bound_value;
      } else {
        row.pass = false;
      }
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::string(buf);
}

inline std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out =
      "family,n,k,t,seed,tester_mode,delta_planted,delta_planted_frac,"
      "epsilon,epsilon_frac,beta,beta_frac,bound_kind,bound,bound_frac,pass\n";
  for (const auto& r : rows) {
    out += r.family + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
           std::to_string(r.t) + "," + std::to_string(r.seed) + "," + r.tester_mode + ",";
    out += format_double(r.delta_planted.to_double()) + "," + r.delta_planted.str() + ",";
    out += format_double(r.epsilon_value) + "," + (r.epsilon_exact ? r.epsilon.str() : "") + ",";
    out += format_double(r.beta.to_double()) + "," + r.beta.str() + ",";
    out += r.bound_kind + ",";
    if (r.bound_defined) {
      out += format_double(r.bound_value) + "," + (r.bound_exact ? r.bound.str() : "");
    } else {
      out += ",";
    }
    out += std::string(",") + (r.pass ? "1" : "0") + "\n";
  }
  return out;
}

inline json experiment_rows_to_json(const std::vector<ExperimentRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j{{"family", r.family},
           {"n", r.n},
           {"k", r.k},
           {"t", r.t},
           {"seed", r.seed},
           {"tester_mode", r.tester_mode},
           {"delta_planted", rational_to_json(r.delta_planted)},
           {"beta", rational_to_json(r.beta)},
           {"bound_kind", r.bound_kind},
           {"pass", r.pass}};
    if (r.epsilon_exact)
      j["epsilon"] = rational_to_json(r.epsilon);
    else
      j["epsilon"] = r.epsilon_value;
    if (r.bound_defined) {
      if (r.bound_exact)
        j["bound"] = rational_to_json(r.bound);
      else
        j["bound"] = r.bound_value;
    } else {
      j["bound"] = nullptr;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace dpt
