#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dpt/dpt.hpp"

namespace {

using dpt::json;
using dpt::Rational;

struct GraphSource {
  std::string graph_file;
  std::string family;
  std::int32_t n = 0, k = 0, t = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--graph", graph_file, "graph JSON file");
    cmd->add_option("--family", family, "johnson | sliding | sliding-sparse | clique-slice");
    cmd->add_option("--n", n, "ground set size");
    cmd->add_option("--k", k, "set size");
    cmd->add_option("--t", t, "intersection size (johnson)");
  }

  dpt::TestGraph load() const {
    if (!graph_file.empty()) return dpt::graph_from_json(dpt::load_json_file(graph_file));
    if (family == "johnson") return dpt::build_johnson(n, k, t);
    if (family == "sliding") return dpt::build_sliding_window(n, k, false);
    if (family == "sliding-sparse") return dpt::build_sliding_window(n, k, true);
    if (family == "clique-slice") return dpt::build_clique_slice(n);
    throw dpt::InvalidArgument("need --graph or a valid --family");
  }
};

void emit(const json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    dpt::save_json_file(out, j);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"two-query direct product testing laboratory"};
  app.require_subcommand(1);
  std::uint64_t global_seed = 0;
  app.add_option("--seed", global_seed, "global seed (default 0)");

  // build-domain
  auto* cmd_build = app.add_subcommand("build-domain", "construct a domain (and graph) by family");
  std::string b_family, b_graph_in, b_out, b_graph_out;
  std::int32_t b_n = 0, b_k = 0, b_t = 0, b_d = 0;
  cmd_build->add_option("--family", b_family,
                        "johnson | sliding | sliding-sparse | clique-slice | boundary | "
                        "random-regular")
      ->required();
  cmd_build->add_option("--n", b_n, "ground set size / vertex count");
  cmd_build->add_option("--k", b_k, "set size");
  cmd_build->add_option("--t", b_t, "intersection size (johnson)");
  cmd_build->add_option("--d", b_d, "degree (random-regular)");
  cmd_build->add_option("--graph", b_graph_in, "input graph JSON (boundary)");
  cmd_build->add_option("--out", b_out, "domain JSON output");
  cmd_build->add_option("--graph-out", b_graph_out, "graph JSON output");

  // spectrum
  auto* cmd_spectrum = app.add_subcommand("spectrum", "nontrivial eigenvalues of the test graph");
  GraphSource s_src;
  s_src.attach(cmd_spectrum);
  std::string s_method = "auto", s_out;
  cmd_spectrum->add_option("--method", s_method, "auto | dense | iterative");
  cmd_spectrum->add_option("--out", s_out, "report output file");

  // certify
  auto* cmd_cert = app.add_subcommand("certify", "coordinate-expansion certificate");
  GraphSource c_src;
  c_src.attach(cmd_cert);
  std::string c_lambda = "1/33", c_rho = "1/2", c_c = "3/40", c_mode = "auto", c_out;
  std::int64_t c_samples = 200;
  cmd_cert->add_option("--lambda", c_lambda, "target lambda (default 1/33)");
  cmd_cert->add_option("--rho", c_rho, "target rho (default 1/2)");
  cmd_cert->add_option("--c", c_c, "soundness parameter c (default 3/40)");
  cmd_cert->add_option("--strategy,--mode", c_mode, "auto | exhaustive | sampled (condition 3)");
  cmd_cert->add_option("--samples", c_samples, "samples per size in sampled mode");
  cmd_cert->add_option("--out", c_out, "certificate output file");

  // decode
  auto* cmd_dec = app.add_subcommand("decode", "majority decoding and conflict profile");
  std::string d_table, d_domain, d_c = "3/40", d_rho = "1/2", d_out, d_profile;
  cmd_dec->add_option("--table", d_table, "table JSON file")->required();
  cmd_dec->add_option("--domain", d_domain, "domain JSON file")->required();
  cmd_dec->add_option("--c", d_c, "case-split parameter c");
  cmd_dec->add_option("--rho", d_rho, "case-split parameter rho");
  cmd_dec->add_option("--out", d_out, "decoded assignment output file");
  cmd_dec->add_option("--profile", d_profile, "conflict profile output file");

  // test
  auto* cmd_test = app.add_subcommand("test", "two-query agreement test");
  GraphSource t_src;
  t_src.attach(cmd_test);
  std::string t_table, t_mode = "auto", t_out;
  std::int64_t t_trials = 20000;
  cmd_test->add_option("--table", t_table, "table JSON file")->required();
  cmd_test->add_option("--mode", t_mode, "auto | exact | monte-carlo");
  cmd_test->add_option("--trials", t_trials, "monte-carlo trials");
  cmd_test->add_option("--out", t_out, "report output file");

  // adversary
  auto* cmd_adv = app.add_subcommand("adversary", "corrupt an encoded assignment");
  std::string a_kind = "random-sets", a_domain, a_assignment, a_delta = "1/10",
              a_fraction = "1/2", a_out;
  std::int32_t a_coord = 1;
  cmd_adv->add_option("--kind", a_kind, "random-sets | single-flip | cluster");
  cmd_adv->add_option("--domain", a_domain, "domain JSON file")->required();
  cmd_adv->add_option("--assignment", a_assignment,
                      "assignment JSON (default: seeded random bits)");
  cmd_adv->add_option("--delta", a_delta, "corruption fraction (random-sets)");
  cmd_adv->add_option("--coord", a_coord, "target coordinate (cluster)");
  cmd_adv->add_option("--fraction", a_fraction, "fraction of V_i to flip (cluster)");
  cmd_adv->add_option("--out", a_out, "corrupted table output file");

  // amplify
  auto* cmd_amp = app.add_subcommand("amplify", "vertex expansion and distance amplification");
  std::string am_graph, am_mode = "auto", am_x, am_y, am_out;
  std::int64_t am_samples = 20000;
  cmd_amp->add_option("--graph", am_graph, "graph JSON file")->required();
  cmd_amp->add_option("--mode", am_mode, "auto | brute | sampled");
  cmd_amp->add_option("--samples", am_samples, "samples in sampled mode");
  cmd_amp->add_option("--x", am_x, "assignment JSON");
  cmd_amp->add_option("--y", am_y, "assignment JSON");
  cmd_amp->add_option("--out", am_out, "report output file");

  // run
  auto* cmd_run = app.add_subcommand("run", "batch experiment from a config file");
  std::string r_config, r_out, r_format = "csv";
  cmd_run->add_option("--config", r_config, "experiment config JSON")->required();
  cmd_run->add_option("--out", r_out, "output file (default stdout)");
  cmd_run->add_option("--format", r_format, "csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_build->parsed()) {
    if (b_family == "boundary") {
      if (b_graph_in.empty()) throw dpt::InvalidArgument("boundary family needs --graph");
      auto g = dpt::graph_from_json(dpt::load_json_file(b_graph_in));
      auto dom = dpt::boundary_domain(g);
      emit(dpt::domain_to_json(*dom), b_out);
      return 0;
    }
    if (b_family == "random-regular") {
      auto g = dpt::random_regular_graph(b_n, b_d, global_seed);
      if (!b_graph_out.empty()) dpt::save_json_file(b_graph_out, dpt::graph_to_json(g));
      emit(dpt::domain_to_json(*g.domain()), b_out);
      return 0;
    }
    GraphSource src;
    src.family = b_family;
    src.n = b_n;
    src.k = b_k;
    src.t = b_t;
    auto g = src.load();
    if (!b_graph_out.empty()) dpt::save_json_file(b_graph_out, dpt::graph_to_json(g));
    emit(dpt::domain_to_json(*g.domain()), b_out);
    return 0;
  }

  if (cmd_spectrum->parsed()) {
    auto g = s_src.load();
    dpt::EigMethod m = dpt::EigMethod::automatic;
    if (s_method == "dense")
      m = dpt::EigMethod::dense;
    else if (s_method == "iterative")
      m = dpt::EigMethod::iterative;
    else if (s_method != "auto")
      throw dpt::InvalidArgument("spectrum: unknown method '" + s_method + "'");
    emit(dpt::spectral_to_json(dpt::lambda_of(g, m)), s_out);
    return 0;
  }

  if (cmd_cert->parsed()) {
    auto g = c_src.load();
    Rational lambda = Rational::parse(c_lambda);
    Rational rho = Rational::parse(c_rho);
    dpt::SamplingStrategy strat;
    strat.samples_per_size = c_samples;
    strat.seed = global_seed;
    if (c_mode == "exhaustive")
      strat.mode = dpt::SamplingStrategy::Mode::exhaustive;
    else if (c_mode == "sampled")
      strat.mode = dpt::SamplingStrategy::Mode::sampled;
    else if (c_mode != "auto")
      throw dpt::InvalidArgument("certify: unknown mode '" + c_mode + "'");
    auto cert = dpt::certify_coordinate_expansion(g, lambda, rho, strat);
    json out = dpt::certificate_to_json(cert);
    out["soundness"] = dpt::soundness_to_json(
        dpt::soundness_constant(lambda, rho, Rational::parse(c_c)));
    emit(out, c_out);
    return 0;
  }

  if (cmd_dec->parsed()) {
    auto dom = dpt::domain_from_json(dpt::load_json_file(d_domain));
    auto f = dpt::table_from_json(dpt::load_json_file(d_table), dom);
    auto dec = dpt::majority_decode(f);
    auto prof = dpt::conflict_profile(f, Rational::parse(d_c), Rational::parse(d_rho));
    json out{{"assignment", dpt::assignment_to_json(dec.assignment)},
             {"beta", dpt::rational_to_json(dpt::dp_distance(f, dec.table))}};
    if (!d_profile.empty())
      dpt::save_json_file(d_profile, dpt::conflict_profile_to_json(prof));
    else
      out["profile"] = dpt::conflict_profile_to_json(prof);
    emit(out, d_out);
    return 0;
  }

  if (cmd_test->parsed()) {
    auto g = t_src.load();
    auto f = dpt::table_from_json(dpt::load_json_file(t_table), g.domain());
    dpt::TestReport rep;
    if (t_mode == "exact")
      rep = dpt::rejection_probability_exact(f, g);
    else if (t_mode == "monte-carlo")
      rep = dpt::run_test_monte_carlo(f, g, t_trials, global_seed);
    else if (t_mode == "auto")
      rep = g.total_weight() <= 100000000 ? dpt::rejection_probability_exact(f, g)
                                          : dpt::run_test_monte_carlo(f, g, t_trials, global_seed);
    else
      throw dpt::InvalidArgument("test: unknown mode '" + t_mode + "'");
    emit(dpt::test_report_to_json(rep), t_out);
    return 0;
  }

  if (cmd_adv->parsed()) {
    auto dom = dpt::domain_from_json(dpt::load_json_file(a_domain));
    dpt::Assignment a;
    if (!a_assignment.empty()) {
      a = dpt::assignment_from_json(dpt::load_json_file(a_assignment));
    } else {
      auto eng = dpt::make_engine(global_seed, 100);
      std::vector<std::uint8_t> bits(dom->n());
      for (auto& b : bits) b = static_cast<std::uint8_t>(dpt::bounded(eng, 2));
      a = dpt::Assignment(std::move(bits));
    }
    dpt::DPTable f = [&] {
      if (a_kind == "random-sets")
        return dpt::corrupt_random_sets(a, dom, Rational::parse(a_delta), global_seed);
      if (a_kind == "single-flip") return dpt::per_set_single_flip(a, dom, global_seed);
      if (a_kind == "cluster") {
        auto members = dom->sets_in(a_coord);
        if (members.empty()) throw dpt::InvalidArgument("adversary: coordinate uncovered");
        Rational frac = Rational::parse(a_fraction);
        if (frac.sign() < 0 || frac > Rational(1))
          throw dpt::InvalidArgument("adversary: fraction outside [0,1]");
        std::int64_t m = dpt::ceil_times(frac, static_cast<std::int64_t>(members.size()));
        auto eng = dpt::make_engine(global_seed, 101);
        auto picks = dpt::sample_without_replacement(members.size(), m, eng);
        std::vector<std::int64_t> b_sets;
        for (auto p : picks) b_sets.push_back(members[p]);
        return dpt::coordinate_cluster_flip(a, dom, a_coord, b_sets);
      }
      throw dpt::InvalidArgument("adversary: unknown kind '" + a_kind + "'");
    }();
    json out = dpt::table_to_json(f);
    out["planted_distance"] = dpt::rational_to_json(dpt::dp_distance(f, dpt::dp_encode(a, dom)));
    out["assignment"] = dpt::assignment_to_json(a);
    emit(out, a_out);
    return 0;
  }

  if (cmd_amp->parsed()) {
    auto g = dpt::graph_from_json(dpt::load_json_file(am_graph));
    dpt::ExpansionMode mode = dpt::ExpansionMode::automatic;
    if (am_mode == "brute")
      mode = dpt::ExpansionMode::brute_force;
    else if (am_mode == "sampled")
      mode = dpt::ExpansionMode::sampled;
    else if (am_mode != "auto")
      throw dpt::InvalidArgument("amplify: unknown mode '" + am_mode + "'");
    auto est = dpt::vertex_expansion(g, mode, am_samples, global_seed);
    json out{{"expansion", dpt::expansion_to_json(est)}};
    if (!am_x.empty() || !am_y.empty()) {
      if (am_x.empty() || am_y.empty())
        throw dpt::InvalidArgument("amplify: --x and --y go together");
      auto x = dpt::assignment_from_json(dpt::load_json_file(am_x));
      auto y = dpt::assignment_from_json(dpt::load_json_file(am_y));
      auto dom = dpt::boundary_domain(g);
      out["amplification"] = dpt::amplification_to_json(dpt::amplification_ratio(dom, x, y));
    }
    emit(out, am_out);
    return 0;
  }

  if (cmd_run->parsed()) {
    auto cfg = dpt::load_json_file(r_config);
    auto result = dpt::run_experiment(cfg);
    if (r_format == "csv") {
      std::string csv = dpt::experiment_csv(result.rows);
      if (r_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream f(r_out);
        if (!f) throw dpt::InvalidArgument("cannot write file: " + r_out);
        f << csv;
      }
    } else if (r_format == "json") {
      emit(dpt::experiment_rows_to_json(result.rows), r_out);
    } else {
      throw dpt::InvalidArgument("run: unknown format '" + r_format + "'");
    }
    std::int64_t failed = 0;
    for (const auto& row : result.rows) failed += row.pass ? 0 : 1;
    std::cerr << result.rows.size() << " rows, " << failed << " bound violations\n";
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const dpt::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
