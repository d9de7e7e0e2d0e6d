#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cosep/coseparability.hpp"
#include "cosep/dorroh.hpp"
#include "cosep/format.hpp"

namespace cosep::cli {

inline std::string read_input(const std::string& path, std::istream& in_stream) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in_stream.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  ss << in.rdbuf();
  return ss.str();
}

inline std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("COALG_SEED")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return kDefaultSeed;
}

namespace detail_cli {

inline ordered_json outcome_json(const CointegralOutcome& o) {
  ordered_json j;
  j["feasible"] = o.feasible;
  j["unknowns"] = o.unknowns;
  j["rank_system"] = o.rank_system;
  j["rank_augmented"] = o.rank_augmented;
  j["solution_dim"] = o.solution_dim;
  j["certificate"] = o.certificate ? matrix_json(o.certificate->form)
                                   : ordered_json(nullptr);
  return j;
}

inline ordered_json outcome_json(const CounitOutcome& o) {
  ordered_json j;
  j["feasible"] = o.feasible;
  j["unknowns"] = o.unknowns;
  j["rank_system"] = o.rank_system;
  j["rank_augmented"] = o.rank_augmented;
  j["solution_dim"] = o.solution_dim;
  j["certificate"] =
      o.solution ? matrix_json(o.solution->map) : ordered_json(nullptr);
  return j;
}

inline ordered_json validate_json(const Coalgebra& c) {
  auto rep = validate_coalgebra(c);
  ordered_json j;
  j["coassociative"] = rep.coassociative;
  j["counit_present"] = c.epsilon.has_value();
  j["counit_left_identity"] = rep.counit_left;
  j["counit_right_identity"] = rep.counit_right;
  j["witness"] = rep.witness ? ordered_json(*rep.witness) : ordered_json(nullptr);
  j["pass"] = rep.ok();
  return j;
}

// Commands that run solvers need a structurally valid counital input;
// anything else is an input error (exit 2), distinct from an honest
// infeasible outcome (exit 1).
inline void require_valid_counital(const ParsedSpec& spec) {
  if (!spec.coalgebra.epsilon)
    throw input_error("input '" + spec.name + "' has no epsilon");
  auto rep = validate_coalgebra(spec.coalgebra);
  if (!rep.ok())
    throw input_error("input '" + spec.name +
                      "' fails the counit identities at basis index " +
                      std::to_string(rep.witness.value_or(0)));
}

inline std::pair<ordered_json, int> run_validate(const ParsedSpec& spec) {
  ordered_json j = validate_json(spec.coalgebra);
  return {j, j["pass"].get<bool>() ? 0 : 1};
}

inline std::pair<ordered_json, int> run_cosep(const ParsedSpec& spec) {
  require_valid_counital(spec);
  CointegralOutcome out = solve_cointegral(spec.coalgebra);
  ordered_json j = outcome_json(out);
  if (out.feasible) {
    std::string why;
    j["certificate_verified"] =
        verify_cointegral(spec.coalgebra, out.certificate->form, &why);
  }
  return {j, out.feasible ? 0 : 1};
}

inline std::pair<ordered_json, int> run_counit(const ParsedSpec& spec, Side side) {
  require_valid_counital(spec);
  CoringOverA cr = induce_coring(spec.coalgebra);
  CounitOutcome out = solve_counit(cr, side);
  ordered_json j;
  j["side"] = side_name(side);
  j.update(outcome_json(out));
  if (out.feasible)
    j["certificate_verified"] = verify_counit(cr, side, out.solution->map);
  return {j, out.feasible ? 0 : 1};
}

inline std::pair<ordered_json, int> run_dorroh(const ParsedSpec& spec) {
  require_valid_counital(spec);
  DorrohCoring d = build_dorroh(induce_coring(spec.coalgebra));
  DorrohReport rep = validate_dorroh(d);
  CoidealReport coideal = check_coideal_embedding(d);
  RightComodule reg = regular_right_comodule(d.base);
  RightComodule lifted = lift_right_comodule(d, reg);
  ComoduleReport lift_rep = validate_right_comodule(d.hat, lifted, &d.epsilon_hat);
  bool roundtrip = forget_lifted_coaction(d, lifted) == reg.coaction;

  ordered_json j;
  j["carrier_dim"] = d.hat.carrier_dim;
  j["coring_axioms"] = ordered_json{{"bilinear_left", rep.coring.bilinear_left},
                                    {"bilinear_right", rep.coring.bilinear_right},
                                    {"coassociative", rep.coring.coassociative}};
  j["counital"] = ordered_json{{"eps_bilinear", rep.counital.eps_bilinear},
                               {"left_identity", rep.counital.left_identity},
                               {"right_identity", rep.counital.right_identity}};
  j["structure_maps"] = ordered_json{{"eps_iota_is_identity", rep.eps_iota_is_identity},
                                     {"iota_injective", rep.iota_injective},
                                     {"iota_bilinear", rep.iota_bilinear},
                                     {"pi_coring_morphism", rep.pi_coring_morphism}};
  j["coideal"] = ordered_json{{"epsilon_vanishes", coideal.epsilon_vanishes},
                              {"delta_into_sum", coideal.delta_into_sum}};
  j["regular_comodule_lift"] =
      ordered_json{{"a_linear", lift_rep.a_linear},
                   {"coassociative", lift_rep.coassociative},
                   {"counital", lift_rep.counital},
                   {"forget_roundtrip", roundtrip}};
  bool pass = rep.ok() && coideal.ok() && lift_rep.ok() && roundtrip;
  j["pass"] = pass;
  return {j, pass ? 0 : 1};
}

inline std::pair<ordered_json, int> run_balanced(const ParsedSpec& spec,
                                                 std::uint64_t seed,
                                                 std::size_t trials) {
  BalancedContext ctx(spec.coalgebra);
  SplitMix64 rng(seed);
  std::size_t n = spec.coalgebra.dim;
  const Field& f = spec.coalgebra.field;
  std::vector<std::pair<std::string, DenseMatrix>> forms;
  forms.emplace_back("zero", DenseMatrix(f, n, n));
  DenseMatrix ones(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ones.at(i, j) = Scalar::one(f);
  forms.emplace_back("all-ones", ones);
  for (std::size_t t = 0; t < trials; ++t)
    forms.emplace_back("random#" + std::to_string(t), random_form(f, n, rng));

  std::size_t trues = 0, falses = 0;
  bool all_agree = true;
  ordered_json disagreement(nullptr);
  for (const auto& [label, form] : forms) {
    BalancedReport rep = balanced_conditions(ctx, form);
    if (!rep.all_agree() && all_agree) {
      all_agree = false;
      disagreement = ordered_json{{"trial", label},
                                  {"balanced", rep.balanced},
                                  {"left_linear", rep.left_linear},
                                  {"right_linear", rep.right_linear},
                                  {"factors", rep.factors},
                                  {"twisted_compat", rep.twisted_compat}};
    }
    (rep.value() ? trues : falses)++;
  }
  ordered_json j;
  j["seed"] = seed;
  j["committed_forms"] = 2;
  j["random_trials"] = trials;
  j["true_count"] = trues;
  j["false_count"] = falses;
  j["all_agree"] = all_agree;
  j["first_disagreement"] = disagreement;
  return {j, all_agree ? 0 : 1};
}

inline std::pair<ordered_json, int> run_theorem(const ParsedSpec& spec) {
  require_valid_counital(spec);
  TheoremReport rep = theorem_pipeline(spec.coalgebra);
  ordered_json j;
  j["verdicts"] = ordered_json{{"cointegral", rep.cointegral.feasible},
                               {"counit_left", rep.counit_left.feasible},
                               {"cointegral_coopposite", rep.cointegral_coop.feasible},
                               {"counit_right", rep.counit_right.feasible}};
  j["agree"] = rep.agree;
  j["coseparable"] = rep.agree ? ordered_json(rep.verdict) : ordered_json(nullptr);
  j["solvers"] = ordered_json{{"cointegral", outcome_json(rep.cointegral)},
                              {"counit_left", outcome_json(rep.counit_left)},
                              {"cointegral_coopposite", outcome_json(rep.cointegral_coop)},
                              {"counit_right", outcome_json(rep.counit_right)}};
  j["cross_constructions"] = ordered_json{
      {"counit_from_cointegral_certified", rep.counit_from_cointegral_certified},
      {"counit_from_cointegral",
       rep.counit_from_cointegral ? matrix_json(*rep.counit_from_cointegral)
                                  : ordered_json(nullptr)},
      {"coop_retraction_from_counit_certified",
       rep.coop_retraction_from_counit_certified},
      {"coop_retraction", rep.coop_retraction ? matrix_json(*rep.coop_retraction)
                                              : ordered_json(nullptr)}};
  return {j, rep.agree && rep.verdict ? 0 : 1};
}

inline std::pair<ordered_json, int> run_report(const ParsedSpec& spec,
                                               std::uint64_t seed,
                                               std::size_t trials) {
  ordered_json j;
  auto [vj, vcode] = run_validate(spec);
  j["validate"] = vj;
  int code = vcode;
  if (vcode == 0 && spec.coalgebra.epsilon) {
    auto [cj, ccode] = run_cosep(spec);
    auto [lj, lcode] = run_counit(spec, Side::left);
    auto [rj, rcode] = run_counit(spec, Side::right);
    auto [tj, tcode] = run_theorem(spec);
    auto [dj, dcode] = run_dorroh(spec);
    auto [bj, bcode] = run_balanced(spec, seed, trials);
    j["cosep"] = cj;
    j["counit_left"] = lj;
    j["counit_right"] = rj;
    j["theorem"] = tj;
    j["dorroh"] = dj;
    j["balanced"] = bj;
    auto rep = epsilon_bar_check(spec.coalgebra);
    j["epsilon_bar"] =
        ordered_json{{"left_linear", rep.linear},
                     {"witness", rep.witness
                                     ? ordered_json(std::vector<std::size_t>(
                                           rep.witness->begin(), rep.witness->end()))
                                     : ordered_json(nullptr)}};
    for (int c2 : {ccode, lcode, rcode, tcode, dcode, bcode})
      if (c2 != 0) code = 1;
  }
  return {j, code};
}

}  // namespace detail_cli

/// Runs one CLI invocation. Reports go to `out`, diagnostics to `err`;
/// the return value is the process exit code (0 = pass/feasible,
/// 1 = infeasible or failed property, 2 = input error).
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err, std::istream& in_stream = std::cin) {
  auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"exact coseparability and counitality checks for "
               "finite-dimensional coalgebras"};
  app.name("coalg");
  app.require_subcommand(1);

  std::string file;
  std::string side_str = "left";
  std::string corpus_name;
  std::size_t corpus_n = 0;
  std::string corpus_field = "Q";
  std::uint64_t seed_flag = 0;
  bool text_mode = false;
  std::size_t trials = 100;

  auto* validate = app.add_subcommand("validate", "check the coalgebra axioms");
  validate->add_option("file", file, "spec file ('-' for stdin)")->required();

  auto* cosep = app.add_subcommand("cosep", "decide coseparability (cointegral)");
  cosep->add_option("file", file)->required();

  auto* counit = app.add_subcommand("counit", "decide one-sided counitality of (C:C•)");
  counit->add_option("file", file)->required();
  counit->add_option("--side", side_str, "left or right")
      ->required()
      ->check(CLI::IsMember({"left", "right"}));

  auto* dorroh = app.add_subcommand("dorroh", "build and validate the Dorroh coring");
  dorroh->add_option("file", file)->required();

  auto* balanced = app.add_subcommand(
      "balanced", "check the balanced-form condition battery on random forms");
  balanced->add_option("file", file)->required();
  auto* seed_opt = balanced->add_option("--seed", seed_flag, "generator seed");
  balanced->add_option("--trials", trials, "number of random forms");

  auto* theorem = app.add_subcommand(
      "theorem", "run the four-verdict coseparability/counitality pipeline");
  theorem->add_option("file", file)->required();

  auto* corpus = app.add_subcommand("corpus", "emit a builtin coalgebra spec");
  corpus->add_option("name", corpus_name, "trivial|grouplike|matrix|dualnumbers")
      ->required();
  auto* n_opt = corpus->add_option("--n", corpus_n, "size parameter");
  corpus->add_option("--field", corpus_field, "Q or Fp:<p>");

  auto* report = app.add_subcommand("report", "full battery, --json or --text");
  report->add_option("file", file)->required();
  report->add_flag("--text", text_mode, "render the report as text");
  report->add_flag("--json", "emit JSON (default)");
  auto* rseed_opt = report->add_option("--seed", seed_flag, "generator seed");
  report->add_option("--trials", trials, "random balanced-form trials");

  std::vector<const char*> argv;
  argv.push_back("coalg");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (corpus->parsed()) {
      std::optional<std::size_t> n;
      if (n_opt->count() > 0) n = corpus_n;
      Coalgebra c = build_corpus(corpus_name, Field::parse(corpus_field), n);
      std::string name = corpus_name;
      if (n) name += "(" + std::to_string(*n) + ")";
      out << serialize_spec(name, c).dump(2) << "\n";
      return 0;
    }
    ParsedSpec spec = parse_spec(read_input(file, in_stream));
    ordered_json result;
    int code = 0;
    if (validate->parsed()) std::tie(result, code) = detail_cli::run_validate(spec);
    if (cosep->parsed()) std::tie(result, code) = detail_cli::run_cosep(spec);
    if (counit->parsed())
      std::tie(result, code) = detail_cli::run_counit(
          spec, side_str == "left" ? Side::left : Side::right);
    if (dorroh->parsed()) std::tie(result, code) = detail_cli::run_dorroh(spec);
    if (balanced->parsed())
      std::tie(result, code) = detail_cli::run_balanced(
          spec, resolve_seed(seed_opt->count() > 0, seed_flag), trials);
    if (theorem->parsed()) std::tie(result, code) = detail_cli::run_theorem(spec);
    if (report->parsed())
      std::tie(result, code) = detail_cli::run_report(
          spec, resolve_seed(rseed_opt->count() > 0, seed_flag), trials);

    ordered_json envelope;
    envelope["tool"] = "coalg";
    envelope["command"] = args;
    envelope["input"] = ordered_json{{"name", spec.name},
                                     {"field", spec.coalgebra.field.name()},
                                     {"dim", spec.coalgebra.dim},
                                     {"hash", input_hash(spec.coalgebra)}};
    envelope["result"] = result;
    envelope["exit"] = code;
    envelope["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0)
            .count();
    if (text_mode) {
      std::string text;
      render_text(envelope, "", text);
      out << text;
    } else {
      out << envelope.dump(2) << "\n";
    }
    return code;
  } catch (const input_error& e) {
    err << "coalg: input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "coalg: error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cosep::cli
