// Copyright 2026 The dske-kit Authors
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

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dske/acceptance.hpp"
#include "dske/estimators.hpp"

namespace {

using namespace dske;

constexpr int kExitPass = 0;
constexpr int kExitSecurityFailure = 1;
constexpr int kExitUsage = 2;

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << "\n";
}

std::string render_table(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  out << std::left << std::setw(44) << "bound" << std::setw(20) << "method"
      << std::setw(14) << "formula" << std::setw(14) << "measured"
      << "result\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(44) << r.name << std::setw(20) << r.method
        << std::setw(14) << r.bound << std::setw(14) << r.measured
        << (r.pass ? "pass" : "FAIL") << "\n";
  }
  return out.str();
}

int emit_reports(const std::vector<BoundReport>& reports,
                 const std::string& format, const std::string& output) {
  if (format == "table") {
    write_or_print(render_table(reports), output);
  } else {
    nlohmann::json j;
    j["schema"] = "dske-report/1";
    j["reports"] = nlohmann::json::array();
    for (const auto& r : reports) {
      j["reports"].push_back(nlohmann::json::parse(r.to_json()));
    }
    write_or_print(j.dump(2), output);
  }
  for (const auto& r : reports) {
    if (!r.pass) return kExitSecurityFailure;
  }
  return kExitPass;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  return parse_scenario(in);
}

int run_simulate(const std::string& config_path, std::uint64_t* seed,
                 std::uint64_t* trials, const std::string& output,
                 const std::string& format, const std::string& transcript) {
  ScenarioConfig cfg = load_scenario(config_path);
  if (seed) cfg.master_seed = *seed;      // command line beats the file
  if (trials) cfg.trials = *trials;
  cfg.validate();

  if (!transcript.empty()) {
    // Event log of the first trial, one JSON object per line.
    const auto first = run_session(cfg, derive_seed(cfg.master_seed, 0));
    std::ofstream out(transcript, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + transcript);
    out << first.transcript.to_json_lines();
  }

  const auto agg = run_trials(cfg);
  const auto wrong_ci = clopper_pearson(agg.wrong_secret, agg.trials);
  const auto abort_ci = clopper_pearson(agg.abort, agg.trials);
  const ThresholdParams params = cfg.params();
  const std::size_t hub_id_len = 1 + std::to_string(cfg.n).size();
  const std::uint64_t s =
      tagged_element_count(*params.spec, cfg.m, hub_id_len, 1, 1);

  nlohmann::json j;
  j["schema"] = "dske-report/1";
  j["config"] = {{"path", config_path}, {"field", cfg.field},
                 {"n", cfg.n},          {"k", cfg.k},
                 {"m", cfg.m},
                 {"mode", cfg.mode == ProtocolMode::general ? "general"
                                                            : "skeleton"},
                 {"trials", cfg.trials}, {"master_seed", cfg.master_seed}};
  j["counts"] = {{"success", agg.success},
                 {"wrong_secret", agg.wrong_secret},
                 {"abort", agg.abort},
                 {"incomplete", agg.incomplete},
                 {"exhausted", agg.exhausted},
                 {"mutated_deliveries", agg.mutated_deliveries},
                 {"forged_accepted", agg.forged_accepted}};
  j["rates"] = {
      {"wrong_secret",
       static_cast<double>(agg.wrong_secret) / static_cast<double>(agg.trials)},
      {"wrong_secret_ci99", {wrong_ci.low, wrong_ci.high}},
      {"abort",
       static_cast<double>(agg.abort) / static_cast<double>(agg.trials)},
      {"abort_ci99", {abort_ci.low, abort_ci.high}}};
  j["bounds"] = {{"skeleton_epsilon", skeleton_epsilon(params)},
                 {"forgery_epsilon_prime", forgery_bound(*params.spec, s)},
                 {"composed_epsilon", composed_epsilon(params, s)},
                 {"tagged_elements", s}};

  if (format == "table") {
    std::ostringstream out;
    out << "trials " << cfg.trials << ": success " << agg.success
        << ", wrong-secret " << agg.wrong_secret << ", abort " << agg.abort
        << ", incomplete " << agg.incomplete << ", exhausted "
        << agg.exhausted << "\n"
        << "wrong-secret rate in [" << wrong_ci.low << ", " << wrong_ci.high
        << "] (99% CI), skeleton epsilon " << skeleton_epsilon(params);
    write_or_print(out.str(), output);
  } else {
    write_or_print(j.dump(2), output);
  }
  return agg.wrong_secret == 0 ? kExitPass : kExitSecurityFailure;
}

int run_tables_generate(const std::string& out_path, const std::string& field,
                        std::uint32_t count, const std::string& party,
                        const std::string& hub, const std::string& direction,
                        std::uint64_t seed) {
  const FieldSpec* spec = FieldSpec::find(field);
  if (spec == nullptr) throw std::runtime_error("unknown field " + field);
  const auto dir = direction_from_string(direction);
  if (!dir) throw std::runtime_error("unknown direction " + direction);
  SplitMix64 rng(seed);
  auto [primary, copy] =
      generate_pair(rng, *spec, count, OwnerPair{party, hub, *dir});
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  write_table(out, primary);
  std::cout << "wrote " << count << " " << field << " elements to "
            << out_path << "\n";
  return kExitPass;
}

int run_tables_inspect(const std::string& path, bool reveal) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  const auto result = read_table(in);
  if (!result.table) {
    std::cerr << "corrupt table file: " << result.error << " at byte offset "
              << result.error_offset << "\n";
    return kExitUsage;
  }
  const auto& t = *result.table;
  std::cout << "field:     " << t.spec().name() << "\n"
            << "party:     " << t.owner().party << "\n"
            << "hub:       " << t.owner().hub << "\n"
            << "direction: " << to_string(t.owner().direction) << "\n"
            << "elements:  " << t.size() << " ("
            << t.spec().element_bytes() << " bytes each)\n"
            << "unused:    " << t.unused_count() << "\n";
  if (reveal) {
    std::cout << std::hex;
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::cout << std::setw(2 * static_cast<int>(t.spec().element_bytes()))
                << std::setfill('0') << t.element(i).value()
                << ((i + 1) % 8 == 0 ? "\n" : " ");
    }
    if (t.size() % 8 != 0) std::cout << "\n";
    std::cout << std::dec << std::setfill(' ');
  }
  return kExitPass;
}

// Monte Carlo fallback for the forgery bound on fields too large to
// enumerate: measure the acceptance rate of random one-byte mutations
// against min(s/|F|,1) through the general-mode protocol.
BoundReport forgery_bound_monte_carlo(const std::string& field,
                                      std::uint64_t trials) {
  ScenarioConfig cfg;
  cfg.field = field;
  cfg.mode = ProtocolMode::general;
  if (cfg.field_spec().bit_width() < 64) {
    cfg.table_length = cfg.field_spec().element_mask() + 1;
  }
  cfg.trials = trials;
  cfg.adversary.mode = AdversaryMode::active;
  cfg.adversary.channel_policies[{ChannelLeg::hub_to_bob, 1}] =
      ChannelPolicy{ChannelPolicyKind::mutate, -1, 0};
  const auto agg = run_trials(cfg);
  const std::uint64_t s =
      tagged_element_count(cfg.field_spec(), cfg.m, 2, 1, 1);
  BoundReport r;
  r.name = "forgery-mc(" + field + ")";
  r.method = "monte-carlo(" + std::to_string(trials) + ")";
  r.bound = forgery_bound(cfg.field_spec(), s);
  r.measured = agg.mutated_deliveries == 0
                   ? 0.0
                   : static_cast<double>(agg.forged_accepted) /
                         static_cast<double>(agg.mutated_deliveries);
  const auto ci = clopper_pearson(agg.forged_accepted,
                                  std::max<std::uint64_t>(agg.mutated_deliveries, 1));
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  const double sigma = std::sqrt(r.bound * (1.0 - r.bound) /
                                 static_cast<double>(trials));
  r.pass = r.measured <= std::min(r.bound + 3.0 * sigma, 1.0);
  r.detail = "acceptance of random one-byte mutations, s=" + std::to_string(s);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DSKE protocol kit: simulator, estimators and table tooling"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "run protocol trials from a scenario config");
  std::string sim_config, sim_output, sim_format = "json", sim_transcript;
  std::uint64_t sim_seed = 0, sim_trials = 0;
  bool sim_has_seed = false, sim_has_trials = false;
  simulate->add_option("--config", sim_config, "scenario config file")
      ->required();
  simulate->add_option("--seed", sim_seed, "master seed override")
      ->each([&](const std::string&) { sim_has_seed = true; });
  simulate->add_option("--trials", sim_trials, "trial count override")
      ->each([&](const std::string&) { sim_has_trials = true; });
  simulate->add_option("--output", sim_output, "report file (default stdout)");
  simulate->add_option("--format", sim_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  simulate->add_option("--transcript", sim_transcript,
                       "write the first trial's event log as JSON lines");

  // estimate
  auto* estimate = app.add_subcommand(
      "estimate", "check one of the security bounds");
  std::string est_bound, est_field = "gf16", est_config, est_output,
              est_format = "json";
  std::uint64_t est_s = 2, est_trials = 100000;
  int est_m = 1, est_n = 3, est_k = 2, est_observe = 1, est_c = -1;
  bool est_exhaustive = false;
  estimate->add_option("bound", est_bound,
                       "forgery | secret-validation | confidentiality | "
                       "eve-view | skeleton | composed | footnote")
      ->required();
  estimate->add_option("--field", est_field, "gf16, gf256 or gf2_64");
  estimate->add_option("--s", est_s, "tagged message length");
  estimate->add_option("--m", est_m, "secret payload length");
  estimate->add_option("--n", est_n, "number of hubs");
  estimate->add_option("--k", est_k, "reconstruction threshold");
  estimate->add_option("--observe", est_observe, "observed share count");
  estimate->add_option("--compromised", est_c,
                       "compromised hub count for eve-view (default k-1)");
  estimate->add_option("--trials", est_trials, "monte-carlo trial count");
  estimate->add_option("--config", est_config,
                       "scenario config for skeleton/composed");
  estimate->add_flag("--exhaustive", est_exhaustive,
                     "require the exhaustive oracle");
  estimate->add_option("--output", est_output, "report file (default stdout)");
  estimate->add_option("--format", est_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));

  // tables
  auto* tables = app.add_subcommand("tables", "PSRD table file tooling");
  tables->require_subcommand(1);
  auto* generate = tables->add_subcommand("generate", "write a fresh table");
  std::string gen_out, gen_field = "gf256", gen_party = "A", gen_hub = "P1",
              gen_direction = "client-to-hub";
  std::uint32_t gen_count = 64;
  std::uint64_t gen_seed = 1;
  generate->add_option("--out", gen_out, "output path")->required();
  generate->add_option("--field", gen_field, "field spec name");
  generate->add_option("--count", gen_count, "element count");
  generate->add_option("--party", gen_party, "client identity");
  generate->add_option("--hub", gen_hub, "hub identity");
  generate->add_option("--direction", gen_direction,
                       "client-to-hub or hub-to-client");
  generate->add_option("--seed", gen_seed, "generator seed");
  auto* inspect = tables->add_subcommand("inspect", "print table header");
  std::string ins_path;
  bool ins_reveal = false;
  inspect->add_option("path", ins_path, "table file")->required();
  inspect->add_flag("--reveal", ins_reveal, "also dump element values");

  // selftest
  app.add_subcommand("selftest", "run the full verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(sim_config, sim_has_seed ? &sim_seed : nullptr,
                          sim_has_trials ? &sim_trials : nullptr, sim_output,
                          sim_format, sim_transcript);
    }
    if (estimate->parsed()) {
      const FieldSpec* spec = FieldSpec::find(est_field);
      if (spec == nullptr) {
        std::cerr << "unknown field " << est_field << "\n";
        return kExitUsage;
      }
      std::vector<BoundReport> reports;
      if (est_bound == "forgery") {
        const bool small_enough = spec->bit_width() * (est_s + 2) <= 28;
        if (small_enough) {
          reports.push_back(forgery_bound_exhaustive(*spec, est_s));
        } else if (est_exhaustive) {
          std::cerr << "state space too large for exhaustive enumeration\n";
          return kExitUsage;
        } else {
          reports.push_back(forgery_bound_monte_carlo(est_field, est_trials));
        }
      } else if (est_bound == "secret-validation") {
        reports.push_back(secret_validation_bound_exhaustive(*spec, est_m));
      } else if (est_bound == "confidentiality") {
        reports.push_back(
            confidentiality_exact(*spec, est_n, est_k, est_observe));
      } else if (est_bound == "eve-view") {
        std::vector<int> compromised;
        const int count = est_c >= 0 ? est_c : est_k - 1;
        for (int i = 1; i <= count; ++i) compromised.push_back(i);
        reports.push_back(eve_view_independence_exact(*spec, est_n, est_k,
                                                      est_m, compromised));
      } else if (est_bound == "skeleton" || est_bound == "composed") {
        ScenarioConfig cfg;
        if (!est_config.empty()) {
          cfg = load_scenario(est_config);
        } else if (est_bound == "composed") {
          std::cerr << "composed needs --config with a general-mode scenario\n";
          return kExitUsage;
        } else {
          // Canned desk-scale attack: compromised hub 1 shifts its share
          // towards the {1,3} reconstruction, hub 2 suppressed.
          cfg.field = est_field;
          cfg.table_length =
              spec->bit_width() < 64 ? spec->element_mask() + 1 : 0;
          cfg.adversary.mode = AdversaryMode::active;
          cfg.adversary.compromised = {1};
          cfg.adversary.hub_behavior = HubBehavior::share_shift;
          BestKnownAttack atk;
          atk.target_hub = 1;
          atk.subset = {1, 3};
          atk.secret_delta = {FieldElement(0, *spec), FieldElement(0, *spec),
                              FieldElement(1, *spec), FieldElement(1, *spec)};
          cfg.adversary.attack = atk;
          cfg.adversary.channel_policies[{ChannelLeg::hub_to_bob, 2}] =
              ChannelPolicy{ChannelPolicyKind::block, -1, 0};
        }
        if (est_bound == "composed") {
          cfg.trials = est_trials;
          reports.push_back(protocol_epsilon_estimate(cfg));
        } else {
          const auto exact = best_attack_exhaustive(cfg);
          reports.push_back(exact);
          auto mc_cfg = cfg;
          mc_cfg.trials = est_trials;
          reports.push_back(best_attack_monte_carlo(mc_cfg, exact.measured));
        }
      } else if (est_bound == "footnote") {
        BoundReport r;
        r.name = "footnote-log2-binomial(99,50)";
        r.method = "exhaustive";
        r.bound = 95.35;
        r.measured = log2_binomial(99, 50);
        r.pass = std::abs(r.measured - r.bound) <= 0.01;
        r.detail = "bits of security lost to the C(n,k) reconstruction search";
        reports.push_back(r);
      } else {
        std::cerr << "unknown bound " << est_bound << "\n";
        return kExitUsage;
      }
      return emit_reports(reports, est_format, est_output);
    }
    if (tables->parsed()) {
      if (generate->parsed()) {
        return run_tables_generate(gen_out, gen_field, gen_count, gen_party,
                                   gen_hub, gen_direction, gen_seed);
      }
      return run_tables_inspect(ins_path, ins_reveal);
    }
    // selftest
    return dske::acceptance::run_and_report(std::cout) == 0
               ? kExitPass
               : kExitSecurityFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
