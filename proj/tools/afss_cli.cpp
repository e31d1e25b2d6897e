// Command-line surface: construct scheme instances, share and reconstruct
// secrets to and from files, replay attack scenarios, run certification.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "afss/manifest.hpp"
#include "afss/verify.hpp"

using namespace afss;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

std::uint64_t effective_budget(std::uint64_t flag_value, bool flag_set) {
  if (const char* env = std::getenv("AFSS_BUDGET"); env && !flag_set)
    return std::strtoull(env, nullptr, 10);
  return flag_value;
}

int cmd_setup(const std::string& config_path, const std::string& out_path,
              std::uint64_t budget) {
  json cfg = json::parse(read_file(config_path));
  SchemeKind kind = scheme_kind_from_str(cfg.at("kind").get<std::string>());
  auto& p = cfg.at("params");
  RampParams params{p.at("t"),   p.at("r"),    p.at("P"), p.at("N"),
                    p.at("ell"), p.at("beta"), p.at("n"), p.at("d")};
  ComponentSpec spec;
  if (cfg.contains("component_spec")) {
    auto& cs = cfg["component_spec"];
    spec.anm_k = cs.value("anm_k", spec.anm_k);
    if (cs.contains("anm_eps_target"))
      spec.anm_eps_target = rational_from_str(cs["anm_eps_target"].get<std::string>());
    spec.anm_search_trials = cs.value("anm_search_trials", spec.anm_search_trials);
    spec.anm_family_random = cs.value("anm_family_random", spec.anm_family_random);
    spec.secret_pad = cs.value("secret_pad", spec.secret_pad);
    spec.amd_u = cs.value("amd_u", spec.amd_u);
    spec.amd_dd = cs.value("amd_dd", spec.amd_dd);
  }
  std::uint64_t seed = cfg.value("rng_seed", std::uint64_t(1));

  std::optional<SchemeInstance> inst;
  try {
    inst = SchemeInstance::make(kind, params, seed, Budget::with(budget), spec);
  } catch (const HypothesisViolation& e) {
    std::cerr << "setup rejected: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  Manifest man = Manifest::from_instance(*inst, budget, spec);
  write_file(out_path, man.to_json());
  std::cout << "manifest written to " << out_path << " (digest " << man.digest() << ")\n";
  return kExitOk;
}

int cmd_share(const std::string& manifest_path, const std::string& secret_hex,
              const std::string& out_dir, std::uint64_t rng_seed) {
  Manifest man = Manifest::from_json(read_file(manifest_path));
  SchemeInstance inst = man.instantiate_unchecked();
  BitString secret;
  try {
    secret = BitString::from_hex(secret_hex, inst.secret_bits());
  } catch (const Error& e) {
    std::cerr << "bad secret: " << e.what() << "\n";
    return kExitUsage;
  }
  Rng rng(rng_seed);
  ShareVector shares = inst.share(secret, rng);
  fs::create_directories(out_dir);
  std::string digest = man.digest();
  for (int i = 0; i < inst.params().P; ++i) {
    ShareFileData f;
    f.scheme_id = scheme_kind_str(inst.kind());
    f.params_digest = digest;
    f.block_index = i;
    f.payload = shares.blocks[i];
    write_file(out_dir + "/share-" + std::to_string(i) + ".json", f.to_json());
  }
  std::cout << inst.params().P << " share files written to " << out_dir << "\n";
  return kExitOk;
}

int cmd_reconstruct(const std::string& manifest_path, const std::vector<std::string>& files) {
  Manifest man = Manifest::from_json(read_file(manifest_path));
  SchemeInstance inst = man.instantiate_unchecked();
  if (static_cast<int>(files.size()) != inst.params().r) {
    std::cerr << "need exactly r = " << inst.params().r << " share files\n";
    return kExitUsage;
  }
  std::string digest = man.digest();
  std::vector<std::pair<int, BitString>> blocks;
  for (auto& path : files) {
    ShareFileData f = ShareFileData::from_json(read_file(path), inst.params().block_bits());
    if (f.params_digest != digest) {
      std::cerr << "share file " << path << " does not match this manifest\n";
      return kExitCheckFailed;
    }
    blocks.emplace_back(f.block_index, f.payload);
  }
  auto res = inst.reconstruct_traced(blocks);
  json trace;
  trace["fail"] = res.fail == ReconstructFail::None      ? "none"
                  : res.fail == ReconstructFail::EccFail ? "EccFail"
                  : res.fail == ReconstructFail::AmdReject ? "AmdReject"
                                                           : "WrongBlockCount";
  if (!res.secret) {
    std::cout << "BOT\n" << trace.dump() << "\n";
    return kExitCheckFailed;
  }
  std::cout << res.secret->to_hex() << "\n" << trace.dump() << "\n";
  return kExitOk;
}

json distribution_json(const FiniteDistribution& d) {
  json j = json::object();
  for (auto& [o, p] : d.support()) j[outcome_str(o)] = rational_str(p);
  return j;
}

int cmd_attack(const std::string& manifest_path, const std::string& scenario_path,
               const std::string& out_path, std::uint64_t budget, std::uint64_t rng_seed) {
  Manifest man = Manifest::from_json(read_file(manifest_path));
  SchemeInstance inst = man.instantiate_unchecked();
  Scenario sc = parse_scenario(read_file(scenario_path), inst);
  if (sc.secrets.empty())
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << inst.secret_bits()); ++s)
      sc.secrets.push_back(BitString::from_u64(s, inst.secret_bits()));
  if (sc.reconstruction_set.empty())
    for (int i = 0; i < inst.params().r; ++i) sc.reconstruction_set.push_back(i);

  json report;
  report["scenario"] = sc.name;
  report["manifest_digest"] = man.digest();
  bool ok = true;
  try {
    Budget b = Budget::with(budget);
    if (sc.has_sigma) {
      std::map<BitString, FiniteDistribution> tampers;
      json dists = json::object();
      for (auto& s : sc.secrets) {
        tampers[s] = tamper_experiment(inst, s, sc.adversary, sc.sigma, sc.reconstruction_set, b);
        dists[s.to_string()] = distribution_json(tampers[s]);
      }
      report["tamper_distributions"] = dists;
      SimulatorFit fit = fit_simulator(tampers);
      report["eps_star"] = rational_str(fit.eps_star);
      report["fit_path"] = fit.path;
      report["simulator"] = distribution_json(fit.d);
      for (auto& [name, value] : man.error_claims) {
        if (name.rfind("non-malleability", 0) == 0) {
          report["bound"] = value;
          report["bound_name"] = name;
          ok = fit.eps_star <= rational_from_str(value);
        }
      }
    } else {
      json dists = json::object();
      std::vector<FiniteDistribution> views;
      for (auto& s : sc.secrets) {
        views.push_back(exact_view_distribution(inst, s, sc.adversary, b));
        dists[s.to_string()] = distribution_json(views.back());
      }
      report["view_distributions"] = dists;
      Rational worst = 0;
      for (std::size_t i = 0; i < views.size(); ++i)
        for (std::size_t j = i + 1; j < views.size(); ++j)
          worst = std::max(worst, statistical_distance(views[i], views[j]));
      report["max_view_sd"] = rational_str(worst);
      for (auto& [name, value] : man.error_claims)
        if (name.rfind("privacy", 0) == 0) {
          report["bound"] = value;
          report["bound_name"] = name;
          ok = worst <= rational_from_str(value);
        }
    }
    report["mode"] = "exact";
  } catch (const BudgetExceeded&) {
    // single-trace demo instead of the exact distribution
    report["mode"] = "demo (budget exceeded)";
    Rng rng(rng_seed);
    json traces = json::array();
    for (auto& s : sc.secrets) {
      Rng r2 = rng.split(s.to_string());
      ShareVector shares = inst.share(s, r2);
      BitString c = shares.concat();
      GameLimits limits{inst.params().P, inst.params().block_bits(), inst.params().t,
                        inst.params().beta};
      View v = run_game(sc.adversary, c, limits);
      json t;
      t["secret"] = s.to_string();
      t["view_bits"] = v.answer_bits().to_string();
      if (sc.has_sigma) {
        BitString tampered = sc.sigma.tamper_map(v).apply(c);
        std::vector<std::pair<int, BitString>> blocks;
        for (int i : sc.reconstruction_set)
          blocks.emplace_back(i, tampered.slice(i * inst.params().block_bits(),
                                                inst.params().block_bits()));
        auto res = inst.reconstruct_traced(blocks);
        t["outcome"] = res.secret ? res.secret->to_string() : "BOT";
      }
      traces.push_back(t);
    }
    report["traces"] = traces;
    ok = true;
  }
  report["ok"] = ok;
  std::string text = report.dump(2);
  if (out_path.empty())
    std::cout << text << "\n";
  else
    write_file(out_path, text);
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_certify(const std::string& manifest_path, const std::string& out_path,
                std::uint64_t budget) {
  Manifest man = Manifest::from_json(read_file(manifest_path));
  json checks = json::array();
  bool all_ok = true;
  std::string first_fail;

  std::string params_desc = scheme_kind_str(man.kind) + " t=" + std::to_string(man.params.t) +
                            " r=" + std::to_string(man.params.r) +
                            " P=" + std::to_string(man.params.P) +
                            " N=" + std::to_string(man.params.N) +
                            " ell=" + std::to_string(man.params.ell) +
                            " beta=" + std::to_string(man.params.beta);
  auto record = [&](const std::string& name, const std::string& status,
                    const std::string& measured, const std::string& bound,
                    std::uint64_t budget_used, const std::string& witness = "") {
    checks.push_back({{"check", name},
                      {"parameters", params_desc},
                      {"status", status},
                      {"measured", measured},
                      {"bound", bound},
                      {"witness", witness},
                      {"budget_used", budget_used}});
    if (status == "fail" && first_fail.empty()) first_fail = name;
    if (status == "fail") all_ok = false;
  };

  std::optional<SchemeInstance> instance;
  if (budget < man.budget) {
    record("component-recertification", "skipped",
           "certify budget below the manifest's construction budget", "bit-exact", 0);
  } else {
    try {
      instance = man.instantiate();  // recomputes every certification bit-exactly
      record("component-recertification", "pass", "recomputed == stored", "bit-exact",
             man.budget);
    } catch (const BudgetExceeded& e) {
      record("component-recertification", "skipped", e.what(), "", 0);
    } catch (const Error& e) {
      record("component-recertification", "fail", e.what(), "bit-exact", man.budget);
    }
  }
  if (!instance) {
    try {
      instance = man.instantiate_unchecked();
    } catch (const Error&) {
    }
  }

  if (instance) {
    const SchemeInstance& inst = *instance;
    // correctness sweep: every C(P,r) block subset, every secret
    {
      Budget b = Budget::with(budget);
      try {
        const auto& p = inst.params();
        std::uint64_t secrets = std::uint64_t(1) << inst.secret_bits();
        std::uint64_t combos = 1;
        for (int i = 0; i < p.r; ++i) combos = combos * (p.P - i) / (i + 1);
        b.charge(secrets * combos);
        std::uint64_t failures = 0, total = 0;
        std::vector<int> comb(p.r);
        for (int i = 0; i < p.r; ++i) comb[i] = i;
        bool mismatch = false;
        while (true) {
          for (std::uint64_t s = 0; s < secrets; ++s) {
            BitString secret = BitString::from_u64(s, inst.secret_bits());
            Rng rng(man.rng_seed + 1000 + s);
            ShareVector shares = inst.share(secret, rng);
            std::vector<std::pair<int, BitString>> blocks;
            for (int i : comb) blocks.emplace_back(i, shares.blocks[i]);
            auto res = inst.reconstruct(blocks);
            ++total;
            if (!res)
              ++failures;
            else if (*res != secret)
              mismatch = true;
          }
          int i = p.r - 1;
          while (i >= 0 && comb[i] == p.P - p.r + i) --i;
          if (i < 0) break;
          ++comb[i];
          for (int j = i + 1; j < p.r; ++j) comb[j] = comb[j - 1] + 1;
        }
        Rational rate(failures, total);
        bool ok = !mismatch && rational_str(rate) == man.decode_failure_delta;
        record("correctness-every-subset", ok ? "pass" : "fail", rational_str(rate),
               man.decode_failure_delta, b.used,
               mismatch ? "a decodable subset returned the wrong secret" : "");
      } catch (const BudgetExceeded& e) {
        record("correctness-every-subset", "skipped", e.what(), "", b.used);
      }
    }
    // information ratio
    {
      Rational ratio = info_ratio(inst.params());
      Rational ref = info_ratio_reference(inst.params());
      record("info-ratio-optimality", ratio >= ref ? "pass" : "fail", rational_str(ratio),
             rational_str(ref) + " (lower bound)", 0);
    }
    // privacy spot check for the leakage-resilient kinds
    if (inst.kind() == SchemeKind::NonAdaptiveLR || inst.kind() == SchemeKind::AdaptiveLR) {
      Budget b = Budget::with(budget);
      try {
        Rng rng(man.rng_seed + 7);
        std::vector<LeakageQuery> queries;
        if (inst.params().t > 0) queries.push_back(ShareRead{0});
        if (inst.params().beta > 0) {
          BitMatrix mat(inst.params().N, 1);
          BitString mask = rng.bits(inst.params().N);
          for (int i = 0; i < inst.params().N; ++i) mat.set(i, 0, mask.get(i));
          queries.push_back(AffineLeak{AffineMap(std::move(mat), BitString(1))});
        }
        auto adv = AdversaryProgram::non_adaptive(std::move(queries));
        Rational worst = 0;
        std::vector<FiniteDistribution> views;
        for (std::uint64_t s = 0; s < (std::uint64_t(1) << inst.secret_bits()); ++s)
          views.push_back(
              exact_view_distribution(inst, BitString::from_u64(s, inst.secret_bits()), adv, b));
        for (std::size_t i = 0; i < views.size(); ++i)
          for (std::size_t j = i + 1; j < views.size(); ++j)
            worst = std::max(worst, statistical_distance(views[i], views[j]));
        Rational bound = rational_from_str(man.error_claims.front().second);
        record("privacy-spot-check", worst <= bound ? "pass" : "fail", rational_str(worst),
               man.error_claims.front().second, b.used);
      } catch (const BudgetExceeded& e) {
        record("privacy-spot-check", "skipped", e.what(), "", b.used);
      }
    }
    // identity tampering spot check for the non-malleable kinds
    if (inst.kind() == SchemeKind::AffineNM || inst.kind() == SchemeKind::BitNM) {
      Budget b = Budget::with(budget);
      try {
        std::vector<int> R;
        for (int i = 0; i < inst.params().r; ++i) R.push_back(i);
        auto sigma = TamperStrategy::constant_affine(AffineMap::identity(inst.params().N));
        auto tampers = tamper_experiment_all(inst, AdversaryProgram::empty(), sigma, R, b);
        SimulatorFit fit = fit_simulator(tampers);
        record("identity-tampering-eps-star", fit.eps_star == 0 ? "pass" : "fail",
               rational_str(fit.eps_star), "0", b.used);
      } catch (const BudgetExceeded& e) {
        record("identity-tampering-eps-star", "skipped", e.what(), "", b.used);
      }
    }
  }

  json report;
  report["manifest_digest"] = man.digest();
  report["budget"] = budget;
  report["checks"] = checks;
  report["ok"] = all_ok;
  std::string text = report.dump(2);
  if (out_path.empty())
    std::cout << text << "\n";
  else
    write_file(out_path, text);
  if (!all_ok) std::cerr << "first failing check: " << first_fail << "\n";
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affine leakage-resilient (non-malleable) secret sharing"};
  app.require_subcommand(1);

  std::string manifest_path, out_path, config_path, scenario_path, secret_hex;
  std::uint64_t budget = std::uint64_t(1) << 22;
  std::uint64_t rng_seed = 1;
  std::vector<std::string> share_files;
  bool budget_set = false;

  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget", budget, "enumeration budget (evaluations)")
        ->each([&](const std::string&) { budget_set = true; });
  };

  auto* setup = app.add_subcommand("setup", "construct a scheme instance and write its manifest");
  setup->add_option("--config", config_path, "setup config JSON")->required();
  setup->add_option("--out", out_path, "manifest output path")->required();
  add_budget(setup);

  auto* share = app.add_subcommand("share", "split a secret into share files");
  share->add_option("--manifest", manifest_path)->required();
  share->add_option("--secret", secret_hex, "secret as hex")->required();
  share->add_option("--out", out_path, "output directory")->required();
  share->add_option("--rng-seed", rng_seed);

  auto* recst = app.add_subcommand("reconstruct", "reconstruct a secret from r share files");
  recst->add_option("--manifest", manifest_path)->required();
  recst->add_option("files", share_files, "share files")->required();

  auto* attack = app.add_subcommand("attack", "replay a leakage/tampering scenario");
  attack->add_option("--manifest", manifest_path)->required();
  attack->add_option("--scenario", scenario_path)->required();
  attack->add_option("--out", out_path, "report output path");
  attack->add_option("--rng-seed", rng_seed);
  add_budget(attack);

  auto* certify = app.add_subcommand("certify", "run the certification checks for a manifest");
  certify->add_option("--manifest", manifest_path)->required();
  certify->add_option("--out", out_path, "report output path");
  add_budget(certify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::uint64_t eff = effective_budget(budget, budget_set);
    if (setup->parsed()) return cmd_setup(config_path, out_path, eff);
    if (share->parsed()) return cmd_share(manifest_path, secret_hex, out_path, rng_seed);
    if (recst->parsed()) return cmd_reconstruct(manifest_path, share_files);
    if (attack->parsed()) return cmd_attack(manifest_path, scenario_path, out_path, eff, rng_seed);
    if (certify->parsed()) return cmd_certify(manifest_path, out_path, eff);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
