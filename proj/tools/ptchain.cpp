// Command line front end.  Exit codes: 0 success, 1 verification
// failure, 2 chain has no real spectrum (reality criterion violated),
// 3 usage or input errors.  Data goes to --out or stdout, diagnostics
// to stderr.  Identical configuration (and seed) reproduces identical
// bytes; the lone exception is meta.wall_time_s in JSON envelopes.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ptchain/analysis.hpp>
#include <ptchain/eigensolver.hpp>
#include <ptchain/io.hpp>
#include <ptchain/lattice.hpp>
#include <ptchain/oracles.hpp>
#include <ptchain/transform.hpp>
#include <ptchain/verify.hpp>

namespace {

using namespace ptchain;

struct RunConfig {
  std::string command;
  int sites = 0;
  bool sites_set = false;
  double alpha = 0.0;
  bool alpha_set = false;
  double t0 = 1.0;
  std::string hopping_file;
  double phase_tol = default_phase_tol;
  std::string out;
  std::string format = "csv";
  bool normalized = false;
  bool energy_normalized = false;
  int bins = default_dos_bins;
  int histogram_bins = 0;
  std::vector<int> sizes = default_scaling_sizes;
  bool hermitian = false;
  std::string suite = "all";
  std::uint64_t seed = default_verify_seed;
};

unsigned env_threads() {
  const char* v = std::getenv("PTCHAIN_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const unsigned long n = std::strtoul(v, &end, 10);
  if (end == v || *end) throw std::runtime_error("PTCHAIN_THREADS must be a number");
  return static_cast<unsigned>(n);
}

PTChain make_chain(const RunConfig& cfg) {
  if (!cfg.hopping_file.empty()) {
    const auto amps = read_hopping_csv(cfg.hopping_file);
    const int n = static_cast<int>(amps.size()) + 1;
    if (cfg.sites_set && cfg.sites != n)
      throw std::runtime_error("--sites " + std::to_string(cfg.sites) + " does not match " +
                               cfg.hopping_file + " (" + std::to_string(n) + " sites)");
    return build_chain(Explicit{amps}, n);
  }
  if (!cfg.alpha_set)
    throw std::runtime_error(cfg.command + ": give either --alpha or --hopping-file");
  if (!cfg.sites_set) throw std::runtime_error(cfg.command + ": --sites is required");
  return build_chain(PowerLaw{cfg.t0, cfg.alpha}, cfg.sites);
}

json config_json(const RunConfig& cfg) {
  json j{{"format", cfg.format}, {"phase_tol", cfg.phase_tol}};
  if (!cfg.hopping_file.empty())
    j["hopping_file"] = cfg.hopping_file;
  else {
    j["alpha"] = cfg.alpha;
    j["t0"] = cfg.t0;
  }
  j["sites"] = cfg.sites;
  return j;
}

void deliver(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
  f << payload;
  if (!f) throw std::runtime_error("failed writing output file: " + cfg.out);
}

std::string json_payload(const RunConfig& cfg, json config, json data, json meta) {
  return make_envelope(cfg.command, std::move(config), std::move(data), std::move(meta))
             .dump(2) +
         "\n";
}

int run_spectrum(RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto chain = make_chain(cfg);
  cfg.sites = chain.n_sites;
  auto spec = chain_spectrum(chain, DecomposeMode::values_only, cfg.phase_tol);
  if (cfg.normalized) {
    double emax = 0.0;
    for (double v : spec.values) emax = std::max(emax, std::abs(v));
    if (emax > 0.0)
      for (double& v : spec.values) v /= emax;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cfg.format == "json") {
    auto config = config_json(cfg);
    config["normalized"] = cfg.normalized;
    deliver(cfg, json_payload(cfg, std::move(config), json{{"values", spec.values}},
                              json{{"wall_time_s", wall}}));
  } else {
    std::ostringstream os;
    write_spectrum_csv(os, spec.values);
    deliver(cfg, os.str());
  }
  return 0;
}

int run_dos(RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto chain = make_chain(cfg);
  cfg.sites = chain.n_sites;
  const auto spec = chain_spectrum(chain, DecomposeMode::values_only, cfg.phase_tol);
  const auto h = dos(spec.values, cfg.bins, cfg.normalized, cfg.energy_normalized);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cfg.format == "json") {
    auto config = config_json(cfg);
    config["bins"] = cfg.bins;
    config["normalized"] = cfg.normalized;
    config["energy_normalized"] = cfg.energy_normalized;
    deliver(cfg, json_payload(cfg, std::move(config), to_json(h), json{{"wall_time_s", wall}}));
  } else {
    std::ostringstream os;
    write_histogram_csv(os, h);
    deliver(cfg, os.str());
  }
  return 0;
}

int run_ipr(RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto chain = make_chain(cfg);
  cfg.sites = chain.n_sites;
  const auto spec = chain_spectrum(chain, DecomposeMode::full, cfg.phase_tol);
  const auto rep = ipr_report(spec);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const json meta{{"wall_time_s", wall},
                  {"max_residual", spec.max_residual},
                  {"max_orthogonality_defect", spec.max_orthogonality_defect}};
  if (cfg.histogram_bins > 0) {
    const auto h = ipr_histogram(rep, cfg.histogram_bins);
    if (cfg.format == "json") {
      auto config = config_json(cfg);
      config["histogram_bins"] = cfg.histogram_bins;
      deliver(cfg, json_payload(cfg, std::move(config), to_json(h), meta));
    } else {
      std::ostringstream os;
      write_histogram_csv(os, h);
      deliver(cfg, os.str());
    }
    return 0;
  }
  if (cfg.format == "json") {
    deliver(cfg, json_payload(cfg, config_json(cfg),
                              json{{"energies", spec.values},
                                   {"ipr", rep.per_state},
                                   {"min_ipr", rep.min_ipr},
                                   {"max_ipr", rep.max_ipr}},
                              meta));
  } else {
    std::ostringstream os;
    write_ipr_csv(os, spec.values, rep.per_state);
    deliver(cfg, os.str());
  }
  return 0;
}

int run_scaling(RunConfig& cfg) {
  if (!cfg.hopping_file.empty())
    throw std::runtime_error("scaling: needs a power-law profile, not --hopping-file");
  if (!cfg.alpha_set) throw std::runtime_error("scaling: --alpha is required");
  const unsigned threads = env_threads();
  const auto start = std::chrono::steady_clock::now();
  const auto study = scaling_study(PowerLaw{cfg.t0, cfg.alpha}, cfg.sizes, threads);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "min-IPR fit: exponent " << fmt_g(study.min_fit.exponent) << ", r^2 "
            << fmt_g(study.min_fit.r_squared)
            << (study.min_fit.saturated ? " (saturated)" : "") << "\n"
            << "max-IPR fit: exponent " << fmt_g(study.max_fit.exponent) << ", r^2 "
            << fmt_g(study.max_fit.r_squared)
            << (study.max_fit.saturated ? " (saturated)" : "") << "\n";
  if (cfg.format == "json") {
    json config{{"format", cfg.format},
                {"alpha", cfg.alpha},
                {"t0", cfg.t0},
                {"sizes", cfg.sizes}};
    deliver(cfg, json_payload(cfg, std::move(config), to_json(study),
                              json{{"wall_time_s", wall}, {"threads", threads}}));
  } else {
    std::ostringstream os;
    write_scaling_csv(os, study);
    deliver(cfg, os.str());
  }
  return 0;
}

int run_transform(RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto chain = make_chain(cfg);
  cfg.sites = chain.n_sites;
  const double wall = [&start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }();
  if (cfg.hermitian) {
    const auto h = hermitize(chain, cfg.phase_tol);
    if (cfg.format == "json") {
      auto config = config_json(cfg);
      config["hermitian"] = true;
      deliver(cfg, json_payload(cfg, std::move(config),
                                json{{"off_mag", h.off_mag}, {"off_phase", h.off_phase}},
                                json{{"wall_time_s", wall}}));
    } else {
      std::ostringstream os;
      write_hermitian_csv(os, h);
      deliver(cfg, os.str());
    }
    return 0;
  }
  const auto scale = build_similarity(chain, cfg.phase_tol);
  if (cfg.format == "json") {
    auto config = config_json(cfg);
    config["hermitian"] = false;
    deliver(cfg, json_payload(cfg, std::move(config), json{{"log_m", scale.log_m}},
                              json{{"wall_time_s", wall}}));
  } else {
    std::ostringstream os;
    write_scale_csv(os, scale);
    deliver(cfg, os.str());
  }
  return 0;
}

int run_roots(RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto chain = make_chain(cfg);
  cfg.sites = chain.n_sites;
  const auto el = pt_elements(chain);
  const std::vector<cplx> diag(chain.n_sites, cplx{0.0, 0.0});
  const auto roots = small_roots(el.super, el.sub, diag);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cfg.format == "json") {
    deliver(cfg, json_payload(cfg, config_json(cfg), json{{"roots", to_json(roots)}},
                              json{{"wall_time_s", wall}}));
  } else {
    std::ostringstream os;
    write_roots_csv(os, roots);
    deliver(cfg, os.str());
  }
  return 0;
}

int run_verify(RunConfig& cfg) {
  const unsigned threads = env_threads();
  const auto start = std::chrono::steady_clock::now();
  const auto cases = run_verify_suite(cfg.suite, cfg.seed, threads);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int failed = 0;
  for (const auto& c : cases)
    if (!c.pass) ++failed;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& c : cases)
      arr.push_back({{"name", c.name},
                     {"expected", c.expected},
                     {"got", c.got},
                     {"tolerance", c.tolerance},
                     {"pass", c.pass}});
    json config{{"format", cfg.format}, {"suite", cfg.suite}, {"seed", cfg.seed}};
    deliver(cfg, json_payload(cfg, std::move(config),
                              json{{"cases", arr},
                                   {"total", cases.size()},
                                   {"failed", failed}},
                              json{{"wall_time_s", wall}, {"threads", threads}}));
  } else {
    std::ostringstream os;
    for (const auto& c : cases)
      os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " | expected: " << c.expected
         << " | got: " << c.got << " | tol: " << fmt_g(c.tolerance) << "\n";
    os << (failed ? "FAILED " : "passed ") << (cases.size() - failed) << "/" << cases.size()
       << " checks (suite " << cfg.suite << ", seed " << cfg.seed << ")\n";
    deliver(cfg, os.str());
  }
  return failed ? 1 : 0;
}

void add_output_opts(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out, "write to this file instead of stdout");
  sub->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_chain_opts(CLI::App* sub, RunConfig& cfg) {
  auto* o_sites = sub->add_option("--sites", cfg.sites, "number of sites N");
  auto* o_alpha = sub->add_option("--alpha", cfg.alpha, "power-law exponent, t_k = t0 k^alpha");
  auto* o_t0 = sub->add_option("--t0", cfg.t0, "hopping scale")->capture_default_str();
  auto* o_hf = sub->add_option("--hopping-file", cfg.hopping_file,
                               "CSV k,re,im with one row per bond");
  o_hf->excludes(o_alpha);
  o_hf->excludes(o_t0);
  sub->add_option("--phase-tol", cfg.phase_tol, "phase-matching tolerance")
      ->capture_default_str();
  sub->callback([&cfg, o_sites, o_alpha] {
    cfg.sites_set = o_sites->count() > 0;
    cfg.alpha_set = o_alpha->count() > 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"spectral analysis of open chains with reflection-paired complex hopping"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the Hermitian counterpart");
  add_chain_opts(spectrum, cfg);
  add_output_opts(spectrum, cfg);
  spectrum->add_flag("--normalized", cfg.normalized, "divide energies by max |E|");

  auto* dos_cmd = app.add_subcommand("dos", "density-of-states histogram");
  add_chain_opts(dos_cmd, cfg);
  add_output_opts(dos_cmd, cfg);
  dos_cmd->add_option("--bins", cfg.bins, "histogram bins")->capture_default_str();
  dos_cmd->add_flag("--normalized", cfg.normalized, "rescale counts to unit integral");
  dos_cmd->add_flag("--energy-normalized", cfg.energy_normalized,
                    "divide energies by max |E| before binning");

  auto* ipr_cmd = app.add_subcommand("ipr", "per-state inverse participation ratios");
  add_chain_opts(ipr_cmd, cfg);
  add_output_opts(ipr_cmd, cfg);
  ipr_cmd->add_option("--histogram-bins", cfg.histogram_bins,
                      "emit a log-spaced IPR histogram instead of per-state rows");

  auto* scaling = app.add_subcommand("scaling", "min/max IPR vs N with log-log fits");
  scaling->add_option("--alpha", cfg.alpha, "power-law exponent")
      ->each([&cfg](const std::string&) { cfg.alpha_set = true; });
  scaling->add_option("--t0", cfg.t0, "hopping scale")->capture_default_str();
  scaling->add_option("--sizes", cfg.sizes, "chain sizes")->delimiter(',')->capture_default_str();
  add_output_opts(scaling, cfg);

  auto* transform = app.add_subcommand("transform", "similarity scale factors (log m_k)");
  add_chain_opts(transform, cfg);
  add_output_opts(transform, cfg);
  transform->add_flag("--hermitian", cfg.hermitian,
                      "emit the Hermitian counterpart bonds instead");

  auto* roots = app.add_subcommand("roots", "eigenvalues of the chain itself (N <= 32)");
  add_chain_opts(roots, cfg);
  add_output_opts(roots, cfg);

  auto* verify = app.add_subcommand("verify", "run self-check suites");
  verify->add_option("--suite", cfg.suite, "one of alpha0, alpha1, five-site, pt-breaking, metric, scaling, all")
      ->check(CLI::IsMember(verify_suite_names()))
      ->capture_default_str();
  verify->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
  add_output_opts(verify, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }

  try {
    if (app.got_subcommand(spectrum)) return cfg.command = "spectrum", run_spectrum(cfg);
    if (app.got_subcommand(dos_cmd)) return cfg.command = "dos", run_dos(cfg);
    if (app.got_subcommand(ipr_cmd)) return cfg.command = "ipr", run_ipr(cfg);
    if (app.got_subcommand(scaling)) return cfg.command = "scaling", run_scaling(cfg);
    if (app.got_subcommand(transform)) return cfg.command = "transform", run_transform(cfg);
    if (app.got_subcommand(roots)) return cfg.command = "roots", run_roots(cfg);
    if (app.got_subcommand(verify)) return cfg.command = "verify", run_verify(cfg);
  } catch (const criterion_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
