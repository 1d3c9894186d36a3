#include "mpa/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mpa/analytic.hpp"
#include "mpa/countermeasure.hpp"
#include "mpa/montecarlo.hpp"
#include "mpa/protocol.hpp"
#include "mpa/rng.hpp"

namespace mpa::cli {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_int(std::string_view key, std::string_view text) {
  T v{};
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw UsageError("invalid integer for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return v;
}

std::string parse_choice(std::string_view key, std::string_view text,
                         std::initializer_list<std::string_view> allowed) {
  const auto t = trim(text);
  for (auto a : allowed) {
    if (t == a) return std::string(t);
  }
  throw UsageError("invalid value for " + std::string(key) + ": '" + std::string(text) + "'");
}

// Flag name -> config key. Every subcommand accepts these.
struct ConfigFlag {
  std::string flag;
  std::string key;
  std::string help;
};

// Flags that mirror config-file keys; explicit flags override the file.
const std::vector<ConfigFlag>& config_flags() {
  static const std::vector<ConfigFlag> flags = {
      {"--ma", "ma", "Alice-side absorption order (1..16)"},
      {"--mb", "mb", "Bob-side absorption order (1..16)"},
      {"--scheme", "scheme", "fixed | alternating"},
      {"--alt-n", "alt_n", "n for the alternating (1,n)/(n,1) scheme"},
      {"--schedule", "schedule", "alternation schedule: parity | random"},
      {"--trials", "trials", "Monte Carlo trials (per setting / grid point)"},
      {"--seed", "seed", "RNG seed"},
      {"--theta-a", "theta_a", "Alice analyzer angle (rad, or suffix deg)"},
      {"--theta-b", "theta_b", "Bob analyzer angle (rad, or suffix deg)"},
      {"--grid-points", "grid_points", "scan grid size over [0, pi)"},
      {"--mode", "mode", "scan mode: analytic | mc"},
      {"--output", "output", "also write CSV to this path"},
  };
  return flags;
}

struct CommandArgs {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  int workers = 0;
  // analytic
  std::string delta;
  CLI::Option* delta_opt = nullptr;
  bool scan = false;
  bool chsh = false;
  // protocol
  std::string rounds;
  CLI::Option* rounds_opt = nullptr;
  // scan
  std::string singles;
  double threshold = countermeasure::kDefaultVisibilityThreshold;
  double sigma = countermeasure::kDefaultSigmaFactor;

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot open config file " + config_path);
      load_config(cfg, in);
    }
    for (const auto& f : config_flags()) {
      if (options.at(f.key)->count() > 0) apply_setting(cfg, f.key, values.at(f.key));
    }
    if (rounds_opt != nullptr && rounds_opt->count() > 0) apply_setting(cfg, "trials", rounds);
    return cfg;
  }
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help,
                      CommandArgs& args) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--config", args.config_path, "key=value configuration file");
  sub->add_option("--workers", args.workers, "OpenMP worker threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  for (const auto& f : config_flags()) {
    args.values[f.key];
    args.options[f.key] = sub->add_option(f.flag, args.values[f.key], f.help);
  }
  return sub;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + path);
  f << contents;
  if (!f) throw std::runtime_error("failed writing " + path);
}

void header(std::ostream& out, std::string_view command, const RunConfig& cfg) {
  out << "# mpa " << command << "\n# config: " << cfg.echo() << "\n";
}

std::string counts_lines(const CoincidenceCounts& c) {
  std::ostringstream s;
  s << "n00=" << c.n00 << "\nn01=" << c.n01 << "\nn10=" << c.n10 << "\nn11=" << c.n11
    << "\ndiscard_no_a=" << c.n_discard_no_a << "\ndiscard_no_b=" << c.n_discard_no_b
    << "\ndiscard_neither=" << c.n_discard_neither << "\ndouble_click=" << c.n_double
    << "\n";
  return s.str();
}

const char* kScanHeader = "delta_rad,p00,p01,p10,p11,coincidence_sum,E,stderr_E\n";

std::string scan_csv(const countermeasure::ScanResult& r) {
  std::ostringstream s;
  s << kScanHeader;
  for (const auto& p : r.points) {
    s << num(p.angle) << ',' << num(p.probs.p00) << ',' << num(p.probs.p01) << ','
      << num(p.probs.p10) << ',' << num(p.probs.p11) << ',' << num(p.value) << ','
      << num(p.e_value) << ',' << num(p.stderr_e) << '\n';
  }
  s << "# visibility=" << num(r.visibility) << " stderr=" << num(r.visibility_stderr) << '\n';
  return s.str();
}

std::string singles_csv(const countermeasure::ScanResult& r) {
  std::ostringstream s;
  s << "angle_rad,click_rate,stderr\n";
  for (const auto& p : r.points) {
    s << num(p.angle) << ',' << num(p.value) << ',' << num(p.value_stderr) << '\n';
  }
  s << "# visibility=" << num(r.visibility) << " stderr=" << num(r.visibility_stderr) << '\n';
  return s.str();
}

mc::SimulationConfig sim_config(const RunConfig& cfg, int workers) {
  mc::SimulationConfig sim;
  sim.scheme = cfg.attack_scheme();
  sim.settings = MeasurementSettings(cfg.theta_a, cfg.theta_b);
  sim.n_trials = cfg.trials;
  sim.seed = cfg.seed;
  sim.workers = workers;
  return sim;
}

int cmd_analytic(const CommandArgs& args, std::ostream& out) {
  const RunConfig cfg = args.resolve();
  const AttackScheme scheme = cfg.attack_scheme();
  std::ostringstream body;
  header(body, "analytic", cfg);

  if (args.scan) {
    const auto grid = countermeasure::uniform_grid(cfg.grid_points);
    const auto r = countermeasure::scan_coincidence_sum(scheme, grid, countermeasure::AnalyticMode{});
    body << scan_csv(r);
  } else if (args.chsh) {
    const analytic::ChshSpec spec;
    const char* names[4] = {"E(a1,b1)", "E(a1,b2)", "E(a2,b1)", "E(a2,b2)"};
    const std::array<MeasurementSettings, 4> pairs = {
        MeasurementSettings(spec.a1, spec.b1), MeasurementSettings(spec.a1, spec.b2),
        MeasurementSettings(spec.a2, spec.b1), MeasurementSettings(spec.a2, spec.b2)};
    for (std::size_t i = 0; i < 4; ++i) {
      body << names[i] << '=' << num(analytic::correlation(scheme, pairs[i]).e_value) << '\n';
    }
    body << "S=" << num(analytic::chsh(scheme, spec)) << '\n';
  } else {
    const double delta =
        args.delta_opt->count() > 0 ? parse_angle(args.delta) : cfg.theta_a - cfg.theta_b;
    const MeasurementSettings settings(delta, 0.0);
    const auto t = analytic::joint_table(scheme, settings);
    const auto c = analytic::correlation_from_table(t);
    body << "delta_rad=" << num(delta) << "\nP00=" << num(t.p00) << "\nP01=" << num(t.p01)
         << "\nP10=" << num(t.p10) << "\nP11=" << num(t.p11)
         << "\ncoincidence_sum=" << num(t.sum()) << "\nE=" << num(c.e_value) << '\n';
  }
  if (!cfg.output.empty()) write_file(cfg.output, body.str());
  out << body.str();
  return kOk;
}

int cmd_simulate(const CommandArgs& args, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = args.resolve();
  const auto rep = mc::run_trials(sim_config(cfg, args.workers));
  const auto& c = rep.counts;
  const double n = static_cast<double>(c.n_trials);

  std::ostringstream body;
  header(body, "simulate", cfg);
  body << "trials=" << c.n_trials << '\n' << counts_lines(c);
  body << "coincidences=" << c.coincidences() << "\ncoincidence_rate="
       << num(rep.correlation.coincidence_rate) << "\nE=" << num(rep.correlation.e_value)
       << "\nstderr_E=" << num(rep.correlation.stderr_e)
       << "\ndiscard_fraction=" << num(static_cast<double>(c.n_trials - c.coincidences()) / n)
       << "\nsingles_a=" << rep.singles_a.click0 << ',' << rep.singles_a.click1 << ','
       << rep.singles_a.no_click << ',' << rep.singles_a.double_click
       << "\nsingles_b=" << rep.singles_b.click0 << ',' << rep.singles_b.click1 << ','
       << rep.singles_b.no_click << ',' << rep.singles_b.double_click << '\n';
  out << body.str();
  err << "elapsed_s=" << num(rep.elapsed.count()) << '\n';

  if (!cfg.output.empty()) {
    std::ostringstream csv;
    csv << "scheme,theta_a,theta_b,trials,seed,n00,n01,n10,n11,discard_no_a,discard_no_b,"
           "discard_neither,double_click,coincidence_rate,E,stderr_E\n";
    csv << describe(cfg.attack_scheme()) << ',' << num(cfg.theta_a) << ',' << num(cfg.theta_b)
        << ',' << c.n_trials << ',' << cfg.seed << ',' << c.n00 << ',' << c.n01 << ','
        << c.n10 << ',' << c.n11 << ',' << c.n_discard_no_a << ',' << c.n_discard_no_b << ','
        << c.n_discard_neither << ',' << c.n_double << ','
        << num(rep.correlation.coincidence_rate) << ',' << num(rep.correlation.e_value) << ','
        << num(rep.correlation.stderr_e) << '\n';
    write_file(cfg.output, csv.str());
  }
  return kOk;
}

int cmd_chsh(const CommandArgs& args, std::ostream& out) {
  const RunConfig cfg = args.resolve();
  const analytic::ChshSpec spec;
  const auto est = mc::run_chsh(sim_config(cfg, args.workers), spec, cfg.trials);
  const std::array<std::pair<Angle, Angle>, 4> pairs = {
      std::pair{spec.a1, spec.b1}, std::pair{spec.a1, spec.b2}, std::pair{spec.a2, spec.b1},
      std::pair{spec.a2, spec.b2}};
  const char* names[4] = {"a1b1", "a1b2", "a2b1", "a2b2"};

  std::ostringstream body;
  header(body, "chsh", cfg);
  std::ostringstream csv;
  csv << "pair,theta_a,theta_b,n00,n01,n10,n11,trials,E,stderr_E\n";
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& c = est.counts[i];
    body << "E(" << names[i] << ")=" << num(est.correlations[i].e_value) << " +/- "
         << num(est.correlations[i].stderr_e) << '\n';
    csv << names[i] << ',' << num(pairs[i].first.radians()) << ','
        << num(pairs[i].second.radians()) << ',' << c.n00 << ',' << c.n01 << ',' << c.n10
        << ',' << c.n11 << ',' << c.n_trials << ',' << num(est.correlations[i].e_value) << ','
        << num(est.correlations[i].stderr_e) << '\n';
  }
  body << "S=" << num(est.s) << "\nstderr_S=" << num(est.stderr_s)
       << "\nS_analytic=" << num(analytic::chsh(cfg.attack_scheme(), spec))
       << "\nviolation=" << (est.s > 2.0 ? "yes" : "no") << '\n';
  out << body.str();
  if (!cfg.output.empty()) write_file(cfg.output, csv.str());
  return kOk;
}

int cmd_scan(const CommandArgs& args, std::ostream& out) {
  const RunConfig cfg = args.resolve();
  const auto grid = countermeasure::uniform_grid(cfg.grid_points);
  countermeasure::ScanMode mode = countermeasure::AnalyticMode{};
  if (cfg.mode == "mc") mode = countermeasure::MonteCarloMode{cfg.trials, cfg.seed, args.workers};

  countermeasure::ScanResult r;
  std::string csv;
  if (args.singles.empty()) {
    r = countermeasure::scan_coincidence_sum(cfg.attack_scheme(), grid, mode);
    csv = scan_csv(r);
  } else {
    const auto side = parse_choice("--singles", args.singles, {"A", "B"}) == "A"
                          ? countermeasure::Side::kAlice
                          : countermeasure::Side::kBob;
    r = countermeasure::scan_singles(cfg.attack_scheme(), side, grid, mode);
    csv = singles_csv(r);
  }
  const auto verdict = countermeasure::fair_sampling_verdict(r, args.threshold, args.sigma);

  std::ostringstream body;
  header(body, "scan", cfg);
  if (cfg.output.empty()) {
    body << csv;
  } else {
    write_file(cfg.output, csv);
    body << "points=" << r.points.size() << "\nvisibility=" << num(r.visibility)
         << "\nstderr_visibility=" << num(r.visibility_stderr) << '\n';
  }
  body << "# verdict: " << verdict.explanation << '\n';
  out << body.str();
  return kOk;
}

int cmd_protocol(const CommandArgs& args, std::ostream& out) {
  const RunConfig cfg = args.resolve();
  protocol::ProtocolConfig pc;
  pc.scheme = cfg.attack_scheme();
  pc.n_rounds = cfg.trials;
  pc.seed = cfg.seed;
  pc.workers = args.workers;
  const auto rep = protocol::run_protocol(pc);

  std::ostringstream body;
  header(body, "protocol", cfg);
  body << "rounds=" << rep.n_rounds << "\nsifted_key_length=" << rep.sifted_key_length
       << "\nqber=" << num(rep.qber);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (!std::isnan(rep.qber_by_pair[a][b])) {
        body << "\nqber(a" << a << ",b" << b << ")=" << num(rep.qber_by_pair[a][b]);
      }
    }
  }
  body << "\nS=" << num(rep.s_estimate) << "\nstderr_S=" << num(rep.s_stderr)
       << "\nbell_check=" << (rep.s_estimate > 2.0 ? "passed" : "failed")
       << "\nchsh_coincidences=" << rep.n_chsh << "\nother_pair_coincidences="
       << rep.n_other_pairs << "\nnon_coincident=" << rep.n_non_coincident
       << "\ndiscard_fraction=" << num(rep.discard_fraction)
       << "\neve_key_agreement=" << num(rep.eve_agreement) << "\nrounds_by_setting_pair=";
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) body << (a + b > 0 ? "," : "") << rep.rounds_by_setting_pair[a][b];
  }
  body << '\n';
  out << body.str();
  if (!cfg.output.empty()) write_file(cfg.output, body.str());
  return kOk;
}

int cmd_verify(const CommandArgs& args, std::ostream& out) {
  const RunConfig cfg = args.resolve();
  constexpr double kLimitSigma = 5.0;
  const std::array<double, 4> deltas = {0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0};

  std::ostringstream body;
  header(body, "verify", cfg);
  std::ostringstream csv;
  csv << "ma,mb,delta_rad,max_dev_P_sigma,dev_E_sigma\n";
  double worst = 0.0;
  std::uint64_t point = 0;
  for (int ma = 1; ma <= 3; ++ma) {
    for (int mb = 1; mb <= 3; ++mb) {
      for (double delta : deltas) {
        mc::SimulationConfig sim;
        sim.scheme = make_fixed(ma, mb);
        sim.settings = MeasurementSettings(delta, 0.0);
        sim.n_trials = cfg.trials;
        sim.seed = rng::sub_seed(cfg.seed, point++);
        sim.workers = args.workers;
        const auto rep = mc::run_trials(sim);
        const auto exact = analytic::joint_table(sim.scheme, sim.settings);
        const auto& c = rep.counts;
        const double n = static_cast<double>(c.n_trials);
        const std::array<std::pair<std::uint64_t, double>, 4> cells = {
            std::pair{c.n00, exact.p00}, std::pair{c.n01, exact.p01},
            std::pair{c.n10, exact.p10}, std::pair{c.n11, exact.p11}};
        double dev_p = 0.0;
        for (const auto& [k, p] : cells) {
          const double sd = std::sqrt(p * (1.0 - p) / n);
          const double d = std::abs(static_cast<double>(k) / n - p);
          dev_p = std::max(dev_p, sd > 0.0 ? d / sd : (d > 0.0 ? HUGE_VAL : 0.0));
        }
        const double e = analytic::correlation_from_table(exact).e_value;
        const double sd_e = rep.correlation.n_coincidences > 0
                                ? std::sqrt((1.0 - e * e) /
                                            static_cast<double>(rep.correlation.n_coincidences))
                                : 0.0;
        const double d_e = std::abs(rep.correlation.e_value - e);
        const double dev_e = sd_e > 0.0 ? d_e / sd_e : (d_e > 0.0 ? HUGE_VAL : 0.0);
        worst = std::max({worst, dev_p, dev_e});
        body << "ma=" << ma << " mb=" << mb << " delta=" << num(delta)
             << " max_dev_P_sigma=" << num(dev_p) << " dev_E_sigma=" << num(dev_e) << '\n';
        csv << ma << ',' << mb << ',' << num(delta) << ',' << num(dev_p) << ',' << num(dev_e)
            << '\n';
      }
    }
  }
  const bool ok = worst <= kLimitSigma;
  body << "max_deviation_sigma=" << num(worst) << "\nlimit_sigma=" << num(kLimitSigma)
       << "\nresult=" << (ok ? "PASS" : "FAIL") << '\n';
  out << body.str();
  if (!cfg.output.empty()) write_file(cfg.output, csv.str());
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

AttackScheme RunConfig::attack_scheme() const {
  try {
    if (scheme == "alternating") {
      return make_alternating(alt_n, schedule == "random" ? Schedule::kRandom : Schedule::kParity);
    }
    return make_fixed(ma, mb);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string RunConfig::echo() const {
  std::ostringstream s;
  s << "ma=" << ma << " mb=" << mb << " scheme=" << scheme << " alt_n=" << alt_n
    << " schedule=" << schedule << " trials=" << trials << " seed=" << seed
    << " theta_a=" << num(theta_a) << " theta_b=" << num(theta_b)
    << " grid_points=" << grid_points << " mode=" << mode << " output=" << output;
  return s.str();
}

double parse_angle(std::string_view text) {
  auto t = trim(text);
  double scale = 1.0;
  if (t.size() > 3 && t.substr(t.size() - 3) == "deg") {
    t = trim(t.substr(0, t.size() - 3));
    scale = kPi / 180.0;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw UsageError("invalid angle: '" + std::string(text) + "'");
  }
  return v * scale;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "ma") c.ma = parse_int<int>(key, value);
  else if (key == "mb") c.mb = parse_int<int>(key, value);
  else if (key == "scheme") c.scheme = parse_choice(key, value, {"fixed", "alternating"});
  else if (key == "alt_n") c.alt_n = parse_int<int>(key, value);
  else if (key == "schedule") c.schedule = parse_choice(key, value, {"parity", "random"});
  else if (key == "trials") c.trials = parse_int<std::uint64_t>(key, value);
  else if (key == "seed") c.seed = parse_int<std::uint64_t>(key, value);
  else if (key == "theta_a") c.theta_a = parse_angle(value);
  else if (key == "theta_b") c.theta_b = parse_angle(value);
  else if (key == "grid_points") c.grid_points = parse_int<int>(key, value);
  else if (key == "mode") c.mode = parse_choice(key, value, {"analytic", "mc"});
  else if (key == "output") c.output = std::string(trim(value));
  else throw UsageError("unknown configuration key '" + std::string(key) + "'");
}

void load_config(RunConfig& config, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v(line);
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(config, trim(v.substr(0, eq)), v.substr(eq + 1));
  }
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiple-photon absorption attack on Ekert QKD: analytic and Monte Carlo tools",
               "mpa"};
  app.require_subcommand(1);

  const std::array<std::string, 6> names = {"analytic", "simulate", "chsh",
                                            "scan",     "protocol", "verify"};
  std::map<std::string, std::unique_ptr<CommandArgs>> args;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : names) args[name] = std::make_unique<CommandArgs>();

  subs["analytic"] = add_command(app, "analytic", "Exact probabilities, E, S and scans",
                                 *args["analytic"]);
  {
    auto& a = *args["analytic"];
    a.delta_opt = subs["analytic"]->add_option("--delta", a.delta, "theta_a - theta_b");
    subs["analytic"]->add_flag("--scan", a.scan, "E and coincidence sum across the grid");
    subs["analytic"]->add_flag("--chsh", a.chsh, "CHSH value at the standard angles");
  }
  subs["simulate"] = add_command(app, "simulate", "Monte Carlo run at one setting pair",
                                 *args["simulate"]);
  subs["chsh"] = add_command(app, "chsh", "Monte Carlo CHSH estimate", *args["chsh"]);
  subs["scan"] = add_command(app, "scan", "Coincidence-sum or singles angle scan", *args["scan"]);
  {
    auto& a = *args["scan"];
    subs["scan"]->add_option("--singles", a.singles, "scan one side's singles (A or B)");
    subs["scan"]->add_option("--threshold", a.threshold, "visibility threshold for the verdict");
    subs["scan"]->add_option("--sigma", a.sigma, "significance factor for the verdict");
  }
  subs["protocol"] = add_command(app, "protocol", "Ekert protocol run under the attack",
                                 *args["protocol"]);
  {
    auto& a = *args["protocol"];
    a.rounds_opt = subs["protocol"]->add_option("--rounds", a.rounds, "protocol rounds");
  }
  subs["verify"] = add_command(app, "verify", "Monte Carlo vs analytic oracle matrix",
                               *args["verify"]);

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (subs["analytic"]->parsed()) return cmd_analytic(*args["analytic"], out);
    if (subs["simulate"]->parsed()) return cmd_simulate(*args["simulate"], out, err);
    if (subs["chsh"]->parsed()) return cmd_chsh(*args["chsh"], out);
    if (subs["scan"]->parsed()) return cmd_scan(*args["scan"], out);
    if (subs["protocol"]->parsed()) return cmd_protocol(*args["protocol"], out);
    if (subs["verify"]->parsed()) return cmd_verify(*args["verify"], out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::overflow_error& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::range_error& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace mpa::cli
