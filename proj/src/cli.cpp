#include "vilenkin/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "vilenkin/kernels.hpp"
#include "vilenkin/spectral.hpp"

namespace vilenkin::cli {

namespace {

constexpr int kLemma5Offset = 3;
const std::vector<int> kDefaultLevels = {2, 3, 4};

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

bool is_theorem(const std::string &suite) {
  return suite == "theorem1a" || suite == "theorem1b" || suite == "theorem2";
}

std::vector<double> default_p(const std::string &suite) {
  if (suite == "theorem1a") return {0.25, 1.0 / 3.0};
  if (suite == "theorem1b") return {0.5};
  if (suite == "theorem2") return {0.25, 0.5};
  return {1.0 / 3.0};
}

std::string suite_list() {
  std::string out;
  for (const auto &s : suite_names()) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string sanitize(std::string text) {
  for (char &c : text) {
    if (c == ':' || c == ',' || c == '=' || c == '/' || c == ';' || c == '@') c = '_';
  }
  return text;
}

void parse_seeds(const std::string &text, RunConfig &c) {
  try {
    const auto colon = text.find(':');
    std::size_t used = 0;
    if (colon == std::string::npos) {
      c.seed_count = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string base = text.substr(0, colon);
      const std::string count = text.substr(colon + 1);
      c.seed_base = std::stoull(base, &used, 0);
      if (used != base.size()) throw std::invalid_argument(text);
      c.seed_count = std::stoi(count, &used);
      if (used != count.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error &) {
    throw UsageError("--seeds: expected COUNT or BASE:COUNT, got '" + text + "'", kExitUsage);
  }
  if (c.seed_count < 1) throw UsageError("--seeds: count must be positive", kExitUsage);
}

/// Group for a command, honouring the kernel-bounds convention of keeping one
/// radix in reserve for level N + 1.
GroupSpec config_group(const RunConfig &c, const std::string &suite) {
  int level = c.level;
  if (level < 0 && suite == "kernel-bounds") {
    level = static_cast<int>(parse_radices(c.group).size()) - 1;
  }
  return parse_group(c.group, level);
}

std::vector<int> levels_below(const std::vector<int> &levels, int limit) {
  std::vector<int> out;
  for (int l : levels) {
    if (l >= 1 && l < limit) out.push_back(l);
  }
  return out;
}

struct Outcome {
  VerificationReport report;
  std::string path;
};

class Runner {
public:
  Runner(const RunConfig &config, std::ostream &log) : c_(config), log_(log) {}

  int verify(const std::string &suite) {
    if (suite == "all") {
      for (const char *s : {"lemma2", "kernel-bounds", "lemma5", "lemma5aaa", "theorem1a",
                            "theorem1b", "theorem2"}) {
        run_suite(s);
      }
    } else {
      run_suite(suite);
    }
    return finish();
  }

  int explore() {
    const GroupSpec spec = config_group(c_, "explore");
    const WeightSequence w = make_weights(c_.weights, spec.size());
    for (double p : c_.p.empty() ? default_p("explore") : c_.p) {
      emit(explore_unboundedness(spec, w, p, atom_plan(spec), c_.workers));
    }
    return finish();
  }

private:
  void run_suite(const std::string &suite) {
    const double drift =
        c_.drift_tolerance.value_or(is_theorem(suite) ? kTheoremDriftTolerance
                                                      : kKernelDriftTolerance);
    if (suite == "lemma2") {
      emit(verify_lemma2(config_group(c_, suite)));
    } else if (suite == "lemma2-corrupted") {
      auto r = verify_lemma2(config_group(c_, suite), corrupted_fejer_closed);
      r.suite = suite;
      emit(r);
    } else if (suite == "kernel-bounds") {
      const GroupSpec spec = config_group(c_, suite);
      if (!spec.can_refine()) {
        throw std::invalid_argument(
            "kernel-bounds compares levels N and N + 1; --group needs a radix beyond --level");
      }
      const WeightSequence w = make_weights(c_.weights, spec.at_level(spec.level() + 1).size());
      emit(verify_kernel_bounds(spec, w, drift, c_.workers));
    } else if (suite == "lemma5" || suite == "lemma5aaa") {
      const GroupSpec spec = config_group(c_, suite);
      const int available = static_cast<int>(spec.available_radices().size());
      std::vector<int> inner;
      for (int l : c_.support_levels.empty() ? kDefaultLevels : c_.support_levels) {
        if (l >= 1 && l + kLemma5Offset <= available) inner.push_back(l);
      }
      if (inner.empty()) throw std::invalid_argument(suite + ": no usable inner level N0");
      const WeightSequence w =
          make_weights(c_.weights, spec.at_level(inner.back() + kLemma5Offset).size());
      emit(lemma5_sweep(spec, w, inner, kLemma5Offset, suite == "lemma5aaa", drift));
    } else if (is_theorem(suite)) {
      const GroupSpec spec = config_group(c_, suite);
      const WeightSequence w = make_weights(c_.weights, spec.size());
      TheoremOptions opt;
      opt.which = parse_theorem(suite);
      opt.atoms = atom_plan(spec);
      opt.n_max = c_.n_max;
      opt.drift_tolerance = drift;
      opt.workers = c_.workers;
      for (double p : c_.p.empty() ? default_p(suite) : c_.p) {
        opt.p = p;
        emit(verify_theorem(spec, w, opt));
      }
    } else {
      throw std::invalid_argument("unknown suite '" + suite + "'");
    }
  }

  AtomPlan atom_plan(const GroupSpec &spec) const {
    AtomPlan plan;
    plan.seed_base = c_.seed_base;
    plan.count = c_.seed_count;
    plan.support_levels =
        levels_below(c_.support_levels.empty() ? kDefaultLevels : c_.support_levels,
                     spec.level());
    plan.resolution = c_.atom_resolution.value_or(kTheoremAtomResolution);
    if (plan.support_levels.empty()) {
      throw std::invalid_argument("no atom support level below N = " +
                                  std::to_string(spec.level()));
    }
    return plan;
  }

  void emit(const VerificationReport &r) {
    std::string name = r.suite;
    if (r.p) name += "_p" + format_double(*r.p);
    name += "_" + sanitize(r.weights);
    name += c_.format == ReportFormat::csv ? ".csv" : ".json";
    const auto path = (std::filesystem::path(c_.out_dir) / name).string();
    std::filesystem::create_directories(c_.out_dir);
    emit_report(r, c_.format, path);
    const char *status = r.summary.report_only ? "REPORT" : (r.summary.pass ? "PASS" : "FAIL");
    log_ << status << ' ' << r.suite;
    if (r.p) log_ << " p=" << format_double(*r.p);
    log_ << " weights=" << r.weights << " spec=" << r.spec
         << " max_ratio=" << format_double(r.summary.max_ratio)
         << " tolerance=" << format_double(r.summary.tolerance) << " -> " << path << '\n';
    outcomes_.push_back({r, path});
  }

  int finish() const {
    const bool ok = std::all_of(outcomes_.begin(), outcomes_.end(), [](const Outcome &o) {
      return o.report.summary.report_only || o.report.summary.pass;
    });
    return ok ? 0 : kExitFail;
  }

  const RunConfig &c_;
  std::ostream &log_;
  std::vector<Outcome> outcomes_;
};

int run_transform(const RunConfig &c, std::ostream &log) {
  const GroupSpec spec = config_group(c, "transform");
  std::ifstream in(c.input);
  if (!in) throw std::runtime_error("cannot open input '" + c.input + "'");
  Eigen::VectorXcd values = read_values_csv(in);
  if (values.size() != spec.size()) {
    throw std::invalid_argument("input has " + std::to_string(values.size()) +
                                " values, the group has M_N = " + std::to_string(spec.size()));
  }
  vilenkin_transform_inplace(spec, values, c.inverse ? Direction::inverse : Direction::forward);
  std::filesystem::create_directories(c.out_dir);
  const auto path =
      (std::filesystem::path(c.out_dir) / (c.inverse ? "inverse.csv" : "transform.csv")).string();
  std::ofstream out(path);
  write_values_csv(out, values,
                   {"group=" + spec.describe(),
                    std::string("direction=") + (c.inverse ? "inverse" : "forward")});
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  log << "wrote " << path << '\n';
  return 0;
}

int run_kernel(const RunConfig &c, std::ostream &log) {
  const GroupSpec spec = config_group(c, "kernel");
  const std::string &kind = c.kernel_kind;
  auto weights = [&] { return make_weights(c.weights, spec.size()); };
  KernelFunction k = [&] {
    if (kind == "dirichlet") return dirichlet_kernel(c.n, spec);
    if (kind == "fejer") return fejer_kernel(c.n, spec);
    if (kind == "fejer-closed") return fejer_kernel_closed(static_cast<int>(c.n), spec);
    if (kind == "norlund") return norlund_kernel(c.n, weights(), spec);
    if (kind == "norlund-abel") return norlund_kernel_abel(c.n, weights(), spec);
    if (kind == "tail") return tail_kernel(c.n, c.tail_level, weights(), spec);
    throw std::invalid_argument("unknown kernel kind '" + kind + "'");
  }();
  std::filesystem::create_directories(c.out_dir);
  const auto path = (std::filesystem::path(c.out_dir) /
                     ("kernel_" + kind + "_n" + std::to_string(c.n) + ".csv"))
                        .string();
  std::ofstream out(path);
  std::vector<std::string> header = {"group=" + spec.describe(), "kernel=" + to_string(k.kind),
                                     "n=" + std::to_string(k.n)};
  if (!k.weights.empty()) header.push_back("weights=" + k.weights);
  write_values_csv(out, k.function.values, header);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  log << "wrote " << path << '\n';
  return 0;
}

} // namespace

const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names = {
      "lemma2",    "lemma2-corrupted", "kernel-bounds", "lemma5", "lemma5aaa",
      "theorem1a", "theorem1b",        "theorem2",      "all"};
  return names;
}

RunConfig parse_args(int argc, const char *const *argv) {
  RunConfig c;
  c.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string seeds;
  std::string format = "csv";
  std::vector<int> levels;
  int resolution = -1;
  double drift = -1.0;

  CLI::App app{"Numerical experiments on Norlund means of Vilenkin-Fourier series"};
  app.name("vilenkin-lab");
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file; flags override it");
  app.footer("Suites: " + suite_list() + ".\nExit status: 0 when every judged report passes, " +
             "1 when one fails, 2 for usage errors, 3 for runtime errors.");

  auto common = [&](CLI::App *sub) {
    sub->add_option("--group", c.group, "Comma-separated radices m_0,m_1,...")
        ->capture_default_str();
    sub->add_option("--level", c.level, "Truncation level N (default: all radices)");
    sub->add_option("--weights", c.weights, "const | log:a=ALPHA,b=BETA | custom:PATH")
        ->capture_default_str();
    sub->add_option("--out", c.out_dir, "Output directory (VILENKIN_LAB_OUT overrides)")
        ->capture_default_str();
  };
  auto atoms = [&](CLI::App *sub) {
    sub->add_option("--p", c.p, "Exponents p in (0,1], comma-separated")->delimiter(',');
    sub->add_option("--seeds", seeds, "Atom seeds: COUNT or BASE:COUNT (default 0x5EED:50)");
    sub->add_option("--levels", levels,
                    "Atom support levels N' (for lemma5/lemma5aaa: inner levels N0)")
        ->delimiter(',');
    sub->add_option("--atom-resolution", resolution,
                    "Random detail levels below N' (0 = down to N; default 4)");
    sub->add_option("--format", format, "Report format: csv | json")->capture_default_str();
    sub->add_option("--workers", c.workers, "Worker threads")->capture_default_str();
  };

  auto *transform = app.add_subcommand("transform", "Vilenkin-Fourier transform of a CSV file");
  common(transform);
  transform->add_option("--in", c.input, "Input CSV (index,re,im)")->required();
  transform->add_flag("--inverse", c.inverse, "Synthesize values from coefficients");

  auto *kernel = app.add_subcommand("kernel", "Tabulate one kernel");
  common(kernel);
  kernel->add_option("--kind", c.kernel_kind,
                     "dirichlet | fejer | fejer-closed | norlund | norlund-abel | tail")
      ->capture_default_str();
  kernel->add_option("--n", c.n, "Kernel index (level j for fejer-closed)")
      ->capture_default_str();
  kernel->add_option("--tail-level", c.tail_level, "N0 of the tail kernel");

  auto *verify = app.add_subcommand("verify", "Run verification suites and write reports");
  common(verify);
  atoms(verify);
  verify->add_option("--suite", c.suite, "One of: " + suite_list())->required();
  verify->add_option("--nmax", c.n_max, "Largest mean index for theorem suites (0 = M_N)");
  verify->add_option("--tolerance-drift", drift, "Drift tolerance (default 0.10 or 0.15)");
  verify->footer("Suites: " + suite_list() + ".");

  auto *explore = app.add_subcommand("explore", "Growth curve of the unweighted maximal operator");
  common(explore);
  atoms(explore);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    throw UsageError(app.help(), 0);
  } catch (const CLI::CallForAllHelp &) {
    throw UsageError(app.help("", CLI::AppFormatMode::All), 0);
  } catch (const CLI::ParseError &e) {
    throw UsageError(std::string(e.what()) + "\nRun with --help for usage.", kExitUsage);
  }

  c.command = app.get_subcommands().front()->get_name();
  if (const char *env = std::getenv("VILENKIN_LAB_OUT"); env && *env) c.out_dir = env;
  if (!seeds.empty()) parse_seeds(seeds, c);
  c.support_levels = levels;
  if (resolution >= 0) c.atom_resolution = resolution;
  if (drift >= 0.0) c.drift_tolerance = drift;
  if (c.workers < 1) throw UsageError("--workers: must be at least 1", kExitUsage);

  try {
    c.format = parse_format(format);
  } catch (const std::exception &e) {
    throw UsageError(std::string("--format: ") + e.what(), kExitUsage);
  }
  try {
    (void)parse_group(c.group, c.level < 0 ? -1 : c.level);
  } catch (const std::exception &e) {
    throw UsageError(std::string("--group/--level: ") + e.what(), kExitUsage);
  }
  for (double p : c.p) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw UsageError("--p: " + format_double(p) + " is outside (0, 1]", kExitUsage);
    }
  }
  if (c.command == "verify") {
    const auto &names = suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end()) {
      throw UsageError("--suite: unknown suite '" + c.suite + "' (one of " + suite_list() + ")",
                       kExitUsage);
    }
    if (is_theorem(c.suite)) {
      for (double p : c.p) {
        try {
          check_theorem_parameters(parse_theorem(c.suite), p);
        } catch (const std::exception &e) {
          throw UsageError(std::string("--p: ") + e.what(), kExitUsage);
        }
      }
    }
  }
  if (c.command == "explore") {
    for (double p : c.p) {
      if (!(p < 0.5)) throw UsageError("--p: explore requires 0 < p < 1/2", kExitUsage);
    }
  }
  if (c.command != "transform") {
    try {
      (void)make_weights(c.weights, 1);
    } catch (const std::exception &e) {
      throw UsageError(std::string("--weights: ") + e.what(), kExitUsage);
    }
  }
  return c;
}

int run(const RunConfig &config, std::ostream &log) {
  if (config.command == "transform") return run_transform(config, log);
  if (config.command == "kernel") return run_kernel(config, log);
  Runner runner(config, log);
  if (config.command == "verify") return runner.verify(config.suite);
  if (config.command == "explore") return runner.explore();
  throw std::invalid_argument("unknown command '" + config.command + "'");
}

int main_entry(int argc, const char *const *argv) {
  RunConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const UsageError &e) {
    (e.exit_code == 0 ? std::cout : std::cerr) << e.what() << '\n';
    return e.exit_code;
  }
  try {
    return run(config, std::cout);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

} // namespace vilenkin::cli
