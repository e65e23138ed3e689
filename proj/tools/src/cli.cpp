#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "longmem/longmem.hpp"

namespace longmem::cli {

namespace {

using nlohmann::json;

// Bad flag or config value discovered after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kSubcommands = {
    "cd-curve",     "ratio-curve", "trunc-rate",  "ark-rate", "estimation-error", "coeffcov-mc",
    "covmoment-mc", "whittle-mc",  "simulate",    "predict",  "fit",              "total-error"};

std::string json_scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

// Appends `--key value` for every config entry not already given as a flag.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;

  json cfg;
  try {
    cfg = json::parse(read_file(*path));
  } catch (const json::exception& e) {
    throw UsageError("config " + *path + ": " + e.what());
  } catch (const IoError& e) {
    throw UsageError(e.what());
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");

  std::set<std::string> given;
  bool has_subcommand = false;
  for (const auto& a : args) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));
    if (std::find(kSubcommands.begin(), kSubcommands.end(), a) != kSubcommands.end()) {
      has_subcommand = true;
    }
  }
  if (!has_subcommand && cfg.contains("command")) {
    args.insert(args.begin(), cfg["command"].get<std::string>());
  }
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command" || key == "config") continue;
    const std::string flag = "--" + key;
    if (given.count(flag)) continue;
    args.push_back(flag);
    if (value.is_array()) {
      for (const auto& v : value) args.push_back(json_scalar(v));
    } else {
      args.push_back(json_scalar(value));
    }
  }
  return args;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

template <class T>
void check_grid(const std::vector<T>& grid, const char* name) {
  if (grid.empty()) throw UsageError(std::string(name) + " must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) throw UsageError(std::string(name) + " must be strictly increasing");
  }
}

void check_d(double d) {
  if (!(d >= kMinMemory && d <= kMaxMemory)) {
    throw UsageError("--d must lie in [1e-4, 0.5 - 1e-4]");
  }
}

struct ModelOptions {
  std::string file;
  double d = 0.3;
  double sigma2 = 1.0;

  void add(CLI::App* sub) {
    sub->add_option("--model", file, "Model JSON {kind, d, ar, ma, sigma2}")
        ->check(CLI::ExistingFile);
    sub->add_option("--d", d, "Memory parameter of an FI(d) model");
    sub->add_option("--sigma2", sigma2, "Innovation variance of an FI(d) model");
  }

  LongMemoryModel resolve() const {
    try {
      if (!file.empty()) return model_from_json(read_file(file));
      return LongMemoryModel::fi(d, sigma2);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    } catch (const IoError& e) {
      throw UsageError(e.what());
    }
  }
};

struct Session {
  std::vector<std::string> args;
  std::ostream& stdout_;
  std::string out_path;
  std::uint64_t seed = 1;
  std::string command;
  std::string config_hash;

  std::vector<std::string> header() const {
    std::string cmd = "longmem";
    for (const auto& a : args) cmd += " " + a;
    return {std::string("longmem ") + kVersion, "command: " + cmd,
            "seed: " + std::to_string(seed), "config-hash: " + config_hash,
            "timestamp: " + utc_timestamp()};
  }

  void emit(const std::string& content) const {
    if (out_path.empty()) {
      stdout_ << content;
    } else {
      write_file_atomic(out_path, content);
    }
  }

  void emit_table(CsvTable table) const {
    table.comments = header();
    emit(to_csv(table));
  }
};

CsvTable scaling_table(const ScalingReport& r) {
  CsvTable t;
  t.header = {"grid", "estimate", "stderr", "slope"};
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    t.rows.push_back({r.grid[i], r.estimate[i], r.stderr_[i], r.fit.slope});
  }
  return t;
}

std::string config_hash(const CLI::App* sub) {
  json j;
  j["command"] = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name();
    if (name == "--out" || name == "--help") continue;
    j[name] = opt->count() > 0 ? opt->results() : std::vector<std::string>{opt->get_default_str()};
  }
  return fnv1a_hex(j.dump());
}

struct McOptions {
  double d = 0.1;
  std::size_t k = 8;
  std::vector<std::size_t> grid{1024, 2048, 4096, 8192};
  std::size_t reps = 200;
};

// Storage for every subcommand's options; CLI11 writes into it during parsing.
struct Options {
  double cd_min = 0.01, cd_max = 0.49;
  std::size_t cd_steps = 49;

  std::vector<double> ratio_d{0.1, 0.2, 0.3, 0.4, 0.45};
  std::vector<std::size_t> ratio_k{1, 2, 5, 10, 20, 30, 50, 100};

  ModelOptions trunc_model, ark_model;
  std::vector<std::size_t> trunc_k{100, 200, 400, 800, 1600}, ark_k{100, 200, 400, 800, 1600};

  McOptions est, coef;
  McOptions mom{0.1, 0, {512, 1024, 2048, 4096, 8192, 16384}, 200};

  double whittle_d = 0.3;
  std::size_t whittle_T = 4096, whittle_reps = 100;

  ModelOptions sim_model;
  std::size_t sim_n = 1024, sim_reps = 1;
  std::string sim_dir, sim_format = "per-rep", sim_method = "auto";

  ModelOptions pred_model;
  std::string pred_method = "ark", pred_window, pred_train;
  std::size_t pred_k = 20;

  std::string fit_sample;
  double fit_min = kDefaultWhittleBounds.first, fit_max = kDefaultWhittleBounds.second;

  double total_d = 0.1;
  std::vector<std::size_t> total_k{4, 8, 16, 32}, total_T{1024, 4096};
  std::size_t total_reps = 100;
};

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Session session{raw_args, out, {}, 1, {}, {}};
  std::vector<std::string> args;
  try {
    args = merge_config(raw_args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  Options o;
  CLI::App app{"Prediction of long-memory time series: risk curves, estimation and simulation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  std::string config_path;
  std::size_t threads = 0;
  app.add_option("--config", config_path, "JSON file with option values; flags override it");
  app.add_option("--threads", threads, "Worker threads (default: LONGMEM_THREADS or all cores)");
  app.set_version_flag("--version", std::string(kVersion));

  std::map<std::string, std::function<void()>> actions;
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", session.out_path, "Output file (default: standard output)");
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", session.seed, "Master seed"); };

  {
    auto* sub = app.add_subcommand("cd-curve", "C(d) over a grid of d");
    sub->add_option("--d-min", o.cd_min);
    sub->add_option("--d-max", o.cd_max);
    sub->add_option("--steps", o.cd_steps)->check(CLI::PositiveNumber);
    add_out(sub);
    actions["cd-curve"] = [&] {
      if (!(o.cd_min > 0.0 && o.cd_max < 0.5 && o.cd_min <= o.cd_max)) {
        throw UsageError("need 0 < d-min <= d-max < 1/2");
      }
      CsvTable t;
      t.header = {"d", "C(d)"};
      const std::size_t n = o.cd_steps;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = n == 1 ? o.cd_min
                                : o.cd_min + (o.cd_max - o.cd_min) * static_cast<double>(i) /
                                                 static_cast<double>(n - 1);
        t.rows.push_back({d, c_of_d(d)});
      }
      session.emit_table(t);
    };
  }

  {
    auto* sub = app.add_subcommand("ratio-curve", "r(k) for FI(d) over (k, d) grids");
    sub->add_option("--d", o.ratio_d)->delimiter(',');
    sub->add_option("--k", o.ratio_k)->delimiter(',');
    add_out(sub);
    actions["ratio-curve"] = [&] {
      check_grid(o.ratio_d, "--d");
      check_grid(o.ratio_k, "--k");
      for (double d : o.ratio_d) check_d(d);
      if (o.ratio_k.front() == 0) throw UsageError("--k must be positive");
      CsvTable t;
      t.header = {"k", "d", "r"};
      for (std::size_t k : o.ratio_k) {
        for (double d : o.ratio_d) t.rows.push_back({static_cast<double>(k), d, r_of_k(d, k)});
      }
      session.emit_table(t);
    };
  }

  for (const bool trunc : {true, false}) {
    const std::string name = trunc ? "trunc-rate" : "ark-rate";
    auto* sub = app.add_subcommand(name, trunc ? "Truncated Wiener-Kolmogorov excess risk against k"
                                               : "Fitted AR(k) excess risk against k");
    auto& model = trunc ? o.trunc_model : o.ark_model;
    auto& ks = trunc ? o.trunc_k : o.ark_k;
    model.add(sub);
    sub->add_option("--k-grid", ks)->delimiter(',');
    add_out(sub);
    actions[name] = [&, trunc] {
      check_grid(ks, "--k-grid");
      if (ks.front() == 0) throw UsageError("--k-grid must be positive");
      const LongMemoryModel m = model.resolve();
      ScalingReport r;
      for (std::size_t k : ks) {
        r.grid.push_back(static_cast<double>(k));
        if (trunc) {
          const TailSum t = truncation_excess_detail(m, k);
          r.estimate.push_back(t.value);
          r.stderr_.push_back(t.error);
        } else {
          r.estimate.push_back(ark_excess(m, k));
          r.stderr_.push_back(0.0);
        }
      }
      if (ks.size() >= 2) r.fit = loglog_slope(r.grid, r.estimate, {});
      session.emit_table(scaling_table(r));
    };
  }

  using McBody = std::function<ScalingReport(const McOptions&)>;
  auto add_mc = [&](const std::string& name, const std::string& help, McOptions& mc,
                    const std::string& grid_flag, bool with_k, McBody body) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--d", mc.d);
    if (with_k) sub->add_option("--k", mc.k)->check(CLI::PositiveNumber);
    sub->add_option(grid_flag, mc.grid)->delimiter(',');
    sub->add_option("--reps", mc.reps)->check(CLI::PositiveNumber);
    add_seed(sub);
    add_out(sub);
    actions[name] = [&mc, &session, body, grid_flag] {
      check_d(mc.d);
      check_grid(mc.grid, grid_flag.c_str());
      if (mc.grid.size() < 2) throw UsageError(grid_flag + " needs two or more points");
      session.emit_table(scaling_table(body(mc)));
    };
  };
  add_mc("estimation-error", "Whittle plug-in forecast error against T", o.est, "--T-grid", true,
         [&](const McOptions& mc) {
           return estimation_error_scaling(mc.d, mc.k, mc.grid, mc.reps, session.seed);
         });
  add_mc("coeffcov-mc", "Yule-Walker plug-in forecast error against T", o.coef, "--T-grid", true,
         [&](const McOptions& mc) {
           return coeffcov_scaling(mc.d, mc.k, mc.grid, mc.reps, session.seed);
         });
  add_mc("covmoment-mc", "Mean squared error of the empirical variance against n", o.mom,
         "--n-grid", false, [&](const McOptions& mc) {
           return covmoment_scaling(mc.d, mc.grid, mc.reps, session.seed);
         });

  {
    auto* sub = app.add_subcommand("whittle-mc", "Whittle estimates on simulated FI(d) paths");
    sub->add_option("--d", o.whittle_d);
    sub->add_option("--T", o.whittle_T);
    sub->add_option("--reps", o.whittle_reps)->check(CLI::PositiveNumber);
    add_seed(sub);
    add_out(sub);
    actions["whittle-mc"] = [&] {
      check_d(o.whittle_d);
      if (o.whittle_T < 64) throw UsageError("--T must be at least 64");
      const std::size_t T = o.whittle_T, reps = o.whittle_reps;
      const AutocovSeq acov = exact_autocov(LongMemoryModel::fi(o.whittle_d), T);
      std::vector<WhittleFit> fits(reps);
      parallel_for(reps, [&](std::size_t rep) {
        SimulationPlan plan{acov, T, session.seed, replicate_id(0, rep), 0, SimulationMethod::AUTO};
        fits[rep] = whittle_fit(gaussian_sample(plan));
      });
      CsvTable t;
      t.header = {"rep", "d_hat", "sigma2_hat"};
      for (std::size_t r = 0; r < reps; ++r) {
        t.rows.push_back({static_cast<double>(r), fits[r].d_hat, fits[r].sigma2_hat});
      }
      session.emit_table(t);
    };
  }

  {
    auto* sub = app.add_subcommand("simulate", "Exact Gaussian sample paths");
    o.sim_model.add(sub);
    sub->add_option("--n", o.sim_n)->check(CLI::PositiveNumber);
    sub->add_option("--reps", o.sim_reps)->check(CLI::PositiveNumber);
    add_seed(sub);
    sub->add_option("--out", o.sim_dir, "Output directory")->required();
    sub->add_option("--format", o.sim_format, "per-rep (one CSV per replicate) or long")
        ->check(CLI::IsMember({"per-rep", "long"}));
    sub->add_option("--method", o.sim_method)
        ->check(CLI::IsMember({"auto", "circulant", "innovations"}));
    actions["simulate"] = [&] {
      const LongMemoryModel m = o.sim_model.resolve();
      const std::size_t n = o.sim_n, reps = o.sim_reps;
      const AutocovSeq acov = exact_autocov(m, n);
      const SimulationMethod how = o.sim_method == "circulant"     ? SimulationMethod::CIRCULANT
                                   : o.sim_method == "innovations" ? SimulationMethod::INNOVATIONS
                                                                   : SimulationMethod::AUTO;
      std::vector<std::vector<double>> paths(reps);
      parallel_for(reps, [&](std::size_t rep) {
        SimulationPlan plan{acov, n, session.seed, replicate_id(0, rep), 0, how};
        const SamplePath p = gaussian_sample(plan);
        paths[rep].assign(p.values().begin(), p.values().end());
      });
      const std::filesystem::path dir = o.sim_dir;
      std::filesystem::create_directories(dir);
      if (o.sim_format == "long") {
        CsvTable t;
        t.header = {"rep", "index", "value"};
        for (std::size_t r = 0; r < reps; ++r) {
          for (std::size_t i = 0; i < n; ++i) {
            t.rows.push_back({static_cast<double>(r), static_cast<double>(i), paths[r][i]});
          }
        }
        t.comments = session.header();
        write_file_atomic(dir / "paths.csv", to_csv(t));
        return;
      }
      for (std::size_t r = 0; r < reps; ++r) {
        CsvTable t = index_value_table(paths[r]);
        t.comments = session.header();
        char name[32];
        std::snprintf(name, sizeof name, "rep_%05zu.csv", r);
        write_file_atomic(dir / name, to_csv(t));
      }
    };
  }

  {
    auto* sub = app.add_subcommand("predict", "One-step forecast from a window CSV");
    o.pred_model.add(sub);
    sub->add_option("--method", o.pred_method, "wk, ark, wk-plugin or ark-plugin")
        ->check(CLI::IsMember({"wk", "ark", "wk-plugin", "ark-plugin"}));
    sub->add_option("--k", o.pred_k)->check(CLI::PositiveNumber);
    sub->add_option("--window", o.pred_window, "CSV with a value column")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--train", o.pred_train, "Training CSV for the plug-in methods")
        ->check(CLI::ExistingFile);
    add_out(sub);
    actions["predict"] = [&] {
      const std::size_t k = o.pred_k;
      const SamplePath w(read_series_csv(o.pred_window));
      if (w.size() < k) throw UsageError("window holds fewer than k values");
      Forecast f;
      if (o.pred_method == "wk" || o.pred_method == "ark") {
        const LongMemoryModel m = o.pred_model.resolve();
        f = o.pred_method == "wk" ? wk_truncated_predict(ar_inf_coeffs(m, k), w.last(k))
                                  : ark_predict(durbin_levinson(exact_autocov(m, k), k), w);
      } else {
        if (o.pred_train.empty()) throw UsageError("--train is required for plug-in methods");
        const SamplePath tr(read_series_csv(o.pred_train));
        if (tr.size() < kMinTrainLength) throw UsageError("training series needs 64 or more values");
        f = o.pred_method == "wk-plugin" ? wk_plugin_predict(tr, w, k) : ark_plugin_predict(tr, w, k);
      }
      json j;
      j["method"] = to_string(f.method);
      j["k"] = f.order;
      j["value"] = f.value;
      session.emit(j.dump() + "\n");
    };
  }

  {
    auto* sub = app.add_subcommand("fit", "Whittle fit of FI(d) to a sample CSV");
    sub->add_option("--sample", o.fit_sample, "CSV with a value column")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--d-min", o.fit_min);
    sub->add_option("--d-max", o.fit_max);
    add_out(sub);
    actions["fit"] = [&] {
      if (!(o.fit_min > 0.0 && o.fit_max < 0.5 && o.fit_min < o.fit_max)) {
        throw UsageError("need 0 < d-min < d-max < 1/2");
      }
      const SamplePath s(read_series_csv(o.fit_sample));
      if (s.size() < 64) throw UsageError("sample needs 64 or more values");
      const WhittleFit w = whittle_fit(s, {o.fit_min, o.fit_max});
      json j;
      j["d_hat"] = w.d_hat;
      j["sigma2_hat"] = w.sigma2_hat;
      j["objective"] = w.objective;
      session.emit(j.dump() + "\n");
    };
  }

  {
    auto* sub = app.add_subcommand("total-error",
                                   "Approximation plus estimation error over a (k, T) grid");
    sub->add_option("--d", o.total_d);
    sub->add_option("--k-grid", o.total_k)->delimiter(',');
    sub->add_option("--T-grid", o.total_T)->delimiter(',');
    sub->add_option("--reps", o.total_reps)->check(CLI::PositiveNumber);
    add_seed(sub);
    add_out(sub);
    actions["total-error"] = [&] {
      check_d(o.total_d);
      check_grid(o.total_k, "--k-grid");
      check_grid(o.total_T, "--T-grid");
      if (o.total_k.front() == 0) throw UsageError("--k-grid must be positive");
      if (o.total_T.size() < 2) throw UsageError("--T-grid needs two or more points");
      const double d = o.total_d;
      const LongMemoryModel m = LongMemoryModel::fi(d);
      CsvTable t;
      t.header = {"k",            "T",             "trunc_excess", "ark_excess",
                  "wk_est_error", "ark_est_error", "wk_total",     "ark_total"};
      for (std::size_t k : o.total_k) {
        const double trunc = truncation_excess(m, k);
        const double ark = ark_excess(m, k);
        const ScalingReport wk = estimation_error_scaling(d, k, o.total_T, o.total_reps, session.seed);
        const ScalingReport yw = coeffcov_scaling(d, k, o.total_T, o.total_reps, session.seed);
        for (std::size_t i = 0; i < o.total_T.size(); ++i) {
          t.rows.push_back({static_cast<double>(k), static_cast<double>(o.total_T[i]), trunc, ark,
                            wk.estimate[i], yw.estimate[i], trunc + wk.estimate[i],
                            ark + yw.estimate[i]});
        }
      }
      session.emit_table(t);
    };
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (threads > 0) setenv("LONGMEM_THREADS", std::to_string(threads).c_str(), 1);

  const CLI::App* chosen = app.get_subcommands().front();
  session.command = chosen->get_name();
  session.config_hash = config_hash(chosen);
  try {
    actions.at(session.command)();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const StatisticalPowerError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }
  return kOk;
}

}  // namespace longmem::cli
