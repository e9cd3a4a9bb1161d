#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ratchet/bath.hpp"
#include "ratchet/config.hpp"
#include "ratchet/observables.hpp"
#include "ratchet/propagate.hpp"
#include "ratchet/sweep.hpp"
#include "ratchet/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ratchet;

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  int workers = 0;  // 0 leaves RATCHET_WORKERS alone
};

void add_common(CLI::App* sub, CommonArgs& args, bool with_workers) {
  sub->add_option("config", args.config_path, "config file (key = value lines)");
  sub->add_option("--set", args.overrides,
                  "override one key, e.g. --set beta=2 (repeatable)");
  sub->add_option("--out", args.out_dir, "output directory (default .)");
  if (with_workers)
    sub->add_option("--workers", args.workers, "worker pool width for sweep points");
}

RunSpec resolve(const CommonArgs& args) {
  std::string text;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + args.config_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  RunSpec spec = load_config(text);
  for (const std::string& kv : args.overrides) apply_override(spec, kv);
  if (args.workers > 0)
    setenv("RATCHET_WORKERS", std::to_string(args.workers).c_str(), 1);
  return spec;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void atomic_write(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os.write(content.data(), static_cast<std::streamsize>(content.size()))) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("cannot write '" + path.string() + "'");
    }
  }
  fs::rename(tmp, path);
}

json config_json(const RunSpec& spec) {
  json out = json::object();
  std::istringstream lines(serialize(spec));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

// every file-producing command leaves a manifest next to its outputs
void write_manifest(const fs::path& dir, const char* command,
                    const RunSpec& spec, json details,
                    std::vector<std::string> outputs) {
  json m;
  m["command"] = command;
  m["version"] = code_version;
  m["config"] = config_json(spec);
  m["outputs"] = std::move(outputs);
  m["details"] = std::move(details);
  atomic_write(dir / "manifest.json", m.dump(2) + "\n");
}

int cmd_bath(const CommonArgs& args, double tmax, int nt) {
  if (nt < 2) throw InvalidParameter("nt", "need at least 2 samples");
  if (!(tmax > 0)) throw InvalidParameter("tmax", "must be positive");
  const RunSpec spec = *validate(resolve(args));
  fs::create_directories(args.out_dir);

  std::ostringstream csv;
  csv << "t,psi,c\n";
  for (int i = 0; i < nt; ++i) {
    const double t = tmax * i / (nt - 1);
    csv << fmt(t) << ',' << fmt(psi(t, spec.system, spec.bath)) << ','
        << fmt(noise_kernel(t, spec.system, spec.bath, spec.bath.k_matsubara))
        << '\n';
  }
  atomic_write(fs::path(args.out_dir) / "bath.csv", csv.str());

  json details;
  details["tmax"] = tmax;
  details["nt"] = nt;
  write_manifest(args.out_dir, "bath", spec, details, {"bath.csv"});
  return 0;
}

int cmd_run(const CommonArgs& args) {
  const RunSpec spec = *validate(resolve(args));
  fs::create_directories(args.out_dir);

  EquilibrationReport rep;
  HierarchyState settled = equilibrate(spec, &rep);
  const PhaseGrid g = PhaseGrid::from_spec(spec);
  const Diagnostics after_equil = diagnostics(settled, g);
  DrivenResult res = run_driven(std::move(settled), spec);
  const Diagnostics after_drive = diagnostics(res.state, g);

  std::ostringstream cur;
  cur << "period,t_start,j,norm,negativity\n";
  for (const PeriodRecord& rec : res.periods)
    cur << rec.index << ',' << fmt(rec.t_start) << ',' << fmt(rec.j) << ','
        << fmt(rec.norm) << ',' << fmt(rec.negativity) << '\n';
  atomic_write(fs::path(args.out_dir) / "current.csv", cur.str());

  // one row after equilibration (its own clock), one after the driven stage
  std::ostringstream diag;
  diag << "t,norm,mean_p,mean_p2,negativity\n";
  for (const Diagnostics* d : {&after_equil, &after_drive})
    diag << fmt(d->t) << ',' << fmt(d->norm) << ',' << fmt(d->mean_p) << ','
         << fmt(d->mean_p2) << ',' << fmt(d->negativity) << '\n';
  atomic_write(fs::path(args.out_dir) / "diagnostics.csv", diag.str());

  const fs::path snap = fs::path(args.out_dir) / "final.snap";
  fs::path tmp = snap;
  tmp += ".tmp";
  export_snapshot(res.state, g, tmp.string());
  fs::rename(tmp, snap);

  json details;
  details["j"] = res.j;
  details["steady"] = res.steady;
  details["n_periods"] = res.periods.size();
  details["equilibration"] = {{"t_final", rep.t_final},
                              {"mean_p", rep.mean_p},
                              {"mean_p2", rep.mean_p2}};
  write_manifest(args.out_dir, "run", spec, details,
                 {"current.csv", "diagnostics.csv", "final.snap"});
  return 0;
}

int cmd_sweep_theta(const CommonArgs& args, int n_theta) {
  const RunSpec spec = resolve(args);
  const ThetaSweep sw = sweep_theta(spec, n_theta);
  fs::create_directories(args.out_dir);

  std::ostringstream th, per;
  write_theta_csv(th, sw);
  write_periods_csv(per, sw);
  atomic_write(fs::path(args.out_dir) / "theta.csv", th.str());
  atomic_write(fs::path(args.out_dir) / "periods.csv", per.str());

  json details;
  details["n_theta"] = n_theta;
  details["j_max"] = sw.fit.j_max;
  details["theta0"] = sw.fit.theta0;  // null when the signal is zero
  details["residual_rms"] = sw.fit.residual_rms;
  details["zero_signal"] = sw.fit.zero_signal;
  details["n_converged"] = sw.n_converged;
  details["workers"] = worker_count();
  write_manifest(args.out_dir, "sweep-theta", spec, details,
                 {"theta.csv", "periods.csv"});
  return 0;
}

int cmd_sweep_scalar(const CommonArgs& args, SweepAxis axis,
                     const std::vector<double>& values, int n_theta) {
  const RunSpec spec = resolve(args);
  const auto rows = sweep_scalar(spec, axis, values, n_theta);
  fs::create_directories(args.out_dir);

  std::ostringstream table;
  write_sweep_csv(table, axis, rows);
  atomic_write(fs::path(args.out_dir) / "sweep.csv", table.str());

  std::vector<std::string> outputs{"sweep.csv"};
  json row_summaries = json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    json r;
    r["value"] = rows[k].axis_value;
    r["failed"] = rows[k].failed;
    if (rows[k].failed) {
      r["error"] = rows[k].error;
    } else {
      r["j_max"] = rows[k].sweep.fit.j_max;
      r["theta0"] = rows[k].sweep.fit.theta0;
      r["n_converged"] = rows[k].sweep.n_converged;
      std::ostringstream per;
      write_periods_csv(per, rows[k].sweep);
      const std::string name = "periods_" + std::to_string(k) + ".csv";
      atomic_write(fs::path(args.out_dir) / name, per.str());
      outputs.push_back(name);
      r["periods"] = name;
    }
    row_summaries.push_back(std::move(r));
  }

  json details;
  details["axis"] = std::string(to_string(axis));
  details["values"] = values;
  details["n_theta"] = n_theta;
  details["rows"] = std::move(row_summaries);
  details["workers"] = worker_count();
  const std::string command = "sweep-" + std::string(to_string(axis));
  write_manifest(args.out_dir, command.c_str(), spec, details, outputs);
  return 0;
}

int cmd_snapshot_dump(const std::string& file) {
  const Snapshot snap = import_snapshot(file);
  const PhaseGrid g(snap.nq, snap.np, snap.dp);
  std::printf("nq %d\nnp %d\n", snap.nq, snap.np);
  std::printf("dq %.17g\ndp %.17g\nt %.17g\n", snap.dq, snap.dp, snap.t);
  std::printf("norm %.17g\n", integrate(snap.field, g));
  std::printf("mean_p %.17g\n", integrate(snap.field, g, Weight::p));
  std::printf("mean_p2 %.17g\n", integrate(snap.field, g, Weight::p2));
  std::printf("negativity %.17g\n", negative_volume(snap.field, g));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-space ratchet dynamics: bath kernels, driven runs, sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", code_version);

  CommonArgs bath_args;
  double bath_beta = -1.0, bath_gamma = -1.0, bath_tmax = 5.0;
  int bath_nt = 501;
  CLI::App* bath = app.add_subcommand("bath", "tabulate Psi(t) and C(t)");
  add_common(bath, bath_args, false);
  bath->add_option("--beta", bath_beta, "inverse temperature shortcut");
  bath->add_option("--gamma", bath_gamma, "cutoff frequency shortcut");
  bath->add_option("--tmax", bath_tmax, "last sample time");
  bath->add_option("--nt", bath_nt, "sample count");

  CommonArgs run_args;
  CLI::App* run = app.add_subcommand("run", "equilibrate, drive, record current");
  add_common(run, run_args, false);

  CommonArgs th_args;
  int th_n = 8;
  CLI::App* th = app.add_subcommand("sweep-theta", "fit J(theta) over one phase grid");
  add_common(th, th_args, true);
  th->add_option("--ntheta", th_n, "number of phases (>= 4)");

  CommonArgs beta_args;
  std::vector<double> beta_values;
  int beta_n = 8;
  CLI::App* sbeta = app.add_subcommand("sweep-beta", "J_max and theta0 per beta");
  add_common(sbeta, beta_args, true);
  sbeta->add_option("--values", beta_values, "comma-separated beta values")
      ->delimiter(',')
      ->required();
  sbeta->add_option("--ntheta", beta_n, "phases per value (>= 4)");

  CommonArgs zeta_args;
  std::vector<double> zeta_values;
  int zeta_n = 8;
  CLI::App* szeta = app.add_subcommand("sweep-zeta", "J_max and theta0 per zeta");
  add_common(szeta, zeta_args, true);
  szeta->add_option("--values", zeta_values, "comma-separated zeta values")
      ->delimiter(',')
      ->required();
  szeta->add_option("--ntheta", zeta_n, "phases per value (>= 4)");

  std::string dump_file;
  CLI::App* dump = app.add_subcommand("snapshot-dump", "print a snapshot's header and moments");
  dump->add_option("file", dump_file, "snapshot file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (bath->parsed()) {
      if (bath_beta > 0) bath_args.overrides.push_back("beta=" + fmt(bath_beta));
      if (bath_gamma > 0)
        bath_args.overrides.push_back("gamma=" + fmt(bath_gamma));
      return cmd_bath(bath_args, bath_tmax, bath_nt);
    }
    if (run->parsed()) return cmd_run(run_args);
    if (th->parsed()) return cmd_sweep_theta(th_args, th_n);
    if (sbeta->parsed())
      return cmd_sweep_scalar(beta_args, SweepAxis::beta, beta_values, beta_n);
    if (szeta->parsed())
      return cmd_sweep_scalar(zeta_args, SweepAxis::zeta, zeta_values, zeta_n);
    if (dump->parsed()) return cmd_snapshot_dump(dump_file);
  } catch (const NumericalBlowup& e) {
    std::fprintf(stderr, "ratchet: %s\n", e.what());
    return 2;
  } catch (const EquilibrationTimeout& e) {
    std::fprintf(stderr, "ratchet: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "ratchet: %s\n", e.what());
    return 2;
  } catch (const FormatError& e) {
    std::fprintf(stderr, "ratchet: %s\n", e.what());
    return 2;
  } catch (const DegenerateSampling& e) {
    // only reachable when enough sweep points died at runtime
    std::fprintf(stderr, "ratchet: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "ratchet: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ratchet: %s\n", e.what());
    return 2;
  }
  return 0;
}
