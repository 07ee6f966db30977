#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "qsl/error.hpp"
#include "qsl/experiment.hpp"
#include "qsl/text_io.hpp"
#include "report_json.hpp"

namespace qsl::cli {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void print_measures(std::ostream& out, const MeasureReport& m) {
  out << "tangle = " << fmt(m.tangle) << '\n'
      << "linear_entropy = " << fmt(m.linear_entropy) << '\n'
      << "purity = " << fmt(m.purity) << '\n'
      << "chsh_max = " << fmt(m.chsh_max) << '\n';
}

void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-")
    out << content;
  else
    write_text_file(path, content);
}

struct SynthArgs {
  std::string config;
  std::string rho_out;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  const ExperimentConfig cfg = parse_config(read_text_file(a.config));
  const DensityMatrix rho = synthesize(cfg);
  if (!a.rho_out.empty()) write_text_file(a.rho_out, serialize_density(rho));
  out << "# " << cfg.label << " (true state)\n" << serialize_density(rho);
  print_measures(out, measure(rho));
  return kOk;
}

struct TomoArgs {
  std::string counts;
  std::string method = "mle";
  std::string rho_out;
  int mc_trials = 0;
  std::optional<std::uint64_t> seed;
  double settings_sigma = 0.25;
};

int cmd_tomo(const TomoArgs& a, std::ostream& out) {
  const ProjectorSet& set = standard_projectors();
  const CountRecord rec = parse_counts(read_text_file(a.counts), set);
  if (a.mc_trials > 0 && !a.seed) throw ParseError("--mc-trials samples counts and requires --seed");

  const ReconstructionResult res = a.method == "linear" ? linear_inversion(rec, set) : mle_reconstruct(rec, set);
  if (!a.rho_out.empty()) write_text_file(a.rho_out, serialize_density(res.matrix));
  out << "# reconstruction (" << a.method << ")\n" << serialize_density(res.matrix);
  out << "# " << res.report.describe() << '\n';
  if (res.method == Method::kMle)
    out << "log_likelihood = " << fmt(res.log_likelihood) << '\n' << "iterations = " << res.iterations << '\n';
  if (!res.physical()) {
    out << "physical = false\n";
    return kOk;
  }
  const DensityMatrix rho = res.density();
  print_measures(out, measure(rho));

  if (a.mc_trials > 0) {
    // Flux per setting: recorded metadata, else the H/V block, which sums to N.
    double n = rec.n_per_basis;
    if (!(n > 0.0))
      for (const char* label : {"HH", "HV", "VH", "VV"}) n += static_cast<double>(rec.counts[set.index_of(label)]);
    UncertaintyConfig u;
    u.n_mc = a.mc_trials;
    u.seed = *a.seed;
    u.settings_sigma = a.settings_sigma;
    const MonteCarloSummary mc = monte_carlo_summary(rho, set, n, u);
    out << "linear_entropy_err = " << fmt(mc.point.s_l_err) << '\n'
        << "tangle_err = " << fmt(mc.point.t_err) << '\n'
        << "mc_failures = " << mc.failures << '\n';
  }
  return kOk;
}

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 0;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  if (!a.seed) throw ParseError("run requires --seed");
  ExperimentConfig cfg = parse_config(read_text_file(a.config));
  cfg.tomography.seed = *a.seed;
  if (cfg.uncertainty) cfg.uncertainty->threads = a.threads;
  const ExperimentReport rep = run_experiment(cfg);
  write_or_print(a.out, dump_report(rep), out);
  return kOk;
}

struct PlaneArgs {
  std::vector<std::string> reports;
  int resolution = 101;
  std::string out_dir;
};

int cmd_plane(const PlaneArgs& a, std::ostream& out) {
  std::vector<PlanePoint> points;
  for (const auto& path : a.reports) points.push_back(point_from_report_text(read_text_file(path)));
  const PlaneDataset ds = emit_plane(std::move(points), a.resolution, a.out_dir);
  out << "wrote " << ds.points.size() << " points and " << a.resolution << "-sample boundaries to " << a.out_dir
      << '\n';
  return kOk;
}

int cmd_boundaries(int resolution, const std::string& dir, std::ostream& out) {
  emit_plane(std::vector<PlanePoint>{}, resolution, dir);
  out << "wrote " << resolution << "-sample boundaries to " << dir << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qsl: two-photon polarisation state synthesis, tomography and tangle/entropy analysis"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Print the synthesized (true) state and its measures");
  s->add_option("--config", synth.config, "Experiment config file")->required();
  s->add_option("--rho-out", synth.rho_out, "Also write the density matrix here");

  TomoArgs tomo;
  auto* t = app.add_subcommand("tomo", "Reconstruct a state from a 16-line counts file");
  t->add_option("--counts", tomo.counts, "Counts file (LABEL<TAB>COUNT)")->required();
  t->add_option("--method", tomo.method, "mle or linear")->check(CLI::IsMember({"mle", "linear"}));
  t->add_option("--rho-out", tomo.rho_out, "Write the reconstructed density matrix here");
  t->add_option("--mc-trials", tomo.mc_trials, "Monte-Carlo trials for error bars (needs --seed)")
      ->check(CLI::NonNegativeNumber);
  t->add_option("--seed", tomo.seed, "Seed for Monte-Carlo resampling");
  t->add_option("--settings-sigma", tomo.settings_sigma, "Analyzer angle accuracy in degrees")
      ->check(CLI::NonNegativeNumber);

  RunArgs runa;
  auto* r = app.add_subcommand("run", "Full pipeline from an experiment config; writes a JSON report");
  r->add_option("--config", runa.config, "Experiment config file")->required();
  r->add_option("--seed", runa.seed, "Seed for all sampling (required)");
  r->add_option("--out", runa.out, "Report path (default: stdout)");
  r->add_option("--threads", runa.threads, "Monte-Carlo worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);

  PlaneArgs plane;
  auto* p = app.add_subcommand("plane", "Aggregate reports into tangle/entropy plot data");
  p->add_option("--reports", plane.reports, "Report files written by 'run'");
  p->add_option("--resolution", plane.resolution, "Boundary samples")->check(CLI::Range(2, 1000000));
  p->add_option("--out-dir", plane.out_dir, "Output directory")->required();

  int bres = 101;
  std::string bdir;
  auto* b = app.add_subcommand("boundaries", "Emit the Werner and maximal boundary curves");
  b->add_option("--resolution", bres, "Boundary samples")->check(CLI::Range(2, 1000000));
  b->add_option("--out-dir", bdir, "Output directory")->required();

  std::string template_out;
  auto* tmpl = app.add_subcommand("template", "Print a commented experiment config");
  tmpl->add_option("--out", template_out, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*s) return cmd_synth(synth, out);
    if (*t) return cmd_tomo(tomo, out);
    if (*r) return cmd_run(runa, out);
    if (*p) return cmd_plane(plane, out);
    if (*b) return cmd_boundaries(bres, bdir, out);
    if (*tmpl) {
      write_or_print(template_out, config_template(), out);
      return kOk;
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvariantViolation& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qsl::cli
