// snnfp8 command-line front end.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snnfp8/adder.hpp"
#include "snnfp8/corner_suite.hpp"
#include "snnfp8/gates.hpp"
#include "snnfp8/harness.hpp"
#include "snnfp8/io.hpp"
#include "snnfp8/linear.hpp"
#include "snnfp8/multiplier.hpp"
#include "snnfp8/netlist.hpp"
#include "snnfp8/report.hpp"
#include "snnfp8/robustness.hpp"

namespace {

using namespace snnfp8;

struct Globals {
  std::uint64_t seed = 0;
  double beta = 1.0;
  double sigma = 0.0;
  std::string saturate = "on";
  bool fast_check = false;
  std::string out;
  std::string format = "json";
  unsigned threads = 0;

  SimConfig config() const {
    SimConfig cfg;
    cfg.beta = beta;
    cfg.sigma = sigma;
    cfg.seed = seed;
    cfg.mode = (beta != 1.0 || sigma > 0.0) ? DynamicsMode::LIF : DynamicsMode::IdealIF;
    validate(cfg);
    return cfg;
  }
  OverflowPolicy overflow() const { return saturate == "on" ? OverflowPolicy::Saturate : OverflowPolicy::NaN; }
};

// Writes to <out>/<stem>.<ext> when --out is set, else stdout.
void emit(const Globals& g, const std::string& stem, const std::string& json, const std::string& csv) {
  const bool as_csv = g.format == "csv";
  const std::string& body = as_csv ? csv : json;
  if (g.out.empty()) {
    std::cout << body;
    return;
  }
  const std::string path = g.out + "/" + stem + (as_csv ? ".csv" : ".json");
  write_file_atomic(path, body);
  std::cerr << "wrote " << path << "\n";
}

void print_sweep_summary(const SweepReport& r) {
  std::fprintf(stderr, "%s: %zu/%zu passed (%zu failures), sparsity %.4f, %zu neurons, depth %u, %.2fs\n",
               r.campaign.c_str(), r.passed, r.total, r.failure_count, r.mean_sparsity, r.neurons, r.depth,
               r.wall_seconds);
  for (const auto& row : r.rows)
    std::fprintf(stderr, "  %-40s %8zu / %-8zu %.2f%%\n", row.label.c_str(), row.passed, row.total,
                 100.0 * row.pass_rate());
  for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) {
    const auto& f = r.failures[i];
    std::fprintf(stderr, "  mismatch %s op %s: got %s expected %s\n", to_hex(f.a).c_str(), to_hex(f.b).c_str(),
                 to_hex(f.got).c_str(), to_hex(f.expected).c_str());
  }
}

std::vector<std::size_t> default_d_list() {
  std::vector<std::size_t> d;
  for (std::size_t i = 1; i <= 64; ++i) d.push_back(i);
  d.push_back(256);
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spiking FP8 arithmetic simulator and verification harness"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "PRNG seed");
  app.add_option("--beta", g.beta, "Membrane retention factor in (0,1]");
  app.add_option("--sigma", g.sigma, "Gaussian current noise std-dev");
  app.add_option("--saturate", g.saturate, "Saturate on overflow (off: NaN)")->check(CLI::IsMember({"on", "off"}));
  app.add_flag("--fast-check", g.fast_check, "Use oracle ops in tensor-level runs");
  app.add_option("--out", g.out, "Output directory (default: stdout)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

  int status = 0;

  auto* mul = app.add_subcommand("verify-mul", "Exhaustive multiplier sweep against the oracle");
  bool no_sticky = false;
  mul->add_flag("--disable-sticky-extra", no_sticky, "Drop the boundary-bit correction gates (debug)");
  mul->callback([&] {
    VerifyOptions o;
    o.config = g.config();
    o.overflow = g.overflow();
    o.sticky_extra = !no_sticky;
    o.threads = g.threads;
    const SweepReport r = verify_mul(o);
    print_sweep_summary(r);
    emit(g, "verify_mul", sweep_report_json(r), sweep_report_csv(r));
    if (!r.ok()) status = 1;
  });

  auto* add = app.add_subcommand("verify-add", "Corner suite, random trials and exhaustive adder sweep");
  std::size_t random_trials = 100;
  std::string suite_path, write_suite;
  bool skip_exhaustive = false;
  add->add_option("--random-trials", random_trials, "Seeded random pairs");
  add->add_option("--corner-suite", suite_path, "Corner suite JSON file")->check(CLI::ExistingFile);
  add->add_flag("--no-exhaustive", skip_exhaustive, "Skip the exhaustive pair sweep");
  add->add_option("--write-corner-suite", write_suite, "Write the built-in corner suite and exit");
  add->callback([&] {
    if (!write_suite.empty()) {
      write_file_atomic(write_suite, corner_suite_json(adder_corner_suite()));
      return;
    }
    VerifyOptions o;
    o.config = g.config();
    o.overflow = g.overflow();
    o.threads = g.threads;
    o.random_trials = random_trials;
    o.random_seed = g.seed;
    o.exhaustive = !skip_exhaustive;
    if (!suite_path.empty()) o.corner_suite = parse_corner_suite(read_file(suite_path));
    const SweepReport r = verify_add(o);
    print_sweep_summary(r);
    emit(g, "verify_add", sweep_report_json(r), sweep_report_csv(r));
    if (!r.ok()) status = 1;
  });

  auto* scan = app.add_subcommand("scan", "Leakage and noise robustness scans");
  std::string scan_config, scan_kind = "both";
  std::optional<std::size_t> scan_trials;
  scan->add_option("--config", scan_config, "Scan spec JSON")->check(CLI::ExistingFile);
  scan->add_option("--kind", scan_kind, "Which scan to run")->check(CLI::IsMember({"beta", "sigma", "both"}));
  scan->add_option("--trials", scan_trials, "Override trials per gate row");
  scan->callback([&] {
    ScanSpec spec = scan_config.empty() ? ScanSpec{} : parse_scan_spec(read_file(scan_config));
    if (scan_trials) spec.trials = *scan_trials;
    if (app.get_option("--seed")->count()) spec.seed = g.seed;
    if (app.get_option("--threads")->count()) spec.threads = g.threads;
    validate(spec);
    if (scan_kind != "sigma") {
      const ScanResult r = beta_scan(spec);
      emit(g, "scan_beta", scan_result_json(r), scan_result_csv(r));
    }
    if (scan_kind != "beta") {
      const ScanResult r = sigma_scan(spec);
      for (const auto& [t, s] : r.first_failure_sigma)
        std::fprintf(stderr, "first failure sigma %-8s %s\n", std::string(to_string(t)).c_str(),
                     s ? std::to_string(*s).c_str() : "none");
      emit(g, "scan_sigma", scan_result_json(r), scan_result_csv(r));
    }
  });

  auto* bench = app.add_subcommand("linear-bench", "Tree vs sequential latency model");
  std::vector<std::size_t> d_list;
  std::size_t audit_d = 0, audit_rows = 16;
  bench->add_option("--d-in", d_list, "D_in values (default 1..64 and 256)");
  bench->add_option("--audit", audit_d, "Also run a tree-vs-sequential audit at this D_in");
  bench->add_option("--audit-rows", audit_rows, "Batch rows for the audit");
  bench->callback([&] {
    if (d_list.empty()) d_list = default_d_list();
    const LatencyModel model = LatencyModel::from_circuits();
    std::vector<LatencyReport> reports;
    for (std::size_t d : d_list) {
      if (d == 0) throw CLI::ValidationError("--d-in", "D_in must be >= 1");
      reports.push_back(latency_report(d, model));
    }
    for (const auto& r : reports)
      if (r.d_in == 256 || d_list.size() <= 8)
        std::fprintf(stderr, "D_in=%zu add levels %u, unit %zu vs %zu (%.2fx), depth %zu vs %zu (%.2fx)\n", r.d_in,
                     r.add_levels, r.unit_tree, r.unit_sequential, r.unit_speedup, r.depth_tree,
                     r.depth_sequential, r.depth_speedup);
    emit(g, "linear_bench", latency_report_json(reports), latency_report_csv(reports));
    if (audit_d > 0) {
      const Fp8Tensor x = random_tensor(audit_rows, audit_d, g.seed, 4.0);
      const Fp8Tensor w = random_tensor(4, audit_d, g.seed + 1, 4.0);
      const SpikingArithmetic spiking(g.config(), g.overflow());
      const OracleArithmetic oracle(g.overflow());
      const Fp8Arithmetic& ops = g.fast_check ? static_cast<const Fp8Arithmetic&>(oracle) : spiking;
      const AssociativityAudit a = nonassociativity_audit(x, w, ops, g.threads);
      std::fprintf(stderr, "audit D_in=%zu (%s): tree==sequential %.2f%% of %zu elements, max %d ULP\n", audit_d,
                   ops.name().c_str(), 100.0 * a.match_rate(), a.elements, a.max_ulp);
    }
  });

  auto* mlp = app.add_subcommand("mlp-demo", "Forward-only MLP with spiking linear layers");
  MlpDemoOptions mo;
  std::string weights, idx_images, idx_labels, write_weights;
  mlp->add_option("--samples", mo.samples, "Number of samples");
  mlp->add_option("--weights", weights, "Weight file (default: seeded synthetic)");
  mlp->add_option("--idx-images", idx_images, "IDX image file");
  mlp->add_option("--idx-labels", idx_labels, "IDX label file");
  mlp->add_option("--write-weights", write_weights, "Write the seeded synthetic weights and exit");
  mlp->callback([&] {
    const std::uint64_t seed = app.get_option("--seed")->count() ? g.seed : mo.seed;
    if (!write_weights.empty()) {
      write_file_atomic(write_weights, mlp_weights_json(synthetic_mlp_weights(seed), seed));
      return;
    }
    mo.seed = seed;
    if (!weights.empty()) mo.weights_path = weights;
    if (!idx_images.empty()) mo.idx_images = idx_images;
    if (!idx_labels.empty()) mo.idx_labels = idx_labels;
    mo.fast_check = g.fast_check;
    mo.config = g.config();
    mo.overflow = g.overflow();
    mo.threads = g.threads;
    const MlpDemoReport r = run_mlp_demo(mo);
    for (const auto& n : r.notes) std::fprintf(stderr, "%s\n", n.c_str());
    std::fprintf(stderr, "mlp: %zu samples (%s, %s), argmax agreement %.2f%%, tree vs sequential logits %.2f%%\n",
                 r.samples, r.data_source.c_str(), r.arithmetic.c_str(), 100.0 * r.argmax_agreement,
                 100.0 * r.tree_vs_sequential_match);
    emit(g, "mlp_demo", mlp_report_json(r), mlp_report_csv(r));
    if (!r.ok()) status = 1;
  });

  auto* exp = app.add_subcommand("export-netlist", "Write a unit's netlist as JSON and Graphviz text");
  std::string unit;
  exp->add_option("unit", unit, "Gate kind (and, or, not, xor, mux, half_adder, full_adder), mul or add")
      ->required();
  exp->callback([&] {
    Circuit circuit = [&] {
      if (unit == "mul") return build_multiplier({g.overflow(), true});
      if (unit == "add") return build_spatial_adder({g.overflow()});
      return build_gate(parse_gate_kind(unit)).circuit;
    }();
    const CircuitStats st = circuit_stats(circuit);
    std::fprintf(stderr, "%s: %zu neurons, %zu synapses, depth %u\n", unit.c_str(), st.neurons, st.synapses,
                 st.depth);
    const std::string json = netlist_json(circuit).dump(2) + "\n";
    if (g.out.empty()) {
      std::cout << json;
      return;
    }
    write_file_atomic(g.out + "/" + unit + ".netlist.json", json);
    write_file_atomic(g.out + "/" + unit + ".dot", netlist_dot(circuit, unit));
    std::cerr << "wrote " << g.out << "/" << unit << ".netlist.json and .dot\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
