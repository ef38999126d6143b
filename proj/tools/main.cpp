// Command-line front end: lattice inspection, sampling runs, scans, power-law
// fits, and exact coherent-vs-twirled syndrome comparisons on small supports.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loopsim/dense_oracle.hpp"
#include "loopsim/graph.hpp"
#include "loopsim/lattice.hpp"
#include "loopsim/metrics.hpp"
#include "loopsim/model.hpp"
#include "loopsim/pauli.hpp"
#include "loopsim/runner.hpp"
#include "loopsim/sampling.hpp"
#include "loopsim/twirl.hpp"

namespace {

using namespace loopsim;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

int cmd_lattice_info(int nh, int nv) {
  const CodeLattice lat({nh, nv});
  std::cout << "shape: nh=" << nh << " nv=" << nv << "\n";
  std::cout << "qudits: " << lat.qudit_count() << "\n";
  for (Side side : {Side::Primal, Side::Dual}) {
    const char* name = side == Side::Primal ? "primal" : "dual";
    const ElementaryLoops loops = lat.elementary_loops(side);
    std::cout << name << ": edges=" << lat.edge_count(side)
              << " horizontals=" << lat.horizontal_count(side)
              << " verticals=" << lat.vertical_count(side)
              << " real_nodes=" << lat.real_node_count(side)
              << " three_edge_loops=" << loops.three_edge.size()
              << " four_edge_loops=" << loops.four_edge.size() << "\n";
  }
  return 0;
}

int cmd_sample(int nh, int nv, double p, long samples, std::uint64_t seed, int workers,
               const std::string& per_sample_out) {
  const CodeLattice lat({nh, nv});
  if (!per_sample_out.empty()) {
    std::ofstream f(per_sample_out, std::ios::trunc);
    if (!f) {
      std::cerr << "error: cannot open " << per_sample_out << "\n";
      return 3;
    }
    f << "sample_index,n_err,n_loop_qudits,has_loop,L_max,N_max,pattern\n";
    std::vector<SampleRecord> records;
    records.reserve(static_cast<std::size_t>(samples));
    for (long i = 0; i < samples; ++i) {
      const ErrorPattern pattern =
          sample_pattern(lat, p, SeedSpec{seed, static_cast<std::uint64_t>(i)});
      SampleRecord r = loop_metrics(lat, pattern);
      r.sample_index = static_cast<std::uint64_t>(i);
      records.push_back(r);
      f << i << ',' << r.n_err << ',' << r.n_loop_qudits << ',' << (r.has_loop ? 1 : 0) << ','
        << r.l_max << ',' << r.n_max << ",\"" << serialize_pattern(pattern) << "\"\n";
    }
    if (!f) {
      std::cerr << "error: write to " << per_sample_out << " failed\n";
      return 3;
    }
    ResultRow row;
    row.record = aggregate(records);
    row.record.nh = nh;
    row.record.nv = nv;
    row.record.p = p;
    row.record.master_seed = seed;
    row.model_eq3 = p_loop_edge_eq3(nh, nv, p);
    row.model_eq3_powerlaw = p_loop_edge_corrected(nh, nv, p, CorrectionVariant::PowerLaw);
    row.model_eq3_sixloop = p_loop_edge_corrected(nh, nv, p, CorrectionVariant::SixLoop);
    row.model_pntw = p_not_pauli_twirled(nh, nv, p);
    std::cout << kScanCsvHeader << "\n" << format_csv_row(row) << "\n";
    return 0;
  }
  const ResultRow row = evaluate_point(lat, p, samples, seed, workers);
  std::cout << kScanCsvHeader << "\n" << format_csv_row(row) << "\n";
  return 0;
}

// Accepts either a table with a header naming the two columns, or a bare
// numeric two-column file read as (x, y).
int cmd_fit(const std::string& path, std::string x_col, std::string y_col, bool subtract_boundary,
            int nh, int nv) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "error: cannot open " << path << "\n";
    return 3;
  }
  std::vector<std::pair<double, double>> pts;
  std::string line;
  int xi = 0, yi = 1;
  bool have_cols = false;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!have_cols) {
      int xfound = -1, yfound = -1;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c] == x_col) xfound = static_cast<int>(c);
        if (cells[c] == y_col) yfound = static_cast<int>(c);
      }
      have_cols = true;
      if (xfound >= 0 && yfound >= 0) {
        xi = xfound;
        yi = yfound;
        continue;  // header row
      }
      char* end = nullptr;
      std::strtod(cells[0].c_str(), &end);
      if (end == cells[0].c_str()) {
        std::cerr << "error: columns " << x_col << "/" << y_col << " not found in " << path
                  << "\n";
        return 2;
      }
      xi = 0;
      yi = 1;  // headerless two-column data
    }
    if (static_cast<int>(cells.size()) <= std::max(xi, yi)) continue;
    pts.emplace_back(std::stod(cells[xi]), std::stod(cells[yi]));
  }
  int dropped = 0;
  if (subtract_boundary) {
    const double c = 3.0 * (nh + nv) / (static_cast<double>(nh) * nv);
    std::vector<std::pair<double, double>> bulk;
    for (auto& [x, y] : pts) {
      const double yb = y - c * x * x;
      if (yb > 0) {
        bulk.emplace_back(x, yb);
      } else {
        ++dropped;
      }
    }
    if (dropped > 0)
      std::cerr << "warning: dropped " << dropped
                << " points that are non-positive after boundary subtraction\n";
    pts.swap(bulk);
  }
  const FitResult fit = loglog_fit(pts);
  std::cout << "n_points=" << fit.n_points << "\n";
  std::cout << "slope=" << fmt(fit.slope) << "\n";
  std::cout << "coefficient=" << fmt(fit.coefficient) << "\n";
  std::cout << "intercept=" << fmt(fit.intercept) << "\n";
  std::cout << "rss=" << fmt(fit.rss) << "\n";
  return 0;
}

ErrorModel load_matrix_model(const std::string& path, int d) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string all((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  for (char& c : all)
    if (c == ',') c = ' ';
  std::stringstream ss(all);
  std::vector<double> nums;
  double v;
  while (ss >> v) nums.push_back(v);
  const std::size_t need = 2 * static_cast<std::size_t>(d) * d;
  if (nums.size() != need)
    throw std::invalid_argument("matrix file must hold " + std::to_string(need) +
                                " numbers (re im pairs, row-major), got " +
                                std::to_string(nums.size()));
  CMat m(static_cast<std::size_t>(d) * d);
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = cplx{nums[2 * k], nums[2 * k + 1]};
  return model_from_matrix(m, d);
}

void print_syndrome(const SyndromeMap& map, const SyndromeKey& key) {
  std::cout << "[";
  for (std::size_t r = 0; r < map.primal_rows.size(); ++r)
    std::cout << (r ? " " : "") << key_get(key, static_cast<int>(r));
  std::cout << " |";
  for (std::size_t r = 0; r < map.dual_rows.size(); ++r)
    std::cout << ' ' << key_get(key, static_cast<int>(map.primal_rows.size() + r));
  std::cout << "]";
}

int cmd_twirl_verify(int nh, int nv, int d, const std::string& pattern_file,
                     const std::string& qudit_list, const std::string& unitary,
                     const std::string& matrix_file, double theta, int power,
                     std::uint64_t unitary_seed, bool oracle, int max_qudits, long max_terms) {
  const CodeLattice lat({nh, nv});
  std::vector<int> qudits;
  if (!pattern_file.empty()) {
    std::ifstream f(pattern_file);
    if (!f) {
      std::cerr << "error: cannot open " << pattern_file << "\n";
      return 3;
    }
    std::string line;
    std::getline(f, line);
    qudits = parse_pattern_line(line);
  } else {
    qudits = parse_pattern_line(qudit_list);
  }
  const ErrorPattern pattern = pattern_from_list(lat, qudits);

  ErrorModel model;
  if (!matrix_file.empty()) {
    model = load_matrix_model(matrix_file, d);
  } else if (unitary == "identity") {
    model = make_identity_model(d);
  } else if (unitary == "shift") {
    model = make_shift_model(d, power);
  } else if (unitary == "phase") {
    model = make_phase_model(d, power);
  } else if (unitary == "rotation") {
    model = make_rotation_model(d, theta);
  } else if (unitary == "random") {
    model = make_random_unitary_model(d, unitary_seed);
  } else {
    std::cerr << "error: unknown unitary " << unitary << "\n";
    return 2;
  }

  ExpansionLimits limits;
  limits.max_qudits = max_qudits;
  limits.max_terms = static_cast<std::size_t>(max_terms);
  const Expansion ex = expand_error(model, pattern, limits);
  const std::vector<std::uint32_t> support = ex.support();
  const SyndromeMap map = build_syndrome_map(lat, support, d);

  std::cout << "support: " << support.size() << " qudits, " << ex.term_count() << " terms\n";
  std::cout << "checks: " << map.primal_rows.size() << " vertex + " << map.dual_rows.size()
            << " plaquette\n";
  const KernelInfo kernel = kernel_and_windings(map, d);
  std::cout << "kernel: size=" << kernel.size << " generators=" << kernel.generators.size();
  for (const KernelGenerator& g : kernel.generators)
    std::cout << " (" << (g.side == Side::Primal ? "vertex" : "plaquette")
              << " winding=" << g.winding << ")";
  std::cout << "\n";

  const SyndromeDistribution coh = coherent_distribution(ex, map);
  const SyndromeDistribution pta = pta_distribution(ex, map);

  std::cout << "syndrome  coherent  twirled\n";
  std::size_t i = 0, j = 0;
  while (i < coh.probs.size() || j < pta.probs.size()) {
    SyndromeKey key;
    double pc = 0, pt = 0;
    const bool take_coh =
        j >= pta.probs.size() ||
        (i < coh.probs.size() && !(pta.probs[j].first < coh.probs[i].first));
    const bool take_pta =
        i >= coh.probs.size() ||
        (j < pta.probs.size() && !(coh.probs[i].first < pta.probs[j].first));
    if (take_coh) {
      key = coh.probs[i].first;
      pc = coh.probs[i++].second;
    }
    if (take_pta) {
      key = pta.probs[j].first;
      pt = pta.probs[j++].second;
    }
    print_syndrome(map, key);
    std::cout << "  " << fmt(pc) << "  " << fmt(pt) << "\n";
  }
  std::cout << "total: coherent=" << fmt(coh.total) << " twirled=" << fmt(pta.total) << "\n";
  std::cout << "tv_distance=" << fmt(tv_distance(coh, pta)) << "\n";

  if (oracle) {
    const SyndromeDistribution ref = oracle_distribution(lat, model, pattern, map);
    double max_diff = 0;
    std::size_t a = 0, b = 0;
    while (a < coh.probs.size() || b < ref.probs.size()) {
      if (b >= ref.probs.size() ||
          (a < coh.probs.size() && coh.probs[a].first < ref.probs[b].first)) {
        max_diff = std::max(max_diff, std::abs(coh.probs[a++].second));
      } else if (a >= coh.probs.size() || ref.probs[b].first < coh.probs[a].first) {
        max_diff = std::max(max_diff, std::abs(ref.probs[b++].second));
      } else {
        max_diff = std::max(max_diff, std::abs(coh.probs[a++].second - ref.probs[b++].second));
      }
    }
    std::cout << "oracle: total=" << fmt(ref.total) << " max_abs_diff=" << fmt(max_diff) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loop statistics and coherent syndrome analysis for planar qudit codes"};
  app.set_config("--config", "", "key=value config file; flags override");
  app.require_subcommand(1);

  // lattice-info
  auto* info = app.add_subcommand("lattice-info", "print lattice geometry counts");
  int info_nh = 4, info_nv = 5;
  info->add_option("--nh", info_nh, "edges per primal row")->required();
  info->add_option("--nv", info_nv, "nodes per primal column")->required();

  // sample
  auto* sample = app.add_subcommand("sample", "sample one point and print its aggregate row");
  int s_nh = 2, s_nv = 2, s_workers = 1;
  double s_p = 0.1;
  long s_samples = 1000;
  std::uint64_t s_seed = 1;
  std::string s_per_sample;
  sample->add_option("--nh", s_nh)->required();
  sample->add_option("--nv", s_nv)->required();
  sample->add_option("--p", s_p, "error rate in [0,1]")->required();
  sample->add_option("--samples", s_samples, "number of samples");
  sample->add_option("--seed", s_seed, "master seed");
  sample->add_option("--workers", s_workers, "worker threads");
  sample->add_option("--per-sample-out", s_per_sample, "write per-sample records to this CSV");

  // scan
  auto* scan = app.add_subcommand("scan", "sweep lattice sizes, aspect ratios, or rates");
  std::string scan_mode;
  scan->add_option("mode", scan_mode, "symmetric | aspect | p")->required();
  RunConfig rc;
  std::vector<int> scan_sizes;
  std::vector<double> scan_pgrid;
  std::string scan_format = "csv";
  scan->add_option("--sizes", scan_sizes, "symmetric: sizes s, lattice (s, s+1)");
  scan->add_option("--perimeter", rc.perimeter, "aspect: fixed nh + nv");
  scan->add_option("--nh", rc.nh, "p scan: edges per primal row");
  scan->add_option("--nv", rc.nv, "p scan: nodes per primal column");
  scan->add_option("--p", rc.p, "error rate for symmetric/aspect scans");
  scan->add_option("--p-grid", scan_pgrid, "p scan: rates to sweep");
  scan->add_option("--samples", rc.samples, "samples per point");
  scan->add_option("--seed", rc.master_seed, "master seed");
  scan->add_option("--workers", rc.workers, "worker threads");
  scan->add_option("--out", rc.out, "output path, or - for stdout");
  scan->add_option("--format", scan_format, "csv | json");

  // fit
  auto* fit = app.add_subcommand("fit", "log-log least squares on a results table");
  std::string fit_in, fit_x = "p", fit_y = "p_loop_edge_mean";
  bool fit_sub = false;
  int fit_nh = 0, fit_nv = 0;
  fit->add_option("--in", fit_in, "CSV input")->required();
  fit->add_option("--x-col", fit_x, "x column name (default p)");
  fit->add_option("--y-col", fit_y, "y column name (default p_loop_edge_mean)");
  fit->add_flag("--subtract-boundary", fit_sub,
                "remove the 3(nh+nv)/(nh nv) p^2 boundary term before fitting");
  fit->add_option("--nh", fit_nh, "needed with --subtract-boundary");
  fit->add_option("--nv", fit_nv, "needed with --subtract-boundary");

  // twirl-verify
  auto* tv = app.add_subcommand("twirl-verify",
                                "exact coherent vs twirled syndrome statistics on a pattern");
  int t_nh = 3, t_nv = 2, t_d = 2, t_power = 1, t_max_qudits = 8;
  long t_max_terms = 1L << 24;
  double t_theta = 0.78539816339744830961;  // pi/4
  std::uint64_t t_useed = 7;
  std::string t_pattern_file, t_qudits, t_unitary = "rotation", t_matrix;
  bool t_oracle = false;
  tv->add_option("--nh", t_nh)->required();
  tv->add_option("--nv", t_nv)->required();
  tv->add_option("--d", t_d, "qudit dimension")->required();
  tv->add_option("--pattern", t_pattern_file, "file with one comma-separated qudit list");
  tv->add_option("--qudits", t_qudits, "inline comma-separated qudit list");
  tv->add_option("--unitary", t_unitary, "identity | shift | phase | rotation | random");
  tv->add_option("--matrix", t_matrix, "file with 2 d^2 numbers: re im pairs, row-major");
  tv->add_option("--theta", t_theta, "rotation angle");
  tv->add_option("--power", t_power, "shift/phase exponent");
  tv->add_option("--unitary-seed", t_useed, "seed for --unitary random");
  tv->add_flag("--oracle", t_oracle, "cross-check against the dense state-vector reference");
  tv->add_option("--max-qudits", t_max_qudits, "expansion support limit");
  tv->add_option("--max-terms", t_max_terms, "expansion term limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(info)) return cmd_lattice_info(info_nh, info_nv);
    if (app.got_subcommand(sample)) {
      if (!(s_p >= 0.0 && s_p <= 1.0) || s_samples <= 0) {
        std::cerr << "error: need p in [0,1] and samples > 0\n";
        return 2;
      }
      return cmd_sample(s_nh, s_nv, s_p, s_samples, s_seed, s_workers, s_per_sample);
    }
    if (app.got_subcommand(scan)) {
      if (scan_mode == "symmetric") {
        rc.mode = RunMode::SymmetricScan;
        rc.sizes = scan_sizes;
      } else if (scan_mode == "aspect") {
        rc.mode = RunMode::AspectScan;
      } else if (scan_mode == "p") {
        rc.mode = RunMode::PScan;
        rc.p_grid = scan_pgrid;
      } else {
        std::cerr << "error: scan mode must be symmetric, aspect, or p\n";
        return 2;
      }
      if (scan_format == "csv") {
        rc.format = OutputFormat::Csv;
      } else if (scan_format == "json") {
        rc.format = OutputFormat::Json;
      } else {
        std::cerr << "error: format must be csv or json\n";
        return 2;
      }
      return run_scan(rc);
    }
    if (app.got_subcommand(fit)) {
      if (fit_sub && (fit_nh < 2 || fit_nv < 2)) {
        std::cerr << "error: --subtract-boundary needs --nh and --nv\n";
        return 2;
      }
      return cmd_fit(fit_in, fit_x, fit_y, fit_sub, fit_nh, fit_nv);
    }
    if (app.got_subcommand(tv)) {
      if (t_pattern_file.empty() == t_qudits.empty()) {
        std::cerr << "error: give exactly one of --pattern or --qudits\n";
        return 2;
      }
      return cmd_twirl_verify(t_nh, t_nv, t_d, t_pattern_file, t_qudits, t_unitary, t_matrix,
                              t_theta, t_power, t_useed, t_oracle, t_max_qudits, t_max_terms);
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
