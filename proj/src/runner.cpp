#include "loopsim/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <ostream>
#include <thread>

#include "loopsim/model.hpp"
#include "loopsim/sampling.hpp"

namespace loopsim {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void warn_regime(double p) {
  switch (classify_rate(p)) {
    case RateRegime::SubThreshold:
      break;
    case RateRegime::AboveThresholdEstimate:
      std::cerr << "warning: p=" << fmt(p)
                << " is above the ~0.3 working range; loop formulas degrade\n";
      break;
    case RateRegime::AtOrAbovePercolation:
      std::cerr << "warning: p=" << fmt(p)
                << " is at or above the 0.5 percolation point; sub-critical "
                   "loop statistics do not apply\n";
      break;
  }
}

}  // namespace

ExperimentRecord analyze_point(const CodeLattice& lattice, double p, long n_samples,
                               std::uint64_t master_seed, int workers) {
  if (n_samples <= 0) throw std::invalid_argument("need at least one sample");
  std::vector<SampleRecord> records(static_cast<std::size_t>(n_samples));
  std::atomic<long> cursor{0};
  auto work = [&] {
    constexpr long kChunk = 64;
    for (;;) {
      const long begin = cursor.fetch_add(kChunk);
      if (begin >= n_samples) break;
      const long end = std::min(n_samples, begin + kChunk);
      for (long i = begin; i < end; ++i) {
        const ErrorPattern pattern =
            sample_pattern(lattice, p, SeedSpec{master_seed, static_cast<std::uint64_t>(i)});
        records[static_cast<std::size_t>(i)] = loop_metrics(lattice, pattern);
        records[static_cast<std::size_t>(i)].sample_index = static_cast<std::uint64_t>(i);
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  ExperimentRecord rec = aggregate(records);
  rec.nh = lattice.shape().nh;
  rec.nv = lattice.shape().nv;
  rec.p = p;
  rec.master_seed = master_seed;
  return rec;
}

ResultRow evaluate_point(const CodeLattice& lattice, double p, long n_samples,
                         std::uint64_t master_seed, int workers) {
  ResultRow row;
  row.record = analyze_point(lattice, p, n_samples, master_seed, workers);
  const CodeShape s = lattice.shape();
  row.model_eq3 = p_loop_edge_eq3(s.nh, s.nv, p);
  row.model_eq3_powerlaw = p_loop_edge_corrected(s.nh, s.nv, p, CorrectionVariant::PowerLaw);
  row.model_eq3_sixloop = p_loop_edge_corrected(s.nh, s.nv, p, CorrectionVariant::SixLoop);
  row.model_pntw = p_not_pauli_twirled(s.nh, s.nv, p);
  return row;
}

const char* const kScanCsvHeader =
    "n_h,n_v,p,n_samples,seed,p_loop_edge_mean,p_loop_edge_std,p_loop_edge_stderr,"
    "p_ntw_mean,p_ntw_std,L_max_mean,L_max_std,N_max_mean,N_max_std,"
    "zero_error_skipped,model_eq3,model_eq3_powerlaw,model_eq3_sixloop,model_pntw";

std::string format_csv_row(const ResultRow& row) {
  const ExperimentRecord& r = row.record;
  std::string s;
  s += std::to_string(r.nh) + ',' + std::to_string(r.nv) + ',' + fmt(r.p) + ',';
  s += std::to_string(r.n_samples) + ',' + std::to_string(r.master_seed) + ',';
  s += fmt(r.p_loop_edge_mean) + ',' + fmt(r.p_loop_edge_std) + ',' +
       fmt(r.p_loop_edge_stderr) + ',';
  s += fmt(r.p_ntw_mean) + ',' + fmt(r.p_ntw_std) + ',';
  s += fmt(r.l_max_mean) + ',' + fmt(r.l_max_std) + ',';
  s += fmt(r.n_max_mean) + ',' + fmt(r.n_max_std) + ',';
  s += std::to_string(r.zero_error_skipped) + ',';
  s += fmt(row.model_eq3) + ',' + fmt(row.model_eq3_powerlaw) + ',' +
       fmt(row.model_eq3_sixloop) + ',' + fmt(row.model_pntw);
  return s;
}

std::string format_json_row(const ResultRow& row) {
  const ExperimentRecord& r = row.record;
  std::string s = "{";
  auto field = [&s](const char* k, const std::string& v, bool last = false) {
    s += '"';
    s += k;
    s += "\":";
    s += v;
    if (!last) s += ',';
  };
  field("n_h", std::to_string(r.nh));
  field("n_v", std::to_string(r.nv));
  field("p", fmt(r.p));
  field("n_samples", std::to_string(r.n_samples));
  field("seed", std::to_string(r.master_seed));
  field("p_loop_edge_mean", fmt(r.p_loop_edge_mean));
  field("p_loop_edge_std", fmt(r.p_loop_edge_std));
  field("p_loop_edge_stderr", fmt(r.p_loop_edge_stderr));
  field("p_ntw_mean", fmt(r.p_ntw_mean));
  field("p_ntw_std", fmt(r.p_ntw_std));
  field("L_max_mean", fmt(r.l_max_mean));
  field("L_max_std", fmt(r.l_max_std));
  field("N_max_mean", fmt(r.n_max_mean));
  field("N_max_std", fmt(r.n_max_std));
  field("zero_error_skipped", std::to_string(r.zero_error_skipped));
  field("model_eq3", fmt(row.model_eq3));
  field("model_eq3_powerlaw", fmt(row.model_eq3_powerlaw));
  field("model_eq3_sixloop", fmt(row.model_eq3_sixloop));
  field("model_pntw", fmt(row.model_pntw), true);
  s += '}';
  return s;
}

int run_scan(const RunConfig& config) {
  std::vector<CodeShape> shapes;
  std::vector<double> ps;
  switch (config.mode) {
    case RunMode::Single:
      shapes.push_back({config.nh, config.nv});
      ps.push_back(config.p);
      break;
    case RunMode::SymmetricScan:
      if (config.sizes.empty()) {
        std::cerr << "error: symmetric scan needs at least one size\n";
        return 2;
      }
      for (int s : config.sizes) {
        shapes.push_back({s, s + 1});
        ps.push_back(config.p);
      }
      break;
    case RunMode::AspectScan:
      if (config.perimeter < 4) {
        std::cerr << "error: aspect scan needs nh + nv >= 4\n";
        return 2;
      }
      for (int nh = 2; nh <= config.perimeter - 2; ++nh) {
        shapes.push_back({nh, config.perimeter - nh});
        ps.push_back(config.p);
      }
      break;
    case RunMode::PScan:
      if (config.p_grid.empty()) {
        std::cerr << "error: p scan needs at least one rate\n";
        return 2;
      }
      for (double p : config.p_grid) {
        shapes.push_back({config.nh, config.nv});
        ps.push_back(p);
      }
      break;
  }
  if (config.samples <= 0) {
    std::cerr << "error: samples must be positive\n";
    return 2;
  }
  if (config.workers < 1) {
    std::cerr << "error: workers must be >= 1\n";
    return 2;
  }
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (shapes[i].nh < 2 || shapes[i].nv < 2) {
      std::cerr << "error: lattice sides must be >= 2, got (" << shapes[i].nh << ","
                << shapes[i].nv << ")\n";
      return 2;
    }
    if (!(ps[i] >= 0.0 && ps[i] <= 1.0)) {
      std::cerr << "error: error rate must lie in [0,1], got " << ps[i] << "\n";
      return 2;
    }
  }

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (config.out != "-") {
    file.open(config.out, std::ios::trunc);
    if (!file) {
      std::cerr << "error: cannot open output file " << config.out << "\n";
      return 3;
    }
    os = &file;
  }

  const bool json = config.format == OutputFormat::Json;
  if (json) {
    *os << "[\n";
  } else {
    *os << kScanCsvHeader << "\n";
  }
  os->flush();

  for (std::size_t i = 0; i < shapes.size(); ++i) {
    warn_regime(ps[i]);
    const auto t0 = std::chrono::steady_clock::now();
    ResultRow row;
    try {
      const CodeLattice lattice(shapes[i]);
      row = evaluate_point(lattice, ps[i], config.samples, config.master_seed, config.workers);
    } catch (const std::exception& e) {
      std::cerr << "error: point (" << shapes[i].nh << "," << shapes[i].nv << ") p=" << fmt(ps[i])
                << " failed: " << e.what() << "\n";
      return 2;
    }
    if (json) {
      *os << "  " << format_json_row(row) << (i + 1 < shapes.size() ? "," : "") << "\n";
    } else {
      *os << format_csv_row(row) << "\n";
    }
    os->flush();
    if (!*os) {
      std::cerr << "error: write to " << (config.out == "-" ? "stdout" : config.out)
                << " failed\n";
      return 3;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "point " << (i + 1) << "/" << shapes.size() << " (" << shapes[i].nh << ","
              << shapes[i].nv << ") p=" << fmt(ps[i]) << ": " << config.samples << " samples in "
              << fmt(secs) << "s\n";
  }
  if (json) {
    *os << "]\n";
    os->flush();
  }
  return 0;
}

}  // namespace loopsim
