// Acceptance suite: ten end-to-end checks covering lattice structure, exact
// twirling claims, loop statistics against the closed-form models, scaling
// behaviour, determinism, and adaptive schedules.  Each criterion prints one
// PASS/FAIL line; the process exit code is the number of failures.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loopsim/dense_oracle.hpp"
#include "loopsim/graph.hpp"
#include "loopsim/lattice.hpp"
#include "loopsim/metrics.hpp"
#include "loopsim/model.hpp"
#include "loopsim/pauli.hpp"
#include "loopsim/runner.hpp"
#include "loopsim/sampling.hpp"
#include "loopsim/twirl.hpp"

using namespace loopsim;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<std::uint32_t> support_of(const ErrorPattern& pat) {
  std::vector<std::uint32_t> s;
  for (int q : pat.indices()) s.push_back(static_cast<std::uint32_t>(q));
  return s;
}

bool forest_both_sides(const CodeLattice& lat, const ErrorPattern& pat) {
  return betti(build_subgraph(lat, pat, Side::Primal)) == 0 &&
         betti(build_subgraph(lat, pat, Side::Dual)) == 0;
}

double prob_of(const SyndromeDistribution& dist, const SyndromeKey& key) {
  for (const auto& [k, p] : dist.probs)
    if (k == key) return p;
  return 0.0;
}

double max_key_diff(const SyndromeDistribution& a, const SyndromeDistribution& b) {
  double worst = 0;
  std::size_t i = 0, j = 0;
  while (i < a.probs.size() || j < b.probs.size()) {
    if (j >= b.probs.size() ||
        (i < a.probs.size() && a.probs[i].first < b.probs[j].first)) {
      worst = std::max(worst, std::abs(a.probs[i].second));
      ++i;
    } else if (i >= a.probs.size() || b.probs[j].first < a.probs[i].first) {
      worst = std::max(worst, std::abs(b.probs[j].second));
      ++j;
    } else {
      worst = std::max(worst, std::abs(a.probs[i].second - b.probs[j].second));
      ++i;
      ++j;
    }
  }
  return worst;
}

unsigned long long ipow(int base, int exp) {
  unsigned long long r = 1;
  while (exp-- > 0) r *= static_cast<unsigned long long>(base);
  return r;
}

std::string fnum(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// --------------------------------------------------------------------------
// 1. qudit count and elementary-loop counts across the full shape range

Outcome criterion_structure() {
  for (int nh = 2; nh <= 12; ++nh) {
    for (int nv = 2; nv <= 12; ++nv) {
      const CodeLattice lat({nh, nv});
      if (lat.qudit_count() != 2 * nh * nv - nh - nv + 1)
        return {false, "qudit count mismatch at (" + std::to_string(nh) + "," +
                           std::to_string(nv) + ")"};
      const ElementaryLoops lp = lat.elementary_loops(Side::Primal);
      const ElementaryLoops ld = lat.elementary_loops(Side::Dual);
      const bool ok =
          static_cast<int>(lp.three_edge.size()) == 2 * (nv - 1) &&
          static_cast<int>(lp.four_edge.size()) == (nh - 2) * (nv - 1) &&
          static_cast<int>(ld.three_edge.size()) == 2 * (nh - 1) &&
          static_cast<int>(ld.four_edge.size()) == (nh - 1) * (nv - 2);
      if (!ok)
        return {false, "loop census mismatch at (" + std::to_string(nh) + "," +
                           std::to_string(nv) + ")"};
    }
  }
  return {true, "121 shapes: qudit count and all four loop censuses exact"};
}

// --------------------------------------------------------------------------
// 2. coherent == PTA on forests; symbolic == state-vector on tiny codes

Outcome criterion_forest_twirl() {
  constexpr double kTvTol = 1e-9;
  constexpr double kOracleTol = 1e-9;
  const std::array<CodeShape, 3> shapes{{{4, 4}, {5, 5}, {4, 5}}};
  std::vector<CodeLattice> lats;
  for (const CodeShape& s : shapes) lats.emplace_back(s);
  double worst_tv = 0;
  int cases = 0;
  struct Want {
    int d;
    int quota;
    int max_m;
  };
  for (const Want w : {Want{2, 200, 5}, Want{3, 200, 5}, Want{5, 100, 4}}) {
    int done = 0;
    for (int iter = 0; done < w.quota; ++iter) {
      if (iter > 50000) return {false, "could not sample enough forest cases"};
      const CodeLattice& lat = lats[static_cast<std::size_t>(iter % 3)];
      const ErrorPattern pat =
          sample_pattern(lat, 0.08, {9000 + static_cast<std::uint64_t>(w.d),
                                     static_cast<std::uint64_t>(iter)});
      if (pat.count() == 0 || pat.count() > w.max_m) continue;
      if (!forest_both_sides(lat, pat)) continue;
      const ErrorModel model =
          make_random_unitary_model(w.d, 100000 + static_cast<std::uint64_t>(iter));
      const Expansion ex = expand_error(model, pat);
      SyndromeMap map;
      try {
        map = build_syndrome_map(lat, support_of(pat), w.d);
      } catch (const resource_error&) {
        continue;
      }
      const double tv =
          tv_distance(coherent_distribution(ex, map), pta_distribution(ex, map));
      worst_tv = std::max(worst_tv, tv);
      if (tv >= kTvTol)
        return {false, "TV " + fnum(tv) + " for a forest case at d=" + std::to_string(w.d)};
      ++done;
      ++cases;
    }
  }

  double worst_oracle = 0;
  int oracle_cases = 0;
  for (const CodeShape s : {CodeShape{2, 2}, CodeShape{3, 2}, CodeShape{2, 3}}) {
    const CodeLattice lat(s);
    for (int d : {2, 3}) {
      for (int k = 0; k < 8; ++k) {
        const ErrorPattern pat =
            sample_pattern(lat, 0.35, {777 + static_cast<std::uint64_t>(d),
                                       static_cast<std::uint64_t>(k)});
        if (pat.count() == 0 || pat.count() > 4) continue;
        const ErrorModel model =
            make_random_unitary_model(d, 5000 + static_cast<std::uint64_t>(k));
        const Expansion ex = expand_error(model, pat);
        const SyndromeMap map = build_syndrome_map(lat, support_of(pat), d);
        const double diff = max_key_diff(coherent_distribution(ex, map),
                                         oracle_distribution(lat, model, pat, map));
        worst_oracle = std::max(worst_oracle, diff);
        if (diff >= kOracleTol)
          return {false, "state-vector mismatch " + fnum(diff) + " at d=" + std::to_string(d)};
        ++oracle_cases;
      }
    }
  }
  if (cases < 500) return {false, "only " + std::to_string(cases) + " forest cases"};
  if (oracle_cases < 24)
    return {false, "only " + std::to_string(oracle_cases) + " state-vector cases"};
  return {true, std::to_string(cases) + " forest cases, worst TV " + fnum(worst_tv) + "; " +
                    std::to_string(oracle_cases) + " state-vector cases, worst diff " +
                    fnum(worst_oracle)};
}

// --------------------------------------------------------------------------
// 3. four-edge loop interference: trivial-syndrome weight doubles

Outcome criterion_loop_interference() {
  constexpr double kTol = 1e-9;
  const CodeLattice lat({3, 2});
  const ErrorPattern pat = pattern_from_list(lat, {1, 4, 6, 7});  // bulk plaquette
  // (identity + i * phase flip) / sqrt(2) = diag((1+i)/sqrt(2), (1-i)/sqrt(2))
  const double s = 1.0 / std::sqrt(2.0);
  const CMat m{cplx(s, s), 0, 0, cplx(s, -s)};
  const ErrorModel model = model_from_matrix(m, 2);
  const Expansion ex = expand_error(model, pat);
  const SyndromeMap map = build_syndrome_map(lat, support_of(pat), 2);
  const SyndromeDistribution coh = coherent_distribution(ex, map);
  const SyndromeDistribution pta = pta_distribution(ex, map);
  const double pc = prob_of(coh, SyndromeKey{});
  const double pp = prob_of(pta, SyndromeKey{});
  const double oracle_diff =
      max_key_diff(coh, oracle_distribution(lat, model, pat, map));
  const bool pass =
      std::abs(pc - 0.25) < kTol && std::abs(pp - 0.125) < kTol && oracle_diff < kTol;
  return {pass, "coherent P(trivial) = " + fnum(pc) + ", twirled P = " + fnum(pp) +
                    ", state-vector diff " + fnum(oracle_diff)};
}

// --------------------------------------------------------------------------
// 4. kernel order law over composite and prime dimensions

Outcome criterion_kernel_law() {
  const std::array<CodeShape, 8> shapes{{{2, 2},
                                         {3, 3},
                                         {4, 4},
                                         {5, 5},
                                         {3, 5},
                                         {5, 3},
                                         {2, 5},
                                         {4, 3}}};
  std::vector<CodeLattice> lats;
  for (const CodeShape& s : shapes) lats.emplace_back(s);
  int patterns = 0, loopy = 0;
  for (int iter = 0; (patterns < 200 || loopy < 30) && iter < 20000; ++iter) {
    const CodeLattice& lat = lats[static_cast<std::size_t>(iter % shapes.size())];
    const double p = iter % 2 == 0 ? 0.12 : 0.22;
    const ErrorPattern pat = sample_pattern(lat, p, {40 + static_cast<std::uint64_t>(iter), 0});
    if (pat.count() == 0 || pat.count() > 8) continue;
    const int b1p = static_cast<int>(betti(build_subgraph(lat, pat, Side::Primal)));
    const int b1d = static_cast<int>(betti(build_subgraph(lat, pat, Side::Dual)));
    for (int d : {2, 3, 4, 6}) {
      SyndromeMap map;
      try {
        map = build_syndrome_map(lat, support_of(pat), d);
      } catch (const resource_error&) {
        goto next_pattern;
      }
      {
        const KernelInfo ker = kernel_and_windings(map, d);
        if (ker.size != ipow(d, b1p + b1d))
          return {false, "kernel order " + std::to_string(ker.size) + " != " +
                             std::to_string(d) + "^" + std::to_string(b1p + b1d)};
      }
    }
    ++patterns;
    if (b1p + b1d > 0) ++loopy;
  next_pattern:;
  }
  if (patterns < 200) return {false, "only " + std::to_string(patterns) + " patterns"};
  return {true, std::to_string(patterns) + " patterns (" + std::to_string(loopy) +
                    " with loops) follow |kernel| = d^(b1p+b1d) for d in {2,3,4,6}"};
}

// --------------------------------------------------------------------------
// 5. closed-form loop-edge fraction at (26,27)

Outcome criterion_loop_edge_formula() {
  const CodeLattice lat({26, 27});
  std::string detail;
  for (const double p : {0.02, 0.05, 0.1}) {
    const ExperimentRecord rec = analyze_point(lat, p, 10000, 1301, 1);
    const double model = p_loop_edge_eq3(26, 27, p);
    const double tol = std::max(4.0 * rec.p_loop_edge_stderr, 0.10 * model);
    const double diff = std::abs(rec.p_loop_edge_mean - model);
    if (!(rec.p_loop_edge_defined && diff <= tol))
      return {false, "p=" + fnum(p) + ": measured " + fnum(rec.p_loop_edge_mean) +
                         " vs model " + fnum(model) + ", |diff| " + fnum(diff) +
                         " > tol " + fnum(tol)};
    if (!detail.empty()) detail += "; ";
    detail += "p=" + fnum(p) + ": " + fnum(rec.p_loop_edge_mean) + " vs " + fnum(model);
  }
  return {true, detail};
}

// --------------------------------------------------------------------------
// 6. bulk-correction exponent from a near-threshold sweep

Outcome criterion_correction_exponent() {
  constexpr int kNh = 150, kNv = 151;
  const CodeLattice lat({kNh, kNv});
  std::vector<std::pair<double, double>> pts;
  for (const double p : {0.20, 0.22, 0.24, 0.26, 0.28, 0.30}) {
    const ExperimentRecord rec = analyze_point(lat, p, 2000, 2200, 1);
    const double boundary = 3.0 * (kNh + kNv) / (static_cast<double>(kNh) * kNv) * p * p;
    const double bulk = rec.p_loop_edge_mean - boundary;
    if (bulk <= 0) return {false, "non-positive bulk residue at p=" + fnum(p)};
    pts.emplace_back(p, bulk);
  }
  const FitResult fit = loglog_fit(pts);
  const bool pass = fit.slope >= 2.9 && fit.slope <= 3.2 && fit.coefficient >= 4.0 &&
                    fit.coefficient <= 5.5;
  return {pass, "bulk term fits " + fnum(fit.coefficient) + " * p^" + fnum(fit.slope) +
                    " (want coeff in [4,5.5], slope in [2.9,3.2])"};
}

// --------------------------------------------------------------------------
// 7. non-twirlable pattern probability against the closed form

Outcome criterion_pntw_formula() {
  std::string detail;
  for (const CodeShape s : {CodeShape{4, 5}, CodeShape{20, 21}}) {
    const CodeLattice lat(s);
    for (const double p : {0.03, 0.05}) {
      const ExperimentRecord rec = analyze_point(lat, p, 10000, 1733, 1);
      const double model = p_not_pauli_twirled(s.nh, s.nv, p);
      const double se = rec.p_ntw_std / std::sqrt(static_cast<double>(rec.n_samples));
      const double diff = std::abs(rec.p_ntw_mean - model);
      if (diff > 4.0 * se)
        return {false, "(" + std::to_string(s.nh) + "," + std::to_string(s.nv) +
                           ") p=" + fnum(p) + ": measured " + fnum(rec.p_ntw_mean) +
                           " vs model " + fnum(model) + " is " + fnum(diff / se) +
                           " standard errors off"};
      if (!detail.empty()) detail += "; ";
      detail += "(" + std::to_string(s.nh) + "," + std::to_string(s.nv) + ",p=" + fnum(p) +
                "): " + fnum(diff / (se > 0 ? se : 1)) + " se";
    }
  }
  return {true, detail};
}

// --------------------------------------------------------------------------
// 8. largest-span growth with system size, and its absolute scale

Outcome criterion_span_scaling() {
  std::vector<double> means;
  for (const int s : {64, 128, 256, 512}) {
    const CodeLattice lat({s, s + 1});
    means.push_back(analyze_point(lat, 0.3, 200, 3100, 1).l_max_mean);
  }
  std::string detail = "mean largest span: ";
  for (double m : means) detail += fnum(m) + " ";
  for (std::size_t k = 1; k < means.size(); ++k)
    if (means[k] <= means[k - 1]) return {false, detail + "(not increasing)"};
  const double d1 = means[1] - means[0], d2 = means[2] - means[1], d3 = means[3] - means[2];
  const double r1 = d2 / d1, r2 = d3 / d2;
  if (!(r1 >= 0.3 && r1 <= 3.0 && r2 >= 0.3 && r2 <= 3.0))
    return {false, detail + "(increment ratios " + fnum(r1) + ", " + fnum(r2) + ")"};
  const CodeLattice big({1000, 1001});
  const double big_mean = analyze_point(big, 0.3, 200, 3200, 1).l_max_mean;
  if (big_mean + 1 > 10.0)
    return {false, "mean span + 1 = " + fnum(big_mean + 1) + " at width 1000"};
  return {true, detail + "| increment ratios " + fnum(r1) + ", " + fnum(r2) +
                    "; width-1000 mean + 1 = " + fnum(big_mean + 1) + " <= 10"};
}

// --------------------------------------------------------------------------
// 9. byte-identical scan output for any worker count

Outcome criterion_determinism() {
  auto run_with = [](int workers, const std::string& path) {
    RunConfig cfg;
    cfg.mode = RunMode::PScan;
    cfg.nh = 12;
    cfg.nv = 13;
    cfg.p_grid = {0.05, 0.15, 0.25};
    cfg.samples = 600;
    cfg.master_seed = 77;
    cfg.workers = workers;
    cfg.out = path;
    return run_scan(cfg);
  };
  const std::string base = "/tmp/loopsim_acceptance_scan_";
  std::array<std::string, 3> bodies;
  int i = 0;
  for (const int workers : {1, 4, 8}) {
    const std::string path = base + std::to_string(workers) + ".csv";
    if (run_with(workers, path) != 0) return {false, "scan failed"};
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    bodies[static_cast<std::size_t>(i++)] = ss.str();
    std::remove(path.c_str());
  }
  if (bodies[0].empty() || bodies[0] != bodies[1] || bodies[0] != bodies[2])
    return {false, "outputs differ across 1/4/8 workers"};
  return {true, "scan output byte-identical across 1, 4, and 8 workers"};
}

// --------------------------------------------------------------------------
// 10. adaptive schedules: prefix property, exact inversion, loop rejection

Outcome criterion_schedules() {
  const std::array<CodeShape, 3> shapes{{{4, 4}, {5, 5}, {6, 5}}};
  std::vector<CodeLattice> lats;
  for (const CodeShape& s : shapes) lats.emplace_back(s);
  std::mt19937_64 rng(4096);
  int forests = 0, loops = 0;
  for (int iter = 0; (forests < 1000 || loops < 50) && iter < 100000; ++iter) {
    const CodeLattice& lat = lats[static_cast<std::size_t>(iter % shapes.size())];
    const double p = iter % 4 == 3 ? 0.3 : 0.1;
    const ErrorPattern pat =
        sample_pattern(lat, p, {6000, static_cast<std::uint64_t>(iter)});
    if (pat.count() == 0 || pat.count() > 8) continue;
    const ErrorSubgraph gp = build_subgraph(lat, pat, Side::Primal);
    const ErrorSubgraph gd = build_subgraph(lat, pat, Side::Dual);
    const bool forest = betti(gp) == 0 && betti(gd) == 0;
    if (!forest) {
      // at least one side has a loop: that side's schedule must refuse
      for (const ErrorSubgraph* g : {&gp, &gd}) {
        if (betti(*g) == 0) continue;
        bool threw = false;
        try {
          schedule_measurements(*g);
        } catch (const partial_discretization_error&) {
          threw = true;
        }
        if (!threw) return {false, "loop pattern was scheduled"};
      }
      SyndromeMap map;
      try {
        map = build_syndrome_map(lat, support_of(pat), 3);
      } catch (const resource_error&) {
        continue;
      }
      bool threw = false;
      try {
        invert_syndrome_on_forest(map, SyndromeKey{});
      } catch (const partial_discretization_error&) {
        threw = true;
      }
      if (!threw) return {false, "loop pattern was inverted"};
      ++loops;
      continue;
    }
    // forest: replay the schedule on both sides
    for (const ErrorSubgraph* g : {&gp, &gd}) {
      std::vector<MeasurementStep> steps;
      try {
        steps = schedule_measurements(*g);
      } catch (const partial_discretization_error&) {
        return {false, "forest schedule refused"};
      }
      if (steps.size() != g->edges.size()) return {false, "schedule misses edges"};
      std::vector<char> resolved(g->edges.size(), 0);
      for (const MeasurementStep& st : steps) {
        int unresolved = 0;
        std::uint32_t qudit = 0;
        for (std::size_t k = 0; k < g->edges.size(); ++k) {
          if (resolved[k]) continue;
          if (g->edges[k].tail == st.node || g->edges[k].head == st.node) {
            ++unresolved;
            qudit = g->edges[k].qudit;
          }
        }
        if (st.node == 0 || unresolved != 1 || qudit != st.qudit)
          return {false, "prefix property violated"};
        for (std::size_t k = 0; k < g->edges.size(); ++k)
          if (!resolved[k] && g->edges[k].qudit == st.qudit) resolved[k] = 1;
      }
    }
    // and invert a random syndrome exactly
    const int d = std::array<int, 3>{2, 3, 5}[static_cast<std::size_t>(iter % 3)];
    SyndromeMap map;
    try {
      map = build_syndrome_map(lat, support_of(pat), d);
    } catch (const resource_error&) {
      continue;
    }
    std::vector<int> x(map.support.size()), z(map.support.size());
    for (std::size_t q = 0; q < x.size(); ++q) {
      x[q] = static_cast<int>(rng() % static_cast<unsigned>(d));
      z[q] = static_cast<int>(rng() % static_cast<unsigned>(d));
    }
    const SyndromeKey key = map.apply(x.data(), z.data());
    ErrorExponents inv;
    try {
      inv = invert_syndrome_on_forest(map, key);
    } catch (const std::exception& e) {
      return {false, std::string("inversion failed: ") + e.what()};
    }
    if (inv.x != x || inv.z != z) return {false, "inversion is not exact"};
    ++forests;
  }
  if (forests < 1000 || loops < 50)
    return {false, "only " + std::to_string(forests) + " forests / " +
                       std::to_string(loops) + " loop patterns sampled"};
  return {true, std::to_string(forests) + " forest schedules replayed and inverted exactly; " +
                    std::to_string(loops) + " loop patterns correctly rejected"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const std::array<Criterion, 10> criteria{{
      {"structural exactness", criterion_structure},
      {"forest twirl equivalence", criterion_forest_twirl},
      {"loop interference", criterion_loop_interference},
      {"kernel order law", criterion_kernel_law},
      {"loop-edge closed form", criterion_loop_edge_formula},
      {"correction exponent", criterion_correction_exponent},
      {"non-twirlable probability", criterion_pntw_formula},
      {"span scaling", criterion_span_scaling},
      {"worker determinism", criterion_determinism},
      {"schedule correctness", criterion_schedules},
  }};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %zu. %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures;
}
