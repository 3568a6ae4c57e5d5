// Acceptance suite for the framelab library and CLI.
//
// Each numbered check prints exactly one line:
//   [PASS] 03 <description> (<measurements>)
//   [FAIL] 07 <description> (<measurements>)
// The process exits nonzero if any executed check fails.
//
// usage: framelab_acceptance [--only N] [--cli PATH] [--fixtures DIR]

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "framelab/error.hpp"
#include "framelab/extended_affine.hpp"
#include "framelab/numerics.hpp"
#include "framelab/perturbation.hpp"
#include "framelab/piecewise.hpp"
#include "framelab/weyl_heisenberg.hpp"
#include "test_support.hpp"

using namespace framelab;
using std::numbers::pi;

namespace {

struct outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

// ---------------------------------------------------------------- check 1
outcome closed_form_ramp_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  const frame_report chr = christensen_bounds(ts::ramp_window(), 1.0, 0.5, 4096);
  const frame_report exact = painless_exact_bounds(ts::ramp_system());
  const double el = seconds_since(t0);
  outcome r;
  r.pass = std::fabs(chr.lower - 4.0) <= 1e-9 && std::fabs(chr.upper - 16.0) <= 1e-9 &&
           std::fabs(exact.lower - 4.0) <= 1e-9 && std::fabs(exact.upper - 16.0) <= 1e-9 &&
           std::fabs(chr.lower - exact.lower) <= 1e-9 &&
           std::fabs(chr.upper - exact.upper) <= 1e-9 && el < 1.0;
  r.detail = fmt("overlap=(%.12g, %.12g), density=(%.12g, %.12g)", chr.lower, chr.upper,
                 exact.lower, exact.upper) +
             fmt(", %.3fs", el);
  return r;
}

// ---------------------------------------------------------------- check 2
outcome ramp_oracle_bracket() {
  const auto t0 = std::chrono::steady_clock::now();
  const grid g = default_grid();
  const gabor_system sys = ts::ramp_system();
  const auto battery = random_test_signals(g, 50, 1, signal_kind::compact);
  double lo = 1e300, hi = -1e300;
  for (const grid_signal& f : battery) {
    const double ratio = frame_sum(sys, f, {64, 64}) / norm_sq(f);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double el = seconds_since(t0);
  outcome r;
  r.pass = lo >= 4.0 * 0.99 && hi <= 16.0 * 1.01 && el < 30.0;
  r.detail = fmt("ratios in [%.6f, %.6f] vs [3.96, 16.16]", lo, hi) + fmt(", %.1fs", el);
  return r;
}

// ---------------------------------------------------------------- check 3
outcome pair_sandwich_violation() {
  const auto rep = check_generator_condition(ts::pair_system(), 17.0 / 4.0, 25.0, 4096);
  const double probe = translation_power_sum(ts::ramp_window(), 1.0, std::sqrt(3.5));
  outcome r;
  r.pass = !rep.holds && rep.witness.has_value() && !rep.witness->below &&
           rep.witness->generator == 1 && rep.witness->value > 25.0 / 4.0 &&
           std::fabs(probe - 7.0) <= 1e-9;
  if (rep.witness.has_value())
    r.detail = fmt("witness x=%.6f value=%.6f > %.6f; sum(sqrt(3.5))=%.12f", rep.witness->x,
                   rep.witness->value, rep.witness->threshold, probe);
  else
    r.detail = "no witness produced";
  return r;
}

// ---------------------------------------------------------------- check 4
outcome half_ramp_bounds_and_oracle() {
  const frame_report chr = christensen_bounds(ts::half_ramp_window(), 1.0, 0.5, 4096);
  const gabor_system half = make_gabor_system({1.0, 0.0}, {{ts::half_ramp_window(), 1.0, pi}});
  const auto battery = random_test_signals(default_grid(), 50, 2, signal_kind::compact);
  const frame_report orc = oracle_bounds(half, battery, {64, 64});
  outcome r;
  r.pass = std::fabs(chr.lower - 2.5) <= 1e-9 && std::fabs(chr.upper - 10.0) <= 1e-9 &&
           orc.lower >= 2.5 * 0.99 && orc.upper <= 10.0 * 1.01;
  r.detail = fmt("overlap=(%.12g, %.12g), oracle=[%.6f, %.6f]", chr.lower, chr.upper, orc.lower,
                 orc.upper);
  return r;
}

// ---------------------------------------------------------------- check 5
outcome truncated_sum_matches_density_functional() {
  const grid g = default_grid();
  const gabor_system sys = ts::ramp_system();
  std::vector<double> dens(g.n);
  for (int i = 0; i < g.n; ++i) dens[i] = painless_density(sys, g.point(i));
  double worst = 0.0;
  for (const grid_signal& f : random_test_signals(g, 20, 1, signal_kind::compact)) {
    const double sum = frame_sum(sys, f, {64, 64});
    double weighted = 0.0;
    for (int i = 0; i < g.n; ++i) weighted += std::norm(f.values[i]) * dens[i] * g.dx();
    worst = std::max(worst, std::fabs(sum - weighted) / sum);
  }
  outcome r;
  r.pass = worst < 1e-3;
  r.detail = fmt("max relative deviation %.6e vs 1e-3 at m_max=64", worst);
  return r;
}

// ---------------------------------------------------------------- check 6
outcome contracted_system_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  const contraction_spec s = ts::ramp_contraction(0.5);
  const frame_report closed = contraction_closed_bounds(s);
  const double want_lo = 0.81093021621632877;   // 2*log(3/2)
  const double want_hi = 3.2437208648653151;    // 8*log(3/2)
  double lo = 1e300, hi = -1e300;
  for (const grid_signal& f : random_test_signals(default_grid(), 50, 3, signal_kind::compact)) {
    const double ratio = wavelet_frame_sum(s, f, {64, 64}) / norm_sq(f);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double el = seconds_since(t0);
  outcome r;
  const bool closed_ok =
      std::fabs(closed.lower - want_lo) <= 1e-12 && std::fabs(closed.upper - want_hi) <= 1e-12;
  const bool bracket_ok = lo >= want_lo * 0.98 && hi <= want_hi * 1.02;
  r.pass = closed_ok && bracket_ok && el < 60.0;
  r.detail = fmt("closed=(%.17g, %.17g)", closed.lower, closed.upper) +
             fmt(", ratios in [%.4f, %.4f] vs [%.4f, %.4f]", lo, hi, want_lo * 0.98,
                 want_hi * 1.02) +
             fmt(", %.1fs", el);
  return r;
}

// ---------------------------------------------------------------- check 7
outcome contraction_sweep_chain() {
  const std::vector<double> sweep{1.0, 1e-1, 1e-2, 1e-3, 1e-4};
  const gabor_system base = ts::ramp_system();
  const grid g = default_grid();
  const auto battery = random_test_signals(g, 10, 4, signal_kind::compact);

  double prev_upper = -1.0;
  bool increasing = true, below = true, chain = true;
  double final_upper = 0.0;
  for (double eps : sweep) {
    const contraction_spec s = make_contraction_spec(base, eps, 1.0, -1.0, 1.0, 4.0, 16.0);
    const double upper = contraction_closed_bounds(s).upper;
    if (upper <= prev_upper) increasing = false;
    if (upper >= 4.0) below = false;
    prev_upper = upper;
    final_upper = upper;
    for (const grid_signal& f : battery) {
      const double ws = wavelet_frame_sum(s, f, {64, 64});
      const double gs = frame_sum(base, f, {64, 64});
      if (ws > gs * 1.02 || gs > 16.0 * norm_sq(f) * 1.02) chain = false;
    }
  }
  outcome r;
  const bool limit_ok = std::fabs(final_upper - 4.0) / 4.0 <= 1e-4;
  r.pass = increasing && below && chain && limit_ok;
  r.detail = fmt("upper(1e-4)=%.8f (rel gap %.2e)", final_upper,
                 std::fabs(final_upper - 4.0) / 4.0) +
             std::string(increasing ? ", increasing" : ", NOT increasing") +
             std::string(chain ? ", chain holds" : ", chain violated");
  return r;
}

// ---------------------------------------------------------------- check 8
outcome ordinate_invariance() {
  const contraction_spec s = ts::ramp_contraction(0.5);
  const grid_signal f = random_test_signals(default_grid(), 1, 5, signal_kind::compact)[0];
  const lattice_truncation t{32, 16};
  const double base = wavelet_frame_sum(s, f, t);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    wavelet_sum_options opt;
    opt.y_override = [seed](int l, int m, int n) {
      std::uint64_t h = seed * 0x9E3779B97F4A7C15ULL;
      h ^= static_cast<std::uint64_t>(l + 7) * 0xBF58476D1CE4E5B9ULL;
      h ^= static_cast<std::uint64_t>(m + 5000) * 0x94D049BB133111EBULL;
      h ^= static_cast<std::uint64_t>(n + 5000) * 0xD6E8FEB86659FD93ULL;
      std::mt19937_64 e(h);
      return std::uniform_real_distribution<double>(-10.0, 10.0)(e);
    };
    const double sum = wavelet_frame_sum(s, f, t, opt);
    worst = std::max(worst, std::fabs(sum - base) / base);
  }
  outcome r;
  r.pass = worst < 1e-12;
  r.detail = fmt("max relative change %.3e over 10 randomized ordinate tables", worst);
  return r;
}

// ---------------------------------------------------------------- check 9
outcome perturbation_constants_and_bounds() {
  const grid g = default_grid();
  const lattice_truncation t{24, 24};
  const atom_family base = gabor_atoms(ts::ramp_system(), g, t);
  const atom_family pert = scaled_atoms(gabor_atoms(ts::ramp_system(), g, t), 1.1);
  const auto battery = random_test_signals(g, 12, 6, signal_kind::compact);
  const perturbation_constants k = estimate_constants(base, pert, battery, 0.0, 4.0);

  const frame_report pb = perturbed_bounds(4.0, 16.0, {0.01, 0.0});
  const bool pb_ok = std::fabs(pb.lower - 1.9801980198019803) <= 1e-12 &&
                     std::fabs(pb.upper - 32.32) <= 1e-12;

  // empirical bracket of the scaled system against the perturbed interval
  const gabor_system scaled_sys = make_gabor_system(
      {1.0, 0.0},
      {{make_window("ramp-scaled", {{0.0, 1.0, polynomial({1.1, 1.1})},
                                    {1.0, 2.0, polynomial({0.0, 1.1})}}),
        1.0, pi}});
  const frame_report orc = oracle_bounds(scaled_sys, battery, {64, 64});
  const bool bracket_ok = orc.lower >= pb.lower * 0.99 && orc.upper <= pb.upper * 1.01;

  outcome r;
  r.pass = std::fabs(k.M - 0.01) <= 1e-6 && k.lambda == 0.0 && pb_ok && bracket_ok;
  r.detail = fmt("M=%.9f, perturbed=(%.12f, %.6f)", k.M, pb.lower, pb.upper) +
             fmt(", scaled oracle=[%.4f, %.4f]", orc.lower, orc.upper);
  return r;
}

// ---------------------------------------------------------------- check 10
outcome representation_isometries() {
  const grid g = default_grid();
  const int count = 100;
  const auto compact = random_test_signals(g, count, 7, signal_kind::compact);
  const auto hardy = random_test_signals(g, count, 8, signal_kind::hardy);
  std::mt19937_64 eng(42);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  // translations stay below the 1.6-unit edge margin the compact battery keeps,
  // so grid-aligned shifts move samples without clipping support
  std::uniform_int_distribution<int> steps(-384, 384);

  double worst_wh = 0.0, worst_zeta = 0.0, worst_ea = 0.0, worst_u = 0.0, worst_ft = 0.0;
  const double eps = 0.5;
  const ea_params par{1.0, 1.0};
  for (int i = 0; i < count; ++i) {
    const grid_signal& f = compact[i];
    const double ns = norm_sq(f);

    const grid_signal w = wh_apply({2.0, 3.0}, unif(eng), unif(eng), steps(eng) * g.dx(), f);
    worst_wh = std::max(worst_wh, std::fabs(norm_sq(w) - ns) / ns);

    const double a = std::exp(-eps * steps(eng) * g.dx());
    const grid_signal z = zeta_apply(par, eps, a, unif(eng), unif(eng), f);
    worst_zeta = std::max(worst_zeta, std::fabs(norm_sq(z) - ns) / ns);

    const grid_signal e = ea_rep(par, 1.0, steps(eng) * g.dx(), unif(eng), f);
    worst_ea = std::max(worst_ea, std::fabs(norm_sq(e) - ns) / ns);

    const grid_signal fh = fourier_transform(f);
    worst_ft = std::max(worst_ft, std::fabs(norm_sq(fh) - ns) / ns);

    const double hns = norm_sq(hardy[i]);
    const grid_signal u = u_epsilon(hardy[i], eps);
    worst_u = std::max(worst_u, std::fabs(norm_sq(u) - hns) / hns);
  }
  outcome r;
  r.pass = worst_wh < 1e-12 && worst_zeta < 1e-12 && worst_ea < 1e-6 && worst_u < 1e-4 &&
           worst_ft < 1e-8;
  r.detail = fmt("wh %.2e, zeta %.2e", worst_wh, worst_zeta) +
             fmt(", ea %.2e, warp %.2e", worst_ea, worst_u) + fmt(", parseval %.2e", worst_ft);
  return r;
}

// ---------------------------------------------------------------- check 11
struct fixture_run {
  std::string job;
  std::string file;
  int expected_exit;
};

int run_cli(const std::string& cmd) {
  const int st = std::system(cmd.c_str());
  if (st == -1) return -1;
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

outcome cli_reports_are_reproducible(const std::string& cli, const std::string& fixtures) {
  const std::vector<fixture_run> runs = {
      {"gabor-bounds", "gabor_single.json", 0},
      {"gabor-bounds", "gabor_pair.json", 0},
      {"gabor-verify", "gabor_verify.json", 2},
      {"wavelet-bounds", "wavelet_contraction.json", 0},
      {"contract-sweep", "contract_sweep.json", 0},
      {"perturb", "perturb_scale.json", 0},
  };
  outcome r;
  std::string tmp = "acceptance_cli_out";
  for (const auto& fr : runs) {
    const std::string out1 = tmp + "_a_" + fr.file + ".txt";
    const std::string out2 = tmp + "_b_" + fr.file + ".txt";
    const std::string base = cli + " " + fr.job + " --config " + fixtures + "/" + fr.file +
                             " --seed 7 --out ";
    const int e1 = run_cli(base + out1);
    const int e2 = run_cli(base + out2);
    const std::string r1 = slurp(out1), r2 = slurp(out2);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
    if (e1 != fr.expected_exit || e2 != fr.expected_exit) {
      r.pass = false;
      r.detail += fr.file + " exit " + std::to_string(e1) + "/" + std::to_string(e2) +
                  " want " + std::to_string(fr.expected_exit) + "; ";
      continue;
    }
    if (r1.empty() || r1 != r2) {
      r.pass = false;
      r.detail += fr.file + " reports differ between runs; ";
    }
  }
  if (r.pass) r.detail = "6 fixtures, byte-identical reports, expected exit codes";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::string cli = "./framelab";
  std::string fixtures = "fixtures";
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (a == "--cli" && i + 1 < argc) cli = argv[++i];
    else if (a == "--fixtures" && i + 1 < argc) fixtures = argv[++i];
    else {
      std::fprintf(stderr, "unknown argument: %s\n", a.c_str());
      return 1;
    }
  }

  struct entry {
    int id;
    const char* what;
    std::function<outcome()> fn;
  };
  const std::vector<entry> checks = {
      {1, "closed-form bounds for the ramp system", closed_form_ramp_bounds},
      {2, "empirical frame ratios stay inside the certified interval", ramp_oracle_bracket},
      {3, "two-generator sandwich violation is detected with a witness", pair_sandwich_violation},
      {4, "half-ramp bounds and empirical bracket", half_ramp_bounds_and_oracle},
      {5, "truncated frame sums match the density functional to 1e-3",
       truncated_sum_matches_density_functional},
      {6, "contracted-system closed bounds and empirical ratios", contracted_system_bounds},
      {7, "contraction sweep: monotone upper bound and domination chain",
       contraction_sweep_chain},
      {8, "frame sums are invariant under the lattice ordinates", ordinate_invariance},
      {9, "perturbation constants and perturbed interval", perturbation_constants_and_bounds},
      {10, "representations preserve signal energy", representation_isometries},
      {11, "CLI fixture reports are byte-identical across reruns",
       [&] { return cli_reports_are_reproducible(cli, fixtures); }},
  };

  int failures = 0, ran = 0;
  for (const auto& c : checks) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("unexpected exception: ") + e.what();
    }
    std::printf("[%s] %02d %s (%s)\n", o.pass ? "PASS" : "FAIL", c.id, c.what, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no such check: %d\n", only);
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
