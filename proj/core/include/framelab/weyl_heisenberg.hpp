#pragma once

#include <optional>
#include <vector>

#include "framelab/frame_report.hpp"
#include "framelab/numerics.hpp"
#include "framelab/piecewise.hpp"

namespace framelab {

// Phase-space representation parameters.  The unitary action on a signal is
//   (W((u1,u2),z) f)(x) = exp(i*(P*(u1 + x*u2) + Q*u2)) * f(x + z).
struct wh_params {
  double P = 1.0;
  double Q = 0.0;
};

struct gabor_generator {
  piecewise_window window;
  double q0 = 1.0;  // translation step
  double p0 = 1.0;  // modulation step
};

struct gabor_system {
  wh_params params;
  std::vector<gabor_generator> generators;
};

// Validates: at least one generator, P != 0, q0 != 0, p0 != 0, and the cell
// area condition |q0*p0| <= 2*pi (up to roundoff slack).
gabor_system make_gabor_system(wh_params params, std::vector<gabor_generator> generators);

struct lattice_truncation {
  int m_max = 64;
  int n_max = 64;
};

// Applies W((u1,u2),z).  Translation is by the nearest whole number of grid
// samples; values shifted in from outside the domain are zero.
grid_signal wh_apply(const wh_params& params, double u1, double u2, double z,
                     const grid_signal& f);

// Lattice atom for generator l (1-based): with a = generator q0, b = p0,
//   atom_{m,n,l}(x) = exp(i*m*b*(P*(x + n*a/2) + Q)) * window_l(x + n*a),
// i.e. W(((m*n*a*b/2, m*b), n*a)) applied to the window.  Raises OutOfDomain
// when the translated support misses the grid entirely.
grid_signal gabor_atom(const gabor_system& sys, int m, int n, int l, const grid& g);

// Modulation step that makes a window of support length mu "painless":
// p0 = 2*pi/(P*mu).
double painless_p0(double P, double mu);

struct frame_sum_result {
  double value = 0.0;
  double outer_shell = 0.0;  // contribution of the outermost truncation shell
};

// sum_{l} sum_{|m|<=m_max} sum_{|n|<=n_max} |<f, atom_{m,n,l}>|^2.
double frame_sum(const gabor_system& sys, const grid_signal& f, const lattice_truncation& t);
frame_sum_result frame_sum_with_tail(const gabor_system& sys, const grid_signal& f,
                                     const lattice_truncation& t);

// Diagonal density of the painless frame operator:
//   D(x) = sum_l mu_l * sum_n window_l(x - n*q0_l)^2.
// Raises NotPainless unless every generator satisfies p0 = 2*pi/(P*mu) to
// relative precision 1e-12.
double painless_density(const gabor_system& sys, double x);

// Exact frame bounds (inf D, sup D) of the painless density over one common
// period of the translation lattices, computed from the piecewise-polynomial
// closed form.  Raises IncommensurateLattice when no common period exists
// within 128 multiples of the first step.
frame_report painless_exact_bounds(const gabor_system& sys);

struct condition_witness {
  double x = 0.0;
  int generator = 0;  // 1-based
  double value = 0.0;
  bool below = false;  // true: value fell below the lower threshold
  double threshold = 0.0;
};

struct condition_report {
  bool holds = true;
  std::optional<condition_witness> witness;
};

// Per-generator sandwich test: for every generator l and every sample x of
// one translation period,
//   alpha_o/(N*min_i mu_i) <= G0_l(x) <= beta_o/(N*max_i mu_i),
// where G0_l is the squared translation sum of window l and N the number of
// generators.  Samples each period at grid_points abscissae and reports the
// first violation.
condition_report check_generator_condition(const gabor_system& sys, double alpha_o,
                                           double beta_o, int grid_points);

// Classical sufficient frame bounds for the Gabor system of a single window
// with translation step a and modulation density b:
//   lower = (1/b) * inf_{[0,a]} (G0 - G1),  upper = (1/b) * sup (G0 + G1),
// where G0(x) = sum_n g(x-na)^2 and G1(x) = sum_{k!=0} |sum_n g(x-na)
// g(x-na-k/b)|.  Extrema are taken exactly on the piecewise-polynomial
// refinement (the grid_points scan is merged in as extra candidates).  A
// non-positive lower estimate is clamped to 0 and left uncertified.
frame_report christensen_bounds(const piecewise_window& w, double a, double b, int grid_points);

// Empirical bounds: min/max over the battery of frame_sum(f)/|f|^2.  Raises
// ZeroSignal on a (numerically) zero battery member.  witnesses = indices of
// the extremal signals; the report is flagged when any signal's outermost
// truncation shell carries more than 1e-4 of its frame sum.
frame_report oracle_bounds(const gabor_system& sys, const std::vector<grid_signal>& signals,
                           const lattice_truncation& t);

}  // namespace framelab
