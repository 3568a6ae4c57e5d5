#pragma once

#include <functional>
#include <vector>

#include "framelab/frame_report.hpp"
#include "framelab/numerics.hpp"
#include "framelab/weyl_heisenberg.hpp"

namespace framelab {

struct ea_params {
  double alpha = 1.0;  // must be nonzero
  double beta = 0.0;
};

// Affine action (dilation a > 0, translation b):
//   (A(a,b) f)(x) = a^{-1/2} f((x + alpha*b)/a),
// evaluated by linear interpolation on the signal's grid (zero outside).
grid_signal affine_rep(double alpha, double a, double b, const grid_signal& f);

// Affine action tensored with a central phase: e^{i*beta*y} * A(a,b) f.
grid_signal ea_rep(const ea_params& params, double a, double b, double y, const grid_signal& f);

// Unitary U_eps from the Hardy space onto L^2(R):
//   (U_eps f)(x) = sqrt(eps) * e^{-eps*x/2} * fhat(e^{-eps*x}),
// where fhat is the unitary Fourier transform of f.  The spectrum is refined
// by zero-padding before the substitution t = e^{-eps*x} is interpolated.
// Raises NotHardy when the negative-frequency energy fraction is >= 1e-6.
grid_signal u_epsilon(const grid_signal& f, double eps);

// Inverse of u_epsilon: reconstructs the signal on `target` whose spectrum is
//   fhat(w) = h(-ln(w)/eps) * e^{eps*x/2} / sqrt(eps)  for w > 0, 0 otherwise.
grid_signal u_epsilon_inverse(const grid_signal& h, double eps, const grid& target);

// Conjugated wavelet action zeta = U_eps o (A tensor phase) o U_eps^{-1},
// evaluated in closed form:
//   (Z(a,b,y) f)(x) = e^{i*beta*y} * e^{i*alpha*b*e^{-eps*x}} * f(x - ln(a)/eps).
grid_signal zeta_apply(const ea_params& params, double eps, double a, double b, double y,
                       const grid_signal& f);

// A painless Gabor base system together with the contraction parameters that
// turn it into a wavelet-type system.  u0 + v0 must equal the base Q.
struct contraction_spec {
  gabor_system base;
  double epsilon = 1.0;  // in (0, 1]
  double c = 1.0;        // > 0
  double u0 = 0.0;
  double v0 = 0.0;
  double alpha_o = 1.0;  // certified lower frame bound of the base system
  double beta_o = 1.0;   // certified upper frame bound, >= alpha_o
};

contraction_spec make_contraction_spec(gabor_system base, double epsilon, double c, double u0,
                                       double v0, double alpha_o, double beta_o);

double u_of(const contraction_spec& s);  // u0 + P/epsilon
double v_of(const contraction_spec& s);  // v0 - P/epsilon

struct lattice_point {
  double a = 1.0;
  double b = 0.0;
  double y = 0.0;
};

// Wavelet lattice for generator l (1-based):
//   a_n = e^{-eps*n*q0},
//   b_mn = beta_o * a_n * pi * m / (alpha_o * v(eps) * L * c * mu_l),
//   y_mn = b_mn * ln(a_n) * a_n / (a_n - 1)   (y_m0 = b_m0),
// with L = ln(eps + c) - ln(c).  Raises DegenerateV when |v(eps)| < 1e-12.
lattice_point contraction_lattice(const contraction_spec& s, int m, int n, int l);

// Lattice atom:
//   e^{i*u(eps)*y_mn} * e^{i*v(eps)*b_mn*e^{-eps*x}} * e^{-(eps/2)(x+n*q0)}
//     * window_l(x + n*q0).
grid_signal wavelet_atom(const contraction_spec& s, int m, int n, int l, const grid& g);

struct wavelet_sum_options {
  // Optional replacement for the lattice phase ordinate y_{l,m,n}.  The frame
  // sum is invariant under any choice (each atom only gains a unimodular
  // factor); the hook exists to let tests assert exactly that.
  std::function<double(int l, int m, int n)> y_override;
};

// sum over l, |m| <= m_max, |n| <= n_max of |<f, wavelet atom>|^2.  The chirp
// frequency v(eps)*b_mn is evaluated in cancelled form, so the sum stays
// finite even where v(eps) = 0 (the per-atom phase is then skipped).
double wavelet_frame_sum(const contraction_spec& s, const grid_signal& f,
                         const lattice_truncation& t, const wavelet_sum_options& opt = {});
frame_sum_result wavelet_frame_sum_with_tail(const contraction_spec& s, const grid_signal& f,
                                             const lattice_truncation& t,
                                             const wavelet_sum_options& opt = {});

// Closed-form frame bounds of the contracted system:
//   ( (alpha_o^2 * c / beta_o) * L/eps,  alpha_o * c * L/eps ).
frame_report contraction_closed_bounds(const contraction_spec& s);

struct contraction_sweep_row {
  double epsilon = 0.0;
  double lower = 0.0;        // closed-form bounds at this epsilon
  double upper = 0.0;
  double wavelet_sum = 0.0;  // truncated frame sum of f
};

struct contraction_sweep_report {
  std::vector<contraction_sweep_row> rows;
  double gabor_sum = 0.0;  // truncated base-system frame sum of f
  double norm_sq = 0.0;
  bool upper_monotone = true;  // upper bounds nondecreasing as epsilon decreases
  bool chain_ok = true;        // wavelet <= gabor and gabor <= beta_o*|f|^2, 2% slack
};

// Re-evaluates the contracted system across an epsilon sweep for one signal
// and checks the expected orderings.
contraction_sweep_report contraction_limit_check(const contraction_spec& s, const grid_signal& f,
                                                 const std::vector<double>& eps_sweep,
                                                 const lattice_truncation& t);

}  // namespace framelab
