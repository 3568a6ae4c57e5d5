#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "framelab/extended_affine.hpp"
#include "framelab/frame_report.hpp"
#include "framelab/numerics.hpp"
#include "framelab/weyl_heisenberg.hpp"

namespace framelab {

struct perturbation_constants {
  double M = 0.0;
  double lambda = 0.0;
};

// A lattice-indexed family of atoms on a fixed grid.  `atom(l, m, n)` returns
// the atom for generator l (1-based) at lattice index (m, n), or nullopt when
// the atom vanishes on the grid.  Families compared against each other must
// share grid, truncation, and generator count.
struct atom_family {
  grid g;
  int generators = 1;
  lattice_truncation trunc;
  std::function<std::optional<grid_signal>(int l, int m, int n)> atom;
};

atom_family gabor_atoms(const gabor_system& sys, const grid& g, const lattice_truncation& t);
atom_family wavelet_atoms(const contraction_spec& s, const grid& g, const lattice_truncation& t);
// Same indices, every atom multiplied by `factor`.
atom_family scaled_atoms(atom_family base, double factor);

// Frame bounds of a perturbed family, given bounds (alpha_o, beta_o) of the
// original and perturbation constants (M, lambda) with lambda < alpha_o:
//   lower = alpha_o * (1 - lambda/alpha_o) / (2*(M+1)),
//   upper = 2*beta_o*(M+1) + lambda.
// Raises LambdaTooLarge when lambda >= alpha_o.
frame_report perturbed_bounds(double alpha_o, double beta_o, const perturbation_constants& k);

struct verify_witness {
  int signal = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct verify_report {
  bool holds = true;
  std::optional<verify_witness> witness;
};

// Checks the perturbation condition over a signal battery: for every f,
//   sum |<f, phi - phi~>|^2 <= M * min(sum |<f,phi>|^2, sum |<f,phi~>|^2)
//                              + lambda * |f|^2,
// up to relative slack 1e-10.  Raises IndexMismatch when the families are not
// aligned.
verify_report verify_condition(const atom_family& base, const atom_family& pert,
                               const perturbation_constants& k,
                               const std::vector<grid_signal>& signals);

// Smallest M that makes the condition hold over the battery once
// lambda = lambda_fraction * alpha_o is fixed.  The denominator is floored at
// 1e-12 * |f|^2 to keep degenerate signals from blowing up the estimate.
perturbation_constants estimate_constants(const atom_family& base, const atom_family& pert,
                                          const std::vector<grid_signal>& signals,
                                          double lambda_fraction, double alpha_o);

// perturbed_bounds applied to the closed-form bounds of a contracted system
// with parameters (epsilon, c) and base bounds (alpha_o, beta_o).
frame_report wavelet_perturbed_bounds(double epsilon, double c, double alpha_o, double beta_o,
                                      const perturbation_constants& k);

}  // namespace framelab
