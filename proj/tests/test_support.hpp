#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "framelab/error.hpp"
#include "framelab/extended_affine.hpp"
#include "framelab/numerics.hpp"
#include "framelab/piecewise.hpp"
#include "framelab/weyl_heisenberg.hpp"

// Shared builders for the window pair used throughout the suite:
//   ramp:      1+x on (0,1], x   on (1,2]   (exact density bounds 4, 16)
//   half-ramp: 1+x on (0,1], x/2 on (1,2]   (exact density bounds 5/2, 10)
namespace ts {

using namespace framelab;

inline piecewise_window ramp_window() {
  return make_window("ramp", {{0.0, 1.0, polynomial({1.0, 1.0})},
                              {1.0, 2.0, polynomial({0.0, 1.0})}});
}

inline piecewise_window half_ramp_window() {
  return make_window("half-ramp", {{0.0, 1.0, polynomial({1.0, 1.0})},
                                   {1.0, 2.0, polynomial({0.0, 0.5})}});
}

inline piecewise_window box_window() {
  return make_window("box", {{0.0, 1.0, polynomial({1.0})}});
}

inline gabor_system ramp_system() {
  return make_gabor_system({1.0, 0.0}, {{ramp_window(), 1.0, std::numbers::pi}});
}

inline gabor_system pair_system() {
  return make_gabor_system({1.0, 0.0}, {{ramp_window(), 1.0, std::numbers::pi},
                                        {half_ramp_window(), 1.0, std::numbers::pi}});
}

inline gabor_system box_system() {
  return make_gabor_system({1.0, 0.0}, {{box_window(), 1.0, 2.0 * std::numbers::pi}});
}

inline contraction_spec ramp_contraction(double eps) {
  return make_contraction_spec(ramp_system(), eps, 1.0, -1.0, 1.0, 4.0, 16.0);
}

// Reference frame sums assembled atom by atom; slow but direct.
inline double naive_gabor_sum(const gabor_system& sys, const grid_signal& f,
                              const lattice_truncation& t) {
  double acc = 0.0;
  for (int l = 1; l <= static_cast<int>(sys.generators.size()); ++l)
    for (int m = -t.m_max; m <= t.m_max; ++m)
      for (int n = -t.n_max; n <= t.n_max; ++n) {
        try {
          acc += std::norm(inner_product(f, gabor_atom(sys, m, n, l, f.g)));
        } catch (const error& e) {
          if (e.code() != errc::out_of_domain) throw;
        }
      }
  return acc;
}

inline double naive_wavelet_sum(const contraction_spec& s, const grid_signal& f,
                                const lattice_truncation& t) {
  double acc = 0.0;
  for (int l = 1; l <= static_cast<int>(s.base.generators.size()); ++l)
    for (int m = -t.m_max; m <= t.m_max; ++m)
      for (int n = -t.n_max; n <= t.n_max; ++n) {
        try {
          acc += std::norm(inner_product(f, wavelet_atom(s, m, n, l, f.g)));
        } catch (const error& e) {
          if (e.code() != errc::out_of_domain) throw;
        }
      }
  return acc;
}

}  // namespace ts
