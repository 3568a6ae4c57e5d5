#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace framelab {

using cd = std::complex<double>;

// Uniform sampling grid: points x_i = x_min + i*dx, i = 0..n-1, with
// dx = (x_max - x_min)/n.  The right endpoint is excluded so that translating
// by an integer number of samples permutes the grid.
struct grid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n = 0;

  double dx() const { return (x_max - x_min) / n; }
  double width() const { return x_max - x_min; }
  double point(int i) const { return x_min + i * dx(); }

  friend bool operator==(const grid&, const grid&) = default;
};

grid make_grid(double x_min, double x_max, int n);

// Default working grid: [-16, 16) at 8192 points (dx = 1/256).
grid default_grid();

struct grid_signal {
  grid g;
  std::vector<cd> values;
};

grid_signal make_signal(const grid& g);

// <f|h> = dx * sum conj(f_i) h_i  (conjugate-linear in the first argument).
cd inner_product(const grid_signal& f, const grid_signal& h);
double norm_sq(const grid_signal& f);

// Unitary Fourier transform, convention
//   (Ff)(w) = (2*pi)^{-1/2} \int f(x) e^{-iwx} dx,
// discretised as a phase-corrected DFT on the signal's grid.  The returned
// signal lives on the frequency grid [-s*dw, (n-s)*dw) with dw = 2*pi/(n*dx)
// and s = n/2, i.e. frequencies ascend through zero.
grid_signal fourier_transform(const grid_signal& f);
grid_signal inverse_fourier_transform(const grid_signal& fhat, const grid& target);

// Fraction of spectral energy at negative frequencies.
double negative_frequency_fraction(const grid_signal& f);

enum class signal_kind { bandlimited, compact, hardy };

// Deterministic pseudo-random test battery.  `compact` signals are smooth
// bumps supported well inside the grid; `bandlimited` signals have spectrum
// in |w| <= 3; `hardy` signals additionally have (numerically) no negative
// frequencies.  Norms land in roughly [0.5, 2].
std::vector<grid_signal> random_test_signals(const grid& g, int count, std::uint64_t seed,
                                             signal_kind kind);

namespace detail {

// Deterministic RNG wrapper.  mt19937_64 is pinned by the standard, and the
// uniform/normal transforms are hand-rolled (the std distributions are not
// reproducible across library implementations).
class rng64 {
 public:
  explicit rng64(std::uint64_t seed) : eng_(seed) {}
  double uniform();  // [0, 1)
  double normal();   // standard normal, Box-Muller
 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace detail

}  // namespace framelab
