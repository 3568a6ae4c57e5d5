#pragma once

#include <functional>
#include <string>
#include <vector>

#include "framelab/polynomial.hpp"

namespace framelab {

// One polynomial piece, valid on the half-open interval (lo, hi].
struct poly_piece {
  double lo = 0;
  double hi = 0;
  polynomial p;
};

// Piecewise polynomial with sorted, pairwise-disjoint pieces; value is 0
// outside every piece. Evaluation follows the (lo, hi] convention.
class piecewise_poly {
 public:
  piecewise_poly() = default;
  explicit piecewise_poly(std::vector<poly_piece> pieces);

  double operator()(double x) const;
  const std::vector<poly_piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  double lo() const;  // support hull
  double hi() const;

  piecewise_poly shifted(double c) const;  // q(x) = p(x - c)
  piecewise_poly squared() const;
  piecewise_poly restricted(double a, double b) const;  // clip to (a, b]
  friend piecewise_poly operator+(const piecewise_poly& a, const piecewise_poly& b);
  friend piecewise_poly operator*(double s, const piecewise_poly& p);

 private:
  std::vector<poly_piece> pieces_;
};

// Compactly supported window given by polynomial pieces. Construction
// validates ordering, disjointness, finiteness, the degree cap (8), and
// that the window is not identically zero.
struct piecewise_window {
  std::string label;
  piecewise_poly shape;
};

piecewise_window make_window(std::string label, std::vector<poly_piece> pieces);

double eval(const piecewise_window& w, double x);
double support_lo(const piecewise_window& w);
double support_hi(const piecewise_window& w);
double support_length(const piecewise_window& w);

// G0(x) = sum_n |w(x - n a)|^2. Finite sum by compact support.
double translation_power_sum(const piecewise_window& w, double a, double x);

// G1(x) = sum_{k != 0} |sum_n w(x - n a) w(x - n a - k step)|.
double correlation_sum(const piecewise_window& w, double a, double step, double x);

// G0 as an exact piecewise polynomial on (lo, hi].
piecewise_poly power_sum_poly(const piecewise_window& w, double a, double lo, double hi);

// The inner correlation functions F_k(x) = sum_n w(x-na) w(x-na-k step) on
// (lo, hi], one entry per k != 0 with any support overlap.
struct correlation_term {
  int k = 0;
  piecewise_poly f;
};
std::vector<correlation_term> correlation_poly(const piecewise_window& w, double a, double step,
                                               double lo, double hi);

// Exact extrema of a piecewise polynomial over [lo, hi]. Each piece is
// analyzed on the closure of its clipped interval, so one-sided limits at
// open endpoints count (essential extrema of the underlying function).
// Uncovered gaps of positive length contribute the value 0.
extremum_record piecewise_extrema(const piecewise_poly& g, double lo, double hi);

// Dense-grid fallback for extrema of an arbitrary scalar function.
extremum_record grid_extrema(const std::function<double(double)>& f, double lo, double hi,
                             int n_points);

}  // namespace framelab
