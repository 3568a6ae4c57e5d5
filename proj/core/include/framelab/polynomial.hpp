#pragma once

#include <vector>

namespace framelab {

// Dense real polynomial, coefficients in ascending degree. The zero
// polynomial has an empty coefficient vector and degree() == -1.
class polynomial {
 public:
  polynomial() = default;
  explicit polynomial(std::vector<double> coeffs);
  static polynomial constant(double c);

  double operator()(double x) const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  polynomial derivative() const;
  // p(x + c) via synthetic Taylor shift.
  polynomial shifted(double c) const;

  friend polynomial operator+(const polynomial& a, const polynomial& b);
  friend polynomial operator-(const polynomial& a, const polynomial& b);
  friend polynomial operator*(const polynomial& a, const polynomial& b);
  friend polynomial operator*(double s, const polynomial& p);

  // Real roots inside [lo, hi], ascending, deduplicated. Degrees <= 2 are
  // handled in closed form; higher degrees use companion-matrix eigenvalues
  // polished by Newton steps. Constants (including zero) report no roots.
  std::vector<double> real_roots_in(double lo, double hi) const;

 private:
  std::vector<double> c_;
  void trim();
};

struct extremum_record {
  double min_value = 0;
  double max_value = 0;
  double argmin = 0;
  double argmax = 0;
};

// Exact extrema of p over the closed interval [lo, hi] (endpoints plus
// critical points of the derivative).
extremum_record extrema_on(const polynomial& p, double lo, double hi);

}  // namespace framelab
