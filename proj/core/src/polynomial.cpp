#include "framelab/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace framelab {

namespace {
constexpr double kZeroCoeff = 1e-300;
}

polynomial::polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

polynomial polynomial::constant(double c) { return polynomial(std::vector<double>{c}); }

void polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

polynomial polynomial::derivative() const {
  if (c_.size() <= 1) return polynomial();
  std::vector<double> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
  return polynomial(std::move(d));
}

polynomial polynomial::shifted(double c) const {
  if (c_.empty() || c == 0.0) return *this;
  std::vector<double> a = c_;
  const size_t n = a.size();
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t j = n - 1; j > i; --j) a[j - 1] += c * a[j];
  return polynomial(std::move(a));
}

polynomial operator+(const polynomial& a, const polynomial& b) {
  std::vector<double> s(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i) s[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) s[i] += b.c_[i];
  return polynomial(std::move(s));
}

polynomial operator-(const polynomial& a, const polynomial& b) { return a + (-1.0 * b); }

polynomial operator*(const polynomial& a, const polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return polynomial();
  std::vector<double> prod(a.c_.size() + b.c_.size() - 1, 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
  return polynomial(std::move(prod));
}

polynomial operator*(double s, const polynomial& p) {
  std::vector<double> c = p.c_;
  for (double& v : c) v *= s;
  return polynomial(std::move(c));
}

std::vector<double> polynomial::real_roots_in(double lo, double hi) const {
  std::vector<double> out;
  // Drop numerically irrelevant leading coefficients before forming the
  // companion matrix; they would otherwise poison the eigenproblem.
  std::vector<double> c = c_;
  double mag = 0.0;
  for (double v : c) mag = std::max(mag, std::fabs(v));
  if (mag == 0.0) return out;
  while (c.size() > 1 && std::fabs(c.back()) < std::max(kZeroCoeff, 1e-14 * mag)) c.pop_back();
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg <= 0) return out;

  const double span = std::max(1.0, std::fabs(hi - lo));
  const double edge = 1e-9 * span;
  auto push = [&](double r) {
    if (r < lo - edge || r > hi + edge) return;
    r = std::clamp(r, lo, hi);
    out.push_back(r);
  };

  if (deg == 1) {
    push(-c[0] / c[1]);
  } else if (deg == 2) {
    const double a = c[2], b = c[1], c0 = c[0];
    const double disc = b * b - 4.0 * a * c0;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (b + (b >= 0 ? sq : -sq));
      push(q / a);
      if (q != 0.0) push(c0 / q);
      else push(-b / (2.0 * a));
    }
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    const polynomial p(c);
    const polynomial dp = p.derivative();
    for (int i = 0; i < deg; ++i) {
      const auto ev = es.eigenvalues()[i];
      if (std::fabs(ev.imag()) > 1e-5 * (1.0 + std::fabs(ev.real()))) continue;
      double r = ev.real();
      for (int it = 0; it < 8; ++it) {
        const double d = dp(r);
        if (d == 0.0) break;
        const double step = p(r) / d;
        r -= step;
        if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(r))) break;
      }
      push(r);
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [&](double a, double b) { return std::fabs(a - b) < 1e-12 * span; }),
            out.end());
  return out;
}

extremum_record extrema_on(const polynomial& p, double lo, double hi) {
  extremum_record rec;
  rec.min_value = rec.max_value = p(lo);
  rec.argmin = rec.argmax = lo;
  auto consider = [&](double x) {
    const double v = p(x);
    if (v < rec.min_value) { rec.min_value = v; rec.argmin = x; }
    if (v > rec.max_value) { rec.max_value = v; rec.argmax = x; }
  };
  consider(hi);
  for (double r : p.derivative().real_roots_in(lo, hi)) consider(r);
  return rec;
}

}  // namespace framelab
