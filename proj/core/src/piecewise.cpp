#include "framelab/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framelab/error.hpp"

namespace framelab {

namespace {

double merge_tol(double scale) { return 1e-12 * std::max(1.0, std::fabs(scale)); }

std::vector<double> refined_breakpoints(const piecewise_poly& a, const piecewise_poly& b) {
  std::vector<double> ts;
  for (const auto& pc : a.pieces()) { ts.push_back(pc.lo); ts.push_back(pc.hi); }
  for (const auto& pc : b.pieces()) { ts.push_back(pc.lo); ts.push_back(pc.hi); }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double x, double y) { return std::fabs(x - y) <= merge_tol(std::max(std::fabs(x), std::fabs(y))); }),
           ts.end());
  return ts;
}

const polynomial* piece_at(const piecewise_poly& p, double x) {
  for (const auto& pc : p.pieces())
    if (x > pc.lo && x <= pc.hi) return &pc.p;
  return nullptr;
}

piecewise_poly combine(const piecewise_poly& a, const piecewise_poly& b, bool multiply) {
  std::vector<double> ts = refined_breakpoints(a, b);
  std::vector<poly_piece> out;
  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    const double t0 = ts[i], t1 = ts[i + 1];
    if (t1 - t0 <= merge_tol(std::max(std::fabs(t0), std::fabs(t1)))) continue;
    const double mid = 0.5 * (t0 + t1);
    const polynomial* pa = piece_at(a, mid);
    const polynomial* pb = piece_at(b, mid);
    polynomial q;
    if (multiply) {
      if (!pa || !pb) continue;
      q = (*pa) * (*pb);
    } else {
      if (pa && pb) q = (*pa) + (*pb);
      else if (pa) q = *pa;
      else if (pb) q = *pb;
      else continue;
    }
    out.push_back({t0, t1, std::move(q)});
  }
  return piecewise_poly(std::move(out));
}

}  // namespace

piecewise_poly::piecewise_poly(std::vector<poly_piece> pieces) : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(),
            [](const poly_piece& a, const poly_piece& b) { return a.lo < b.lo; });
}

double piecewise_poly::operator()(double x) const {
  for (const auto& pc : pieces_)
    if (x > pc.lo && x <= pc.hi) return pc.p(x);
  return 0.0;
}

double piecewise_poly::lo() const {
  return pieces_.empty() ? 0.0 : pieces_.front().lo;
}

double piecewise_poly::hi() const {
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& pc : pieces_) h = std::max(h, pc.hi);
  return pieces_.empty() ? 0.0 : h;
}

piecewise_poly piecewise_poly::shifted(double c) const {
  std::vector<poly_piece> out;
  out.reserve(pieces_.size());
  for (const auto& pc : pieces_) out.push_back({pc.lo + c, pc.hi + c, pc.p.shifted(-c)});
  return piecewise_poly(std::move(out));
}

piecewise_poly piecewise_poly::squared() const {
  std::vector<poly_piece> out;
  out.reserve(pieces_.size());
  for (const auto& pc : pieces_) out.push_back({pc.lo, pc.hi, pc.p * pc.p});
  return piecewise_poly(std::move(out));
}

piecewise_poly piecewise_poly::restricted(double a, double b) const {
  std::vector<poly_piece> out;
  for (const auto& pc : pieces_) {
    const double lo = std::max(pc.lo, a);
    const double hi = std::min(pc.hi, b);
    if (hi - lo > merge_tol(std::max(std::fabs(lo), std::fabs(hi)))) out.push_back({lo, hi, pc.p});
  }
  return piecewise_poly(std::move(out));
}

piecewise_poly operator+(const piecewise_poly& a, const piecewise_poly& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return combine(a, b, /*multiply=*/false);
}

piecewise_poly operator*(double s, const piecewise_poly& p) {
  std::vector<poly_piece> out;
  out.reserve(p.pieces().size());
  for (const auto& pc : p.pieces()) out.push_back({pc.lo, pc.hi, s * pc.p});
  return piecewise_poly(std::move(out));
}

piecewise_window make_window(std::string label, std::vector<poly_piece> pieces) {
  if (pieces.empty()) raise(errc::invalid_window, "window '" + label + "' has no pieces");
  std::sort(pieces.begin(), pieces.end(),
            [](const poly_piece& a, const poly_piece& b) { return a.lo < b.lo; });
  bool any_nonzero = false;
  for (size_t i = 0; i < pieces.size(); ++i) {
    const auto& pc = pieces[i];
    if (!std::isfinite(pc.lo) || !std::isfinite(pc.hi) || !(pc.lo < pc.hi))
      raise(errc::invalid_window,
            "window '" + label + "' piece " + std::to_string(i) + " has an empty or non-finite interval");
    if (pc.p.degree() > 8)
      raise(errc::invalid_window,
            "window '" + label + "' piece " + std::to_string(i) + " exceeds the degree cap of 8");
    if (i > 0 && pieces[i].lo < pieces[i - 1].hi - merge_tol(pieces[i].lo))
      raise(errc::invalid_window, "window '" + label + "' pieces overlap");
    if (!pc.p.is_zero()) any_nonzero = true;
  }
  if (!any_nonzero) raise(errc::invalid_window, "window '" + label + "' is identically zero");
  return piecewise_window{std::move(label), piecewise_poly(std::move(pieces))};
}

double eval(const piecewise_window& w, double x) { return w.shape(x); }

double support_lo(const piecewise_window& w) {
  if (w.shape.empty()) raise(errc::invalid_window, "window '" + w.label + "' has no pieces");
  return w.shape.lo();
}

double support_hi(const piecewise_window& w) {
  if (w.shape.empty()) raise(errc::invalid_window, "window '" + w.label + "' has no pieces");
  return w.shape.hi();
}

double support_length(const piecewise_window& w) { return support_hi(w) - support_lo(w); }

namespace {

void translate_range(const piecewise_window& w, double a, double x_lo, double x_hi, long& n0,
                     long& n1) {
  // All n with (support + n a) intersecting [x_lo, x_hi], padded by one.
  const double s0 = support_lo(w), s1 = support_hi(w);
  n0 = static_cast<long>(std::floor((x_lo - s1) / a)) - 1;
  n1 = static_cast<long>(std::ceil((x_hi - s0) / a)) + 1;
}

}  // namespace

double translation_power_sum(const piecewise_window& w, double a, double x) {
  if (!(a > 0)) raise(errc::validation_error, "translation step a must be positive");
  long n0, n1;
  translate_range(w, a, x, x, n0, n1);
  double acc = 0.0;
  for (long n = n0; n <= n1; ++n) {
    const double v = w.shape(x - static_cast<double>(n) * a);
    acc += v * v;
  }
  return acc;
}

double correlation_sum(const piecewise_window& w, double a, double step, double x) {
  if (!(a > 0) || !(step > 0))
    raise(errc::validation_error, "translation step a and correlation step must be positive");
  const double mu = support_length(w);
  const long kmax = static_cast<long>(std::ceil(mu / step)) + 1;
  long n0, n1;
  translate_range(w, a, x, x, n0, n1);
  double acc = 0.0;
  for (long k = -kmax; k <= kmax; ++k) {
    if (k == 0) continue;
    double inner = 0.0;
    for (long n = n0; n <= n1; ++n) {
      const double y = x - static_cast<double>(n) * a;
      inner += w.shape(y) * w.shape(y - static_cast<double>(k) * step);
    }
    acc += std::fabs(inner);
  }
  return acc;
}

piecewise_poly power_sum_poly(const piecewise_window& w, double a, double lo, double hi) {
  if (!(a > 0)) raise(errc::validation_error, "translation step a must be positive");
  long n0, n1;
  translate_range(w, a, lo, hi, n0, n1);
  piecewise_poly acc;
  for (long n = n0; n <= n1; ++n) {
    piecewise_poly term =
        w.shape.shifted(static_cast<double>(n) * a).squared().restricted(lo, hi);
    if (!term.empty()) acc = acc + term;
  }
  return acc;
}

std::vector<correlation_term> correlation_poly(const piecewise_window& w, double a, double step,
                                               double lo, double hi) {
  if (!(a > 0) || !(step > 0))
    raise(errc::validation_error, "translation step a and correlation step must be positive");
  const double mu = support_length(w);
  const long kmax = static_cast<long>(std::ceil(mu / step)) + 1;
  long n0, n1;
  translate_range(w, a, lo, hi, n0, n1);
  std::vector<correlation_term> terms;
  for (long k = -kmax; k <= kmax; ++k) {
    if (k == 0) continue;
    piecewise_poly acc;
    for (long n = n0; n <= n1; ++n) {
      const double sh = static_cast<double>(n) * a;
      piecewise_poly prod = combine(w.shape.shifted(sh),
                                    w.shape.shifted(sh + static_cast<double>(k) * step),
                                    /*multiply=*/true)
                                .restricted(lo, hi);
      if (!prod.empty()) acc = acc + prod;
    }
    if (!acc.empty()) terms.push_back({static_cast<int>(k), std::move(acc)});
  }
  return terms;
}

extremum_record piecewise_extrema(const piecewise_poly& g, double lo, double hi) {
  const double tol = merge_tol(hi - lo);
  extremum_record rec;
  bool any = false;
  auto consider = [&](double v, double x) {
    if (!any) {
      rec.min_value = rec.max_value = v;
      rec.argmin = rec.argmax = x;
      any = true;
      return;
    }
    if (v < rec.min_value) { rec.min_value = v; rec.argmin = x; }
    if (v > rec.max_value) { rec.max_value = v; rec.argmax = x; }
  };

  double cursor = lo;
  for (const auto& pc : g.pieces()) {
    const double c0 = std::max(pc.lo, lo);
    const double c1 = std::min(pc.hi, hi);
    if (c1 < c0) continue;
    if (c0 > cursor + tol) consider(0.0, 0.5 * (cursor + c0));  // uncovered gap
    cursor = std::max(cursor, c1);
    const extremum_record pe = extrema_on(pc.p, c0, c1);
    consider(pe.min_value, pe.argmin);
    consider(pe.max_value, pe.argmax);
  }
  if (cursor < hi - tol) consider(0.0, 0.5 * (cursor + hi));
  if (!any) consider(0.0, lo);
  return rec;
}

extremum_record grid_extrema(const std::function<double(double)>& f, double lo, double hi,
                             int n_points) {
  if (n_points < 1) raise(errc::validation_error, "grid_extrema needs at least one subinterval");
  extremum_record rec;
  rec.min_value = rec.max_value = f(lo);
  rec.argmin = rec.argmax = lo;
  const double h = (hi - lo) / n_points;
  for (int i = 1; i <= n_points; ++i) {
    const double x = lo + i * h;
    const double v = f(x);
    if (v < rec.min_value) { rec.min_value = v; rec.argmin = x; }
    if (v > rec.max_value) { rec.max_value = v; rec.argmax = x; }
  }
  return rec;
}

}  // namespace framelab
