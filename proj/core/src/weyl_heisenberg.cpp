#include "framelab/weyl_heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "framelab/error.hpp"

namespace framelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double gen_mu(const gabor_generator& g) { return support_length(g.window); }

void require_painless(const gabor_system& sys) {
  for (size_t l = 0; l < sys.generators.size(); ++l) {
    const auto& gen = sys.generators[l];
    const double want = painless_p0(sys.params.P, gen_mu(gen));
    if (std::fabs(gen.p0 - want) > 1e-12 * std::max(1.0, std::fabs(want)))
      raise(errc::not_painless, "generator " + std::to_string(l + 1) +
                                    " violates p0 = 2*pi/(P*mu): p0 = " + std::to_string(gen.p0) +
                                    ", required " + std::to_string(want));
  }
}

const polynomial* piece_poly_at(const piecewise_poly& p, double x) {
  for (const auto& pc : p.pieces())
    if (x > pc.lo && x <= pc.hi) return &pc.p;
  return nullptr;
}

}  // namespace

gabor_system make_gabor_system(wh_params params, std::vector<gabor_generator> generators) {
  if (generators.empty()) raise(errc::validation_error, "a system needs at least one generator");
  if (params.P == 0.0) raise(errc::validation_error, "representation parameter P must be nonzero");
  for (size_t l = 0; l < generators.size(); ++l) {
    const auto& g = generators[l];
    const std::string tag = "generator " + std::to_string(l + 1);
    if (g.q0 == 0.0) raise(errc::validation_error, tag + ": translation step q0 must be nonzero");
    if (g.p0 == 0.0) raise(errc::validation_error, tag + ": modulation step p0 must be nonzero");
    if (std::fabs(g.q0 * g.p0) > kTwoPi * (1.0 + 1e-12))
      raise(errc::validation_error, tag + ": cell area |q0*p0| exceeds 2*pi");
  }
  return gabor_system{params, std::move(generators)};
}

grid_signal wh_apply(const wh_params& params, double u1, double u2, double z,
                     const grid_signal& f) {
  if (std::fabs(z) >= f.g.width())
    raise(errc::out_of_domain, "translation |z| exceeds the grid span");
  const long r = std::lround(z / f.g.dx());
  grid_signal out = make_signal(f.g);
  for (int i = 0; i < f.g.n; ++i) {
    const long j = i + r;
    if (j < 0 || j >= f.g.n) continue;
    const double x = f.g.point(i);
    out.values[i] =
        std::polar(1.0, params.P * (u1 + x * u2) + params.Q * u2) * f.values[j];
  }
  return out;
}

grid_signal gabor_atom(const gabor_system& sys, int m, int n, int l, const grid& g) {
  if (l < 1 || l > static_cast<int>(sys.generators.size()))
    raise(errc::validation_error, "generator index l must be in 1.." +
                                      std::to_string(sys.generators.size()));
  const auto& gen = sys.generators[l - 1];
  const double a = gen.q0, b = gen.p0;
  const double s0 = support_lo(gen.window) - n * a;
  const double s1 = support_hi(gen.window) - n * a;
  if (s1 < g.x_min || s0 >= g.x_max)
    raise(errc::out_of_domain, "translated atom support misses the grid");
  grid_signal out = make_signal(g);
  const double P = sys.params.P, Q = sys.params.Q;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.point(i);
    const double w = gen.window.shape(x + n * a);
    if (w == 0.0) continue;
    const double phase = m * b * (P * (x + 0.5 * n * a) + Q);
    out.values[i] = std::polar(w, phase);
  }
  return out;
}

double painless_p0(double P, double mu) {
  if (P == 0.0) raise(errc::validation_error, "representation parameter P must be nonzero");
  if (!(mu > 0.0)) raise(errc::validation_error, "support length mu must be positive");
  return kTwoPi / (P * mu);
}

frame_sum_result frame_sum_with_tail(const gabor_system& sys, const grid_signal& f,
                                     const lattice_truncation& t) {
  if (t.m_max < 0 || t.n_max < 0)
    raise(errc::validation_error, "truncation radii must be non-negative");
  const grid& g = f.g;
  const double dx = g.dx();
  frame_sum_result res;

  std::vector<cd> base, up, dn, phasor;
  for (const auto& gen : sys.generators) {
    const double a = gen.q0, b = gen.p0;
    const double w0 = support_lo(gen.window), w1 = support_hi(gen.window);
    const double P = sys.params.P, Q = sys.params.Q;
    for (int n = -t.n_max; n <= t.n_max; ++n) {
      // index range of the translated support (window is zero elsewhere)
      const double s0 = w0 - n * a, s1 = w1 - n * a;
      int i0 = static_cast<int>(std::floor((s0 - g.x_min) / dx));
      int i1 = static_cast<int>(std::ceil((s1 - g.x_min) / dx)) + 1;
      i0 = std::max(i0, 0);
      i1 = std::min(i1, g.n - 1);
      if (i1 < i0) continue;  // no overlap: every term of this column is zero

      base.clear();
      phasor.clear();
      for (int i = i0; i <= i1; ++i) {
        const double x = g.point(i);
        const double w = gen.window.shape(x + n * a);
        if (w == 0.0) continue;
        base.push_back(std::conj(f.values[i]) * (w * dx));
        phasor.push_back(std::polar(1.0, b * (P * (x + 0.5 * n * a) + Q)));
      }
      if (base.empty()) continue;

      const bool outer_n = (std::abs(n) == t.n_max);
      cd s{0.0, 0.0};
      for (const cd& c : base) s += c;
      double term = std::norm(s);
      res.value += term;
      if (outer_n || t.m_max == 0) res.outer_shell += term;

      up = base;
      dn = base;
      for (int m = 1; m <= t.m_max; ++m) {
        cd su{0.0, 0.0}, sd{0.0, 0.0};
        for (size_t j = 0; j < base.size(); ++j) {
          up[j] *= phasor[j];
          dn[j] *= std::conj(phasor[j]);
          su += up[j];
          sd += dn[j];
        }
        term = std::norm(su) + std::norm(sd);
        res.value += term;
        if (outer_n || m == t.m_max) res.outer_shell += term;
      }
    }
  }
  return res;
}

double frame_sum(const gabor_system& sys, const grid_signal& f, const lattice_truncation& t) {
  return frame_sum_with_tail(sys, f, t).value;
}

double painless_density(const gabor_system& sys, double x) {
  require_painless(sys);
  double acc = 0.0;
  for (const auto& gen : sys.generators)
    acc += gen_mu(gen) * translation_power_sum(gen.window, std::fabs(gen.q0), x);
  return acc;
}

frame_report painless_exact_bounds(const gabor_system& sys) {
  require_painless(sys);
  std::vector<double> steps;
  for (const auto& gen : sys.generators) steps.push_back(std::fabs(gen.q0));

  double period = 0.0;
  for (int k = 1; k <= 128 && period == 0.0; ++k) {
    const double T = k * steps.front();
    bool ok = true;
    for (double a : steps) {
      const double q = T / a;
      if (std::fabs(q - std::round(q)) > 1e-9 || std::round(q) < 1.0) { ok = false; break; }
    }
    if (ok) period = T;
  }
  if (period == 0.0)
    raise(errc::incommensurate_lattice,
          "translation steps admit no common period within 128 multiples of the first step");

  piecewise_poly density;
  for (const auto& gen : sys.generators) {
    piecewise_poly term = power_sum_poly(gen.window, std::fabs(gen.q0), 0.0, period);
    density = density + gen_mu(gen) * term;
  }
  const extremum_record rec = piecewise_extrema(density, 0.0, period);

  frame_report rep;
  rep.lower = std::max(rec.min_value, 0.0);
  rep.upper = rec.max_value;
  rep.method = "closed_form";
  rep.lower_certified = rec.min_value > 0.0;
  rep.witnesses = std::make_pair(rec.argmin, rec.argmax);
  return rep;
}

condition_report check_generator_condition(const gabor_system& sys, double alpha_o, double beta_o,
                                           int grid_points) {
  if (!(alpha_o > 0.0) || !(beta_o >= alpha_o))
    raise(errc::validation_error, "need 0 < alpha_o <= beta_o");
  if (grid_points < 1) raise(errc::validation_error, "grid_points must be positive");
  const int N = static_cast<int>(sys.generators.size());
  double mu_min = gen_mu(sys.generators.front()), mu_max = mu_min;
  for (const auto& gen : sys.generators) {
    mu_min = std::min(mu_min, gen_mu(gen));
    mu_max = std::max(mu_max, gen_mu(gen));
  }
  const double lo_th = alpha_o / (N * mu_min);
  const double hi_th = beta_o / (N * mu_max);
  const double slack = 1e-12 * std::max({1.0, lo_th, hi_th});

  condition_report rep;
  for (int l = 1; l <= N; ++l) {
    const auto& gen = sys.generators[l - 1];
    const double a = std::fabs(gen.q0);
    for (int i = 0; i < grid_points; ++i) {
      const double x = a * (i + 1) / grid_points;
      const double v = translation_power_sum(gen.window, a, x);
      if (v < lo_th - slack) {
        rep.holds = false;
        rep.witness = condition_witness{x, l, v, true, lo_th};
        return rep;
      }
      if (v > hi_th + slack) {
        rep.holds = false;
        rep.witness = condition_witness{x, l, v, false, hi_th};
        return rep;
      }
    }
  }
  return rep;
}

frame_report christensen_bounds(const piecewise_window& w, double a, double b, int grid_points) {
  if (!(a > 0.0) || !(b > 0.0))
    raise(errc::validation_error, "translation step a and density b must be positive");
  if (grid_points < 2) raise(errc::validation_error, "grid_points must be at least 2");

  const piecewise_poly g0 = power_sum_poly(w, a, 0.0, a);
  const std::vector<correlation_term> corr = correlation_poly(w, a, 1.0 / b, 0.0, a);

  // Refine [0, a] by every piece boundary and every sign change of a
  // correlation term, so G0 +- G1 is a single polynomial on each interval.
  std::vector<double> ts{0.0, a};
  auto add_breaks = [&](const piecewise_poly& p) {
    for (const auto& pc : p.pieces()) {
      if (pc.lo > 0.0 && pc.lo < a) ts.push_back(pc.lo);
      if (pc.hi > 0.0 && pc.hi < a) ts.push_back(pc.hi);
    }
  };
  add_breaks(g0);
  for (const auto& term : corr) {
    add_breaks(term.f);
    for (const auto& pc : term.f.pieces())
      for (double r : pc.p.real_roots_in(std::max(pc.lo, 0.0), std::min(pc.hi, a)))
        if (r > 0.0 && r < a) ts.push_back(r);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [a](double x, double y) { return std::fabs(x - y) <= 1e-12 * a; }),
           ts.end());

  double inf_minus = std::numeric_limits<double>::infinity();
  double sup_plus = -std::numeric_limits<double>::infinity();
  double arg_inf = 0.0, arg_sup = 0.0;
  auto consider = [&](double lo_v, double lo_x, double hi_v, double hi_x) {
    if (lo_v < inf_minus) { inf_minus = lo_v; arg_inf = lo_x; }
    if (hi_v > sup_plus) { sup_plus = hi_v; arg_sup = hi_x; }
  };

  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    const double t0 = ts[i], t1 = ts[i + 1];
    if (t1 - t0 <= 1e-12 * a) continue;
    const double mid = 0.5 * (t0 + t1);
    const polynomial* base = piece_poly_at(g0, mid);
    polynomial hm = base ? *base : polynomial{};
    polynomial hp = hm;
    for (const auto& term : corr) {
      const polynomial* fk = piece_poly_at(term.f, mid);
      if (!fk) continue;
      const double v = (*fk)(mid);
      if (v == 0.0) continue;
      const double s = v > 0.0 ? 1.0 : -1.0;
      hm = hm + (-s) * (*fk);
      hp = hp + s * (*fk);
    }
    const extremum_record em = extrema_on(hm, t0, t1);
    const extremum_record ep = extrema_on(hp, t0, t1);
    consider(em.min_value, em.argmin, ep.max_value, ep.argmax);
  }

  // Merge a plain scan of the period as extra candidates.
  auto eval_g1 = [&](double x) {
    double acc = 0.0;
    for (const auto& term : corr) acc += std::fabs(term.f(x));
    return acc;
  };
  for (int i = 0; i < grid_points; ++i) {
    const double x = a * (i + 1) / grid_points;
    const double v0 = g0(x), v1 = eval_g1(x);
    consider(v0 - v1, x, v0 + v1, x);
  }

  frame_report rep;
  rep.method = "grid_extrema";
  rep.upper = sup_plus / b;
  if (inf_minus > 0.0) {
    rep.lower = inf_minus / b;
  } else {
    rep.lower = 0.0;
    rep.lower_certified = false;
  }
  rep.witnesses = std::make_pair(arg_inf, arg_sup);
  return rep;
}

frame_report oracle_bounds(const gabor_system& sys, const std::vector<grid_signal>& signals,
                           const lattice_truncation& t) {
  if (signals.empty()) raise(errc::validation_error, "oracle needs at least one signal");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  int arg_lo = 0, arg_hi = 0;
  double defect = 0.0;
  for (size_t i = 0; i < signals.size(); ++i) {
    const double ns = norm_sq(signals[i]);
    if (ns < 1e-30)
      raise(errc::zero_signal, "signal " + std::to_string(i) + " is numerically zero");
    const frame_sum_result fs = frame_sum_with_tail(sys, signals[i], t);
    const double ratio = fs.value / ns;
    if (ratio < lo) { lo = ratio; arg_lo = static_cast<int>(i); }
    if (ratio > hi) { hi = ratio; arg_hi = static_cast<int>(i); }
    if (fs.value > 0.0) defect = std::max(defect, fs.outer_shell / fs.value);
  }
  frame_report rep;
  rep.lower = lo;
  rep.upper = hi;
  rep.method = "oracle";
  rep.lower_certified = lo > 0.0;
  rep.witnesses = std::make_pair(static_cast<double>(arg_lo), static_cast<double>(arg_hi));
  rep.truncation_defect = defect;
  rep.truncation_flagged = defect > 1e-4;
  return rep;
}

}  // namespace framelab
