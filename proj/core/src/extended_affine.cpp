#include "framelab/extended_affine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "framelab/error.hpp"

namespace framelab {

namespace {

constexpr double kDegenerateVTol = 1e-12;

cd lerp(const grid_signal& f, double x) {
  const double p = (x - f.g.x_min) / f.g.dx();
  const double fl = std::floor(p);
  const long k = static_cast<long>(fl);
  if (k < 0 || k + 1 >= f.g.n) {
    if (k == f.g.n - 1 && p - fl < 1e-9) return f.values[static_cast<size_t>(k)];
    return cd{0.0, 0.0};
  }
  const double t = p - fl;
  return (1.0 - t) * f.values[static_cast<size_t>(k)] + t * f.values[static_cast<size_t>(k) + 1];
}

double contraction_L(const contraction_spec& s) { return std::log1p(s.epsilon / s.c); }

const gabor_generator& generator_at(const gabor_system& sys, int l) {
  if (l < 1 || l > static_cast<int>(sys.generators.size()))
    raise(errc::validation_error,
          "generator index l must be in 1.." + std::to_string(sys.generators.size()));
  return sys.generators[l - 1];
}

}  // namespace

grid_signal affine_rep(double alpha, double a, double b, const grid_signal& f) {
  if (alpha == 0.0) raise(errc::validation_error, "affine parameter alpha must be nonzero");
  if (!(a > 0.0)) raise(errc::validation_error, "dilation a must be positive");
  const double lo_src = (f.g.x_min + alpha * b) / a;
  const double hi_src = (f.g.x_max + alpha * b) / a;
  if (hi_src <= f.g.x_min || lo_src >= f.g.x_max)
    raise(errc::out_of_domain, "dilated/translated signal misses the grid");
  grid_signal out = make_signal(f.g);
  const double inv_sqrt_a = 1.0 / std::sqrt(a);
  for (int i = 0; i < f.g.n; ++i)
    out.values[i] = inv_sqrt_a * lerp(f, (f.g.point(i) + alpha * b) / a);
  return out;
}

grid_signal ea_rep(const ea_params& params, double a, double b, double y, const grid_signal& f) {
  grid_signal out = affine_rep(params.alpha, a, b, f);
  const cd phase = std::polar(1.0, params.beta * y);
  for (cd& v : out.values) v *= phase;
  return out;
}

grid_signal u_epsilon(const grid_signal& f, double eps) {
  if (!(eps > 0.0)) raise(errc::validation_error, "epsilon must be positive");
  const double nf = negative_frequency_fraction(f);
  if (nf >= 1e-6)
    raise(errc::not_hardy, "signal carries negative-frequency energy fraction " +
                               std::to_string(nf));

  // Refine the spectrum by zero-padding so the log-substitution below can be
  // linearly interpolated without visible staircase error.
  constexpr int pad = 256;
  grid_signal padded;
  padded.g = grid{f.g.x_min, f.g.x_min + pad * f.g.width(), pad * f.g.n};
  padded.values.assign(padded.g.n, cd{0.0, 0.0});
  std::copy(f.values.begin(), f.values.end(), padded.values.begin());
  const grid_signal spec = fourier_transform(padded);

  grid_signal out = make_signal(f.g);
  const double root_eps = std::sqrt(eps);
  for (int i = 0; i < f.g.n; ++i) {
    const double x = f.g.point(i);
    const double t = std::exp(-eps * x);
    out.values[i] = root_eps * std::exp(-0.5 * eps * x) * lerp(spec, t);
  }
  return out;
}

grid_signal u_epsilon_inverse(const grid_signal& h, double eps, const grid& target) {
  if (!(eps > 0.0)) raise(errc::validation_error, "epsilon must be positive");
  const int n = target.n, s = n / 2;
  const double dw = 2.0 * std::numbers::pi / (n * target.dx());
  grid_signal spec;
  spec.g = grid{-s * dw, (n - s) * dw, n};
  spec.values.assign(n, cd{0.0, 0.0});
  const double inv_root_eps = 1.0 / std::sqrt(eps);
  for (int r = s + 1; r < n; ++r) {
    const double w = (r - s) * dw;
    const double x = -std::log(w) / eps;
    spec.values[r] = lerp(h, x) * (std::exp(0.5 * eps * x) * inv_root_eps);
  }
  return inverse_fourier_transform(spec, target);
}

grid_signal zeta_apply(const ea_params& params, double eps, double a, double b, double y,
                       const grid_signal& f) {
  if (params.alpha == 0.0) raise(errc::validation_error, "affine parameter alpha must be nonzero");
  if (!(a > 0.0)) raise(errc::validation_error, "dilation a must be positive");
  if (!(eps > 0.0)) raise(errc::validation_error, "epsilon must be positive");
  const double shift = -std::log(a) / eps;
  if (std::fabs(shift) >= f.g.width())
    raise(errc::out_of_domain, "dilation shift exceeds the grid span");
  const long r = std::lround(shift / f.g.dx());
  grid_signal out = make_signal(f.g);
  for (int i = 0; i < f.g.n; ++i) {
    const long j = i + r;
    if (j < 0 || j >= f.g.n) continue;
    const double x = f.g.point(i);
    out.values[i] = std::polar(1.0, params.beta * y + params.alpha * b * std::exp(-eps * x)) *
                    f.values[j];
  }
  return out;
}

contraction_spec make_contraction_spec(gabor_system base, double epsilon, double c, double u0,
                                       double v0, double alpha_o, double beta_o) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0))
    raise(errc::validation_error, "epsilon must lie in (0, 1]");
  if (!(c > 0.0)) raise(errc::validation_error, "contraction constant c must be positive");
  if (!(alpha_o > 0.0) || !(beta_o >= alpha_o))
    raise(errc::validation_error, "need 0 < alpha_o <= beta_o");
  if (std::fabs(u0 + v0 - base.params.Q) > 1e-9)
    raise(errc::validation_error, "u0 + v0 must equal the base parameter Q");
  for (size_t l = 0; l < base.generators.size(); ++l) {
    const auto& gen = base.generators[l];
    const double want = painless_p0(base.params.P, support_length(gen.window));
    if (std::fabs(gen.p0 - want) > 1e-12 * std::max(1.0, std::fabs(want)))
      raise(errc::not_painless,
            "base generator " + std::to_string(l + 1) + " violates p0 = 2*pi/(P*mu)");
  }
  return contraction_spec{std::move(base), epsilon, c, u0, v0, alpha_o, beta_o};
}

double u_of(const contraction_spec& s) { return s.u0 + s.base.params.P / s.epsilon; }
double v_of(const contraction_spec& s) { return s.v0 - s.base.params.P / s.epsilon; }

lattice_point contraction_lattice(const contraction_spec& s, int m, int n, int l) {
  const gabor_generator& gen = generator_at(s.base, l);
  const double v = v_of(s);
  if (std::fabs(v) < kDegenerateVTol)
    raise(errc::degenerate_v, "v(epsilon) vanishes; the lattice ordinates are undefined");
  const double mu = support_length(gen.window);
  const double a_n = std::exp(-s.epsilon * n * gen.q0);
  const double L = contraction_L(s);
  lattice_point p;
  p.a = a_n;
  p.b = s.beta_o * a_n * std::numbers::pi * m / (s.alpha_o * v * L * s.c * mu);
  p.y = (n == 0) ? p.b : p.b * std::log(a_n) * a_n / (a_n - 1.0);
  return p;
}

grid_signal wavelet_atom(const contraction_spec& s, int m, int n, int l, const grid& g) {
  const gabor_generator& gen = generator_at(s.base, l);
  const lattice_point lp = contraction_lattice(s, m, n, l);
  const double q0 = gen.q0;
  const double s0 = support_lo(gen.window) - n * q0;
  const double s1 = support_hi(gen.window) - n * q0;
  if (s1 < g.x_min || s0 >= g.x_max)
    raise(errc::out_of_domain, "translated atom support misses the grid");
  const double u = u_of(s), v = v_of(s);
  grid_signal out = make_signal(g);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.point(i);
    const double w = gen.window.shape(x + n * q0);
    if (w == 0.0) continue;
    const double mag = std::exp(-0.5 * s.epsilon * (x + n * q0)) * w;
    const double phase = u * lp.y + v * lp.b * std::exp(-s.epsilon * x);
    out.values[i] = std::polar(mag, phase);
  }
  return out;
}

frame_sum_result wavelet_frame_sum_with_tail(const contraction_spec& s, const grid_signal& f,
                                             const lattice_truncation& t,
                                             const wavelet_sum_options& opt) {
  if (t.m_max < 0 || t.n_max < 0)
    raise(errc::validation_error, "truncation radii must be non-negative");
  const grid& g = f.g;
  const double dx = g.dx();
  const double u = u_of(s), v = v_of(s);
  const double L = contraction_L(s);
  const bool v_ok = std::fabs(v) >= kDegenerateVTol;
  frame_sum_result res;

  std::vector<cd> base, up, dn, phasor;
  const int N = static_cast<int>(s.base.generators.size());
  for (int l = 1; l <= N; ++l) {
    const auto& gen = s.base.generators[l - 1];
    const double q0 = gen.q0;
    const double mu = support_length(gen.window);
    const double w0 = support_lo(gen.window), w1 = support_hi(gen.window);
    for (int n = -t.n_max; n <= t.n_max; ++n) {
      const double start0 = w0 - n * q0, stop0 = w1 - n * q0;
      int i0 = static_cast<int>(std::floor((start0 - g.x_min) / dx));
      int i1 = static_cast<int>(std::ceil((stop0 - g.x_min) / dx)) + 1;
      i0 = std::max(i0, 0);
      i1 = std::min(i1, g.n - 1);
      if (i1 < i0) continue;

      const double a_n = std::exp(-s.epsilon * n * q0);
      // v(eps)*b_mn per unit m: v cancels out of the product.
      const double chirp = s.beta_o * a_n * std::numbers::pi / (s.alpha_o * L * s.c * mu);

      base.clear();
      phasor.clear();
      for (int i = i0; i <= i1; ++i) {
        const double x = g.point(i);
        const double w = gen.window.shape(x + n * q0);
        if (w == 0.0) continue;
        base.push_back(std::conj(f.values[i]) *
                       (w * dx * std::exp(-0.5 * s.epsilon * (x + n * q0))));
        phasor.push_back(std::polar(1.0, chirp * std::exp(-s.epsilon * x)));
      }
      if (base.empty()) continue;

      auto y_phase = [&](int m) -> cd {
        if (opt.y_override) return std::polar(1.0, u * opt.y_override(l, m, n));
        if (!v_ok || m == 0) return cd{1.0, 0.0};
        const double b_mn = chirp * m / v;
        const double y =
            (n == 0) ? b_mn : b_mn * std::log(a_n) * a_n / (a_n - 1.0);
        return std::polar(1.0, u * y);
      };

      const bool outer_n = (std::abs(n) == t.n_max);
      cd sum0{0.0, 0.0};
      for (const cd& c : base) sum0 += c;
      double term = std::norm(y_phase(0) * sum0);
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
        term = std::norm(y_phase(m) * su) + std::norm(y_phase(-m) * sd);
        res.value += term;
        if (outer_n || m == t.m_max) res.outer_shell += term;
      }
    }
  }
  return res;
}

double wavelet_frame_sum(const contraction_spec& s, const grid_signal& f,
                         const lattice_truncation& t, const wavelet_sum_options& opt) {
  return wavelet_frame_sum_with_tail(s, f, t, opt).value;
}

frame_report contraction_closed_bounds(const contraction_spec& s) {
  const double L = contraction_L(s);
  frame_report rep;
  rep.lower = (s.alpha_o * s.alpha_o * s.c / s.beta_o) * L / s.epsilon;
  rep.upper = s.alpha_o * s.c * L / s.epsilon;
  rep.method = "closed_form";
  return rep;
}

contraction_sweep_report contraction_limit_check(const contraction_spec& s, const grid_signal& f,
                                                 const std::vector<double>& eps_sweep,
                                                 const lattice_truncation& t) {
  if (eps_sweep.empty()) raise(errc::validation_error, "epsilon sweep must be nonempty");
  contraction_sweep_report rep;
  rep.norm_sq = norm_sq(f);
  rep.gabor_sum = frame_sum(s.base, f, t);

  for (double eps : eps_sweep) {
    contraction_spec se = s;
    se.epsilon = eps;
    if (!(eps > 0.0) || !(eps <= 1.0))
      raise(errc::validation_error, "epsilon sweep values must lie in (0, 1]");
    const frame_report cb = contraction_closed_bounds(se);
    contraction_sweep_row row;
    row.epsilon = eps;
    row.lower = cb.lower;
    row.upper = cb.upper;
    row.wavelet_sum = wavelet_frame_sum(se, f, t);
    rep.rows.push_back(row);
  }

  std::vector<contraction_sweep_row> ordered = rep.rows;
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.epsilon > b.epsilon; });
  for (size_t i = 0; i + 1 < ordered.size(); ++i)
    if (ordered[i + 1].upper < ordered[i].upper * (1.0 - 1e-12)) rep.upper_monotone = false;

  const double slack = 1.02;
  for (const auto& row : rep.rows)
    if (row.wavelet_sum > rep.gabor_sum * slack) rep.chain_ok = false;
  if (rep.gabor_sum > s.beta_o * rep.norm_sq * slack) rep.chain_ok = false;
  return rep;
}

}  // namespace framelab
