#include "framelab/numerics.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "framelab/error.hpp"

namespace framelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW's planner is not thread-safe; serialize plan creation/destruction.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

std::vector<cd> dft(const std::vector<cd>& in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<cd> out(in.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(const_cast<cd*>(in.data())),
        reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

grid make_grid(double x_min, double x_max, int n) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max))
    raise(errc::validation_error, "grid endpoints must be finite with x_min < x_max");
  if (n < 2 || n % 2 != 0)
    raise(errc::validation_error, "grid size must be an even integer >= 2");
  return grid{x_min, x_max, n};
}

grid default_grid() { return grid{-16.0, 16.0, 8192}; }

grid_signal make_signal(const grid& g) { return grid_signal{g, std::vector<cd>(g.n, cd{0.0, 0.0})}; }

cd inner_product(const grid_signal& f, const grid_signal& h) {
  if (!(f.g == h.g)) raise(errc::grid_mismatch, "inner product requires both signals on one grid");
  cd acc{0.0, 0.0};
  for (int i = 0; i < f.g.n; ++i) acc += std::conj(f.values[i]) * h.values[i];
  return acc * f.g.dx();
}

double norm_sq(const grid_signal& f) {
  double acc = 0.0;
  for (const cd& v : f.values) acc += std::norm(v);
  return acc * f.g.dx();
}

grid_signal fourier_transform(const grid_signal& f) {
  const int n = f.g.n;
  const int s = n / 2;
  const double dx = f.g.dx();
  const double dw = kTwoPi / (n * dx);
  std::vector<cd> a = dft(f.values, FFTW_FORWARD);
  grid_signal out;
  out.g = grid{-s * dw, (n - s) * dw, n};
  out.values.resize(n);
  const double scale = dx / std::sqrt(kTwoPi);
  for (int r = 0; r < n; ++r) {
    const double w = (r - s) * dw;
    out.values[r] = scale * std::polar(1.0, -w * f.g.x_min) * a[(r + s) % n];
  }
  return out;
}

grid_signal inverse_fourier_transform(const grid_signal& fhat, const grid& target) {
  const int n = target.n;
  if (fhat.g.n != n)
    raise(errc::grid_mismatch, "spectrum and target grid must have the same size");
  const double dw = fhat.g.dx();
  const double dx = target.dx();
  if (std::fabs(dw * dx * n - kTwoPi) > 1e-9)
    raise(errc::grid_mismatch, "spectrum grid is not dual to the target grid (dw*dx*n != 2*pi)");
  const int s = n / 2;
  if (std::fabs(fhat.g.x_min + s * dw) > 1e-9 * (1.0 + std::fabs(fhat.g.x_min)))
    raise(errc::grid_mismatch, "spectrum grid must be centred at zero frequency");
  std::vector<cd> c(n);
  for (int r = 0; r < n; ++r) {
    const double w = (r - s) * dw;
    c[(r + s) % n] = fhat.values[r] * std::polar(1.0, w * target.x_min);
  }
  std::vector<cd> b = dft(c, FFTW_BACKWARD);
  grid_signal out;
  out.g = target;
  out.values.resize(n);
  const double scale = dw / std::sqrt(kTwoPi);
  for (int j = 0; j < n; ++j) out.values[j] = scale * b[j];
  return out;
}

double negative_frequency_fraction(const grid_signal& f) {
  grid_signal fh = fourier_transform(f);
  const int s = fh.g.n / 2;
  double neg = 0.0, total = 0.0;
  for (int r = 0; r < fh.g.n; ++r) {
    const double e = std::norm(fh.values[r]);
    total += e;
    if (r < s) neg += e;
  }
  return total > 0.0 ? neg / total : 0.0;
}

namespace detail {

double rng64::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double rng64::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = kTwoPi * u2;
  spare_ = r * std::sin(th);
  have_spare_ = true;
  return r * std::cos(th);
}

}  // namespace detail

namespace {

void rescale_to(grid_signal& f, double target_norm_sq) {
  const double ns = norm_sq(f);
  if (ns <= 0.0) raise(errc::zero_signal, "generated test signal is identically zero");
  const double s = std::sqrt(target_norm_sq / ns);
  for (cd& v : f.values) v *= s;
}

// Smooth bump supported on |x - center| <= half_width: cos^4 envelope times a
// low-order trigonometric polynomial with random complex coefficients.
grid_signal compact_bump(const grid& g, detail::rng64& rng, int modes) {
  const double half_width = g.width() / 8.0;
  const double margin = half_width + 0.05 * g.width();
  const double center = g.x_min + margin + rng.uniform() * (g.width() - 2.0 * margin);
  const double target = 0.6 + 1.2 * rng.uniform();
  std::vector<cd> cos_c(modes + 1), sin_c(modes + 1);
  for (int k = 0; k <= modes; ++k) {
    cos_c[k] = cd{rng.normal(), rng.normal()} / (1.0 + k);
    sin_c[k] = cd{rng.normal(), rng.normal()} / (1.0 + k);
  }
  grid_signal f = make_signal(g);
  for (int i = 0; i < g.n; ++i) {
    const double s = (g.point(i) - center) / half_width;
    if (std::fabs(s) >= 1.0) continue;
    const double env = std::pow(std::cos(0.5 * std::numbers::pi * s), 4);
    cd v{0.0, 0.0};
    for (int k = 0; k <= modes; ++k)
      v += cos_c[k] * std::cos(k * std::numbers::pi * s) +
           sin_c[k] * std::sin(k * std::numbers::pi * s);
    f.values[i] = env * v;
  }
  rescale_to(f, target);
  return f;
}

grid_signal bandlimited_signal(const grid& g, detail::rng64& rng) {
  const double target = 0.6 + 1.2 * rng.uniform();
  const int n = g.n, s = n / 2;
  const double dw = kTwoPi / (n * g.dx());
  grid_signal spec;
  spec.g = grid{-s * dw, (n - s) * dw, n};
  spec.values.assign(n, cd{0.0, 0.0});
  for (int r = 0; r < n; ++r) {
    const double w = (r - s) * dw;
    if (std::fabs(w) >= 3.0) continue;
    const double taper = std::cos(std::numbers::pi * w / 6.0);
    spec.values[r] = cd{rng.normal(), rng.normal()} * (taper * taper);
  }
  grid_signal f = inverse_fourier_transform(spec, g);
  rescale_to(f, target);
  return f;
}

// Smooth bump modulated onto positive frequencies.  The spectrum is then
// confined to the open positive half-line: negative bins are zeroed exactly
// and a smooth ramp removes the residue next to zero frequency, so the
// signals stay well inside the band a finite grid can represent.
grid_signal hardy_signal(const grid& g, detail::rng64& rng) {
  const double half_width = g.width() / 8.0;
  const double margin = half_width + 0.05 * g.width();
  const double center = g.x_min + margin + rng.uniform() * (g.width() - 2.0 * margin);
  const double target = 0.6 + 1.2 * rng.uniform();
  constexpr int modes = 3;
  std::vector<cd> coef(modes + 1);
  for (int k = 0; k <= modes; ++k) coef[k] = cd{rng.normal(), rng.normal()} / (1.0 + k);
  grid_signal f = make_signal(g);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.point(i);
    const double s = (x - center) / half_width;
    if (std::fabs(s) >= 1.0) continue;
    const double env = std::pow(std::cos(0.5 * std::numbers::pi * s), 4);
    cd v{0.0, 0.0};
    for (int k = 0; k <= modes; ++k) v += coef[k] * std::polar(1.0, (2.0 + 0.3 * k) * (x - center));
    f.values[i] = env * v;
  }
  grid_signal fh = fourier_transform(f);
  // A C-infinity transition keeps the spectral data smooth to all orders, so
  // the time-domain image decays super-polynomially and carries no energy to
  // the edge of the periodic window (edge content would otherwise leak back
  // into the zeroed band between bins).
  constexpr double w_lo = 0.25, w_hi = 1.75;  // below the 2.0+ modulations
  const auto bump = [](double t) { return t <= 0.0 ? 0.0 : std::exp(-1.0 / t); };
  for (int r = 0; r < fh.g.n; ++r) {
    const double w = fh.g.point(r);
    if (w <= w_lo) {
      fh.values[r] = cd{0.0, 0.0};
    } else if (w < w_hi) {
      const double t = (w - w_lo) / (w_hi - w_lo);
      fh.values[r] *= bump(t) / (bump(t) + bump(1.0 - t));
    }
  }
  f = inverse_fourier_transform(fh, g);
  rescale_to(f, target);
  return f;
}

}  // namespace

std::vector<grid_signal> random_test_signals(const grid& g, int count, std::uint64_t seed,
                                             signal_kind kind) {
  if (count < 1) raise(errc::validation_error, "signal count must be positive");
  detail::rng64 rng(seed);
  std::vector<grid_signal> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    switch (kind) {
      case signal_kind::compact: out.push_back(compact_bump(g, rng, 4)); break;
      case signal_kind::bandlimited: out.push_back(bandlimited_signal(g, rng)); break;
      case signal_kind::hardy: out.push_back(hardy_signal(g, rng)); break;
    }
  }
  return out;
}

}  // namespace framelab
