#include "framelab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "framelab/error.hpp"

namespace framelab {

namespace {

void check_alignment(const atom_family& a, const atom_family& b) {
  if (!(a.g == b.g)) raise(errc::index_mismatch, "atom families live on different grids");
  if (a.trunc.m_max != b.trunc.m_max || a.trunc.n_max != b.trunc.n_max)
    raise(errc::index_mismatch, "atom families use different truncations");
  if (a.generators != b.generators)
    raise(errc::index_mismatch, "atom families have different generator counts");
}

struct signal_sums {
  double lhs = 0.0;   // sum |<f, phi - phi~>|^2
  double base = 0.0;  // sum |<f, phi>|^2
  double pert = 0.0;  // sum |<f, phi~>|^2
};

std::vector<signal_sums> accumulate(const atom_family& base, const atom_family& pert,
                                    const std::vector<grid_signal>& signals) {
  check_alignment(base, pert);
  if (signals.empty()) raise(errc::validation_error, "need at least one test signal");
  std::vector<signal_sums> acc(signals.size());
  for (int l = 1; l <= base.generators; ++l) {
    for (int n = -base.trunc.n_max; n <= base.trunc.n_max; ++n) {
      for (int m = -base.trunc.m_max; m <= base.trunc.m_max; ++m) {
        const std::optional<grid_signal> pa = base.atom(l, m, n);
        const std::optional<grid_signal> pb = pert.atom(l, m, n);
        if (!pa && !pb) continue;
        for (size_t i = 0; i < signals.size(); ++i) {
          const cd ia = pa ? inner_product(signals[i], *pa) : cd{0.0, 0.0};
          const cd ib = pb ? inner_product(signals[i], *pb) : cd{0.0, 0.0};
          acc[i].base += std::norm(ia);
          acc[i].pert += std::norm(ib);
          acc[i].lhs += std::norm(ia - ib);
        }
      }
    }
  }
  return acc;
}

}  // namespace

atom_family gabor_atoms(const gabor_system& sys, const grid& g, const lattice_truncation& t) {
  atom_family fam;
  fam.g = g;
  fam.generators = static_cast<int>(sys.generators.size());
  fam.trunc = t;
  fam.atom = [sys, g](int l, int m, int n) -> std::optional<grid_signal> {
    try {
      return gabor_atom(sys, m, n, l, g);
    } catch (const error& e) {
      if (e.code() == errc::out_of_domain) return std::nullopt;
      throw;
    }
  };
  return fam;
}

atom_family wavelet_atoms(const contraction_spec& s, const grid& g, const lattice_truncation& t) {
  atom_family fam;
  fam.g = g;
  fam.generators = static_cast<int>(s.base.generators.size());
  fam.trunc = t;
  fam.atom = [s, g](int l, int m, int n) -> std::optional<grid_signal> {
    try {
      return wavelet_atom(s, m, n, l, g);
    } catch (const error& e) {
      if (e.code() == errc::out_of_domain) return std::nullopt;
      throw;
    }
  };
  return fam;
}

atom_family scaled_atoms(atom_family base, double factor) {
  atom_family fam = base;
  fam.atom = [inner = std::move(base.atom), factor](int l, int m,
                                                    int n) -> std::optional<grid_signal> {
    std::optional<grid_signal> a = inner(l, m, n);
    if (a)
      for (cd& v : a->values) v *= factor;
    return a;
  };
  return fam;
}

frame_report perturbed_bounds(double alpha_o, double beta_o, const perturbation_constants& k) {
  if (!(alpha_o > 0.0) || !(beta_o >= alpha_o))
    raise(errc::validation_error, "need 0 < alpha_o <= beta_o");
  if (k.M < 0.0 || k.lambda < 0.0)
    raise(errc::validation_error, "perturbation constants must be non-negative");
  if (k.lambda >= alpha_o)
    raise(errc::lambda_too_large, "lambda = " + std::to_string(k.lambda) +
                                      " must stay below the lower bound " +
                                      std::to_string(alpha_o));
  frame_report rep;
  rep.lower = (1.0 - k.lambda / alpha_o) * alpha_o / (2.0 * (k.M + 1.0));
  rep.upper = 2.0 * beta_o * (k.M + 1.0) + k.lambda;
  rep.method = "closed_form";
  return rep;
}

verify_report verify_condition(const atom_family& base, const atom_family& pert,
                               const perturbation_constants& k,
                               const std::vector<grid_signal>& signals) {
  if (k.M < 0.0 || k.lambda < 0.0)
    raise(errc::validation_error, "perturbation constants must be non-negative");
  const std::vector<signal_sums> acc = accumulate(base, pert, signals);
  verify_report rep;
  for (size_t i = 0; i < signals.size(); ++i) {
    const double rhs =
        k.M * std::min(acc[i].base, acc[i].pert) + k.lambda * norm_sq(signals[i]);
    if (acc[i].lhs > rhs * (1.0 + 1e-10)) {
      rep.holds = false;
      rep.witness = verify_witness{static_cast<int>(i), acc[i].lhs, rhs};
      return rep;
    }
  }
  return rep;
}

perturbation_constants estimate_constants(const atom_family& base, const atom_family& pert,
                                          const std::vector<grid_signal>& signals,
                                          double lambda_fraction, double alpha_o) {
  if (!(alpha_o > 0.0)) raise(errc::validation_error, "alpha_o must be positive");
  if (lambda_fraction < 0.0 || lambda_fraction >= 1.0)
    raise(errc::validation_error, "lambda_fraction must lie in [0, 1)");
  for (size_t i = 0; i < signals.size(); ++i)
    if (norm_sq(signals[i]) < 1e-30)
      raise(errc::zero_signal, "signal " + std::to_string(i) + " is numerically zero");
  const double lambda = lambda_fraction * alpha_o;
  const std::vector<signal_sums> acc = accumulate(base, pert, signals);
  double M = 0.0;
  for (size_t i = 0; i < signals.size(); ++i) {
    const double ns = norm_sq(signals[i]);
    const double denom = std::max(std::min(acc[i].base, acc[i].pert), 1e-12 * ns);
    M = std::max(M, (acc[i].lhs - lambda * ns) / denom);
  }
  return perturbation_constants{std::max(M, 0.0), lambda};
}

frame_report wavelet_perturbed_bounds(double epsilon, double c, double alpha_o, double beta_o,
                                      const perturbation_constants& k) {
  if (!(epsilon > 0.0)) raise(errc::validation_error, "epsilon must be positive");
  if (!(c > 0.0)) raise(errc::validation_error, "contraction constant c must be positive");
  if (!(alpha_o > 0.0) || !(beta_o >= alpha_o))
    raise(errc::validation_error, "need 0 < alpha_o <= beta_o");
  const double L = std::log1p(epsilon / c);
  const double lower = (alpha_o * alpha_o * c / beta_o) * L / epsilon;
  const double upper = alpha_o * c * L / epsilon;
  return perturbed_bounds(lower, upper, k);
}

}  // namespace framelab
