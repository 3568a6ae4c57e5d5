#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framelab/extended_affine.hpp"
#include "framelab/numerics.hpp"
#include "framelab/weyl_heisenberg.hpp"

namespace framelab {

enum class job_kind { gabor_bounds, gabor_verify, wavelet_bounds, contract_sweep, perturb };

const char* job_name(job_kind k);
std::optional<job_kind> job_from_name(const std::string& name);

struct signals_spec {
  signal_kind kind = signal_kind::compact;
  int count = 8;
  std::uint64_t seed = 1;
  std::string export_path;  // optional per-signal CSV dump (x, re, im)
  bool present = false;     // whether the config carried a signals block
};

struct verify_spec {
  double alpha_o = 0.0;
  double beta_o = 0.0;
  int grid_points = 4096;
};

struct contraction_params {
  double epsilon = 1.0;
  double c = 1.0;
  double u0 = 0.0;
  double v0 = 0.0;
  double alpha_o = 0.0;
  double beta_o = 0.0;
};

struct perturb_spec {
  std::string mode = "scale";  // "scale" | "windows"
  double factor = 1.0;
  std::vector<piecewise_window> windows;  // one per generator when mode == "windows"
  double lambda_fraction = 0.0;
};

struct output_spec {
  std::string path;             // empty: stdout
  std::string format = "json";  // "json" | "csv"
};

struct job_config {
  job_kind job = job_kind::gabor_bounds;
  grid g = default_grid();
  gabor_system system;
  lattice_truncation trunc;
  signals_spec signals;
  std::optional<verify_spec> verify;
  std::optional<contraction_params> contraction;
  std::vector<double> eps_sweep;
  std::optional<perturb_spec> perturb;
  output_spec output;
};

// Parses and validates a JSON config document.  Raises ParseError on
// malformed JSON and ValidationError (message prefixed with the JSON-pointer
// path of the offending field) on invariant breaches.  When `expected` is
// given, a "job" field in the document must match it.
job_config parse_config_text(const std::string& text, std::optional<job_kind> expected = {});
job_config parse_config_file(const std::string& path, std::optional<job_kind> expected = {});

struct job_result {
  int exit_code = 0;   // 0 ok, 2 mathematical verdict failed
  std::string report;  // rendered in the requested format
  std::vector<std::pair<std::string, std::string>> artifacts;  // path -> contents
};

job_result run_job(const job_config& cfg);

}  // namespace framelab
