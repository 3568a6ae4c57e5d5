#include "framelab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "framelab/error.hpp"
#include "framelab/perturbation.hpp"
#include "framelab/report.hpp"
#include "json.hpp"

namespace framelab {

namespace {

using jsonv = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& ptr, const std::string& msg) {
  raise(errc::validation_error, ptr + ": " + msg);
}

const jsonv& member(const jsonv& obj, const std::string& ptr, const char* key) {
  if (!obj.contains(key)) bad(ptr + "/" + key, "required field is missing");
  return obj.at(key);
}

double as_number(const jsonv& j, const std::string& ptr) {
  if (!j.is_number()) bad(ptr, "must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(ptr, "must be finite");
  return v;
}

double num_field(const jsonv& obj, const std::string& ptr, const char* key) {
  return as_number(member(obj, ptr, key), ptr + "/" + key);
}

double num_field_or(const jsonv& obj, const std::string& ptr, const char* key, double dflt) {
  if (!obj.contains(key)) return dflt;
  return as_number(obj.at(key), ptr + "/" + key);
}

long int_field_or(const jsonv& obj, const std::string& ptr, const char* key, long dflt) {
  if (!obj.contains(key)) return dflt;
  const jsonv& j = obj.at(key);
  if (!j.is_number_integer()) bad(ptr + "/" + key, "must be an integer");
  return j.get<long>();
}

std::string str_field_or(const jsonv& obj, const std::string& ptr, const char* key,
                         const std::string& dflt) {
  if (!obj.contains(key)) return dflt;
  const jsonv& j = obj.at(key);
  if (!j.is_string()) bad(ptr + "/" + key, "must be a string");
  return j.get<std::string>();
}

piecewise_window parse_window(const jsonv& j, const std::string& ptr, const std::string& dflt_label) {
  if (!j.is_object()) bad(ptr, "window must be an object");
  const std::string label = str_field_or(j, ptr, "label", dflt_label);
  const jsonv& pieces_j = member(j, ptr, "pieces");
  if (!pieces_j.is_array() || pieces_j.empty())
    bad(ptr + "/pieces", "must be a nonempty array of {lo, hi, coeffs}");
  std::vector<poly_piece> pieces;
  for (size_t i = 0; i < pieces_j.size(); ++i) {
    const std::string pptr = ptr + "/pieces/" + std::to_string(i);
    const jsonv& pj = pieces_j.at(i);
    if (!pj.is_object()) bad(pptr, "must be an object {lo, hi, coeffs}");
    poly_piece pc;
    pc.lo = num_field(pj, pptr, "lo");
    pc.hi = num_field(pj, pptr, "hi");
    const jsonv& cj = member(pj, pptr, "coeffs");
    if (!cj.is_array() || cj.empty()) bad(pptr + "/coeffs", "must be a nonempty number array");
    std::vector<double> coeffs;
    for (size_t c = 0; c < cj.size(); ++c)
      coeffs.push_back(as_number(cj.at(c), pptr + "/coeffs/" + std::to_string(c)));
    pc.p = polynomial(std::move(coeffs));
    pieces.push_back(std::move(pc));
  }
  try {
    return make_window(label, std::move(pieces));
  } catch (const error& e) {
    bad(ptr, e.what());
  }
}

signal_kind parse_kind(const std::string& s, const std::string& ptr) {
  if (s == "compact") return signal_kind::compact;
  if (s == "bandlimited") return signal_kind::bandlimited;
  if (s == "hardy") return signal_kind::hardy;
  bad(ptr, "signal kind must be one of compact, bandlimited, hardy");
}

}  // namespace

const char* job_name(job_kind k) {
  switch (k) {
    case job_kind::gabor_bounds: return "gabor-bounds";
    case job_kind::gabor_verify: return "gabor-verify";
    case job_kind::wavelet_bounds: return "wavelet-bounds";
    case job_kind::contract_sweep: return "contract-sweep";
    case job_kind::perturb: return "perturb";
  }
  return "unknown";
}

std::optional<job_kind> job_from_name(const std::string& name) {
  if (name == "gabor-bounds") return job_kind::gabor_bounds;
  if (name == "gabor-verify") return job_kind::gabor_verify;
  if (name == "wavelet-bounds") return job_kind::wavelet_bounds;
  if (name == "contract-sweep") return job_kind::contract_sweep;
  if (name == "perturb") return job_kind::perturb;
  return std::nullopt;
}

job_config parse_config_text(const std::string& text, std::optional<job_kind> expected) {
  jsonv doc;
  try {
    doc = jsonv::parse(text);
  } catch (const std::exception& e) {
    raise(errc::parse_error, e.what());
  }
  if (!doc.is_object()) bad("", "config root must be a JSON object");

  job_config cfg;

  if (doc.contains("job")) {
    const jsonv& j = doc.at("job");
    if (!j.is_string()) bad("/job", "must be a string");
    const std::optional<job_kind> k = job_from_name(j.get<std::string>());
    if (!k)
      bad("/job", "unknown job '" + j.get<std::string>() +
                      "'; expected one of gabor-bounds, gabor-verify, wavelet-bounds, "
                      "contract-sweep, perturb");
    if (expected && *expected != *k)
      bad("/job", std::string("config job '") + job_name(*k) +
                      "' does not match the invoked subcommand '" + job_name(*expected) + "'");
    cfg.job = *k;
  } else if (expected) {
    cfg.job = *expected;
  } else {
    bad("/job", "required field is missing");
  }

  if (doc.contains("grid")) {
    const jsonv& gj = doc.at("grid");
    if (!gj.is_object()) bad("/grid", "must be an object {x_min, x_max, n}");
    const double x_min = num_field(gj, "/grid", "x_min");
    const double x_max = num_field(gj, "/grid", "x_max");
    const long n = int_field_or(gj, "/grid", "n", 8192);
    if (!(x_min < x_max)) bad("/grid", "x_min must be smaller than x_max");
    if (n < 2 || n % 2 != 0 || n > (1 << 22)) bad("/grid/n", "must be an even integer in [2, 2^22]");
    cfg.g = grid{x_min, x_max, static_cast<int>(n)};
  }

  // system
  {
    const jsonv& sj = member(doc, "", "system");
    if (!sj.is_object()) bad("/system", "must be an object");
    wh_params params;
    params.P = num_field_or(sj, "/system", "P", 1.0);
    params.Q = num_field_or(sj, "/system", "Q", 0.0);
    if (params.P == 0.0) bad("/system/P", "representation parameter P must be nonzero");
    const jsonv& gens = member(sj, "/system", "generators");
    if (!gens.is_array()) bad("/system/generators", "must be an array");
    if (gens.empty()) bad("/system/generators", "must contain at least one generator");
    std::vector<gabor_generator> generators;
    for (size_t i = 0; i < gens.size(); ++i) {
      const std::string gptr = "/system/generators/" + std::to_string(i);
      const jsonv& gj = gens.at(i);
      if (!gj.is_object()) bad(gptr, "must be an object");
      gabor_generator gen;
      gen.window = parse_window(gj, gptr, "generator" + std::to_string(i + 1));
      gen.q0 = num_field(gj, gptr, "q0");
      if (gen.q0 == 0.0) bad(gptr + "/q0", "translation step q0 must be nonzero");
      const jsonv& p0j = member(gj, gptr, "p0");
      if (p0j.is_string()) {
        if (p0j.get<std::string>() != "painless")
          bad(gptr + "/p0", "must be a number or the string \"painless\"");
        gen.p0 = painless_p0(params.P, support_length(gen.window));
      } else {
        gen.p0 = as_number(p0j, gptr + "/p0");
      }
      if (gen.p0 == 0.0) bad(gptr + "/p0", "modulation step p0 must be nonzero");
      if (std::fabs(gen.q0 * gen.p0) > 2.0 * std::numbers::pi * (1.0 + 1e-12))
        bad(gptr, "cell area |q0*p0| = " + format_sig17(std::fabs(gen.q0 * gen.p0)) +
                      " exceeds 2*pi; the lattice cannot be a frame lattice");
      generators.push_back(std::move(gen));
    }
    try {
      cfg.system = make_gabor_system(params, std::move(generators));
    } catch (const error& e) {
      bad("/system", e.what());
    }
  }

  if (doc.contains("truncation")) {
    const jsonv& tj = doc.at("truncation");
    if (!tj.is_object()) bad("/truncation", "must be an object {m_max, n_max}");
    const long m = int_field_or(tj, "/truncation", "m_max", 64);
    const long n = int_field_or(tj, "/truncation", "n_max", 64);
    if (m < 0 || n < 0) bad("/truncation", "truncation radii must be non-negative");
    if (m > 4096 || n > 4096) bad("/truncation", "truncation radii above 4096 are not supported");
    cfg.trunc = lattice_truncation{static_cast<int>(m), static_cast<int>(n)};
  }

  if (doc.contains("signals")) {
    const jsonv& sj = doc.at("signals");
    if (!sj.is_object()) bad("/signals", "must be an object {kind, count, seed}");
    cfg.signals.present = true;
    cfg.signals.kind = parse_kind(str_field_or(sj, "/signals", "kind", "compact"), "/signals/kind");
    const long count = int_field_or(sj, "/signals", "count", 8);
    if (count < 1 || count > 10000) bad("/signals/count", "must be in [1, 10000]");
    cfg.signals.count = static_cast<int>(count);
    const long seed = int_field_or(sj, "/signals", "seed", 1);
    if (seed < 0) bad("/signals/seed", "must be non-negative");
    cfg.signals.seed = static_cast<std::uint64_t>(seed);
    cfg.signals.export_path = str_field_or(sj, "/signals", "export", "");
  }

  if (doc.contains("verify")) {
    const jsonv& vj = doc.at("verify");
    if (!vj.is_object()) bad("/verify", "must be an object {alpha_o, beta_o, grid_points}");
    verify_spec vs;
    vs.alpha_o = num_field(vj, "/verify", "alpha_o");
    vs.beta_o = num_field(vj, "/verify", "beta_o");
    const long gp = int_field_or(vj, "/verify", "grid_points", 4096);
    if (!(vs.alpha_o > 0.0) || !(vs.beta_o >= vs.alpha_o))
      bad("/verify", "need 0 < alpha_o <= beta_o");
    if (gp < 1 || gp > 10'000'000) bad("/verify/grid_points", "must be in [1, 10^7]");
    vs.grid_points = static_cast<int>(gp);
    cfg.verify = vs;
  }

  if (doc.contains("contraction")) {
    const jsonv& cj = doc.at("contraction");
    if (!cj.is_object())
      bad("/contraction", "must be an object {epsilon, c, u0, v0, alpha_o, beta_o}");
    contraction_params cp;
    cp.epsilon = num_field(cj, "/contraction", "epsilon");
    cp.c = num_field_or(cj, "/contraction", "c", 1.0);
    cp.u0 = num_field(cj, "/contraction", "u0");
    cp.v0 = num_field(cj, "/contraction", "v0");
    cp.alpha_o = num_field(cj, "/contraction", "alpha_o");
    cp.beta_o = num_field(cj, "/contraction", "beta_o");
    if (!(cp.epsilon > 0.0) || !(cp.epsilon <= 1.0))
      bad("/contraction/epsilon", "must lie in (0, 1]");
    if (!(cp.c > 0.0)) bad("/contraction/c", "must be positive");
    if (!(cp.alpha_o > 0.0) || !(cp.beta_o >= cp.alpha_o))
      bad("/contraction", "need 0 < alpha_o <= beta_o");
    if (std::fabs(cp.u0 + cp.v0 - cfg.system.params.Q) > 1e-9)
      bad("/contraction", "u0 + v0 must equal the system parameter Q");
    cfg.contraction = cp;
  }

  if (doc.contains("sweep")) {
    const jsonv& sj = doc.at("sweep");
    if (!sj.is_object()) bad("/sweep", "must be an object {epsilons}");
    const jsonv& ej = member(sj, "/sweep", "epsilons");
    if (!ej.is_array() || ej.empty()) bad("/sweep/epsilons", "must be a nonempty number array");
    for (size_t i = 0; i < ej.size(); ++i) {
      const std::string eptr = "/sweep/epsilons/" + std::to_string(i);
      const double eps = as_number(ej.at(i), eptr);
      if (!(eps > 0.0) || !(eps <= 1.0)) bad(eptr, "must lie in (0, 1]");
      cfg.eps_sweep.push_back(eps);
    }
  }

  if (doc.contains("perturb")) {
    const jsonv& pj = doc.at("perturb");
    if (!pj.is_object()) bad("/perturb", "must be an object");
    perturb_spec ps;
    ps.mode = str_field_or(pj, "/perturb", "mode", "scale");
    if (ps.mode != "scale" && ps.mode != "windows")
      bad("/perturb/mode", "must be \"scale\" or \"windows\"");
    ps.lambda_fraction = num_field_or(pj, "/perturb", "lambda_fraction", 0.0);
    if (ps.lambda_fraction < 0.0 || ps.lambda_fraction >= 1.0)
      bad("/perturb/lambda_fraction", "must lie in [0, 1)");
    if (ps.mode == "scale") {
      ps.factor = num_field(pj, "/perturb", "factor");
      if (!(ps.factor > 0.0)) bad("/perturb/factor", "must be positive");
    } else {
      const jsonv& wj = member(pj, "/perturb", "windows");
      if (!wj.is_array()) bad("/perturb/windows", "must be an array of windows");
      if (wj.size() != cfg.system.generators.size())
        bad("/perturb/windows", "must supply exactly one window per generator (" +
                                    std::to_string(cfg.system.generators.size()) + ")");
      for (size_t i = 0; i < wj.size(); ++i)
        ps.windows.push_back(parse_window(wj.at(i), "/perturb/windows/" + std::to_string(i),
                                          "perturbed" + std::to_string(i + 1)));
    }
    cfg.perturb = ps;
  }

  if (doc.contains("output")) {
    const jsonv& oj = doc.at("output");
    if (!oj.is_object()) bad("/output", "must be an object {path, format}");
    cfg.output.path = str_field_or(oj, "/output", "path", "");
    cfg.output.format = str_field_or(oj, "/output", "format", "json");
    if (cfg.output.format != "json" && cfg.output.format != "csv")
      bad("/output/format", "must be \"json\" or \"csv\"");
  }

  // job-specific requirements
  switch (cfg.job) {
    case job_kind::gabor_verify:
      if (!cfg.verify) bad("/verify", "required for job gabor-verify");
      break;
    case job_kind::wavelet_bounds:
      if (!cfg.contraction) bad("/contraction", "required for job wavelet-bounds");
      break;
    case job_kind::contract_sweep:
      if (!cfg.contraction) bad("/contraction", "required for job contract-sweep");
      if (cfg.eps_sweep.empty()) bad("/sweep", "required for job contract-sweep");
      break;
    case job_kind::perturb:
      if (!cfg.perturb) bad("/perturb", "required for job perturb");
      break;
    case job_kind::gabor_bounds:
      break;
  }

  return cfg;
}

job_config parse_config_file(const std::string& path, std::optional<job_kind> expected) {
  std::ifstream in(path);
  if (!in) raise(errc::parse_error, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), expected);
}

// ---------------------------------------------------------------------------
// job execution
// ---------------------------------------------------------------------------

namespace {

jsonv report_json(const frame_report& r) {
  jsonv j;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["method"] = r.method;
  j["lower_certified"] = r.lower_certified;
  if (r.witnesses)
    j["witnesses"] = jsonv::array({r.witnesses->first, r.witnesses->second});
  else
    j["witnesses"] = nullptr;
  j["truncation_defect"] = r.truncation_defect;
  j["truncation_flagged"] = r.truncation_flagged;
  return j;
}

std::vector<std::string> report_cells(const std::string& source, int generator,
                                      const frame_report& r) {
  return {source,
          std::to_string(generator),
          format_sig17(r.lower),
          format_sig17(r.upper),
          r.method,
          r.lower_certified ? "true" : "false",
          format_sig17(r.truncation_defect),
          r.truncation_flagged ? "true" : "false"};
}

jsonv grid_json(const grid& g) {
  jsonv j;
  j["x_min"] = g.x_min;
  j["x_max"] = g.x_max;
  j["n"] = g.n;
  return j;
}

std::vector<grid_signal> make_battery(const job_config& cfg) {
  return random_test_signals(cfg.g, cfg.signals.count, cfg.signals.seed, cfg.signals.kind);
}

void export_signals(const job_config& cfg, const std::vector<grid_signal>& battery,
                    job_result& res) {
  if (cfg.signals.export_path.empty()) return;
  for (size_t i = 0; i < battery.size(); ++i) {
    std::string path = cfg.signals.export_path;
    if (battery.size() > 1) {
      const size_t dot = path.rfind('.');
      const std::string tag = "_" + std::to_string(i);
      if (dot == std::string::npos)
        path += tag;
      else
        path.insert(dot, tag);
    }
    csv_table t;
    t.header = {"x", "re", "im"};
    for (int j = 0; j < battery[i].g.n; ++j)
      t.add_row({format_sig17(battery[i].g.point(j)), format_sig17(battery[i].values[j].real()),
                 format_sig17(battery[i].values[j].imag())});
    res.artifacts.emplace_back(std::move(path), t.str());
  }
}

// Empirical bracket of the contracted system over a battery.
frame_report wavelet_oracle(const contraction_spec& spec, const std::vector<grid_signal>& battery,
                            const lattice_truncation& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  int arg_lo = 0, arg_hi = 0;
  double defect = 0.0;
  for (size_t i = 0; i < battery.size(); ++i) {
    const double ns = norm_sq(battery[i]);
    if (ns < 1e-30) raise(errc::zero_signal, "signal " + std::to_string(i) + " is numerically zero");
    const frame_sum_result fs = wavelet_frame_sum_with_tail(spec, battery[i], t);
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

contraction_spec build_contraction(const job_config& cfg) {
  const contraction_params& cp = *cfg.contraction;
  return make_contraction_spec(cfg.system, cp.epsilon, cp.c, cp.u0, cp.v0, cp.alpha_o, cp.beta_o);
}

std::string render(const job_config& cfg, const jsonv& j, const csv_table& t) {
  if (cfg.output.format == "csv") return t.str();
  return j.dump(2) + "\n";
}

job_result run_gabor_bounds(const job_config& cfg) {
  job_result res;
  const frame_report closed = painless_exact_bounds(cfg.system);

  std::vector<std::pair<int, frame_report>> chris;
  for (size_t l = 0; l < cfg.system.generators.size(); ++l) {
    const auto& gen = cfg.system.generators[l];
    const double b = gen.p0 * cfg.system.params.P / (2.0 * std::numbers::pi);
    chris.emplace_back(static_cast<int>(l + 1),
                       christensen_bounds(gen.window, std::fabs(gen.q0), std::fabs(b), 4096));
  }

  std::optional<frame_report> oracle;
  if (cfg.signals.present) {
    const std::vector<grid_signal> battery = make_battery(cfg);
    oracle = oracle_bounds(cfg.system, battery, cfg.trunc);
    export_signals(cfg, battery, res);
  }

  std::string verdict = "certified";
  if (!closed.lower_certified) verdict = "no lower bound certified";
  else if (oracle && (oracle->upper < closed.lower * 0.99 || oracle->lower > closed.upper * 1.01))
    verdict = "violated";
  res.exit_code = (verdict == "certified") ? 0 : 2;

  jsonv j;
  j["job"] = job_name(cfg.job);
  j["grid"] = grid_json(cfg.g);
  j["closed_form"] = report_json(closed);
  j["christensen"] = jsonv::array();
  for (const auto& [l, rep] : chris) {
    jsonv e;
    e["generator"] = l;
    e["report"] = report_json(rep);
    j["christensen"].push_back(e);
  }
  j["oracle"] = oracle ? report_json(*oracle) : jsonv(nullptr);
  j["verdict"] = verdict;

  csv_table t;
  t.header = {"source",           "generator",         "lower", "upper",
              "method",           "lower_certified",   "truncation_defect",
              "truncation_flagged"};
  t.add_row(report_cells("closed_form", 0, closed));
  for (const auto& [l, rep] : chris) t.add_row(report_cells("christensen", l, rep));
  if (oracle) t.add_row(report_cells("oracle", 0, *oracle));

  res.report = render(cfg, j, t);
  return res;
}

job_result run_gabor_verify(const job_config& cfg) {
  job_result res;
  const verify_spec& vs = *cfg.verify;
  const condition_report rep =
      check_generator_condition(cfg.system, vs.alpha_o, vs.beta_o, vs.grid_points);
  res.exit_code = rep.holds ? 0 : 2;

  jsonv j;
  j["job"] = job_name(cfg.job);
  j["alpha_o"] = vs.alpha_o;
  j["beta_o"] = vs.beta_o;
  j["grid_points"] = vs.grid_points;
  j["holds"] = rep.holds;
  if (rep.witness) {
    jsonv w;
    w["x"] = rep.witness->x;
    w["generator"] = rep.witness->generator;
    w["value"] = rep.witness->value;
    w["side"] = rep.witness->below ? "below" : "above";
    w["threshold"] = rep.witness->threshold;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["verdict"] = rep.holds ? "holds" : "violated";

  csv_table t;
  t.header = {"holds", "x", "generator", "value", "side", "threshold"};
  if (rep.witness)
    t.add_row({"false", format_sig17(rep.witness->x), std::to_string(rep.witness->generator),
               format_sig17(rep.witness->value), rep.witness->below ? "below" : "above",
               format_sig17(rep.witness->threshold)});
  else
    t.add_row({"true", "", "", "", "", ""});

  res.report = render(cfg, j, t);
  return res;
}

job_result run_wavelet_bounds(const job_config& cfg) {
  job_result res;
  const contraction_spec spec = build_contraction(cfg);
  const frame_report closed = contraction_closed_bounds(spec);

  std::optional<frame_report> oracle;
  if (cfg.signals.present) {
    const std::vector<grid_signal> battery = make_battery(cfg);
    oracle = wavelet_oracle(spec, battery, cfg.trunc);
    export_signals(cfg, battery, res);
  }

  jsonv j;
  j["job"] = job_name(cfg.job);
  j["grid"] = grid_json(cfg.g);
  j["epsilon"] = spec.epsilon;
  j["c"] = spec.c;
  j["u"] = u_of(spec);
  j["v"] = v_of(spec);
  j["closed_form"] = report_json(closed);
  j["oracle"] = oracle ? report_json(*oracle) : jsonv(nullptr);

  csv_table t;
  t.header = {"source",           "generator",         "lower", "upper",
              "method",           "lower_certified",   "truncation_defect",
              "truncation_flagged"};
  t.add_row(report_cells("closed_form", 0, closed));
  if (oracle) t.add_row(report_cells("oracle", 0, *oracle));

  res.report = render(cfg, j, t);
  return res;
}

job_result run_contract_sweep(const job_config& cfg) {
  job_result res;
  const contraction_spec spec = build_contraction(cfg);
  const std::vector<grid_signal> battery = make_battery(cfg);
  export_signals(cfg, battery, res);

  std::vector<double> norms, gabor_sums;
  for (const auto& f : battery) {
    const double ns = norm_sq(f);
    if (ns < 1e-30) raise(errc::zero_signal, "battery contains a numerically zero signal");
    norms.push_back(ns);
    gabor_sums.push_back(frame_sum(spec.base, f, cfg.trunc));
  }

  bool chain_ok = true;
  const double slack = 1.02;
  for (size_t i = 0; i < battery.size(); ++i)
    if (gabor_sums[i] > spec.beta_o * norms[i] * slack) chain_ok = false;

  struct row_data {
    double epsilon, lower, upper, omin, omax;
  };
  std::vector<row_data> rows;
  for (double eps : cfg.eps_sweep) {
    contraction_spec se = spec;
    se.epsilon = eps;
    const frame_report cb = contraction_closed_bounds(se);
    double omin = std::numeric_limits<double>::infinity();
    double omax = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < battery.size(); ++i) {
      const double ws = wavelet_frame_sum(se, battery[i], cfg.trunc);
      omin = std::min(omin, ws / norms[i]);
      omax = std::max(omax, ws / norms[i]);
      if (ws > gabor_sums[i] * slack) chain_ok = false;
    }
    rows.push_back({eps, cb.lower, cb.upper, omin, omax});
  }
  res.exit_code = chain_ok ? 0 : 2;

  jsonv j;
  j["job"] = job_name(cfg.job);
  j["grid"] = grid_json(cfg.g);
  j["rows"] = jsonv::array();
  for (const auto& r : rows) {
    jsonv e;
    e["epsilon"] = r.epsilon;
    e["lower_bound"] = r.lower;
    e["upper_bound"] = r.upper;
    e["oracle_min"] = r.omin;
    e["oracle_max"] = r.omax;
    j["rows"].push_back(e);
  }
  j["chain_ok"] = chain_ok;
  j["verdict"] = chain_ok ? "holds" : "violated";

  csv_table t;
  t.header = {"epsilon", "lower_bound", "upper_bound", "oracle_min", "oracle_max"};
  for (const auto& r : rows)
    t.add_row({format_sig17(r.epsilon), format_sig17(r.lower), format_sig17(r.upper),
               format_sig17(r.omin), format_sig17(r.omax)});

  res.report = render(cfg, j, t);
  return res;
}

piecewise_window scale_window(const piecewise_window& w, double s) {
  std::vector<poly_piece> pieces;
  for (const auto& pc : w.shape.pieces()) pieces.push_back({pc.lo, pc.hi, s * pc.p});
  return make_window(w.label, std::move(pieces));
}

job_result run_perturb(const job_config& cfg) {
  job_result res;
  const perturb_spec& ps = *cfg.perturb;

  const frame_report base_bounds = painless_exact_bounds(cfg.system);
  if (!base_bounds.lower_certified) {
    jsonv j;
    j["job"] = job_name(cfg.job);
    j["base"] = report_json(base_bounds);
    j["verdict"] = "no lower bound certified";
    csv_table t;
    t.header = {"field", "value"};
    t.add_row({"verdict", "no lower bound certified"});
    res.report = render(cfg, j, t);
    res.exit_code = 2;
    return res;
  }

  // perturbed system: scaled or replaced windows, lattice unchanged
  gabor_system pert_sys = cfg.system;
  if (ps.mode == "scale") {
    for (auto& gen : pert_sys.generators) gen.window = scale_window(gen.window, ps.factor);
  } else {
    for (size_t l = 0; l < pert_sys.generators.size(); ++l)
      pert_sys.generators[l].window = ps.windows[l];
  }

  const atom_family base_fam = gabor_atoms(cfg.system, cfg.g, cfg.trunc);
  const atom_family pert_fam = gabor_atoms(pert_sys, cfg.g, cfg.trunc);

  const std::vector<grid_signal> battery = make_battery(cfg);
  export_signals(cfg, battery, res);

  const perturbation_constants k =
      estimate_constants(base_fam, pert_fam, battery, ps.lambda_fraction, base_bounds.lower);

  // Verify on an enlarged battery: the estimation signals, a band-limited
  // batch, and a few base/perturbed difference atoms.
  std::vector<grid_signal> verify_battery = battery;
  for (auto& s : random_test_signals(cfg.g, std::max(cfg.signals.count / 2, 2),
                                     cfg.signals.seed + 1, signal_kind::bandlimited))
    verify_battery.push_back(std::move(s));
  for (const auto [m, n] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{0, 1}}) {
    const auto pa = base_fam.atom(1, m, n);
    const auto pb = pert_fam.atom(1, m, n);
    if (!pa || !pb) continue;
    grid_signal d = *pa;
    for (int i = 0; i < d.g.n; ++i) d.values[i] -= pb->values[i];
    if (norm_sq(d) > 1e-20) verify_battery.push_back(std::move(d));
  }
  const verify_report ver = verify_condition(base_fam, pert_fam, k, verify_battery);

  const frame_report pert_bounds = perturbed_bounds(base_bounds.lower, base_bounds.upper, k);
  const frame_report oracle = oracle_bounds(pert_sys, battery, cfg.trunc);
  const bool bracket_ok =
      oracle.lower >= pert_bounds.lower * 0.99 && oracle.upper <= pert_bounds.upper * 1.01;

  std::string verdict = "holds";
  if (!ver.holds || !bracket_ok) verdict = "violated";
  res.exit_code = (verdict == "holds") ? 0 : 2;

  jsonv j;
  j["job"] = job_name(cfg.job);
  j["grid"] = grid_json(cfg.g);
  j["mode"] = ps.mode;
  if (ps.mode == "scale") j["factor"] = ps.factor;
  j["base"] = report_json(base_bounds);
  j["constants"] = {{"M", k.M}, {"lambda", k.lambda}};
  j["verify"] = jsonv();
  j["verify"]["holds"] = ver.holds;
  if (ver.witness) {
    j["verify"]["witness"] = {{"signal", ver.witness->signal},
                              {"lhs", ver.witness->lhs},
                              {"rhs", ver.witness->rhs}};
  } else {
    j["verify"]["witness"] = nullptr;
  }
  j["perturbed"] = report_json(pert_bounds);
  j["oracle"] = report_json(oracle);
  j["bracket_ok"] = bracket_ok;
  j["verdict"] = verdict;

  csv_table t;
  t.header = {"field", "value"};
  t.add_row({"base_lower", format_sig17(base_bounds.lower)});
  t.add_row({"base_upper", format_sig17(base_bounds.upper)});
  t.add_row({"M", format_sig17(k.M)});
  t.add_row({"lambda", format_sig17(k.lambda)});
  t.add_row({"verify_holds", ver.holds ? "true" : "false"});
  t.add_row({"perturbed_lower", format_sig17(pert_bounds.lower)});
  t.add_row({"perturbed_upper", format_sig17(pert_bounds.upper)});
  t.add_row({"oracle_lower", format_sig17(oracle.lower)});
  t.add_row({"oracle_upper", format_sig17(oracle.upper)});
  t.add_row({"bracket_ok", bracket_ok ? "true" : "false"});
  t.add_row({"verdict", verdict});

  res.report = render(cfg, j, t);
  return res;
}

}  // namespace

job_result run_job(const job_config& cfg) {
  switch (cfg.job) {
    case job_kind::gabor_bounds: return run_gabor_bounds(cfg);
    case job_kind::gabor_verify: return run_gabor_verify(cfg);
    case job_kind::wavelet_bounds: return run_wavelet_bounds(cfg);
    case job_kind::contract_sweep: return run_contract_sweep(cfg);
    case job_kind::perturb: return run_perturb(cfg);
  }
  raise(errc::validation_error, "unknown job");
}

}  // namespace framelab
