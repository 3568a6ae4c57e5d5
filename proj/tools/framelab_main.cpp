#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "framelab/config.hpp"
#include "framelab/error.hpp"

namespace {

struct cli_options {
  std::string config;
  long long seed = 0;
  std::string out;
  std::string format;
};

int write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return 1;
  }
  f << content;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framelab: frame bounds for multi-window Gabor and contracted wavelet systems"};
  app.require_subcommand(1);

  const std::pair<const char*, framelab::job_kind> jobs[] = {
      {"gabor-bounds", framelab::job_kind::gabor_bounds},
      {"gabor-verify", framelab::job_kind::gabor_verify},
      {"wavelet-bounds", framelab::job_kind::wavelet_bounds},
      {"contract-sweep", framelab::job_kind::contract_sweep},
      {"perturb", framelab::job_kind::perturb},
  };
  const char* descriptions[] = {
      "closed-form, Christensen, and oracle frame bounds of a Gabor system",
      "test the per-generator sandwich condition against target bounds",
      "closed-form and oracle bounds of the contracted wavelet system",
      "re-evaluate the contracted system across an epsilon sweep",
      "estimate perturbation constants and bound the perturbed system",
  };

  cli_options opt;
  std::vector<std::pair<CLI::App*, framelab::job_kind>> subs;
  for (size_t i = 0; i < std::size(jobs); ++i) {
    CLI::App* sub = app.add_subcommand(jobs[i].first, descriptions[i]);
    sub->add_option("--config", opt.config, "JSON config file")->required();
    sub->add_option("--seed", opt.seed, "override the signal battery seed")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", opt.out, "write the report to this path instead of stdout");
    sub->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    subs.emplace_back(sub, jobs[i].second);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  CLI::App* parsed = nullptr;
  framelab::job_kind kind = framelab::job_kind::gabor_bounds;
  for (const auto& [sub, k] : subs)
    if (sub->parsed()) {
      parsed = sub;
      kind = k;
    }
  if (!parsed) {
    std::cerr << "error: no subcommand given\n";
    return 1;
  }

  try {
    framelab::job_config cfg = framelab::parse_config_file(opt.config, kind);
    if (parsed->count("--seed") > 0) cfg.signals.seed = static_cast<std::uint64_t>(opt.seed);
    if (!opt.out.empty()) cfg.output.path = opt.out;
    if (!opt.format.empty()) cfg.output.format = opt.format;

    const framelab::job_result res = framelab::run_job(cfg);
    for (const auto& [path, content] : res.artifacts)
      if (int rc = write_file(path, content)) return rc;
    if (cfg.output.path.empty()) {
      std::cout << res.report;
    } else if (int rc = write_file(cfg.output.path, res.report)) {
      return rc;
    }
    return res.exit_code;
  } catch (const framelab::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
