// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Talks to the library through the C interface only.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thinlayer/thinlayer.h"

namespace {

constexpr int kUsage = 2;

struct Session {
  tl_session* handle = nullptr;
  ~Session() { tl_session_destroy(handle); }
};

bool apply(tl_session* s, const char* key, const std::string& value) {
  if (value.empty()) return true;
  const tl_status st = tl_session_set(s, key, value.c_str());
  if (st == TL_OK) return true;
  std::fprintf(stderr, "thinlayer: --%s: %s\n", key, tl_session_last_error(s));
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue asymptotics for a membrane with a thin heavy ring"};
  app.set_version_flag("--version", std::string(tl_version()));
  app.require_subcommand(1, 1);

  std::string config, modes, eps, out, filter;
  int jobs = 0;
  bool quiet = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "config file (INI)")->required()->check(CLI::ExistingFile);
    sub->add_option("--modes", modes, "angular modes, e.g. 0-3 or 0,2");
    sub->add_option("--eps", eps, "layer widths, e.g. 0.08,0.04,0.02,0.01");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--filter", filter, "all | a | b | c | small");
    sub->add_flag("-q,--quiet", quiet, "no summary on stdout");
  };
  common(app.add_subcommand("limit-spectrum", "classify the limit spectrum below lambda_max"));
  common(app.add_subcommand("predict", "asymptotic predictions for each limit point"));
  common(app.add_subcommand("verify", "compare predictions against the perturbed problem"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  Session s;
  if (tl_status st = tl_session_create_from_file(config.c_str(), &s.handle); st != TL_OK) {
    std::fprintf(stderr, "thinlayer: %s: %s\n", tl_status_string(st), tl_last_create_error());
    return kUsage;
  }
  if (!apply(s.handle, "sweep.modes", modes) || !apply(s.handle, "sweep.eps", eps) ||
      !apply(s.handle, "output.dir", out) || !apply(s.handle, "sweep.filter", filter) ||
      !apply(s.handle, "output.jobs", jobs > 0 ? std::to_string(jobs) : std::string()))
    return kUsage;

  int exit_status = 0;
  if (tl_status st = tl_session_run(s.handle, command.c_str(), nullptr, &exit_status); st != TL_OK) {
    std::fprintf(stderr, "thinlayer: %s: %s\n", tl_status_string(st), tl_session_last_error(s.handle));
    return kUsage;
  }
  for (std::size_t i = 0; i < tl_session_warning_count(s.handle); ++i)
    std::fprintf(stderr, "warning: %s\n", tl_session_warning(s.handle, i));
  if (!quiet) std::fputs(tl_session_report_csv(s.handle), stdout);
  return exit_status;
}
