// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

// rlforge <simulate|process|fuse|evaluate|report> --config <path> [options]

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "rlforge/core/error.hpp"
#include "rlforge/pipeline/config.hpp"
#include "rlforge/pipeline/stages.hpp"

namespace {

int exit_code(const rlforge::Error& e) {
  if (dynamic_cast<const rlforge::ConfigError*>(&e) || dynamic_cast<const rlforge::GeometryError*>(&e)) return 2;
  if (dynamic_cast<const rlforge::MissingInputError*>(&e) || dynamic_cast<const rlforge::DataError*>(&e)) return 3;
  if (dynamic_cast<const rlforge::IoError*>(&e)) return 4;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  // Logs go to stderr so stdout carries only stage summaries.
  spdlog::set_default_logger(spdlog::stderr_color_mt("rlforge"));
  spdlog::set_level(spdlog::level::warn);
  spdlog::cfg::load_env_levels();  // SPDLOG_LEVEL
  if (const char* level = std::getenv("RLFORGE_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }

  CLI::App app{"radar annotation pipeline"};
  app.require_subcommand(1, 1);
  std::string config_path;
  rlforge::pipeline::CliOverrides overrides;
  std::string out, formats;
  int jobs = 0;
  std::uint64_t seed = 0;
  for (const char* name : {"simulate", "process", "fuse", "evaluate", "report"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "pipeline config (JSON)")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "scene seed");
    sub->add_option("--formats", formats, "dataset formats, e.g. rd,rda,targets,features");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string stage = sub->get_name();
  if (sub->count("--out")) overrides.out = out;
  if (sub->count("--jobs")) overrides.jobs = jobs;
  if (sub->count("--seed")) overrides.seed = seed;
  if (sub->count("--formats")) overrides.formats = formats;

  try {
    const auto config = rlforge::pipeline::load_config(config_path, overrides);
    for (const auto& line : rlforge::pipeline::run_stage(stage, config)) std::cout << line << '\n';
  } catch (const rlforge::Error& e) {
    std::cerr << "rlforge " << stage << ": " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "rlforge " << stage << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
