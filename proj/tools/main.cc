// Copyright 2026 The DRA Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dra: command-line front end for the auction simulator.
//
//   dra dist     --config c.json            distribution report (JSON)
//   dra run      --config c.json [--out f]  one auction trace (JSON)
//   dra estimate --config c.json            revenue estimates (CSV)
//   dra attack   --config c.json            adaptive deviation sweep (CSV)
//   dra verify   --config c.json            invariant suite
//
// Exit codes: 0 success, 1 check failure, 2 configuration error.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "cli/config.h"
#include "dra/errors.h"

namespace {

using Command = std::function<int(const dra::cli::ExperimentConfig&,
                                  std::ostream&, std::ostream&)>;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
};

int execute(const Options& opts, const Command& command) {
  dra::cli::ExperimentConfig config;
  try {
    config = dra::cli::load_config(opts.config);
    if (opts.samples) config.samples = *opts.samples;
    if (opts.seed) {
      config.seed = *opts.seed;
      config.seed_given = true;
    }
    if (!opts.out.empty()) config.out = opts.out;
  } catch (const dra::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return dra::cli::kExitConfigError;
  }
  if (!config.seed_given) std::cerr << "warning: no seed given, using 0\n";

  std::ostringstream buffer;
  int code = 0;
  try {
    code = command(config, buffer, std::cerr);
  } catch (const dra::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return dra::cli::kExitConfigError;
  } catch (const dra::InfiniteReserveError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return dra::cli::kExitConfigError;
  } catch (const dra::ModeMismatchError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return dra::cli::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return dra::cli::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dra::cli::kExitCheckFailed;
  }

  if (config.out.empty()) {
    std::cout << buffer.str();
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << config.out << "\n";
      return dra::cli::kExitConfigError;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deferred revelation auction simulator"};
  app.require_subcommand(1);
  Options opts;
  int code = 0;

  const std::pair<const char*, Command> commands[] = {
      {"dist", dra::cli::cmd_dist},         {"run", dra::cli::cmd_run},
      {"estimate", dra::cli::cmd_estimate}, {"attack", dra::cli::cmd_attack},
      {"verify", dra::cli::cmd_verify},
  };
  const char* help[] = {
      "Virtual values, reserve, alpha-hat, optimal revenue, collateral",
      "Run one auction and print its trace",
      "Monte Carlo revenue for each configured strategy",
      "Adaptive reserve deviation sweep over thresholds",
      "Run the invariant suite; exit 1 on any failure",
  };
  int k = 0;
  for (const auto& [name, command] : commands) {
    CLI::App* sub = app.add_subcommand(name, help[k++]);
    sub->add_option("--config", opts.config, "Experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "Write output here instead of stdout");
    sub->add_option("--samples", opts.samples, "Override the sample count");
    sub->add_option("--seed", opts.seed, "Override the seed");
    sub->callback([&opts, &code, cmd = command] { code = execute(opts, cmd); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : dra::cli::kExitConfigError;
  }
  return code;
}
