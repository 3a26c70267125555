// Copyright 2026 The tlg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <exception>
#include <iostream>
#include <memory>

#include "common.hpp"
#include "tlg/common/error.hpp"

int main(int argc, char** argv) {
  using namespace tlg::cli;
  CLI::App app{"Topical language generation: steer a language model toward a topic"};
  app.set_version_flag("--version", kVersion);
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "JSON file of option values (keys are long flag names)");
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  Registry registry;
  register_train(app, registry);
  register_decode(app, registry);
  register_reports(app, registry);
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (const auto& cmd : registry) {
      if (cmd.app->parsed()) return cmd.run();
    }
    return kUsage;
  } catch (const tlg::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const tlg::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const tlg::TransportError& e) {
    std::cerr << "remote error: " << e.what() << "\n";
    return kRemoteError;
  } catch (const tlg::ProtocolError& e) {
    std::cerr << "remote error: " << e.what() << "\n";
    return kRemoteError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
