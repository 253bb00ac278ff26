// cqser/tools/cqser_main.cc

// Copyright 2026  CQSER Project Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include "CLI11.hpp"

#include "commands.h"
#include "cqser/eval/harness.h"

int main(int argc, char** argv) {
  CLI::App app{
      "cqser - constant-Q speech emotion recognition experiment toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "INI config file; sections named after subcommands");
  app.allow_config_extras(CLI::config_extras_mode::error);

  cqser::cli::RegisterSynth(app);
  cqser::cli::RegisterExtract(app);
  cqser::cli::RegisterFRatio(app);
  cqser::cli::RegisterTrain(app);
  cqser::cli::RegisterEval(app);
  cqser::cli::RegisterSweep(app);
  cqser::cli::RegisterCross(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const cqser::LabelMappingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
