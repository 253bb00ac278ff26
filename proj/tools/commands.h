// cqser/tools/commands.h

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

#ifndef CQSER_TOOLS_COMMANDS_H_
#define CQSER_TOOLS_COMMANDS_H_

#include "CLI11.hpp"

namespace cqser::cli {

void RegisterSynth(CLI::App& app);
void RegisterExtract(CLI::App& app);
void RegisterFRatio(CLI::App& app);
void RegisterTrain(CLI::App& app);
void RegisterEval(CLI::App& app);
void RegisterSweep(CLI::App& app);
void RegisterCross(CLI::App& app);

}  // namespace cqser::cli

#endif  // CQSER_TOOLS_COMMANDS_H_
