// Copyright 2026 The Percolation Games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PERCOLATION_CONFIG_HPP_
#define PERCOLATION_CONFIG_HPP_

// Experiment configuration files.
//
// Line-oriented key/value text with three optional sections. Blank lines and
// text after '#' are ignored. Every key may appear at most once and unknown
// sections or keys are errors.
//
//   [game]
//   dim = 3
//   actions = 3 3                     # |I| |J|
//   q.0 = -1 -1 1 | -1 0 1 | -1 1 1   # q(0, j) for j = 0, 1, 2
//   q.1 = 0 -1 1 | 0 0 1 | 0 1 1
//   q.2 = 1 -1 1 | 1 0 1 | 1 1 1
//   direction = 0 0 1                 # optional
//
//   [model]
//   kind = squares                    # iid-bernoulli | iid-table | squares
//   k_max = 10                        # squares
//   random_draws = true               # squares
//   plant.0 = one 6 0 0 8             # squares: kind scale x y h
//   p = 0.5                           # iid-bernoulli
//   support.0 = 1 0 ; 0 1             # iid-table: matrix rows split by ';'
//   probs = 0.5 0.5                   # iid-table
//
//   [experiment]
//   seed = 1
//   num_seeds = 100
//   horizons = 8 16 32
//   lambdas = 0.05 0.1 0.2 0.3
//   epsilon = 0.25
//   origin = 0 0 0                    # optional
//   pairs = 1 2 4 8 16
//   scale = 6
//   state_budget = 134217728
//   catalog_budget = 4000000000
//   record_cone_min = false
//
// A missing [game] section means the default Z^3 game; a missing [model]
// section leaves the model choice to the caller.

#include <string>
#include <string_view>

#include "percolation/experiments.hpp"

namespace percolation {

struct ConfigFile {
  ExperimentConfig experiment;
  bool has_game = false;
  bool has_model = false;
};

// Throws ConfigError with "<source>:<line>: ..." context.
ConfigFile parse_config_text(std::string_view text,
                             std::string_view source = "config");
ConfigFile parse_config(const std::string& path);

// Canonical text; parse_config_text(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& config);

std::string model_kind_name(const EnvironmentModel& model);

}  // namespace percolation

#endif  // PERCOLATION_CONFIG_HPP_
