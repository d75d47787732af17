/* Copyright 2026 The msknn Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

	http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
--------------------------------------------------------------------------------------------------------------*/

#pragma once

#include <msknn/theory.hpp>

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace msknn {

// Plain-text experiment configs: one "key = value" per line, '#' starts a
// comment, blank lines ignored. Duplicate keys throw InvalidArgument.
using KeyValues = std::map<std::string, std::string>;
KeyValues parseKeyValues( std::istream& in );

// Bias-expansion check at one point: fit of the ball average on r^2 powers
// next to the closed-form leading coefficient.
struct TheoryCheckConfig {
	std::string problem = "bowl";
	std::size_t dim = 1;
	std::vector<double> point; // empty means the origin
	std::vector<double> rGrid{ 0.05, 0.1, 0.15, 0.2, 0.25, 0.3 };
	std::size_t order = 1;
	std::size_t budget = 100'000;
};

// Keys: problem, d, point, r_grid, order, budget. Lists are comma-separated.
// Unknown keys throw InvalidArgument.
TheoryCheckConfig theoryCheckConfigFrom( const KeyValues& values );

struct TheoryCheckRow {
	std::size_t index = 0; // c in b_c
	double fitted = 0.0;
	double analytic = 0.0; // eta(x) for c = 0, analyticB1 for c = 1, NaN beyond
};

std::vector<TheoryCheckRow> theoryCheck( const TheoryCheckConfig& config );

// CSV: problem,d,c,fitted,analytic,rel_error
void writeTheoryCheckCsv( std::ostream& out, const TheoryCheckConfig& config, const std::vector<TheoryCheckRow>& rows );

struct RateRunConfig {
	std::string problem = "ring";
	std::size_t dim = 2;
	RateExperimentConfig experiment;
};

// Keys: problem, d, methods, n_grid, reps, n_test, seed, scales, order,
// lambda, k_rule (paper | ratio), ratio_k1_factor, ratio_ell.
RateRunConfig rateRunConfigFrom( const KeyValues& values );

} // namespace msknn
