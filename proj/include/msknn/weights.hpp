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

#include <msknn/estimators.hpp>

#include <cstddef>
#include <ostream>

namespace msknn {

// delta_i^(l) = i^(1 + 2l/d) - (i-1)^(1 + 2l/d), i >= 1. Telescopes:
// sum_{i<=k} delta_i^(l) = k^(1 + 2l/d).
double delta( std::size_t i, std::size_t ell, std::size_t d );

// Optimal non-negative weights of length k*:
//   w_i = (1/k*) * (1 + d/2 - d / (2 k*^(2/d)) * delta_i^(1)).
// Round-off negatives in the tail are clipped to 0.
WeightVector samworthNonnegWeights( std::size_t kStar, std::size_t d );

// Real-valued family for smoothness order u = 2:
//   w_i = (a0 + a1 delta_i^(1) + a2 delta_i^(2)) / k*,
// where a1, a2 are fixed by a0 so that the weights sum to 1.
struct SamworthParams {
	std::size_t kStar = 1;
	std::size_t d = 1;
	int u = 2;
	double a0 = 1.0;
};

// Throws Unsupported for u != 2.
WeightVector samworthRealWeights( const SamworthParams& params );

// The a0 minimizing sum_i w_i^2 over the family. sum w^2 is quadratic in a0,
// so this is the vertex; a family that does not depend on a0 yields 1.
double chooseA0( std::size_t kStar, std::size_t d );

// Two-column CSV: "index,weight" with 1-based index.
void writeWeightsCsv( std::ostream& out, const WeightVector& w );

} // namespace msknn
