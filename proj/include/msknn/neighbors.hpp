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

#include <msknn/dataset.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace msknn {

// The k_max nearest training points of one query, nearest first.
// Ties in distance are ordered by ascending training index.
struct NeighborList {
	std::vector<std::size_t> indices;
	std::vector<double> distances; // Euclidean, matching indices
	std::vector<double> query;

	std::size_t size() const { return indices.size(); }
};

// Exact brute-force search: partial selection of the k_max smallest squared
// distances, then a sort of those. Throws OutOfRange if k_max is 0 or exceeds
// the training size, DimensionMismatch if the query length differs from d.
NeighborList knnSearch( const Dataset& train, std::span<const double> query, std::size_t kMax );

// r(k): distance to the k-th nearest neighbor (1-based).
double radiusAt( const NeighborList& neighbors, std::size_t k );

} // namespace msknn
