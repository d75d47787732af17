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

#include <msknn/neighbors.hpp>

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace msknn {

enum class WeightScheme { Uniform, SamworthNonneg, SamworthReal, MsknnImplicit, Custom };

std::string_view schemeName( WeightScheme scheme );

// Per-neighbor weights w_1..w_k (nearest first). Built-in schemes sum to 1.
struct WeightVector {
	std::vector<double> weights;
	WeightScheme scheme = WeightScheme::Custom;

	std::size_t size() const { return weights.size(); }
};

WeightVector uniformWeights( std::size_t k );

// sum_i w_i * Y_(i). Not clipped to [0, 1]: real-valued weights may overshoot.
// labels01 is indexed by training index. Throws OutOfRange if w is longer
// than the neighbor list.
double weightedKnn( const NeighborList& neighbors, std::span<const double> labels01, const WeightVector& w );

// Mean label of the k nearest. Evaluated as weightedKnn with uniform weights,
// so the two agree bit for bit.
double unweightedKnn( const NeighborList& neighbors, std::span<const double> labels01, std::size_t k );

// One-vs-rest estimates for every class from a single neighbor list:
// entry c equals weightedKnn on the indicator of class c.
std::vector<double> weightedKnnPerClass( const NeighborList& neighbors, std::span<const int> labels,
	std::size_t classCount, const WeightVector& w );

// 1 iff estimate >= 1/2. Throws NonFinite on NaN/inf.
int plugInClassify( double estimate );

// Argmax over per-class estimates; ties go to the smallest class id.
int classifyMulticlass( std::span<const double> perClassEstimates );

// Class decision from one-vs-rest estimates: the plug-in threshold on class 1
// for two classes, argmax otherwise, and class 0 when only one class exists.
int decideClass( std::span<const double> perClassEstimates );

} // namespace msknn
