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
#include <msknn/estimators.hpp>
#include <msknn/neighbors.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace msknn {

// Multiscale k-NN: unweighted k-NN estimates phi_v at scales k_1 < ... < k_V
// are regressed on a polynomial in a per-scale predictor p_v,
//   phi_v ~ b_0 + b_1 p_v + ... + b_C p_v^C,
// and the intercept b_0 is the estimate. With p_v = r(k_v)^2 this
// extrapolates the neighbor radius to 0; with p_v = ln k_v it extrapolates to k = 1.

enum class Predictor { Radius, LogK };

enum class KRule {
	PaperDefault, // k_v = v * floor(n^(4/(4+d))), clamped to fit n
	Explicit,     // user-supplied k list
	Ratio,        // k_1 given, k_v = min{k : r(k) >= ell_v * r(k_1)}
};

struct MsknnConfig {
	std::size_t scales = 5; // V
	std::size_t order = 1;  // C
	double lambda = 1e-4;
	Predictor predictor = Predictor::Radius;
	KRule kRule = KRule::PaperDefault;
	std::vector<std::size_t> explicitKs;
	std::size_t ratioK1 = 0;
	std::vector<double> ratioEll; // 1 = ell_1 < ell_2 < ... < ell_V
	// The default leaves b_0 out of the ridge penalty.
	bool penalizeIntercept = false;
};

// Throws InvalidArgument if V < 2, C > V - 1, lambda is negative or not
// finite, or an explicit / ratio specification is malformed.
void validate( const MsknnConfig& config );

// k_v = v * floor(nPred^(4/(4+d))) for v = 1..V. If k_V would exceed nPred the
// base drops to floor(nPred / V). Throws TooSmall when the base would be 0.
std::vector<std::size_t> selectKs( std::size_t nPred, std::size_t d, std::size_t scales );

// Ratio rule on a neighbor list long enough to reach ell_V * r(k_1).
// Duplicates (from tied radii) are dropped.
std::vector<std::size_t> selectKsRatio( const NeighborList& neighbors, std::size_t k1, std::span<const double> ell );

// Number of neighbors the search must return for this configuration.
std::size_t requiredNeighbors( std::size_t nTrain, std::size_t d, const MsknnConfig& config );

// Scales for a query; Ratio needs the neighbor list, other rules ignore it.
std::vector<std::size_t> resolveKs( std::size_t nTrain, std::size_t d, const MsknnConfig& config,
	const NeighborList& neighbors );

// Regression design, one row (1, p_v, ..., p_v^C) per scale.
struct Design {
	std::vector<std::size_t> ks;
	std::vector<double> predictors; // p_v
	std::size_t order = 0;          // C actually used (may be reduced)
	std::vector<double> values;     // row-major, V x (C + 1)
	std::vector<std::string> notes;

	std::size_t rows() const { return ks.size(); }
	std::size_t cols() const { return order + 1; }
	double at( std::size_t row, std::size_t col ) const { return values[row * cols() + col]; }
};

// If fewer than C + 1 distinct scales are given, C drops to (distinct - 1)
// and a note is recorded. Equal predictor values are allowed and noted.
Design buildDesign( const NeighborList& neighbors, std::span<const std::size_t> ks, const MsknnConfig& config );

// phi_v: unweighted k-NN estimate at each scale.
std::vector<double> scaleEstimates( const NeighborList& neighbors, std::span<const double> labels01,
	std::span<const std::size_t> ks );

struct FitDiagnostics {
	std::size_t rank = 0;
	double conditionEstimate = 1.0; // of the column-equilibrated system
	bool duplicatePredictors = false;
	double maxAbsZ = 0.0;
	std::vector<std::string> notes;
};

struct MsknnFit {
	std::vector<double> coefficients; // b_0..b_C
	double estimate = 0.0;            // b_0
	std::vector<double> z;            // scale weights: estimate = z . phi
	std::vector<double> wStar;        // per-neighbor weights, only when lambda == 0
	FitDiagnostics diagnostics;
};

// Minimizes |X b - phi|^2 + lambda * sum_{c>=1} b_c^2 by Householder QR of
// the augmented system. Throws NonFinite on non-finite input and Singular
// when lambda == 0 and the design is rank-deficient.
MsknnFit fitExtrapolate( const Design& design, std::span<const double> phi, double lambda,
	bool penalizeIntercept = false );

struct ImplicitWeights {
	std::vector<double> z;     // length V, sums to 1
	std::vector<double> wStar; // length k_V, sums to 1
};

// Closed form of the unregularized fit's intercept as a linear functional:
//   z = (I - P_R) 1 / (V - 1' P_R 1),  R_{vj} = p_v^j (j = 1..C),
//   w*_i = sum_{v : i <= k_v} z_v / k_v.
// Throws Singular if R is rank-deficient.
ImplicitWeights implicitWeightsFromPredictors( std::span<const double> predictors, std::span<const std::size_t> ks,
	std::size_t order );

// Radius form: p_v = r(k_v)^2 from the neighbor list.
ImplicitWeights implicitWeights( const NeighborList& neighbors, std::span<const std::size_t> ks, std::size_t order );

// w*_i = sum_{v : i <= k_v} z_v / k_v, i = 1..k_V.
std::vector<double> expandScaleWeights( std::span<const double> z, std::span<const std::size_t> ks );

// Full fit on a prepared neighbor list.
MsknnFit msknnFit( const NeighborList& neighbors, std::span<const double> labels01, std::span<const std::size_t> ks,
	const MsknnConfig& config );

// search -> scales -> design -> fit -> b_0.
double msknnEstimate( const Dataset& train, std::span<const double> query, std::span<const double> labels01,
	const MsknnConfig& config );

// One-vs-rest estimates b_0 for every class, sharing the neighbor list and design.
std::vector<double> msknnPerClass( const NeighborList& neighbors, std::span<const int> labels, std::size_t classCount,
	std::span<const std::size_t> ks, const MsknnConfig& config );

// Plug-in decision for two classes, argmax otherwise.
int msknnClassify( const Dataset& train, std::span<const double> query, const MsknnConfig& config );

} // namespace msknn
