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

#include <msknn/multiscale.hpp>
#include <msknn/rng.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace msknn {

using ScalarField = std::function<double( std::span<const double> )>;
using VectorField = std::function<std::vector<double>( std::span<const double> )>;

// Support of a uniform feature density: the box [lo, hi]^d or the ball of
// the given radius about the origin.
struct Support {
	enum class Shape { Box, Ball };
	Shape shape = Shape::Box;
	double lo = -1.0;
	double hi = 1.0;
	double radius = 1.0;

	bool contains( std::span<const double> x ) const;
	double volume( std::size_t d ) const;
};

// Synthetic classification problem with known ground truth: X ~ uniform on
// the support, Y | X = x ~ Bernoulli(eta(x)).
struct SyntheticProblem {
	std::string name;
	std::size_t dim = 1;
	Support support;
	ScalarField eta;
	ScalarField etaLaplacian; // optional
	VectorField etaGradient;  // optional
	double alpha = 1.0;       // nominal margin exponent
	double beta = 2.0;        // nominal Hoelder exponent
	double bayesRisk = 0.0;   // E[min(eta, 1 - eta)]

	// Feature density: 1 / vol on the support, 0 outside. Its gradient and
	// Laplacian vanish in the interior.
	double density( std::span<const double> x ) const;

	std::vector<double> samplePoint( Rng& rng ) const;
};

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
	std::vector<double> nodes;
	std::vector<double> weights;
};
GaussLegendre gaussLegendre( std::size_t count );

// E[min(eta, 1 - eta)] by tensor quadrature (d <= 2) or quasi-Monte Carlo.
double computeBayesRisk( const SyntheticProblem& problem, std::size_t budget = 1'000'000 );

// Problem factories. Each evaluates the Bayes risk on construction.
//   constant:  eta = c on [-1, 1]^d.
//   bowl:      eta = clamp(c0 + a |x|^2, 0, 1) on [-1, 1]^d; the clamp is
//              inactive near the origin, where the Laplacian is 2 d a.
//   ring:      eta = 0.5 + a (|x|^2 - rho^2) on [-1, 1]^d, decision boundary
//              the sphere |x| = rho; polynomial, so smooth of every order.
SyntheticProblem constantProblem( std::size_t d, double c );
SyntheticProblem bowlProblem( std::size_t d, double c0, double a );
SyntheticProblem ringProblem( std::size_t d, double a, double rho );

// Look up a factory by name ("constant", "bowl", "ring") with default parameters.
SyntheticProblem problemByName( const std::string& name, std::size_t d );

// Average of eta over B(x, r) intersected with the support, weighted by the
// feature density. Quadrature: Gauss-Legendre in radius with tensor angular
// rules for d <= 3, shifted Halton points for d > 3. `budget` caps the node count.
double etaInfinity( const SyntheticProblem& problem, std::span<const double> x, double r,
	std::size_t budget = 100'000, std::uint64_t seed = 1 );

// Least-squares fit of etaInfinity(r) on 1, r^2, ..., r^(2C) over r_grid;
// returns b_0..b_C, where b_0 estimates eta(x).
std::vector<double> fitBiasExpansion( const SyntheticProblem& problem, std::span<const double> x,
	std::span<const double> rGrid, std::size_t order, std::size_t budget = 100'000 );

// Leading bias coefficient
//   b_1 = 1 / (2d + 4) / mu(x) * (Laplacian(eta mu) - eta Laplacian(mu)),
// which for uniform mu is Laplacian(eta)(x) / (2d + 4).
// Throws Unsupported if the problem carries no Laplacian.
double analyticB1( const SyntheticProblem& problem, std::span<const double> x );

enum class RateMethod { Bayes, Unweighted, SamworthNonneg, SamworthReal, MsknnRadius, MsknnLogK };

std::string_view rateMethodName( RateMethod method );
RateMethod rateMethodFromName( const std::string& name );

struct RateExperimentConfig {
	std::vector<RateMethod> methods;
	std::vector<std::size_t> nGrid;
	std::size_t reps = 20;
	std::size_t nTest = 500;
	std::uint64_t seed = 0;
	std::size_t scales = 5;  // V
	std::size_t order = 2;   // C for the multiscale methods
	double lambda = 1e-4;
	// Multiscale k rule: PaperDefault (shared with the baselines) or Ratio,
	// where k_1 = max(1, floor(ratioK1Factor * n^(2 beta / (2 beta + d)))).
	KRule kRule = KRule::PaperDefault;
	double ratioK1Factor = 1.0;
	std::vector<double> ratioEll{ 1.0, 1.25, 1.5, 1.75, 2.0 };
};

struct RateCell {
	RateMethod method = RateMethod::Unweighted;
	std::size_t n = 0;
	double meanExcess = 0.0;
	double seExcess = 0.0;
	double meanRisk = 0.0;
	std::vector<double> perRepExcess;
};

struct RateSlope {
	double slope = 0.0;
	double stdError = 0.0;
	bool valid = false;
};

struct RateTable {
	std::vector<std::size_t> nGrid;
	std::vector<RateMethod> methods;
	std::vector<RateCell> cells; // method-major, then n
	std::map<RateMethod, RateSlope> slopes;
	double bayesRisk = 0.0;

	const RateCell& cell( RateMethod method, std::size_t n ) const;
};

// Paired comparison at one n: mean and standard error of (a - b) over reps.
struct PairedDifference {
	double mean = 0.0;
	double stdError = 0.0;
};
PairedDifference pairedDifference( const RateTable& table, RateMethod a, RateMethod b, std::size_t n );

// For each n and repetition, draws a training sample and nTest fresh queries
// (shared by all methods), and scores each classifier's excess risk on the
// queries as the mean of |2 eta(x) - 1| * [g(x) != g*(x)]. Repetitions run in
// parallel with seeds derived from (seed, n, rep).
RateTable excessRiskExperiment( const SyntheticProblem& problem, const RateExperimentConfig& config );

// CSV: method,n,reps,mean_excess,se_excess,mean_risk,slope,slope_se
void writeRateTableCsv( std::ostream& out, const RateTable& table, std::size_t reps );

struct WeightProfileRow {
	std::string scheme;
	std::size_t index = 0; // 1-based
	double weight = 0.0;
};

// Non-negative, real-valued (a0 from chooseA0) and multiscale implicit weights
// for k* neighbors, the latter at k_v = k* v / V with idealized radii
// r_v = (k_v / n)^(1/d).
std::vector<WeightProfileRow> weightProfileReport( std::size_t n, std::size_t d, std::size_t kStar,
	std::size_t scales, std::size_t order );

// CSV: scheme,i,w
void writeWeightProfileCsv( std::ostream& out, std::span<const WeightProfileRow> rows );

} // namespace msknn
