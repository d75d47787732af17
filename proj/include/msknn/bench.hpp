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
#include <msknn/multiscale.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace msknn {

enum class BenchMethod { Uniform, SamworthNonneg, SamworthReal, MsknnRadius, MsknnLogK };

// CLI names: uniform, snn, srw, msknn-r, msknn-log.
std::string_view benchMethodName( BenchMethod method );
BenchMethod benchMethodFromName( const std::string& name );
// Comma-separated list; duplicates are dropped, order kept.
std::vector<BenchMethod> parseBenchMethods( const std::string& list );

struct BenchConfig {
	std::vector<std::filesystem::path> datasets;
	LabelColumn labelColumn = std::size_t{ 0 };
	bool hasHeader = true;
	std::vector<BenchMethod> methods{ BenchMethod::Uniform, BenchMethod::SamworthNonneg, BenchMethod::SamworthReal,
		BenchMethod::MsknnRadius, BenchMethod::MsknnLogK };
	std::size_t scales = 5; // V
	std::size_t order = 1;  // C
	double lambda = 1e-4;
	std::size_t repeats = 10;
	double trainFraction = 0.7;
	std::uint64_t seed = 0;
	NormKind norm = NormKind::ZScore;
	bool verbose = false;
};

struct BenchRow {
	std::string dataset;
	std::size_t n = 0;
	std::size_t d = 0;
	std::size_t m = 0;
	BenchMethod method = BenchMethod::Uniform;
	double meanAccuracy = 0.0;
	double stdAccuracy = 0.0; // sample (n - 1) convention; 0 for a single repeat
	std::vector<double> accuracies;
	std::vector<std::size_t> kPerRepeat; // k = V floor(n_pred^(4/(4+d))), clamped
	double seconds = 0.0;
};

struct BenchReport {
	std::vector<BenchRow> rows;            // sorted by dataset, then method
	std::vector<std::string> diagnostics; // skipped datasets, verbose notes
};

// Checks repeats >= 1, a non-empty method list, 0 < fraction <= 1 and the
// multiscale settings. Throws InvalidArgument.
void validate( const BenchConfig& config );

// Per repeat r: split with seed + r, fit normalization on the training part,
// apply it to both parts, and score every method on every test query. All
// methods share k = V floor(n_pred^(4/(4+d))); the multiscale methods use its V
// equal divisions. A dataset too small for the k rule, or with an empty test
// part, is skipped with a diagnostic.
BenchReport runBenchmark( const BenchConfig& config );

// Same protocol on an in-memory dataset; `name` labels the rows.
BenchReport runBenchmark( const std::string& name, const Dataset& data, const BenchConfig& config );

// CSV: dataset,n,d,m,method,mean_acc,std_acc,seconds. Wall-clock is written
// as 0 unless `withTiming`, keeping reports byte-reproducible.
void writeBenchCsv( std::ostream& out, const BenchReport& report, bool withTiming );

} // namespace msknn
