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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace msknn {

// Labeled sample: n points of dimension d, class ids in 0..m-1.
// Features are stored row-major. Immutable after construction.
class Dataset {
public:
	Dataset() = default;
	Dataset( std::vector<double> features, std::size_t dim, std::vector<int> labels, std::size_t classCount,
		std::vector<std::string> classNames = {} );

	std::size_t size() const { return labels_.size(); }
	std::size_t dim() const { return dim_; }
	std::size_t classCount() const { return classCount_; }
	bool empty() const { return labels_.empty(); }

	std::span<const double> point( std::size_t i ) const { return { features_.data() + i * dim_, dim_ }; }
	int label( std::size_t i ) const { return labels_[i]; }

	std::span<const double> features() const { return features_; }
	const std::vector<int>& labels() const { return labels_; }
	// Raw label text for each class id, in order of first appearance in the source file.
	const std::vector<std::string>& classNames() const { return classNames_; }

	// Rows picked by index; class metadata is inherited so ids stay comparable.
	Dataset subset( std::span<const std::size_t> rows ) const;

	// One-vs-rest response: 1.0 where label == cls, 0.0 elsewhere.
	std::vector<double> indicator( int cls ) const;

private:
	std::vector<double> features_;
	std::size_t dim_ = 0;
	std::vector<int> labels_;
	std::size_t classCount_ = 0;
	std::vector<std::string> classNames_;
};

// Column selector: zero-based index or header name.
using LabelColumn = std::variant<std::size_t, std::string>;

// "4" -> index 4, anything non-numeric -> header name.
LabelColumn parseLabelColumn( const std::string& text );

// Reads a comma-separated file. Labels are remapped to 0..m-1 in order of
// first appearance. Throws Error with MissingFile, RaggedRow, BadNumber or
// EmptyDataset.
Dataset loadCsv( const std::filesystem::path& path, const LabelColumn& labelColumn, bool hasHeader );

enum class NormKind { ZScore, MinMax };

// Per-feature affine map x -> (x - center) / scale. For z-scoring, center is
// the mean and scale the population standard deviation; for min-max they are
// the minimum and the range. scale == 0 marks a constant feature, which maps to 0.
struct NormStats {
	NormKind kind = NormKind::ZScore;
	std::vector<double> center;
	std::vector<double> scale;
};

NormStats fitNorm( const Dataset& data, NormKind kind = NormKind::ZScore );
Dataset applyNorm( const NormStats& stats, const Dataset& data );
void applyNorm( const NormStats& stats, std::span<double> point );

inline std::pair<Dataset, NormStats> normalize( const Dataset& data, NormKind kind = NormKind::ZScore )
{
	NormStats stats = fitNorm( data, kind );
	return { applyNorm( stats, data ), std::move( stats ) };
}

// Key-value text form ("key=value" per line) for auditing runs.
void saveNormStats( const NormStats& stats, const std::filesystem::path& path );
NormStats loadNormStats( const std::filesystem::path& path );

struct SplitSpec {
	double trainFraction = 0.7;
	std::uint64_t seed = 0;
};

struct Split {
	Dataset train;
	Dataset test;
	std::vector<std::size_t> trainRows;
	std::vector<std::size_t> testRows;
};

// floor(trainFraction * n) rows go to train, chosen by a seeded permutation.
Split split( const Dataset& data, const SplitSpec& spec );

} // namespace msknn
