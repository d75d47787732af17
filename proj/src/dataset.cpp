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

#include <msknn/dataset.hpp>
#include <msknn/error.hpp>
#include <msknn/rng.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace msknn {

Dataset::Dataset( std::vector<double> features, std::size_t dim, std::vector<int> labels, std::size_t classCount,
		std::vector<std::string> classNames ) :
	features_( std::move( features ) ),
	dim_( dim ),
	labels_( std::move( labels ) ),
	classCount_( classCount ),
	classNames_( std::move( classNames ) )
{
	if( dim_ == 0 ) {
		throw Error( Errc::InvalidArgument, "dataset dimension must be at least 1" );
	}
	if( features_.size() != labels_.size() * dim_ ) {
		throw Error( Errc::DimensionMismatch, "feature buffer size does not match n * d" );
	}
	for( int y : labels_ ) {
		if( y < 0 || static_cast<std::size_t>( y ) >= classCount_ ) {
			throw Error( Errc::OutOfRange, "label " + std::to_string( y ) + " outside 0.."
				+ std::to_string( classCount_ ) + "-1" );
		}
	}
	if( !classNames_.empty() && classNames_.size() != classCount_ ) {
		throw Error( Errc::InvalidArgument, "class name table does not match class count" );
	}
}

Dataset Dataset::subset( std::span<const std::size_t> rows ) const
{
	std::vector<double> features;
	features.reserve( rows.size() * dim_ );
	std::vector<int> labels;
	labels.reserve( rows.size() );
	for( std::size_t row : rows ) {
		if( row >= size() ) {
			throw Error( Errc::OutOfRange, "subset row " + std::to_string( row ) + " out of range" );
		}
		const auto p = point( row );
		features.insert( features.end(), p.begin(), p.end() );
		labels.push_back( labels_[row] );
	}
	return Dataset( std::move( features ), dim_, std::move( labels ), classCount_, classNames_ );
}

std::vector<double> Dataset::indicator( int cls ) const
{
	std::vector<double> y( labels_.size() );
	std::transform( labels_.begin(), labels_.end(), y.begin(),
		[cls]( int label ) { return label == cls ? 1.0 : 0.0; } );
	return y;
}

LabelColumn parseLabelColumn( const std::string& text )
{
	if( !text.empty() && std::all_of( text.begin(), text.end(), []( unsigned char c ) { return std::isdigit( c ); } ) ) {
		return static_cast<std::size_t>( std::stoull( text ) );
	}
	return text;
}

namespace {

std::string trim( std::string_view s )
{
	const auto first = s.find_first_not_of( " \t\r" );
	if( first == std::string_view::npos ) {
		return {};
	}
	const auto last = s.find_last_not_of( " \t\r" );
	return std::string( s.substr( first, last - first + 1 ) );
}

std::vector<std::string> splitCells( const std::string& line )
{
	std::vector<std::string> cells;
	std::size_t start = 0;
	while( true ) {
		const auto comma = line.find( ',', start );
		if( comma == std::string::npos ) {
			cells.push_back( trim( std::string_view( line ).substr( start ) ) );
			break;
		}
		cells.push_back( trim( std::string_view( line ).substr( start, comma - start ) ) );
		start = comma + 1;
	}
	return cells;
}

bool parseDouble( const std::string& cell, double& value )
{
	if( cell.empty() ) {
		return false;
	}
	const char* begin = cell.data();
	const char* end = cell.data() + cell.size();
	if( *begin == '+' ) {
		++begin;
	}
	const auto [ptr, ec] = std::from_chars( begin, end, value );
	return ec == std::errc() && ptr == end && std::isfinite( value );
}

} // namespace

Dataset loadCsv( const std::filesystem::path& path, const LabelColumn& labelColumn, bool hasHeader )
{
	std::ifstream in( path );
	if( !in ) {
		throw Error( Errc::MissingFile, "cannot open dataset file '" + path.string() + "'" );
	}

	std::string line;
	std::size_t lineNo = 0;
	std::size_t arity = 0;
	std::size_t labelIndex = 0;
	bool labelResolved = false;

	if( const auto* index = std::get_if<std::size_t>( &labelColumn ) ) {
		labelIndex = *index;
		labelResolved = true;
	}

	if( hasHeader ) {
		while( std::getline( in, line ) ) {
			++lineNo;
			if( !trim( line ).empty() ) {
				break;
			}
		}
		const auto header = splitCells( line );
		arity = header.size();
		if( const auto* name = std::get_if<std::string>( &labelColumn ) ) {
			const auto it = std::find( header.begin(), header.end(), *name );
			if( it == header.end() ) {
				throw Error( Errc::InvalidArgument, "label column '" + *name + "' not found in header of '"
					+ path.string() + "'" );
			}
			labelIndex = static_cast<std::size_t>( it - header.begin() );
			labelResolved = true;
		}
	}
	if( !labelResolved ) {
		throw Error( Errc::InvalidArgument, "label column given by name but file has no header" );
	}

	std::vector<double> features;
	std::vector<int> labels;
	std::vector<std::string> classNames;
	std::unordered_map<std::string, int> classIds;
	std::size_t row = 0;

	while( std::getline( in, line ) ) {
		++lineNo;
		if( trim( line ).empty() ) {
			continue;
		}
		const auto cells = splitCells( line );
		if( arity == 0 ) {
			arity = cells.size();
		}
		if( cells.size() != arity ) {
			throw Error( Errc::RaggedRow, "row " + std::to_string( row ) + " (line " + std::to_string( lineNo )
				+ ") has " + std::to_string( cells.size() ) + " cells, expected " + std::to_string( arity ) );
		}
		if( labelIndex >= arity ) {
			throw Error( Errc::InvalidArgument, "label column " + std::to_string( labelIndex )
				+ " out of range for " + std::to_string( arity ) + " columns" );
		}
		if( arity < 2 ) {
			throw Error( Errc::EmptyDataset, "file '" + path.string() + "' has no feature columns" );
		}
		for( std::size_t c = 0; c < arity; ++c ) {
			if( c == labelIndex ) {
				continue;
			}
			double value = 0.0;
			if( !parseDouble( cells[c], value ) ) {
				throw Error( Errc::BadNumber, "row " + std::to_string( row ) + " (line " + std::to_string( lineNo )
					+ "), column " + std::to_string( c ) + ": '" + cells[c] + "' is not a number" );
			}
			features.push_back( value );
		}
		const auto& raw = cells[labelIndex];
		auto [it, inserted] = classIds.try_emplace( raw, static_cast<int>( classNames.size() ) );
		if( inserted ) {
			classNames.push_back( raw );
		}
		labels.push_back( it->second );
		++row;
	}

	if( labels.empty() ) {
		throw Error( Errc::EmptyDataset, "dataset '" + path.string() + "' has no data rows" );
	}
	const std::size_t classCount = classNames.size();
	return Dataset( std::move( features ), arity - 1, std::move( labels ), classCount, std::move( classNames ) );
}

NormStats fitNorm( const Dataset& data, NormKind kind )
{
	if( data.empty() ) {
		throw Error( Errc::EmptyDataset, "cannot fit normalization on an empty dataset" );
	}
	const std::size_t n = data.size();
	const std::size_t d = data.dim();
	NormStats stats;
	stats.kind = kind;
	stats.center.assign( d, 0.0 );
	stats.scale.assign( d, 0.0 );

	for( std::size_t j = 0; j < d; ++j ) {
		if( kind == NormKind::ZScore ) {
			double mean = 0.0;
			for( std::size_t i = 0; i < n; ++i ) {
				mean += data.point( i )[j];
			}
			mean /= static_cast<double>( n );
			double ss = 0.0;
			for( std::size_t i = 0; i < n; ++i ) {
				const double dev = data.point( i )[j] - mean;
				ss += dev * dev;
			}
			stats.center[j] = mean;
			// Summation rounding can leave a tiny positive spread on a constant column.
			bool constant = true;
			for( std::size_t i = 1; i < n && constant; ++i ) {
				constant = data.point( i )[j] == data.point( 0 )[j];
			}
			stats.scale[j] = constant ? 0.0 : std::sqrt( ss / static_cast<double>( n ) );
		} else {
			double lo = data.point( 0 )[j];
			double hi = lo;
			for( std::size_t i = 1; i < n; ++i ) {
				lo = std::min( lo, data.point( i )[j] );
				hi = std::max( hi, data.point( i )[j] );
			}
			stats.center[j] = lo;
			stats.scale[j] = hi - lo;
		}
	}
	return stats;
}

void applyNorm( const NormStats& stats, std::span<double> point )
{
	if( point.size() != stats.center.size() ) {
		throw Error( Errc::DimensionMismatch, "point dimension " + std::to_string( point.size() )
			+ " does not match normalization dimension " + std::to_string( stats.center.size() ) );
	}
	for( std::size_t j = 0; j < point.size(); ++j ) {
		point[j] = stats.scale[j] > 0.0 ? ( point[j] - stats.center[j] ) / stats.scale[j] : 0.0;
	}
}

Dataset applyNorm( const NormStats& stats, const Dataset& data )
{
	std::vector<double> features( data.features().begin(), data.features().end() );
	const std::size_t d = data.dim();
	for( std::size_t i = 0; i < data.size(); ++i ) {
		applyNorm( stats, std::span<double>( features.data() + i * d, d ) );
	}
	return Dataset( std::move( features ), d, data.labels(), data.classCount(), data.classNames() );
}

void saveNormStats( const NormStats& stats, const std::filesystem::path& path )
{
	std::ofstream out( path );
	if( !out ) {
		throw Error( Errc::MissingFile, "cannot write '" + path.string() + "'" );
	}
	out.precision( 17 );
	out << "kind=" << ( stats.kind == NormKind::ZScore ? "zscore" : "minmax" ) << '\n';
	out << "dim=" << stats.center.size() << '\n';
	for( std::size_t j = 0; j < stats.center.size(); ++j ) {
		out << "center." << j << '=' << stats.center[j] << '\n';
		out << "scale." << j << '=' << stats.scale[j] << '\n';
	}
}

NormStats loadNormStats( const std::filesystem::path& path )
{
	std::ifstream in( path );
	if( !in ) {
		throw Error( Errc::MissingFile, "cannot open '" + path.string() + "'" );
	}
	std::map<std::string, std::string> kv;
	std::string line;
	while( std::getline( in, line ) ) {
		const auto eq = line.find( '=' );
		if( eq != std::string::npos ) {
			kv[trim( line.substr( 0, eq ) )] = trim( line.substr( eq + 1 ) );
		}
	}
	auto number = [&kv, &path]( const std::string& key ) {
		const auto it = kv.find( key );
		double value = 0.0;
		if( it == kv.end() || !parseDouble( it->second, value ) ) {
			throw Error( Errc::BadNumber, "'" + path.string() + "': missing or malformed key '" + key + "'" );
		}
		return value;
	};

	NormStats stats;
	const auto kind = kv.find( "kind" );
	if( kind == kv.end() || ( kind->second != "zscore" && kind->second != "minmax" ) ) {
		throw Error( Errc::BadNumber, "'" + path.string() + "': missing or unknown 'kind'" );
	}
	stats.kind = kind->second == "zscore" ? NormKind::ZScore : NormKind::MinMax;
	const auto dim = static_cast<std::size_t>( number( "dim" ) );
	for( std::size_t j = 0; j < dim; ++j ) {
		stats.center.push_back( number( "center." + std::to_string( j ) ) );
		stats.scale.push_back( number( "scale." + std::to_string( j ) ) );
	}
	return stats;
}

Split split( const Dataset& data, const SplitSpec& spec )
{
	if( !( spec.trainFraction > 0.0 && spec.trainFraction <= 1.0 ) ) {
		throw Error( Errc::InvalidArgument, "train fraction must lie in (0, 1]" );
	}
	const std::size_t n = data.size();
	// Relative guard so decimal fractions like 0.7 hit the intended floor.
	const auto nTrain = static_cast<std::size_t>(
		std::floor( spec.trainFraction * static_cast<double>( n ) * ( 1.0 + 1e-12 ) ) );
	if( nTrain == 0 ) {
		throw Error( Errc::TooSmall, "train split is empty: floor(" + std::to_string( spec.trainFraction ) + " * "
			+ std::to_string( n ) + ") = 0" );
	}

	Rng rng( spec.seed );
	const auto perm = rng.permutation( n );
	Split result;
	result.trainRows.assign( perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>( std::min( nTrain, n ) ) );
	result.testRows.assign( perm.begin() + static_cast<std::ptrdiff_t>( std::min( nTrain, n ) ), perm.end() );
	result.train = data.subset( result.trainRows );
	result.test = data.subset( result.testRows );
	return result;
}

} // namespace msknn
