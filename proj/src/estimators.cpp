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

#include <msknn/error.hpp>
#include <msknn/estimators.hpp>

#include <cmath>
#include <string>

namespace msknn {

std::string_view schemeName( WeightScheme scheme )
{
	switch( scheme ) {
		case WeightScheme::Uniform: return "uniform";
		case WeightScheme::SamworthNonneg: return "samworth_nonneg";
		case WeightScheme::SamworthReal: return "samworth_real";
		case WeightScheme::MsknnImplicit: return "msknn_implicit";
		case WeightScheme::Custom: return "custom";
	}
	return "custom";
}

WeightVector uniformWeights( std::size_t k )
{
	if( k == 0 ) {
		throw Error( Errc::OutOfRange, "uniform weights need k >= 1" );
	}
	return { std::vector<double>( k, 1.0 / static_cast<double>( k ) ), WeightScheme::Uniform };
}

double weightedKnn( const NeighborList& neighbors, std::span<const double> labels01, const WeightVector& w )
{
	if( w.size() > neighbors.size() ) {
		throw Error( Errc::OutOfRange, "weight vector of length " + std::to_string( w.size() )
			+ " exceeds neighbor list of length " + std::to_string( neighbors.size() ) );
	}
	double sum = 0.0;
	for( std::size_t i = 0; i < w.size(); ++i ) {
		sum += w.weights[i] * labels01[neighbors.indices[i]];
	}
	return sum;
}

double unweightedKnn( const NeighborList& neighbors, std::span<const double> labels01, std::size_t k )
{
	if( k == 0 || k > neighbors.size() ) {
		throw Error( Errc::OutOfRange, "k = " + std::to_string( k ) + " outside 1.."
			+ std::to_string( neighbors.size() ) );
	}
	return weightedKnn( neighbors, labels01, uniformWeights( k ) );
}

std::vector<double> weightedKnnPerClass( const NeighborList& neighbors, std::span<const int> labels,
	std::size_t classCount, const WeightVector& w )
{
	if( w.size() > neighbors.size() ) {
		throw Error( Errc::OutOfRange, "weight vector of length " + std::to_string( w.size() )
			+ " exceeds neighbor list of length " + std::to_string( neighbors.size() ) );
	}
	std::vector<double> sums( classCount, 0.0 );
	for( std::size_t i = 0; i < w.size(); ++i ) {
		const int y = labels[neighbors.indices[i]];
		for( std::size_t c = 0; c < classCount; ++c ) {
			sums[c] += w.weights[i] * ( static_cast<std::size_t>( y ) == c ? 1.0 : 0.0 );
		}
	}
	return sums;
}

int plugInClassify( double estimate )
{
	if( !std::isfinite( estimate ) ) {
		throw Error( Errc::NonFinite, "plug-in classifier received a non-finite estimate" );
	}
	return estimate >= 0.5 ? 1 : 0;
}

int classifyMulticlass( std::span<const double> perClassEstimates )
{
	if( perClassEstimates.empty() ) {
		throw Error( Errc::InvalidArgument, "no class estimates to choose from" );
	}
	std::size_t best = 0;
	for( std::size_t c = 0; c < perClassEstimates.size(); ++c ) {
		if( !std::isfinite( perClassEstimates[c] ) ) {
			throw Error( Errc::NonFinite, "class " + std::to_string( c ) + " estimate is not finite" );
		}
		if( perClassEstimates[c] > perClassEstimates[best] ) {
			best = c;
		}
	}
	return static_cast<int>( best );
}

int decideClass( std::span<const double> perClassEstimates )
{
	switch( perClassEstimates.size() ) {
		case 0: throw Error( Errc::InvalidArgument, "no class estimates to choose from" );
		case 1: return 0;
		case 2: return plugInClassify( perClassEstimates[1] );
		default: return classifyMulticlass( perClassEstimates );
	}
}

} // namespace msknn
