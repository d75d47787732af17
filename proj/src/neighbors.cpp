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
#include <msknn/neighbors.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace msknn {

NeighborList knnSearch( const Dataset& train, std::span<const double> query, std::size_t kMax )
{
	const std::size_t n = train.size();
	const std::size_t d = train.dim();
	if( kMax == 0 || kMax > n ) {
		throw Error( Errc::OutOfRange, "k_max = " + std::to_string( kMax ) + " must lie in 1.."
			+ std::to_string( n ) );
	}
	if( query.size() != d ) {
		throw Error( Errc::DimensionMismatch, "query has dimension " + std::to_string( query.size() )
			+ ", training data has " + std::to_string( d ) );
	}

	// (squared distance, index): lexicographic order gives the index tie-break.
	std::vector<std::pair<double, std::size_t>> candidates( n );
	for( std::size_t i = 0; i < n; ++i ) {
		const auto p = train.point( i );
		double sq = 0.0;
		for( std::size_t j = 0; j < d; ++j ) {
			const double diff = p[j] - query[j];
			sq += diff * diff;
		}
		candidates[i] = { sq, i };
	}
	const auto kth = candidates.begin() + static_cast<std::ptrdiff_t>( kMax );
	if( kMax < n ) {
		std::nth_element( candidates.begin(), kth - 1, candidates.end() );
	}
	std::sort( candidates.begin(), kth );

	NeighborList result;
	result.indices.reserve( kMax );
	result.distances.reserve( kMax );
	for( auto it = candidates.begin(); it != kth; ++it ) {
		result.distances.push_back( std::sqrt( it->first ) );
		result.indices.push_back( it->second );
	}
	result.query.assign( query.begin(), query.end() );
	return result;
}

double radiusAt( const NeighborList& neighbors, std::size_t k )
{
	if( k == 0 || k > neighbors.size() ) {
		throw Error( Errc::OutOfRange, "radius index k = " + std::to_string( k ) + " outside 1.."
			+ std::to_string( neighbors.size() ) );
	}
	return neighbors.distances[k - 1];
}

} // namespace msknn
