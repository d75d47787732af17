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

#include <msknn/rng.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

namespace msknn {

std::uint64_t Rng::below( std::uint64_t bound )
{
	if( bound <= 1 ) {
		return 0;
	}
	unsigned __int128 product = static_cast<unsigned __int128>( engine_() ) * bound;
	auto low = static_cast<std::uint64_t>( product );
	if( low < bound ) {
		const std::uint64_t threshold = -bound % bound;
		while( low < threshold ) {
			product = static_cast<unsigned __int128>( engine_() ) * bound;
			low = static_cast<std::uint64_t>( product );
		}
	}
	return static_cast<std::uint64_t>( product >> 64 );
}

double Rng::normal()
{
	double u1 = uniform();
	while( u1 <= 0.0 ) {
		u1 = uniform();
	}
	const double u2 = uniform();
	return std::sqrt( -2.0 * std::log( u1 ) ) * std::cos( 2.0 * std::numbers::pi * u2 );
}

std::vector<std::size_t> Rng::permutation( std::size_t n )
{
	std::vector<std::size_t> perm( n );
	std::iota( perm.begin(), perm.end(), std::size_t{ 0 } );
	for( std::size_t i = n; i > 1; --i ) {
		const auto j = static_cast<std::size_t>( below( i ) );
		std::swap( perm[i - 1], perm[j] );
	}
	return perm;
}

std::uint64_t mixSeed( std::uint64_t base, std::uint64_t stream )
{
	std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * ( stream + 1 );
	z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ULL;
	z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebULL;
	return z ^ ( z >> 31 );
}

} // namespace msknn
