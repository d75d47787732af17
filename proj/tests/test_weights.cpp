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
#include <msknn/weights.hpp>

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "oracles.hpp"

using namespace msknn;

namespace {

double sum( const std::vector<double>& w )
{
	return std::accumulate( w.begin(), w.end(), 0.0 );
}

} // namespace

TEST_SUITE( "weight_schemes" )
{
	TEST_CASE( "delta increments" )
	{
		for( std::size_t ell = 1; ell <= 3; ++ell ) {
			for( std::size_t d = 1; d <= 6; ++d ) {
				CHECK( delta( 1, ell, d ) == 1.0 );
			}
		}
		CHECK( delta( 2, 1, 2 ) == doctest::Approx( 3.0 ).epsilon( 1e-15 ) );
		CHECK_THROWS_AS( delta( 0, 1, 2 ), Error );
	}

	TEST_CASE( "delta telescopes and increases in i" )
	{
		for( std::size_t d : { 1, 2, 5, 10 } ) {
			for( std::size_t ell : { 1, 2 } ) {
				const std::size_t k = 137;
				double total = 0.0;
				for( std::size_t i = 1; i <= k; ++i ) {
					total += delta( i, ell, d );
					if( i > 1 ) {
						CHECK( delta( i, ell, d ) > delta( i - 1, ell, d ) );
					}
				}
				const double expected = std::pow( 137.0, 1.0 + 2.0 * ell / static_cast<double>( d ) );
				CHECK( std::abs( total - expected ) <= 1e-9 * expected );
			}
		}
	}

	TEST_CASE( "non-negative weights: small cases" )
	{
		CHECK( samworthNonnegWeights( 1, 3 ).weights == std::vector<double>{ 1.0 } );
		const auto w = samworthNonnegWeights( 2, 2 ).weights;
		CHECK( w[0] == doctest::Approx( 0.75 ).epsilon( 1e-15 ) );
		CHECK( w[1] == doctest::Approx( 0.25 ).epsilon( 1e-15 ) );
		CHECK( samworthNonnegWeights( 2, 2 ).scheme == WeightScheme::SamworthNonneg );
	}

	TEST_CASE( "non-negative weights: structure" )
	{
		for( std::size_t d : { 1, 2, 4, 10 } ) {
			for( std::size_t k : { 5, 50, 100, 333 } ) {
				const auto w = samworthNonnegWeights( k, d ).weights;
				CHECK( std::abs( sum( w ) - 1.0 ) <= 1e-12 );
				CHECK( w.front() >= 1.0 / static_cast<double>( k ) );
				for( std::size_t i = 1; i < k; ++i ) {
					CHECK( w[i] <= w[i - 1] );
					CHECK( w[i] >= 0.0 );
				}
				if( k >= 50 ) {
					// Exact tail is (d + 2) / (2 d k^2) to leading order.
					const double kk = static_cast<double>( k );
					const double dd = static_cast<double>( d );
					const double lead = ( dd + 2.0 ) / ( 2.0 * dd * kk * kk );
					CHECK( std::abs( w.back() - lead ) <= 0.01 * lead );
					CHECK( w.back() <= ( 1.0 + dd ) / ( kk * kk ) );
				}
			}
		}
		CHECK( samworthNonnegWeights( 100, 10 ).weights.back() <= 1e-3 );
	}

	TEST_CASE( "real-valued family sums to 1 for any a0" )
	{
		Rng rng( 6 );
		for( int trial = 0; trial < 100; ++trial ) {
			const std::size_t k = 1 + rng.below( 300 );
			const std::size_t d = 1 + rng.below( 12 );
			const double a0 = rng.uniform( -20.0, 20.0 );
			const auto w = samworthRealWeights( { k, d, 2, a0 } ).weights;
			CHECK( std::abs( sum( w ) - 1.0 ) <= 1e-9 );
			const auto ref = oracle::realWeights( k, d, a0 );
			for( std::size_t i = 0; i < k; ++i ) {
				CHECK( std::abs( w[i] - ref[i] ) <= 1e-12 * ( 1.0 + std::abs( ref[i] ) ) );
			}
		}
		CHECK( samworthRealWeights( { 1, 4, 2, 7.5 } ).weights == std::vector<double>{ 1.0 } );
	}

	TEST_CASE( "real-valued family rejects u != 2" )
	{
		try {
			samworthRealWeights( { 10, 2, 3, 1.0 } );
			FAIL( "expected Unsupported" );
		} catch( const Error& e ) {
			CHECK( e.code() == Errc::Unsupported );
		}
	}

	TEST_CASE( "chooseA0 matches a grid search and minimizes sum w^2" )
	{
		for( auto [k, d] : { std::pair<std::size_t, std::size_t>{ 10, 1 }, { 20, 2 }, { 50, 3 }, { 10, 4 } } ) {
			const double a0 = chooseA0( k, d );
			CHECK( std::abs( a0 - oracle::gridSearchA0( k, d ) ) <= 1e-6 );
			const auto w = samworthRealWeights( { k, d, 2, a0 } ).weights;
			CHECK( std::abs( sum( w ) - 1.0 ) <= 1e-9 );
			CHECK( oracle::sumSquares( w ) <= oracle::sumSquares( oracle::realWeights( k, d, 1.0 ) ) );
		}
		// Outside [-10, 10]: widen the grid.
		CHECK( std::abs( chooseA0( 100, 10 ) - oracle::gridSearchA0( 100, 10, 0.0, 100.0 ) ) <= 1e-6 );
		CHECK( chooseA0( 1, 3 ) == 1.0 );
	}

	TEST_CASE( "figure-style profile: real-valued weights go negative at k* = 100, d = 10" )
	{
		const auto w = samworthRealWeights( { 100, 10, 2, chooseA0( 100, 10 ) } ).weights;
		CHECK( *std::min_element( w.begin(), w.end() ) < 0.0 );
	}

	TEST_CASE( "CSV export" )
	{
		std::ostringstream out;
		writeWeightsCsv( out, samworthNonnegWeights( 2, 2 ) );
		CHECK( out.str() == "index,weight\n1,0.75\n2,0.25\n" );
	}
}
