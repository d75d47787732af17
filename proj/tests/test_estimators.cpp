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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"

using namespace msknn;

namespace {

// Neighbor list whose i-th nearest neighbor is training row i.
NeighborList identityList( std::size_t k )
{
	NeighborList nl;
	for( std::size_t i = 0; i < k; ++i ) {
		nl.indices.push_back( i );
		nl.distances.push_back( static_cast<double>( i + 1 ) );
	}
	return nl;
}

} // namespace

TEST_SUITE( "knn_estimators" )
{
	TEST_CASE( "unweighted mean of the nearest labels" )
	{
		const auto nl = identityList( 3 );
		const std::vector<double> y{ 1, 0, 1 };
		CHECK( unweightedKnn( nl, y, 3 ) == doctest::Approx( 2.0 / 3.0 ).epsilon( 1e-15 ) );
		CHECK( unweightedKnn( nl, y, 1 ) == 1.0 );
		const std::vector<double> ones{ 1, 1, 1 };
		for( std::size_t k = 1; k <= 3; ++k ) {
			CHECK( unweightedKnn( nl, ones, k ) == 1.0 );
		}
		CHECK_THROWS_AS( unweightedKnn( nl, y, 4 ), Error );
		CHECK_THROWS_AS( unweightedKnn( nl, y, 0 ), Error );
	}

	TEST_CASE( "weighted estimates are not clipped" )
	{
		const auto nl = identityList( 2 );
		const std::vector<double> y{ 1, 0 };
		CHECK( weightedKnn( nl, y, { { 2.0, -1.0 }, WeightScheme::Custom } ) == 2.0 );
		CHECK( weightedKnn( nl, y, { { 0.0, 1.0 }, WeightScheme::Custom } ) == 0.0 );
		CHECK_THROWS_AS( weightedKnn( nl, y, { { 0.2, 0.3, 0.5 }, WeightScheme::Custom } ), Error );
	}

	TEST_CASE( "uniform weights match unweighted bit for bit" )
	{
		Rng rng( 2 );
		for( int trial = 0; trial < 50; ++trial ) {
			const std::size_t k = 1 + rng.below( 40 );
			const auto nl = identityList( k );
			std::vector<double> y( k );
			for( double& v : y ) {
				v = static_cast<double>( rng.below( 2 ) );
			}
			CHECK( weightedKnn( nl, y, uniformWeights( k ) ) == unweightedKnn( nl, y, k ) );
		}
	}

	TEST_CASE( "affine consistency: weights summing to 1 reproduce constant labels" )
	{
		const auto nl = identityList( 4 );
		const std::vector<double> ones( 4, 1.0 );
		CHECK( weightedKnn( nl, ones, { { 3.0, -2.5, 0.25, 0.25 }, WeightScheme::Custom } ) == 1.0 );
	}

	TEST_CASE( "plug-in threshold" )
	{
		CHECK( plugInClassify( 0.5 ) == 1 );
		CHECK( plugInClassify( 0.4999 ) == 0 );
		CHECK( plugInClassify( 1.3 ) == 1 );
		CHECK( plugInClassify( -0.2 ) == 0 );
		CHECK_THROWS_AS( plugInClassify( std::numeric_limits<double>::quiet_NaN() ), Error );
		CHECK_THROWS_AS( plugInClassify( std::numeric_limits<double>::infinity() ), Error );
	}

	TEST_CASE( "argmax with smallest-id ties" )
	{
		CHECK( classifyMulticlass( std::vector<double>{ 0.2, 0.7, 0.1 } ) == 1 );
		CHECK( classifyMulticlass( std::vector<double>{ 0.5, 0.5 } ) == 0 );
		CHECK( classifyMulticlass( std::vector<double>{ 0.1, 0.4, 0.4 } ) == 1 );
		CHECK_THROWS_AS( classifyMulticlass( std::vector<double>{} ), Error );
		CHECK( decideClass( std::vector<double>{ 1.0 } ) == 0 );
		CHECK( decideClass( std::vector<double>{ 0.5, 0.5 } ) == 1 );
	}

	TEST_CASE( "one-vs-rest argmax agrees with the plug-in rule on two classes" )
	{
		Rng rng( 4 );
		for( int trial = 0; trial < 200; ++trial ) {
			const std::size_t n = 5 + rng.below( 60 );
			const Dataset train = oracle::randomDataset( rng, n, 2, 2 );
			const double q[] = { rng.uniform( -1, 1 ), rng.uniform( -1, 1 ) };
			std::size_t k = 1 + rng.below( n );
			k -= ( k % 2 == 0 ) ? 1 : 0; // odd k: no 0.5 ties
			const auto nl = knnSearch( train, q, k );
			const auto perClass = weightedKnnPerClass( nl, train.labels(), 2, uniformWeights( k ) );
			const auto y1 = train.indicator( 1 );
			CHECK( classifyMulticlass( perClass ) == plugInClassify( unweightedKnn( nl, y1, k ) ) );
			CHECK( perClass[1] == unweightedKnn( nl, y1, k ) );
		}
	}

	TEST_CASE( "estimates ignore the storage order of the training set" )
	{
		Rng rng( 8 );
		const Dataset train = oracle::randomDataset( rng, 80, 3, 2 );
		const auto perm = rng.permutation( train.size() );
		const Dataset shuffled = train.subset( perm );
		const double q[] = { 0.1, -0.2, 0.3 };
		const auto a = knnSearch( train, q, 15 );
		const auto b = knnSearch( shuffled, q, 15 );
		CHECK( unweightedKnn( a, train.indicator( 1 ), 15 ) == unweightedKnn( b, shuffled.indicator( 1 ), 15 ) );
		const WeightVector w{ { 0.5, 0.3, 0.2, -0.1, 0.1 }, WeightScheme::Custom };
		CHECK( weightedKnn( a, train.indicator( 1 ), w ) == weightedKnn( b, shuffled.indicator( 1 ), w ) );
	}

	TEST_CASE( "scheme names" )
	{
		CHECK( schemeName( WeightScheme::Uniform ) == "uniform" );
		CHECK( schemeName( WeightScheme::MsknnImplicit ) == "msknn_implicit" );
	}
}
