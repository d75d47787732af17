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

#include <msknn/msknn.h>

#include <doctest.h>

#include <cstring>
#include <string>

TEST_SUITE( "c_api" )
{
	TEST_CASE( "dataset handle lifecycle" )
	{
		msknn_dataset* data = nullptr;
		REQUIRE( msknn_dataset_load_csv( MSKNN_DATA_DIR "/iris.csv", "species", 1, &data ) == MSKNN_OK );
		size_t n = 0;
		size_t d = 0;
		size_t m = 0;
		CHECK( msknn_dataset_shape( data, &n, &d, &m ) == MSKNN_OK );
		CHECK( n == 150 );
		CHECK( d == 4 );
		CHECK( m == 3 );

		const double query[] = { 5.0, 3.4, 1.5, 0.2 };
		int cls = -1;
		CHECK( msknn_classify( data, query, nullptr, &cls ) == MSKNN_OK );
		CHECK( cls == 0 );
		double estimate = 0.0;
		msknn_config config;
		msknn_config_default( &config );
		config.predictor = MSKNN_PREDICTOR_LOGK;
		CHECK( msknn_estimate( data, query, 0, &config, &estimate ) == MSKNN_OK );
		CHECK( estimate > 0.5 );
		CHECK( msknn_estimate( data, query, 3, &config, &estimate ) == MSKNN_ERR_DATA );
		msknn_dataset_free( data );
		msknn_dataset_free( nullptr );
	}

	TEST_CASE( "status codes and last error" )
	{
		msknn_dataset* data = nullptr;
		CHECK( msknn_dataset_load_csv( "/nonexistent.csv", "0", 1, &data ) == MSKNN_ERR_DATA );
		CHECK( data == nullptr );
		CHECK( std::string( msknn_last_error() ).find( "nonexistent" ) != std::string::npos );
		CHECK( msknn_dataset_load_csv( nullptr, "0", 1, &data ) == MSKNN_ERR_USAGE );

		const double x[] = { 0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0 };
		const int y[] = { 0, 1, 0, 1, 0, 1, 0, 1, 0, 1 };
		REQUIRE( msknn_dataset_create( x, 10, 1, y, &data ) == MSKNN_OK );
		msknn_config config;
		msknn_config_default( &config );
		config.order = 9;
		int cls = 0;
		CHECK( msknn_classify( data, x, &config, &cls ) == MSKNN_ERR_USAGE );
		config.order = 1;
		config.lambda = 0.0;
		config.scales = 2;
		CHECK( msknn_classify( data, x, &config, &cls ) == MSKNN_OK );
		CHECK( std::string( msknn_last_error() ).empty() );
		msknn_dataset_free( data );
	}

	TEST_CASE( "bench run is reproducible through the C API" )
	{
		const char* paths[] = { MSKNN_DATA_DIR "/iris.csv" };
		msknn_bench_options options;
		msknn_bench_options_default( &options );
		options.datasets = paths;
		options.dataset_count = 1;
		options.label_column = "4";
		options.repeats = 2;
		options.methods = "uniform,msknn-log";
		char* a = nullptr;
		char* b = nullptr;
		REQUIRE( msknn_bench_run( &options, &a, nullptr ) == MSKNN_OK );
		REQUIRE( msknn_bench_run( &options, &b, nullptr ) == MSKNN_OK );
		CHECK( std::strcmp( a, b ) == 0 );
		CHECK( std::string( a ).find( "iris,150,4,3,msknn-log," ) != std::string::npos );
		msknn_string_free( a );
		msknn_string_free( b );

		options.methods = "bogus";
		CHECK( msknn_bench_run( &options, &a, nullptr ) == MSKNN_ERR_USAGE );
	}

	TEST_CASE( "weights, theory and rates entry points" )
	{
		char* csv = nullptr;
		REQUIRE( msknn_weight_profile_csv( 1000, 10, 100, 5, 2, &csv ) == MSKNN_OK );
		CHECK( std::string( csv ).rfind( "scheme,i,w\nsamworth_nonneg,1,", 0 ) == 0 );
		msknn_string_free( csv );
		CHECK( msknn_weight_profile_csv( 10, 10, 100, 5, 2, &csv ) == MSKNN_ERR_USAGE );

		REQUIRE( msknn_theory_run( "problem = bowl\nd = 2\n", &csv ) == MSKNN_OK );
		CHECK( std::string( csv ).find( "bowl,2,1," ) != std::string::npos );
		msknn_string_free( csv );
		CHECK( msknn_theory_run( "colour = red\n", &csv ) == MSKNN_ERR_USAGE );

		REQUIRE( msknn_rates_run( "n_grid = 100\nreps = 2\nn_test = 10\nmethods = bayes,unweighted\n", &csv ) == MSKNN_OK );
		CHECK( std::string( csv ).find( "bayes,100,2,0," ) != std::string::npos );
		msknn_string_free( csv );
	}
}
