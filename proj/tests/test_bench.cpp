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

#include <msknn/bench.hpp>
#include <msknn/error.hpp>
#include <msknn/multiscale.hpp>

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"

using namespace msknn;

TEST_SUITE( "bench" )
{
	TEST_CASE( "method names round-trip" )
	{
		for( const char* name : { "uniform", "snn", "srw", "msknn-r", "msknn-log" } ) {
			CHECK( benchMethodName( benchMethodFromName( name ) ) == name );
		}
		CHECK( parseBenchMethods( "msknn-log,uniform,msknn-log" )
			== std::vector<BenchMethod>{ BenchMethod::MsknnLogK, BenchMethod::Uniform } );
		CHECK_THROWS_AS( parseBenchMethods( "uniform,knn" ), Error );
		CHECK_THROWS_AS( parseBenchMethods( "," ), Error );
	}

	TEST_CASE( "config validation" )
	{
		BenchConfig config;
		config.repeats = 0;
		CHECK_THROWS_AS( validate( config ), Error );
		config = {};
		config.methods.clear();
		CHECK_THROWS_AS( validate( config ), Error );
		config = {};
		config.trainFraction = 1.5;
		CHECK_THROWS_AS( validate( config ), Error );
		config = {};
		config.order = 7;
		CHECK_THROWS_AS( validate( config ), Error );
	}

	TEST_CASE( "a single-class dataset scores 1 everywhere" )
	{
		Rng rng( 20 );
		const Dataset data = oracle::randomDataset( rng, 60, 3, 1 );
		BenchConfig config;
		config.repeats = 3;
		const auto report = runBenchmark( "one", data, config );
		REQUIRE( report.rows.size() == 5 );
		for( const auto& row : report.rows ) {
			CHECK( row.meanAccuracy == 1.0 );
			CHECK( row.stdAccuracy == 0.0 );
		}
	}

	TEST_CASE( "iris: protocol k, sample std, bands" )
	{
		BenchConfig config;
		config.datasets = { MSKNN_DATA_DIR "/iris.csv" };
		config.labelColumn = std::size_t{ 4 };
		config.seed = 7;
		const auto report = runBenchmark( config );
		REQUIRE( report.rows.size() == 5 );
		for( const auto& row : report.rows ) {
			CHECK( row.dataset == "iris" );
			CHECK( row.accuracies.size() == 10 );
			double mean = 0.0;
			for( double a : row.accuracies ) {
				CHECK( a >= 0.0 );
				CHECK( a <= 1.0 );
				mean += a / 10.0;
			}
			double ss = 0.0;
			for( double a : row.accuracies ) {
				ss += ( a - mean ) * ( a - mean );
			}
			CHECK( std::abs( row.stdAccuracy - std::sqrt( ss / 9.0 ) ) <= 1e-12 );
			for( std::size_t k : row.kPerRepeat ) {
				CHECK( k == 5 * 10 ); // n_pred = 105, d = 4
			}
		}
		CHECK( report.rows[0].method == BenchMethod::Uniform );
		CHECK( report.rows[4].method == BenchMethod::MsknnLogK );
	}

	TEST_CASE( "identical seeds give identical CSV" )
	{
		BenchConfig config;
		config.datasets = { MSKNN_DATA_DIR "/iris.csv" };
		config.labelColumn = std::size_t{ 4 };
		config.repeats = 3;
		std::ostringstream a;
		std::ostringstream b;
		writeBenchCsv( a, runBenchmark( config ), false );
		writeBenchCsv( b, runBenchmark( config ), false );
		CHECK( a.str() == b.str() );
		config.seed = 99;
		std::ostringstream c;
		writeBenchCsv( c, runBenchmark( config ), false );
		CHECK( c.str() != a.str() );
	}

	TEST_CASE( "too-small datasets are skipped with a diagnostic" )
	{
		Rng rng( 21 );
		const Dataset data = oracle::randomDataset( rng, 6, 2, 2 );
		BenchConfig config;
		const auto report = runBenchmark( "tiny", data, config );
		CHECK( report.rows.empty() );
		REQUIRE( report.diagnostics.size() == 1 );
		CHECK( report.diagnostics[0].find( "tiny" ) != std::string::npos );

		config.trainFraction = 1.0;
		const auto noTest = runBenchmark( "all-train", oracle::randomDataset( rng, 50, 2, 2 ), config );
		CHECK( noTest.rows.empty() );
		CHECK( noTest.diagnostics.size() == 1 );
	}

	TEST_CASE( "missing dataset file is a data error" )
	{
		BenchConfig config;
		config.datasets = { "/nonexistent.csv" };
		try {
			runBenchmark( config );
			FAIL( "expected an error" );
		} catch( const Error& e ) {
			CHECK( e.category() == ErrorCategory::Data );
		}
	}

	TEST_CASE( "CSV layout" )
	{
		BenchReport report;
		BenchRow row;
		row.dataset = "toy";
		row.n = 10;
		row.d = 2;
		row.m = 2;
		row.method = BenchMethod::SamworthReal;
		row.meanAccuracy = 0.5;
		row.stdAccuracy = 0.25;
		row.seconds = 1.5;
		report.rows.push_back( row );
		std::ostringstream plain;
		writeBenchCsv( plain, report, false );
		CHECK( plain.str() == "dataset,n,d,m,method,mean_acc,std_acc,seconds\ntoy,10,2,2,srw,0.500000,0.250000,0.000000\n" );
		std::ostringstream timed;
		writeBenchCsv( timed, report, true );
		CHECK( timed.str().find( ",1.500000\n" ) != std::string::npos );
	}
}
