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

#include <msknn/config.hpp>
#include <msknn/error.hpp>
#include <msknn/theory.hpp>

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

using namespace msknn;

namespace {

SyntheticProblem linearProblem( std::size_t d )
{
	SyntheticProblem p = constantProblem( d, 0.5 );
	p.name = "linear";
	p.eta = []( std::span<const double> x ) { return 0.5 + 0.2 * x[0]; };
	p.etaLaplacian = []( std::span<const double> ) { return 0.0; };
	return p;
}

} // namespace

TEST_SUITE( "theory_lab" )
{
	TEST_CASE( "Gauss-Legendre integrates polynomials of degree 2n - 1 exactly" )
	{
		for( std::size_t count : { 1, 2, 5, 16, 24 } ) {
			const auto rule = gaussLegendre( count );
			CHECK( std::accumulate( rule.weights.begin(), rule.weights.end(), 0.0 ) == doctest::Approx( 2.0 ) );
			const std::size_t degree = 2 * count - 1;
			double integral = 0.0;
			for( std::size_t i = 0; i < count; ++i ) {
				integral += rule.weights[i] * std::pow( rule.nodes[i], static_cast<double>( degree - 1 ) );
			}
			// degree - 1 is even: integral of x^m over [-1, 1] is 2 / (m + 1).
			CHECK( integral == doctest::Approx( 2.0 / static_cast<double>( degree ) ).epsilon( 1e-13 ) );
		}
		CHECK_THROWS_AS( gaussLegendre( 0 ), Error );
	}

	TEST_CASE( "ball average of a constant is the constant" )
	{
		for( std::size_t d : { 1, 2, 3, 5 } ) {
			const auto p = constantProblem( d, 0.3 );
			const std::vector<double> x( d, 0.2 );
			CHECK( etaInfinity( p, x, 0.4 ) == doctest::Approx( 0.3 ).epsilon( 1e-12 ) );
		}
	}

	TEST_CASE( "d = 1 closed form: 0.5 + r^2 / 3" )
	{
		const auto p = problemByName( "bowl", 1 );
		const double x = 0.0;
		for( double r : { 0.05, 0.1, 0.3 } ) {
			CHECK( std::abs( etaInfinity( p, { &x, 1 }, r ) - ( 0.5 + r * r / 3.0 ) ) <= 1e-12 );
		}
	}

	TEST_CASE( "quadratic ball averages are exact for d = 2, 3" )
	{
		// Average of |x|^2 over a ball of radius r centred at 0 is d r^2 / (d + 2).
		for( std::size_t d : { 2, 3 } ) {
			const auto p = bowlProblem( d, 0.5, 0.25 );
			const std::vector<double> x( d, 0.0 );
			const double r = 0.2;
			const double expected = 0.5 + 0.25 * static_cast<double>( d ) * r * r / static_cast<double>( d + 2 );
			CHECK( std::abs( etaInfinity( p, x, r ) - expected ) <= 1e-6 );
		}
	}

	TEST_CASE( "odd perturbations cancel in the ball average" )
	{
		for( std::size_t d : { 1, 2, 3 } ) {
			const auto p = linearProblem( d );
			const std::vector<double> x( d, 0.0 );
			CHECK( std::abs( etaInfinity( p, x, 0.3 ) - 0.5 ) <= 1e-12 );
		}
	}

	TEST_CASE( "ball average converges to eta as r -> 0" )
	{
		for( std::size_t d : { 1, 2, 3, 4 } ) {
			const auto p = problemByName( "ring", d );
			const std::vector<double> x( d, 0.3 );
			CHECK( std::abs( etaInfinity( p, x, 1e-3 ) - p.eta( x ) ) <= 1e-4 );
		}
	}

	TEST_CASE( "ball outside the support is an error" )
	{
		const auto p = constantProblem( 2, 0.5 );
		const double x[] = { 5.0, 5.0 };
		CHECK_THROWS_AS( etaInfinity( p, x, 0.5 ), Error );
		CHECK_THROWS_AS( etaInfinity( p, x, -1.0 ), Error );
	}

	TEST_CASE( "bias expansion: fitted b1 within 5% of the closed form" )
	{
		const std::vector<double> grid{ 0.05, 0.1, 0.15, 0.2, 0.25, 0.3 };
		const double x1 = 0.0;
		const auto p1 = problemByName( "bowl", 1 );
		const auto b1 = fitBiasExpansion( p1, { &x1, 1 }, grid, 1 );
		CHECK( analyticB1( p1, { &x1, 1 } ) == doctest::Approx( 1.0 / 3.0 ) );
		CHECK( std::abs( b1[1] - 1.0 / 3.0 ) <= 0.05 / 3.0 );
		CHECK( std::abs( b1[0] - 0.5 ) <= 1e-4 );

		const double x2[] = { 0.0, 0.0 };
		const auto p2 = problemByName( "bowl", 2 );
		const auto b2 = fitBiasExpansion( p2, x2, grid, 1 );
		CHECK( analyticB1( p2, x2 ) == doctest::Approx( 0.125 ) );
		CHECK( std::abs( b2[1] - 0.125 ) <= 0.05 * 0.125 );
		CHECK( std::abs( b2[0] - 0.5 ) <= 1e-4 );
	}

	TEST_CASE( "bias expansion of a constant" )
	{
		const auto p = constantProblem( 2, 0.7 );
		const double x[] = { 0.1, 0.1 };
		const auto b = fitBiasExpansion( p, x, std::vector<double>{ 0.1, 0.2, 0.3 }, 2 );
		CHECK( b[0] == doctest::Approx( 0.7 ).epsilon( 1e-10 ) );
		CHECK( std::abs( b[1] ) <= 1e-8 );
		CHECK( std::abs( b[2] ) <= 1e-7 );
		CHECK_THROWS_AS( fitBiasExpansion( p, x, std::vector<double>{ 0.1, 0.1 }, 1 ), Error );
	}

	TEST_CASE( "b0 matches eta on every problem" )
	{
		for( const char* name : { "constant", "bowl", "ring" } ) {
			for( std::size_t d : { 1, 2, 3 } ) {
				const auto p = problemByName( name, d );
				const std::vector<double> x( d, 0.2 );
				const auto b = fitBiasExpansion( p, x, std::vector<double>{ 0.05, 0.1, 0.15, 0.2 }, 2 );
				CHECK( std::abs( b[0] - p.eta( x ) ) <= 1e-4 );
			}
		}
	}

	TEST_CASE( "analytic b1: linear eta gives 0, missing Laplacian throws" )
	{
		const double x[] = { 0.1, 0.1 };
		CHECK( analyticB1( linearProblem( 2 ), x ) == 0.0 );
		auto p = linearProblem( 2 );
		p.etaLaplacian = nullptr;
		try {
			analyticB1( p, x );
			FAIL( "expected Unsupported" );
		} catch( const Error& e ) {
			CHECK( e.code() == Errc::Unsupported );
		}
	}

	TEST_CASE( "Bayes risk of known problems" )
	{
		CHECK( constantProblem( 2, 0.3 ).bayesRisk == doctest::Approx( 0.3 ).epsilon( 1e-9 ) );
		// d = 1 bowl: eta = 0.5 + x^2 clamps at 1 for |x| > sqrt(0.5); risk = mean of 1 - eta.
		const double s = std::sqrt( 0.5 );
		CHECK( problemByName( "bowl", 1 ).bayesRisk == doctest::Approx( 0.5 * ( s - 2.0 * s * s * s / 3.0 ) ).epsilon( 1e-6 ) );
		CHECK_THROWS_AS( problemByName( "nope", 2 ), Error );
	}

	TEST_CASE( "Bayes classifier has zero excess risk; table layout" )
	{
		RateExperimentConfig config;
		config.methods = { RateMethod::Bayes, RateMethod::Unweighted, RateMethod::MsknnRadius };
		config.nGrid = { 200, 400 };
		config.reps = 4;
		config.nTest = 100;
		config.seed = 3;
		const auto p = problemByName( "ring", 2 );
		const auto table = excessRiskExperiment( p, config );
		CHECK( table.cells.size() == 6 );
		CHECK( table.cell( RateMethod::Bayes, 400 ).meanExcess == 0.0 );
		CHECK( table.cell( RateMethod::Bayes, 400 ).meanRisk == doctest::Approx( p.bayesRisk ).epsilon( 0.05 ) );
		for( const auto& cell : table.cells ) {
			CHECK( cell.meanExcess >= 0.0 );
			CHECK( cell.perRepExcess.size() == 4 );
		}
		CHECK_THROWS_AS( table.cell( RateMethod::SamworthReal, 200 ), Error );

		// Same seed, same table.
		const auto again = excessRiskExperiment( p, config );
		for( std::size_t i = 0; i < table.cells.size(); ++i ) {
			CHECK( table.cells[i].perRepExcess == again.cells[i].perRepExcess );
		}

		std::ostringstream out;
		writeRateTableCsv( out, table, config.reps );
		CHECK( out.str().rfind( "method,n,reps,mean_excess,se_excess,mean_risk,slope,slope_se\n", 0 ) == 0 );
	}

	TEST_CASE( "unweighted k-NN rate on a smooth d = 2 problem" )
	{
		RateExperimentConfig config;
		config.methods = { RateMethod::Unweighted };
		config.nGrid = { 256, 512, 1024, 2048, 4096, 8192 };
		config.reps = 60;
		config.nTest = 300;
		config.seed = 5;
		const auto table = excessRiskExperiment( problemByName( "ring", 2 ), config );
		const auto& slope = table.slopes.at( RateMethod::Unweighted );
		REQUIRE( slope.valid );
		CHECK( slope.slope < -0.2 );
		CHECK( slope.slope > -0.9 );
		// Means do not increase with n beyond two standard errors.
		for( std::size_t i = 1; i < config.nGrid.size(); ++i ) {
			const auto& prev = table.cell( RateMethod::Unweighted, config.nGrid[i - 1] );
			const auto& next = table.cell( RateMethod::Unweighted, config.nGrid[i] );
			CHECK( next.meanExcess <= prev.meanExcess + 2.0 * std::hypot( prev.seExcess, next.seExcess ) );
		}
	}

	TEST_CASE( "paired difference" )
	{
		RateTable table;
		table.cells.push_back( { RateMethod::Unweighted, 10, 0, 0, 0, { 0.3, 0.5, 0.4 } } );
		table.cells.push_back( { RateMethod::MsknnRadius, 10, 0, 0, 0, { 0.1, 0.2, 0.3 } } );
		const auto diff = pairedDifference( table, RateMethod::Unweighted, RateMethod::MsknnRadius, 10 );
		CHECK( diff.mean == doctest::Approx( 0.2 ) );
		// Differences 0.2, 0.3, 0.1: sample sd 0.1, se 0.1 / sqrt(3).
		CHECK( diff.stdError == doctest::Approx( 0.1 / std::sqrt( 3.0 ) ) );
	}

	TEST_CASE( "ratio k rule runs" )
	{
		RateExperimentConfig config;
		config.methods = { RateMethod::MsknnRadius, RateMethod::MsknnLogK };
		config.nGrid = { 300 };
		config.reps = 2;
		config.nTest = 20;
		config.kRule = KRule::Ratio;
		config.ratioK1Factor = 0.5;
		const auto table = excessRiskExperiment( problemByName( "ring", 2 ), config );
		CHECK( table.cells.size() == 2 );
	}

	TEST_CASE( "weight profile report" )
	{
		const auto rows = weightProfileReport( 1000, 10, 100, 5, 2 );
		std::map<std::string, double> sums;
		std::map<std::string, std::vector<double>> profiles;
		for( const auto& row : rows ) {
			sums[row.scheme] += row.weight;
			profiles[row.scheme].push_back( row.weight );
		}
		CHECK( sums.size() == 3 );
		for( const auto& [scheme, total] : sums ) {
			CHECK( std::abs( total - 1.0 ) <= 1e-6 );
			CHECK( profiles[scheme].size() == 100 );
		}
		const auto& ms = profiles["msknn_implicit"];
		CHECK( std::abs( ms.back() ) < std::abs( ms.front() ) );
		std::size_t pieces = 1;
		for( std::size_t i = 1; i < ms.size(); ++i ) {
			pieces += ms[i] != ms[i - 1] ? 1 : 0;
		}
		CHECK( pieces == 5 );
		CHECK_THROWS_AS( weightProfileReport( 10, 2, 20, 5, 2 ), Error );
		CHECK_THROWS_AS( weightProfileReport( 1000, 2, 100, 5, 5 ), Error );
	}

	TEST_CASE( "config text parsing" )
	{
		std::istringstream in( "# comment\nproblem = bowl\nd=2\n\nr_grid = 0.1, 0.2,0.3 # trailing\n" );
		const auto values = parseKeyValues( in );
		const auto config = theoryCheckConfigFrom( values );
		CHECK( config.problem == "bowl" );
		CHECK( config.dim == 2 );
		CHECK( config.rGrid == std::vector<double>{ 0.1, 0.2, 0.3 } );

		std::istringstream dup( "d = 1\nd = 2\n" );
		CHECK_THROWS_AS( parseKeyValues( dup ), Error );
		std::istringstream junk( "just words\n" );
		CHECK_THROWS_AS( parseKeyValues( junk ), Error );
		CHECK_THROWS_AS( theoryCheckConfigFrom( { { "colour", "red" } } ), Error );
		CHECK_THROWS_AS( rateRunConfigFrom( { { "reps", "many" } } ), Error );
		CHECK_THROWS_AS( rateRunConfigFrom( { { "methods", "magic" } } ), Error );

		const auto rates = rateRunConfigFrom( { { "n_grid", "100,200" }, { "k_rule", "ratio" } } );
		CHECK( rates.experiment.nGrid == std::vector<std::size_t>{ 100, 200 } );
		CHECK( rates.experiment.kRule == KRule::Ratio );
	}

	TEST_CASE( "theory check rows" )
	{
		TheoryCheckConfig config;
		const auto rows = theoryCheck( config );
		REQUIRE( rows.size() == 2 );
		CHECK( rows[1].analytic == doctest::Approx( 1.0 / 3.0 ) );
		std::ostringstream out;
		writeTheoryCheckCsv( out, config, rows );
		CHECK( out.str().rfind( "problem,d,c,fitted,analytic,rel_error\nbowl,1,0,", 0 ) == 0 );
	}
}
