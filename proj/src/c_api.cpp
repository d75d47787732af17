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

#include <msknn/bench.hpp>
#include <msknn/config.hpp>
#include <msknn/error.hpp>
#include <msknn/multiscale.hpp>
#include <msknn/theory.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

struct msknn_dataset {
	msknn::Dataset data;
};

namespace {

thread_local std::string lastError;

msknn_status fail( msknn_status status, const std::string& message )
{
	lastError = message;
	return status;
}

// Runs body, translating exceptions into status codes.
template<typename Body>
msknn_status guarded( Body&& body )
{
	try {
		lastError.clear();
		body();
		return MSKNN_OK;
	} catch( const msknn::Error& e ) {
		switch( e.category() ) {
			case msknn::ErrorCategory::Usage: return fail( MSKNN_ERR_USAGE, e.what() );
			case msknn::ErrorCategory::Data: return fail( MSKNN_ERR_DATA, e.what() );
			case msknn::ErrorCategory::Numerical: return fail( MSKNN_ERR_NUMERIC, e.what() );
		}
		return fail( MSKNN_ERR_INTERNAL, e.what() );
	} catch( const std::bad_alloc& ) {
		return fail( MSKNN_ERR_INTERNAL, "out of memory" );
	} catch( const std::exception& e ) {
		return fail( MSKNN_ERR_INTERNAL, e.what() );
	} catch( ... ) {
		return fail( MSKNN_ERR_INTERNAL, "unknown failure" );
	}
}

void require( bool condition, const char* message )
{
	if( !condition ) {
		throw msknn::Error( msknn::Errc::InvalidArgument, message );
	}
}

char* duplicate( const std::string& s )
{
	char* copy = static_cast<char*>( std::malloc( s.size() + 1 ) );
	if( copy == nullptr ) {
		throw std::bad_alloc();
	}
	std::memcpy( copy, s.c_str(), s.size() + 1 );
	return copy;
}

void assign( char** out, const std::string& s )
{
	if( out != nullptr ) {
		*out = duplicate( s );
	}
}

msknn::MsknnConfig toConfig( const msknn_config* config )
{
	msknn_config c;
	msknn_config_default( &c );
	if( config != nullptr ) {
		c = *config;
	}
	require( c.predictor == MSKNN_PREDICTOR_RADIUS || c.predictor == MSKNN_PREDICTOR_LOGK, "unknown predictor" );
	msknn::MsknnConfig result;
	result.scales = c.scales;
	result.order = c.order;
	result.lambda = c.lambda;
	result.predictor = c.predictor == MSKNN_PREDICTOR_LOGK ? msknn::Predictor::LogK : msknn::Predictor::Radius;
	msknn::validate( result );
	return result;
}

msknn::KeyValues parseConfigText( const char* text )
{
	require( text != nullptr, "config text is null" );
	std::istringstream in( text );
	return msknn::parseKeyValues( in );
}

} // namespace

extern "C" {

const char* msknn_version( void )
{
	return "0.1.0";
}

const char* msknn_last_error( void )
{
	return lastError.c_str();
}

void msknn_string_free( char* s )
{
	std::free( s );
}

msknn_status msknn_dataset_load_csv( const char* path, const char* label_column, int has_header, msknn_dataset** out )
{
	return guarded( [&] {
		require( path != nullptr && label_column != nullptr && out != nullptr, "null argument" );
		*out = nullptr;
		auto data = msknn::loadCsv( path, msknn::parseLabelColumn( label_column ), has_header != 0 );
		*out = new msknn_dataset{ std::move( data ) };
	} );
}

msknn_status msknn_dataset_create( const double* features, size_t n, size_t d, const int* labels, msknn_dataset** out )
{
	return guarded( [&] {
		require( features != nullptr && labels != nullptr && out != nullptr, "null argument" );
		*out = nullptr;
		if( n == 0 || d == 0 ) {
			throw msknn::Error( msknn::Errc::EmptyDataset, "dataset needs n >= 1 and d >= 1" );
		}
		std::vector<int> y( labels, labels + n );
		if( *std::min_element( y.begin(), y.end() ) < 0 ) {
			throw msknn::Error( msknn::Errc::OutOfRange, "labels must be non-negative" );
		}
		const auto m = static_cast<std::size_t>( *std::max_element( y.begin(), y.end() ) ) + 1;
		*out = new msknn_dataset{ msknn::Dataset( std::vector<double>( features, features + n * d ), d, std::move( y ),
			m ) };
	} );
}

void msknn_dataset_free( msknn_dataset* data )
{
	delete data;
}

msknn_status msknn_dataset_shape( const msknn_dataset* data, size_t* n, size_t* d, size_t* m )
{
	return guarded( [&] {
		require( data != nullptr, "null dataset" );
		if( n != nullptr ) {
			*n = data->data.size();
		}
		if( d != nullptr ) {
			*d = data->data.dim();
		}
		if( m != nullptr ) {
			*m = data->data.classCount();
		}
	} );
}

void msknn_config_default( msknn_config* config )
{
	if( config != nullptr ) {
		*config = msknn_config{ 5, 1, 1e-4, MSKNN_PREDICTOR_RADIUS };
	}
}

msknn_status msknn_estimate( const msknn_dataset* train, const double* query, int cls, const msknn_config* config,
	double* out )
{
	return guarded( [&] {
		require( train != nullptr && query != nullptr && out != nullptr, "null argument" );
		const auto& data = train->data;
		if( cls < 0 || static_cast<std::size_t>( cls ) >= data.classCount() ) {
			throw msknn::Error( msknn::Errc::OutOfRange, "class id out of range" );
		}
		const auto labels01 = data.indicator( cls );
		*out = msknn::msknnEstimate( data, { query, data.dim() }, labels01, toConfig( config ) );
	} );
}

msknn_status msknn_classify( const msknn_dataset* train, const double* query, const msknn_config* config, int* out )
{
	return guarded( [&] {
		require( train != nullptr && query != nullptr && out != nullptr, "null argument" );
		*out = msknn::msknnClassify( train->data, { query, train->data.dim() }, toConfig( config ) );
	} );
}

void msknn_bench_options_default( msknn_bench_options* options )
{
	if( options == nullptr ) {
		return;
	}
	const msknn::BenchConfig defaults;
	*options = msknn_bench_options{};
	options->label_column = "0";
	options->has_header = 1;
	options->methods = nullptr;
	options->scales = defaults.scales;
	options->order = defaults.order;
	options->lambda = defaults.lambda;
	options->repeats = defaults.repeats;
	options->train_fraction = defaults.trainFraction;
	options->seed = defaults.seed;
	options->norm = MSKNN_NORM_ZSCORE;
}

msknn_status msknn_bench_run( const msknn_bench_options* options, char** csv, char** diagnostics )
{
	return guarded( [&] {
		require( options != nullptr, "null options" );
		require( options->dataset_count == 0 || options->datasets != nullptr, "null dataset list" );
		msknn::BenchConfig config;
		for( std::size_t i = 0; i < options->dataset_count; ++i ) {
			require( options->datasets[i] != nullptr, "null dataset path" );
			config.datasets.emplace_back( options->datasets[i] );
		}
		config.labelColumn = msknn::parseLabelColumn( options->label_column != nullptr ? options->label_column : "0" );
		config.hasHeader = options->has_header != 0;
		if( options->methods != nullptr ) {
			config.methods = msknn::parseBenchMethods( options->methods );
		}
		config.scales = options->scales;
		config.order = options->order;
		config.lambda = options->lambda;
		config.repeats = options->repeats;
		config.trainFraction = options->train_fraction;
		config.seed = options->seed;
		require( options->norm == MSKNN_NORM_ZSCORE || options->norm == MSKNN_NORM_MINMAX, "unknown normalization" );
		config.norm = options->norm == MSKNN_NORM_MINMAX ? msknn::NormKind::MinMax : msknn::NormKind::ZScore;
		config.verbose = options->verbose != 0;

		const auto report = msknn::runBenchmark( config );
		std::ostringstream table;
		msknn::writeBenchCsv( table, report, options->timing != 0 );
		std::string notes;
		for( const auto& line : report.diagnostics ) {
			notes += line + '\n';
		}
		assign( csv, table.str() );
		try {
			assign( diagnostics, notes );
		} catch( ... ) {
			if( csv != nullptr ) {
				std::free( *csv );
				*csv = nullptr;
			}
			throw;
		}
	} );
}

msknn_status msknn_weight_profile_csv( size_t n, size_t d, size_t k_star, size_t scales, size_t order, char** csv )
{
	return guarded( [&] {
		require( csv != nullptr, "null output" );
		const auto rows = msknn::weightProfileReport( n, d, k_star, scales, order );
		std::ostringstream out;
		msknn::writeWeightProfileCsv( out, rows );
		*csv = duplicate( out.str() );
	} );
}

msknn_status msknn_theory_run( const char* config_text, char** csv )
{
	return guarded( [&] {
		require( csv != nullptr, "null output" );
		const auto config = msknn::theoryCheckConfigFrom( parseConfigText( config_text ) );
		const auto rows = msknn::theoryCheck( config );
		std::ostringstream out;
		msknn::writeTheoryCheckCsv( out, config, rows );
		*csv = duplicate( out.str() );
	} );
}

msknn_status msknn_rates_run( const char* config_text, char** csv )
{
	return guarded( [&] {
		require( csv != nullptr, "null output" );
		const auto config = msknn::rateRunConfigFrom( parseConfigText( config_text ) );
		const auto problem = msknn::problemByName( config.problem, config.dim );
		const auto table = msknn::excessRiskExperiment( problem, config.experiment );
		std::ostringstream out;
		msknn::writeRateTableCsv( out, table, config.experiment.reps );
		*csv = duplicate( out.str() );
	} );
}

} // extern "C"
