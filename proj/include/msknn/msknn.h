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

#ifndef MSKNN_MSKNN_H
#define MSKNN_MSKNN_H

#include <stddef.h>
#include <stdint.h>

#if defined( _WIN32 )
#if defined( MSKNN_BUILDING_LIBRARY )
#define MSKNN_API __declspec( dllexport )
#else
#define MSKNN_API __declspec( dllimport )
#endif
#else
#define MSKNN_API __attribute__( ( visibility( "default" ) ) )
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Status codes. Values 1-3 double as the CLI exit codes.
typedef enum msknn_status {
	MSKNN_OK = 0,
	MSKNN_ERR_USAGE = 1,   // bad argument or unsupported option
	MSKNN_ERR_DATA = 2,    // unreadable, malformed or too small input
	MSKNN_ERR_NUMERIC = 3, // non-finite values, singular system
	MSKNN_ERR_INTERNAL = 4
} msknn_status;

typedef struct msknn_dataset msknn_dataset;

typedef enum msknn_predictor { MSKNN_PREDICTOR_RADIUS = 0, MSKNN_PREDICTOR_LOGK = 1 } msknn_predictor;

typedef enum msknn_norm { MSKNN_NORM_ZSCORE = 0, MSKNN_NORM_MINMAX = 1 } msknn_norm;

MSKNN_API const char* msknn_version( void );

// Message of the last failure on the calling thread; "" if none.
MSKNN_API const char* msknn_last_error( void );

// Releases strings returned through char** out-parameters.
MSKNN_API void msknn_string_free( char* s );

// label_column: zero-based index ("4") or header name.
MSKNN_API msknn_status msknn_dataset_load_csv( const char* path, const char* label_column, int has_header,
	msknn_dataset** out );
// features: n x d row-major; labels in 0..m-1 with m = max label + 1.
MSKNN_API msknn_status msknn_dataset_create( const double* features, size_t n, size_t d, const int* labels,
	msknn_dataset** out );
MSKNN_API void msknn_dataset_free( msknn_dataset* data );
MSKNN_API msknn_status msknn_dataset_shape( const msknn_dataset* data, size_t* n, size_t* d, size_t* m );

typedef struct msknn_config {
	size_t scales; // V
	size_t order;  // C
	double lambda;
	msknn_predictor predictor;
} msknn_config;

// V = 5, C = 1, lambda = 1e-4, radius predictor.
MSKNN_API void msknn_config_default( msknn_config* config );

// One-vs-rest multiscale estimate of P(Y = cls | X = query) against train,
// with the default k rule. query has d entries.
MSKNN_API msknn_status msknn_estimate( const msknn_dataset* train, const double* query, int cls,
	const msknn_config* config, double* out );
MSKNN_API msknn_status msknn_classify( const msknn_dataset* train, const double* query, const msknn_config* config,
	int* out );

typedef struct msknn_bench_options {
	const char* const* datasets; // CSV paths
	size_t dataset_count;
	const char* label_column;    // index or header name
	int has_header;
	const char* methods;         // comma list of uniform,snn,srw,msknn-r,msknn-log; NULL for all
	size_t scales;
	size_t order;
	double lambda;
	size_t repeats;
	double train_fraction;
	uint64_t seed;
	msknn_norm norm;
	int verbose;
	int timing; // write wall-clock seconds instead of 0
} msknn_bench_options;

MSKNN_API void msknn_bench_options_default( msknn_bench_options* options );

// Runs the benchmark and returns the report CSV and newline-separated
// diagnostics. Either output pointer may be NULL.
MSKNN_API msknn_status msknn_bench_run( const msknn_bench_options* options, char** csv, char** diagnostics );

// Weight profiles (scheme,i,w) for the non-negative, real-valued and
// multiscale schemes.
MSKNN_API msknn_status msknn_weight_profile_csv( size_t n, size_t d, size_t k_star, size_t scales, size_t order,
	char** csv );

// Experiments driven by "key = value" config text; results as CSV.
MSKNN_API msknn_status msknn_theory_run( const char* config_text, char** csv );
MSKNN_API msknn_status msknn_rates_run( const char* config_text, char** csv );

#ifdef __cplusplus
}
#endif

#endif
