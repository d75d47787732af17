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

// Command-line front end. Links only the C API.

#include <msknn/msknn.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CString {
	char* text = nullptr;
	~CString() { msknn_string_free( text ); }
};

int report( msknn_status status )
{
	if( status != MSKNN_OK ) {
		std::cerr << "error: " << msknn_last_error() << '\n';
	}
	return static_cast<int>( status );
}

int emit( const char* text, const std::string& outPath )
{
	if( outPath.empty() ) {
		std::cout << text;
		std::cout.flush();
		return 0;
	}
	std::ofstream out( outPath, std::ios::binary );
	if( !out || !( out << text ) ) {
		std::cerr << "error: cannot write '" << outPath << "'\n";
		return MSKNN_ERR_DATA;
	}
	return 0;
}

int readConfig( const std::string& path, std::string& text )
{
	if( path.empty() ) {
		return 0;
	}
	std::ifstream in( path );
	if( !in ) {
		std::cerr << "error: cannot open config '" << path << "'\n";
		return MSKNN_ERR_DATA;
	}
	std::ostringstream buffer;
	buffer << in.rdbuf();
	text = buffer.str();
	return 0;
}

} // namespace

int main( int argc, char** argv )
{
	CLI::App app{ "Multiscale k-NN classification toolkit" };
	app.require_subcommand( 1 );

	std::string outPath;

	// bench
	auto* bench = app.add_subcommand( "bench", "Accuracy benchmark over CSV datasets" );
	std::vector<std::string> dataPaths;
	std::string labelCol = "0";
	std::string methods = "uniform,snn,srw,msknn-r,msknn-log";
	std::string norm = "zscore";
	bool noHeader = false;
	bool verbose = false;
	bool timing = false;
	msknn_bench_options options;
	msknn_bench_options_default( &options );
	bench->add_option( "--data", dataPaths, "CSV file(s)" )->required();
	bench->add_option( "--label-col", labelCol, "Label column: zero-based index or header name" );
	bench->add_option( "--methods", methods, "Comma list of uniform,snn,srw,msknn-r,msknn-log" );
	bench->add_option( "--V", options.scales, "Number of scales" );
	bench->add_option( "--C", options.order, "Polynomial order" );
	bench->add_option( "--lambda", options.lambda, "Ridge coefficient" );
	bench->add_option( "--repeats", options.repeats, "Random splits" );
	bench->add_option( "--frac", options.train_fraction, "Training fraction" );
	bench->add_option( "--seed", options.seed, "Base seed; repeat r uses seed + r" );
	bench->add_option( "--norm", norm, "Feature normalization" )->check( CLI::IsMember( { "zscore", "minmax" } ) );
	bench->add_flag( "--no-header", noHeader, "CSV files have no header line" );
	bench->add_flag( "--verbose", verbose, "Print per-repeat diagnostics to stderr" );
	bench->add_flag( "--timing", timing, "Report wall-clock seconds (output is then not reproducible)" );
	bench->add_option( "--out", outPath, "Output CSV (default stdout)" );

	// weights
	auto* weights = app.add_subcommand( "weights", "Weight profiles of the three real-valued schemes" );
	std::size_t n = 1000;
	std::size_t d = 10;
	std::size_t kStar = 100;
	std::size_t scales = 5;
	std::size_t order = 2;
	weights->add_option( "--n", n, "Sample size" );
	weights->add_option( "--d", d, "Dimension" );
	weights->add_option( "--k-star", kStar, "Number of weighted neighbors" );
	weights->add_option( "--V", scales, "Number of scales" );
	weights->add_option( "--C", order, "Polynomial order" );
	weights->add_option( "--out", outPath, "Output CSV (default stdout)" );

	// theory, rates
	std::string configPath;
	auto* theory = app.add_subcommand( "theory", "Bias-expansion check against the closed-form coefficient" );
	theory->add_option( "--config", configPath, "key = value config file" )->check( CLI::ExistingFile );
	theory->add_option( "--out", outPath, "Output CSV (default stdout)" );
	auto* rates = app.add_subcommand( "rates", "Excess-risk rate experiment on a synthetic problem" );
	rates->add_option( "--config", configPath, "key = value config file" )->check( CLI::ExistingFile );
	rates->add_option( "--out", outPath, "Output CSV (default stdout)" );

	try {
		app.parse( argc, argv );
	} catch( const CLI::CallForHelp& e ) {
		return app.exit( e );
	} catch( const CLI::CallForAllHelp& e ) {
		return app.exit( e );
	} catch( const CLI::Success& e ) {
		return app.exit( e );
	} catch( const CLI::ParseError& e ) {
		std::cerr << "error: " << e.what() << "\n\n" << app.help();
		return MSKNN_ERR_USAGE;
	}

	if( *bench ) {
		std::vector<const char*> paths;
		for( const auto& p : dataPaths ) {
			paths.push_back( p.c_str() );
		}
		options.datasets = paths.data();
		options.dataset_count = paths.size();
		options.label_column = labelCol.c_str();
		options.has_header = noHeader ? 0 : 1;
		options.methods = methods.c_str();
		options.norm = norm == "minmax" ? MSKNN_NORM_MINMAX : MSKNN_NORM_ZSCORE;
		options.verbose = verbose ? 1 : 0;
		options.timing = timing ? 1 : 0;
		CString csv;
		CString notes;
		const msknn_status status = msknn_bench_run( &options, &csv.text, &notes.text );
		if( status != MSKNN_OK ) {
			return report( status );
		}
		std::cerr << notes.text;
		return emit( csv.text, outPath );
	}

	if( *weights ) {
		CString csv;
		const msknn_status status = msknn_weight_profile_csv( n, d, kStar, scales, order, &csv.text );
		return status != MSKNN_OK ? report( status ) : emit( csv.text, outPath );
	}

	std::string configText;
	if( const int rc = readConfig( configPath, configText ); rc != 0 ) {
		return rc;
	}
	CString csv;
	const msknn_status status =
		*theory ? msknn_theory_run( configText.c_str(), &csv.text ) : msknn_rates_run( configText.c_str(), &csv.text );
	return status != MSKNN_OK ? report( status ) : emit( csv.text, outPath );
}
