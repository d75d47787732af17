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
#include <msknn/weights.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace msknn {

namespace {

constexpr BenchMethod kAllMethods[] = { BenchMethod::Uniform, BenchMethod::SamworthNonneg, BenchMethod::SamworthReal,
	BenchMethod::MsknnRadius, BenchMethod::MsknnLogK };

using Clock = std::chrono::steady_clock;

double secondsSince( Clock::time_point start )
{
	return std::chrono::duration<double>( Clock::now() - start ).count();
}

struct RepeatOutcome {
	std::vector<double> accuracy; // per method
	std::vector<double> seconds;
	std::size_t k = 0;
};

RepeatOutcome runRepeat( const Dataset& data, const BenchConfig& config, std::size_t repeat,
	std::vector<std::string>& notes )
{
	const Split parts = split( data, { config.trainFraction, config.seed + repeat } );
	const NormStats stats = fitNorm( parts.train, config.norm );
	const Dataset train = applyNorm( stats, parts.train );
	const Dataset test = applyNorm( stats, parts.test );
	const std::size_t d = train.dim();
	const std::size_t m = train.classCount();

	const auto ks = selectKs( train.size(), d, config.scales );
	const std::size_t k = ks.back();
	const WeightVector uniform = uniformWeights( k );
	const WeightVector nonneg = samworthNonnegWeights( k, d );
	const WeightVector real = samworthRealWeights( { k, d, 2, chooseA0( k, d ) } );

	MsknnConfig radius;
	radius.scales = config.scales;
	radius.order = config.order;
	radius.lambda = config.lambda;
	radius.predictor = Predictor::Radius;
	MsknnConfig logk = radius;
	logk.predictor = Predictor::LogK;

	const std::size_t methodCount = config.methods.size();
	std::vector<std::vector<char>> correct( test.size(), std::vector<char>( methodCount, 0 ) );
	std::vector<std::vector<double>> elapsed( test.size(), std::vector<double>( methodCount, 0.0 ) );
	std::vector<std::size_t> reducedOrder( test.size(), 0 );

	detail::parallelFor( test.size(), [&]( std::size_t q ) {
		const auto searchStart = Clock::now();
		const auto neighbors = knnSearch( train, test.point( q ), k );
		const double searchSeconds = secondsSince( searchStart );
		for( std::size_t j = 0; j < methodCount; ++j ) {
			const auto start = Clock::now();
			std::vector<double> estimates;
			switch( config.methods[j] ) {
				case BenchMethod::Uniform:
					estimates = weightedKnnPerClass( neighbors, train.labels(), m, uniform );
					break;
				case BenchMethod::SamworthNonneg:
					estimates = weightedKnnPerClass( neighbors, train.labels(), m, nonneg );
					break;
				case BenchMethod::SamworthReal:
					estimates = weightedKnnPerClass( neighbors, train.labels(), m, real );
					break;
				case BenchMethod::MsknnRadius:
				case BenchMethod::MsknnLogK: {
					const MsknnConfig& cfg = config.methods[j] == BenchMethod::MsknnRadius ? radius : logk;
					if( config.verbose && buildDesign( neighbors, ks, cfg ).order < cfg.order ) {
						reducedOrder[q] = 1;
					}
					estimates = msknnPerClass( neighbors, train.labels(), m, ks, cfg );
					break;
				}
			}
			correct[q][j] = decideClass( estimates ) == test.label( q ) ? 1 : 0;
			elapsed[q][j] = searchSeconds + secondsSince( start );
		}
	} );

	RepeatOutcome outcome{ std::vector<double>( methodCount, 0.0 ), std::vector<double>( methodCount, 0.0 ), k };
	for( std::size_t q = 0; q < test.size(); ++q ) {
		for( std::size_t j = 0; j < methodCount; ++j ) {
			outcome.accuracy[j] += correct[q][j];
			outcome.seconds[j] += elapsed[q][j];
		}
	}
	for( double& a : outcome.accuracy ) {
		a /= static_cast<double>( test.size() );
	}
	if( config.verbose ) {
		std::ostringstream note;
		note << "repeat " << repeat << ": n_pred=" << train.size() << " n_test=" << test.size() << " ks=";
		for( std::size_t v = 0; v < ks.size(); ++v ) {
			note << ( v > 0 ? "," : "" ) << ks[v];
		}
		const auto reduced = std::count( reducedOrder.begin(), reducedOrder.end(), 1 );
		if( reduced > 0 ) {
			note << " (order reduced on " << reduced << " queries)";
		}
		notes.push_back( note.str() );
	}
	return outcome;
}

} // namespace

std::string_view benchMethodName( BenchMethod method )
{
	switch( method ) {
		case BenchMethod::Uniform: return "uniform";
		case BenchMethod::SamworthNonneg: return "snn";
		case BenchMethod::SamworthReal: return "srw";
		case BenchMethod::MsknnRadius: return "msknn-r";
		case BenchMethod::MsknnLogK: return "msknn-log";
	}
	return "unknown";
}

BenchMethod benchMethodFromName( const std::string& name )
{
	for( BenchMethod m : kAllMethods ) {
		if( benchMethodName( m ) == name ) {
			return m;
		}
	}
	throw Error( Errc::InvalidArgument, "unknown method '" + name + "' (expected uniform, snn, srw, msknn-r, msknn-log)" );
}

std::vector<BenchMethod> parseBenchMethods( const std::string& list )
{
	std::vector<BenchMethod> methods;
	std::istringstream in( list );
	std::string item;
	while( std::getline( in, item, ',' ) ) {
		if( item.empty() ) {
			continue;
		}
		const BenchMethod m = benchMethodFromName( item );
		if( std::find( methods.begin(), methods.end(), m ) == methods.end() ) {
			methods.push_back( m );
		}
	}
	if( methods.empty() ) {
		throw Error( Errc::InvalidArgument, "method list is empty" );
	}
	return methods;
}

void validate( const BenchConfig& config )
{
	if( config.repeats == 0 ) {
		throw Error( Errc::InvalidArgument, "repeats must be at least 1" );
	}
	if( config.methods.empty() ) {
		throw Error( Errc::InvalidArgument, "method list is empty" );
	}
	if( !( config.trainFraction > 0.0 && config.trainFraction <= 1.0 ) ) {
		throw Error( Errc::InvalidArgument, "train fraction must lie in (0, 1]" );
	}
	MsknnConfig ms;
	ms.scales = config.scales;
	ms.order = config.order;
	ms.lambda = config.lambda;
	validate( ms );
}

BenchReport runBenchmark( const std::string& name, const Dataset& data, const BenchConfig& config )
{
	validate( config );
	BenchReport report;
	if( data.empty() ) {
		throw Error( Errc::EmptyDataset, "dataset '" + name + "' has no rows" );
	}

	const std::size_t methodCount = config.methods.size();
	std::vector<RepeatOutcome> outcomes;
	try {
		for( std::size_t r = 0; r < config.repeats; ++r ) {
			if( static_cast<std::size_t>( std::floor( config.trainFraction * static_cast<double>( data.size() )
				    * ( 1.0 + 1e-12 ) ) ) >= data.size() ) {
				throw Error( Errc::TooSmall, "test split is empty" );
			}
			outcomes.push_back( runRepeat( data, config, r, report.diagnostics ) );
		}
	} catch( const Error& e ) {
		if( e.code() != Errc::TooSmall ) {
			throw;
		}
		report.diagnostics.push_back( "skipping dataset '" + name + "': " + e.what() );
		return report;
	}

	for( std::size_t j = 0; j < methodCount; ++j ) {
		BenchRow row;
		row.dataset = name;
		row.n = data.size();
		row.d = data.dim();
		row.m = data.classCount();
		row.method = config.methods[j];
		for( const auto& outcome : outcomes ) {
			row.accuracies.push_back( outcome.accuracy[j] );
			row.kPerRepeat.push_back( outcome.k );
			row.meanAccuracy += outcome.accuracy[j];
			row.seconds += outcome.seconds[j];
		}
		const auto reps = static_cast<double>( outcomes.size() );
		row.meanAccuracy /= reps;
		if( outcomes.size() > 1 ) {
			double ss = 0.0;
			for( double a : row.accuracies ) {
				ss += ( a - row.meanAccuracy ) * ( a - row.meanAccuracy );
			}
			row.stdAccuracy = std::sqrt( ss / ( reps - 1.0 ) );
		}
		report.rows.push_back( std::move( row ) );
	}
	std::stable_sort( report.rows.begin(), report.rows.end(), []( const BenchRow& a, const BenchRow& b ) {
		return a.method < b.method;
	} );
	return report;
}

BenchReport runBenchmark( const BenchConfig& config )
{
	validate( config );
	if( config.datasets.empty() ) {
		throw Error( Errc::InvalidArgument, "no dataset given" );
	}
	BenchReport report;
	for( const auto& path : config.datasets ) {
		const Dataset data = loadCsv( path, config.labelColumn, config.hasHeader );
		BenchReport part = runBenchmark( path.stem().string(), data, config );
		report.rows.insert( report.rows.end(), part.rows.begin(), part.rows.end() );
		report.diagnostics.insert( report.diagnostics.end(), part.diagnostics.begin(), part.diagnostics.end() );
	}
	std::stable_sort( report.rows.begin(), report.rows.end(), []( const BenchRow& a, const BenchRow& b ) {
		return a.dataset != b.dataset ? a.dataset < b.dataset : a.method < b.method;
	} );
	return report;
}

void writeBenchCsv( std::ostream& out, const BenchReport& report, bool withTiming )
{
	const auto precision = out.precision( 6 );
	const auto flags = out.flags();
	out << "dataset,n,d,m,method,mean_acc,std_acc,seconds\n";
	for( const auto& row : report.rows ) {
		out << row.dataset << ',' << row.n << ',' << row.d << ',' << row.m << ',' << benchMethodName( row.method ) << ','
			<< std::fixed << row.meanAccuracy << ',' << row.stdAccuracy << ',' << ( withTiming ? row.seconds : 0.0 )
			<< '\n';
		out.flags( flags );
	}
	out.precision( precision );
}

} // namespace msknn
