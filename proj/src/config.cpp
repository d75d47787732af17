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

#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace msknn {

namespace {

std::string trim( const std::string& s )
{
	const auto first = s.find_first_not_of( " \t\r" );
	if( first == std::string::npos ) {
		return {};
	}
	const auto last = s.find_last_not_of( " \t\r" );
	return s.substr( first, last - first + 1 );
}

template<typename T>
T parseNumber( const std::string& key, const std::string& text )
{
	T value{};
	const char* begin = text.data();
	const char* end = begin + text.size();
	const auto [ptr, ec] = std::from_chars( begin, end, value );
	if( ec != std::errc() || ptr != end ) {
		throw Error( Errc::InvalidArgument, "bad value '" + text + "' for key '" + key + "'" );
	}
	return value;
}

std::vector<std::string> splitList( const std::string& text )
{
	std::vector<std::string> items;
	std::istringstream in( text );
	std::string item;
	while( std::getline( in, item, ',' ) ) {
		item = trim( item );
		if( !item.empty() ) {
			items.push_back( item );
		}
	}
	return items;
}

template<typename T>
std::vector<T> parseList( const std::string& key, const std::string& text )
{
	std::vector<T> values;
	for( const auto& item : splitList( text ) ) {
		values.push_back( parseNumber<T>( key, item ) );
	}
	if( values.empty() ) {
		throw Error( Errc::InvalidArgument, "key '" + key + "' needs at least one value" );
	}
	return values;
}

void rejectUnknown( const KeyValues& values, const std::set<std::string>& known )
{
	for( const auto& [key, value] : values ) {
		if( known.count( key ) == 0 ) {
			throw Error( Errc::InvalidArgument, "unknown config key '" + key + "'" );
		}
	}
}

} // namespace

KeyValues parseKeyValues( std::istream& in )
{
	KeyValues values;
	std::string line;
	std::size_t lineNumber = 0;
	while( std::getline( in, line ) ) {
		++lineNumber;
		if( const auto hash = line.find( '#' ); hash != std::string::npos ) {
			line.erase( hash );
		}
		line = trim( line );
		if( line.empty() ) {
			continue;
		}
		const auto eq = line.find( '=' );
		if( eq == std::string::npos ) {
			throw Error( Errc::InvalidArgument, "config line " + std::to_string( lineNumber ) + " is not key = value" );
		}
		const std::string key = trim( line.substr( 0, eq ) );
		if( key.empty() || !values.emplace( key, trim( line.substr( eq + 1 ) ) ).second ) {
			throw Error( Errc::InvalidArgument, "config line " + std::to_string( lineNumber )
				+ ": empty or repeated key '" + key + "'" );
		}
	}
	return values;
}

TheoryCheckConfig theoryCheckConfigFrom( const KeyValues& values )
{
	rejectUnknown( values, { "problem", "d", "point", "r_grid", "order", "budget" } );
	TheoryCheckConfig config;
	for( const auto& [key, value] : values ) {
		if( key == "problem" ) {
			config.problem = value;
		} else if( key == "d" ) {
			config.dim = parseNumber<std::size_t>( key, value );
		} else if( key == "point" ) {
			config.point = parseList<double>( key, value );
		} else if( key == "r_grid" ) {
			config.rGrid = parseList<double>( key, value );
		} else if( key == "order" ) {
			config.order = parseNumber<std::size_t>( key, value );
		} else if( key == "budget" ) {
			config.budget = parseNumber<std::size_t>( key, value );
		}
	}
	return config;
}

std::vector<TheoryCheckRow> theoryCheck( const TheoryCheckConfig& config )
{
	const SyntheticProblem problem = problemByName( config.problem, config.dim );
	std::vector<double> x = config.point.empty() ? std::vector<double>( config.dim, 0.0 ) : config.point;
	if( x.size() != config.dim ) {
		throw Error( Errc::DimensionMismatch, "point has " + std::to_string( x.size() ) + " coordinates, expected "
			+ std::to_string( config.dim ) );
	}
	const auto coefficients = fitBiasExpansion( problem, x, config.rGrid, config.order, config.budget );
	std::vector<TheoryCheckRow> rows;
	for( std::size_t c = 0; c < coefficients.size(); ++c ) {
		double analytic = std::numeric_limits<double>::quiet_NaN();
		if( c == 0 ) {
			analytic = problem.eta( x );
		} else if( c == 1 ) {
			analytic = analyticB1( problem, x );
		}
		rows.push_back( { c, coefficients[c], analytic } );
	}
	return rows;
}

void writeTheoryCheckCsv( std::ostream& out, const TheoryCheckConfig& config, const std::vector<TheoryCheckRow>& rows )
{
	const auto precision = out.precision( 10 );
	out << "problem,d,c,fitted,analytic,rel_error\n";
	for( const auto& row : rows ) {
		out << config.problem << ',' << config.dim << ',' << row.index << ',' << row.fitted << ',';
		if( std::isnan( row.analytic ) ) {
			out << "nan,nan\n";
			continue;
		}
		out << row.analytic << ',';
		if( row.analytic != 0.0 ) {
			out << std::abs( row.fitted - row.analytic ) / std::abs( row.analytic ) << '\n';
		} else {
			out << "nan\n";
		}
	}
	out.precision( precision );
}

RateRunConfig rateRunConfigFrom( const KeyValues& values )
{
	rejectUnknown( values, { "problem", "d", "methods", "n_grid", "reps", "n_test", "seed", "scales", "order", "lambda",
		"k_rule", "ratio_k1_factor", "ratio_ell" } );
	RateRunConfig config;
	auto& e = config.experiment;
	e.methods = { RateMethod::Unweighted, RateMethod::MsknnRadius };
	e.nGrid = { 256, 512, 1024, 2048, 4096 };
	for( const auto& [key, value] : values ) {
		if( key == "problem" ) {
			config.problem = value;
		} else if( key == "d" ) {
			config.dim = parseNumber<std::size_t>( key, value );
		} else if( key == "methods" ) {
			e.methods.clear();
			for( const auto& name : splitList( value ) ) {
				e.methods.push_back( rateMethodFromName( name ) );
			}
		} else if( key == "n_grid" ) {
			e.nGrid = parseList<std::size_t>( key, value );
		} else if( key == "reps" ) {
			e.reps = parseNumber<std::size_t>( key, value );
		} else if( key == "n_test" ) {
			e.nTest = parseNumber<std::size_t>( key, value );
		} else if( key == "seed" ) {
			e.seed = parseNumber<std::uint64_t>( key, value );
		} else if( key == "scales" ) {
			e.scales = parseNumber<std::size_t>( key, value );
		} else if( key == "order" ) {
			e.order = parseNumber<std::size_t>( key, value );
		} else if( key == "lambda" ) {
			e.lambda = parseNumber<double>( key, value );
		} else if( key == "k_rule" ) {
			if( value == "paper" ) {
				e.kRule = KRule::PaperDefault;
			} else if( value == "ratio" ) {
				e.kRule = KRule::Ratio;
			} else {
				throw Error( Errc::InvalidArgument, "k_rule must be 'paper' or 'ratio'" );
			}
		} else if( key == "ratio_k1_factor" ) {
			e.ratioK1Factor = parseNumber<double>( key, value );
		} else if( key == "ratio_ell" ) {
			e.ratioEll = parseList<double>( key, value );
		}
	}
	return config;
}

} // namespace msknn
