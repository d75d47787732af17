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

#include <cmath>
#include <numeric>
#include <string>

namespace msknn {

double delta( std::size_t i, std::size_t ell, std::size_t d )
{
	if( i == 0 || d == 0 ) {
		throw Error( Errc::InvalidArgument, "delta needs i >= 1 and d >= 1" );
	}
	const double exponent = 1.0 + 2.0 * static_cast<double>( ell ) / static_cast<double>( d );
	const auto x = static_cast<double>( i );
	return std::pow( x, exponent ) - std::pow( x - 1.0, exponent );
}

WeightVector samworthNonnegWeights( std::size_t kStar, std::size_t d )
{
	if( kStar == 0 || d == 0 ) {
		throw Error( Errc::InvalidArgument, "non-negative weights need k* >= 1 and d >= 1" );
	}
	const double k = static_cast<double>( kStar );
	const double dd = static_cast<double>( d );
	const double slope = dd / ( 2.0 * std::pow( k, 2.0 / dd ) );

	WeightVector w{ std::vector<double>( kStar ), WeightScheme::SamworthNonneg };
	double raw = 0.0;
	double clipped = 0.0;
	for( std::size_t i = 1; i <= kStar; ++i ) {
		const double value = ( 1.0 + dd / 2.0 - slope * delta( i, 1, d ) ) / k;
		raw += value;
		w.weights[i - 1] = std::max( value, 0.0 );
		clipped += w.weights[i - 1];
	}
	if( std::abs( clipped - raw ) > 1e-12 ) {
		for( double& wi : w.weights ) {
			wi /= clipped;
		}
	}
	return w;
}

WeightVector samworthRealWeights( const SamworthParams& params )
{
	if( params.u != 2 ) {
		throw Error( Errc::Unsupported, "real-valued weights are only available for u = 2 (got u = "
			+ std::to_string( params.u ) + ")" );
	}
	if( params.kStar == 0 || params.d == 0 ) {
		throw Error( Errc::InvalidArgument, "real-valued weights need k* >= 1 and d >= 1" );
	}
	const double k = static_cast<double>( params.kStar );
	const double dd = static_cast<double>( params.d );
	const double k2 = std::pow( k, 2.0 / dd );
	const double k4 = std::pow( k, 4.0 / dd );
	const double a0 = params.a0;
	const double a1 = ( ( dd + 4.0 ) * ( dd + 4.0 ) / 4.0 - 2.0 * ( dd + 4.0 ) / ( dd + 2.0 ) * a0 ) / k2;
	const double a2 = ( 1.0 - a0 - k2 * a1 ) / k4;

	WeightVector w{ std::vector<double>( params.kStar ), WeightScheme::SamworthReal };
	for( std::size_t i = 1; i <= params.kStar; ++i ) {
		w.weights[i - 1] = ( a0 + a1 * delta( i, 1, params.d ) + a2 * delta( i, 2, params.d ) ) / k;
	}
	return w;
}

double chooseA0( std::size_t kStar, std::size_t d )
{
	// w(a0) is affine in a0: w = base + a0 * dir.
	const auto base = samworthRealWeights( { kStar, d, 2, 0.0 } ).weights;
	const auto one = samworthRealWeights( { kStar, d, 2, 1.0 } ).weights;
	double curvature = 0.0;
	double cross = 0.0;
	double scale = 0.0;
	for( std::size_t i = 0; i < base.size(); ++i ) {
		const double dir = one[i] - base[i];
		curvature += dir * dir;
		cross += base[i] * dir;
		scale += base[i] * base[i];
	}
	if( curvature <= 1e-24 * std::max( scale, 1.0 ) ) {
		return 1.0;
	}
	return -cross / curvature;
}

void writeWeightsCsv( std::ostream& out, const WeightVector& w )
{
	const auto precision = out.precision( 17 );
	out << "index,weight\n";
	for( std::size_t i = 0; i < w.size(); ++i ) {
		out << ( i + 1 ) << ',' << w.weights[i] << '\n';
	}
	out.precision( precision );
}

} // namespace msknn
