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
#include <msknn/theory.hpp>
#include <msknn/weights.hpp>

#include "parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace msknn {

namespace {

constexpr std::size_t kPrimes[] = { 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
	79, 83, 89, 97, 101, 103, 107, 109, 113 };

double radicalInverse( std::size_t index, std::size_t base )
{
	double result = 0.0;
	double fraction = 1.0 / static_cast<double>( base );
	while( index > 0 ) {
		result += static_cast<double>( index % base ) * fraction;
		index /= base;
		fraction /= static_cast<double>( base );
	}
	return result;
}

// Halton points in [0,1)^d with a Cranley-Patterson rotation.
class ShiftedHalton {
public:
	ShiftedHalton( std::size_t dim, std::uint64_t seed ) : shift_( dim )
	{
		if( dim > std::size( kPrimes ) ) {
			throw Error( Errc::Unsupported, "quasi-Monte Carlo supports at most " + std::to_string( std::size( kPrimes ) )
				+ " dimensions" );
		}
		Rng rng( seed );
		for( double& s : shift_ ) {
			s = rng.uniform();
		}
	}

	void point( std::size_t index, std::span<double> out ) const
	{
		for( std::size_t j = 0; j < shift_.size(); ++j ) {
			const double u = radicalInverse( index + 1, kPrimes[j] ) + shift_[j];
			out[j] = u - std::floor( u );
		}
	}

private:
	std::vector<double> shift_;
};

// Composite Gauss-Legendre rule on [a, b]: `panels` panels of `order` nodes.
void compositeRule( double a, double b, std::size_t panels, const GaussLegendre& rule, std::vector<double>& nodes,
	std::vector<double>& weights )
{
	nodes.clear();
	weights.clear();
	const double width = ( b - a ) / static_cast<double>( panels );
	for( std::size_t p = 0; p < panels; ++p ) {
		const double mid = a + ( static_cast<double>( p ) + 0.5 ) * width;
		for( std::size_t i = 0; i < rule.nodes.size(); ++i ) {
			nodes.push_back( mid + 0.5 * width * rule.nodes[i] );
			weights.push_back( 0.5 * width * rule.weights[i] );
		}
	}
}

SyntheticProblem finish( SyntheticProblem problem )
{
	problem.bayesRisk = computeBayesRisk( problem );
	return problem;
}

double clamp01( double x ) { return std::clamp( x, 0.0, 1.0 ); }

double squaredNorm( std::span<const double> x )
{
	double s = 0.0;
	for( double v : x ) {
		s += v * v;
	}
	return s;
}

} // namespace

bool Support::contains( std::span<const double> x ) const
{
	if( shape == Shape::Box ) {
		return std::all_of( x.begin(), x.end(), [this]( double v ) { return v >= lo && v <= hi; } );
	}
	return squaredNorm( x ) <= radius * radius;
}

double Support::volume( std::size_t d ) const
{
	const double dd = static_cast<double>( d );
	if( shape == Shape::Box ) {
		return std::pow( hi - lo, dd );
	}
	return std::pow( std::numbers::pi, dd / 2.0 ) / std::tgamma( dd / 2.0 + 1.0 ) * std::pow( radius, dd );
}

double SyntheticProblem::density( std::span<const double> x ) const
{
	return support.contains( x ) ? 1.0 / support.volume( dim ) : 0.0;
}

std::vector<double> SyntheticProblem::samplePoint( Rng& rng ) const
{
	std::vector<double> x( dim );
	if( support.shape == Support::Shape::Box ) {
		for( double& v : x ) {
			v = rng.uniform( support.lo, support.hi );
		}
		return x;
	}
	do {
		for( double& v : x ) {
			v = rng.uniform( -support.radius, support.radius );
		}
	} while( !support.contains( x ) );
	return x;
}

GaussLegendre gaussLegendre( std::size_t count )
{
	if( count == 0 ) {
		throw Error( Errc::InvalidArgument, "Gauss-Legendre rule needs at least one node" );
	}
	GaussLegendre rule;
	rule.nodes.resize( count );
	rule.weights.resize( count );
	const auto n = static_cast<double>( count );
	for( std::size_t i = 0; i < ( count + 1 ) / 2; ++i ) {
		// Newton iteration on P_n from the Chebyshev-like initial guess.
		double x = std::cos( std::numbers::pi * ( static_cast<double>( i ) + 0.75 ) / ( n + 0.5 ) );
		double derivative = 0.0;
		for( int iter = 0; iter < 100; ++iter ) {
			double p0 = 1.0;
			double p1 = x;
			for( std::size_t j = 2; j <= count; ++j ) {
				const auto jj = static_cast<double>( j );
				const double p2 = ( ( 2.0 * jj - 1.0 ) * x * p1 - ( jj - 1.0 ) * p0 ) / jj;
				p0 = p1;
				p1 = p2;
			}
			if( count == 1 ) {
				p1 = x;
				p0 = 1.0;
			}
			derivative = n * ( x * p1 - p0 ) / ( x * x - 1.0 );
			const double step = p1 / derivative;
			x -= step;
			if( std::abs( step ) < 1e-16 ) {
				break;
			}
		}
		const double weight = 2.0 / ( ( 1.0 - x * x ) * derivative * derivative );
		rule.nodes[i] = -x;
		rule.nodes[count - 1 - i] = x;
		rule.weights[i] = weight;
		rule.weights[count - 1 - i] = weight;
	}
	if( count % 2 == 1 ) {
		rule.nodes[count / 2] = 0.0;
	}
	return rule;
}

double computeBayesRisk( const SyntheticProblem& problem, std::size_t budget )
{
	const std::size_t d = problem.dim;
	auto conditional = [&problem]( std::span<const double> x ) {
		const double eta = problem.eta( x );
		return std::min( eta, 1.0 - eta );
	};

	if( problem.support.shape == Support::Shape::Box && d <= 2 ) {
		const GaussLegendre rule = gaussLegendre( 8 );
		const auto perDim = d == 1 ? std::min<std::size_t>( budget, 4096 )
		                           : static_cast<std::size_t>( std::sqrt( static_cast<double>( budget ) ) );
		std::vector<double> nodes;
		std::vector<double> weights;
		compositeRule( problem.support.lo, problem.support.hi, std::max<std::size_t>( perDim / 8, 1 ), rule, nodes,
			weights );
		const double volume = problem.support.volume( d );
		double sum = 0.0;
		std::vector<double> x( d );
		if( d == 1 ) {
			for( std::size_t i = 0; i < nodes.size(); ++i ) {
				x[0] = nodes[i];
				sum += weights[i] * conditional( x );
			}
		} else {
			for( std::size_t i = 0; i < nodes.size(); ++i ) {
				for( std::size_t j = 0; j < nodes.size(); ++j ) {
					x[0] = nodes[i];
					x[1] = nodes[j];
					sum += weights[i] * weights[j] * conditional( x );
				}
			}
		}
		return sum / volume;
	}

	// Uniform points on the support via a shifted Halton sequence over the bounding box.
	const ShiftedHalton halton( d, 12345 );
	const double lo = problem.support.shape == Support::Shape::Box ? problem.support.lo : -problem.support.radius;
	const double hi = problem.support.shape == Support::Shape::Box ? problem.support.hi : problem.support.radius;
	std::vector<double> u( d );
	double sum = 0.0;
	std::size_t accepted = 0;
	for( std::size_t i = 0; i < budget; ++i ) {
		halton.point( i, u );
		for( double& v : u ) {
			v = lo + ( hi - lo ) * v;
		}
		if( problem.support.contains( u ) ) {
			sum += conditional( u );
			++accepted;
		}
	}
	return accepted > 0 ? sum / static_cast<double>( accepted ) : 0.0;
}

SyntheticProblem constantProblem( std::size_t d, double c )
{
	SyntheticProblem p;
	p.name = "constant";
	p.dim = d;
	p.eta = [c]( std::span<const double> ) { return c; };
	p.etaLaplacian = []( std::span<const double> ) { return 0.0; };
	p.etaGradient = [d]( std::span<const double> ) { return std::vector<double>( d, 0.0 ); };
	p.alpha = 1.0;
	p.beta = std::numeric_limits<double>::infinity();
	return finish( std::move( p ) );
}

SyntheticProblem bowlProblem( std::size_t d, double c0, double a )
{
	SyntheticProblem p;
	p.name = "bowl";
	p.dim = d;
	p.eta = [c0, a]( std::span<const double> x ) { return clamp01( c0 + a * squaredNorm( x ) ); };
	p.etaLaplacian = [d, a]( std::span<const double> ) { return 2.0 * static_cast<double>( d ) * a; };
	p.etaGradient = [a]( std::span<const double> x ) {
		std::vector<double> g( x.size() );
		std::transform( x.begin(), x.end(), g.begin(), [a]( double v ) { return 2.0 * a * v; } );
		return g;
	};
	p.alpha = 1.0;
	p.beta = 4.0;
	return finish( std::move( p ) );
}

SyntheticProblem ringProblem( std::size_t d, double a, double rho )
{
	SyntheticProblem p;
	p.name = "ring";
	p.dim = d;
	p.eta = [a, rho]( std::span<const double> x ) { return clamp01( 0.5 + a * ( squaredNorm( x ) - rho * rho ) ); };
	p.etaLaplacian = [d, a]( std::span<const double> ) { return 2.0 * static_cast<double>( d ) * a; };
	p.etaGradient = [a]( std::span<const double> x ) {
		std::vector<double> g( x.size() );
		std::transform( x.begin(), x.end(), g.begin(), [a]( double v ) { return 2.0 * a * v; } );
		return g;
	};
	p.alpha = 1.0;
	p.beta = 4.0;
	return finish( std::move( p ) );
}

SyntheticProblem problemByName( const std::string& name, std::size_t d )
{
	if( d == 0 ) {
		throw Error( Errc::InvalidArgument, "problem dimension must be at least 1" );
	}
	if( name == "constant" ) {
		return constantProblem( d, 0.5 );
	}
	if( name == "bowl" ) {
		// eta = 0.5 + x^2 for d = 1 and 0.5 + |x|^2 / 4 for d = 2.
		return bowlProblem( d, 0.5, d == 1 ? 1.0 : 0.25 );
	}
	if( name == "ring" ) {
		return ringProblem( d, 0.25, 0.5 );
	}
	throw Error( Errc::InvalidArgument, "unknown problem '" + name + "' (expected constant, bowl or ring)" );
}

double etaInfinity( const SyntheticProblem& problem, std::span<const double> x, double r, std::size_t budget,
	std::uint64_t seed )
{
	const std::size_t d = problem.dim;
	if( x.size() != d ) {
		throw Error( Errc::DimensionMismatch, "point dimension does not match problem" );
	}
	if( !( r > 0.0 ) || !std::isfinite( r ) ) {
		throw Error( Errc::InvalidArgument, "ball radius must be positive and finite" );
	}

	double numerator = 0.0;
	double denominator = 0.0;
	std::vector<double> y( d );
	auto accumulate = [&]( double weight ) {
		const double mu = problem.density( y );
		if( mu > 0.0 ) {
			numerator += weight * mu * problem.eta( y );
			denominator += weight * mu;
		}
	};

	const GaussLegendre rule = gaussLegendre( 16 );
	std::vector<double> nodes;
	std::vector<double> weights;

	if( d == 1 ) {
		// The ball is an interval; integrate exactly over its intersection with the support.
		const double lo = problem.support.shape == Support::Shape::Box ? problem.support.lo : -problem.support.radius;
		const double hi = problem.support.shape == Support::Shape::Box ? problem.support.hi : problem.support.radius;
		const double a = std::max( x[0] - r, lo );
		const double b = std::min( x[0] + r, hi );
		if( !( b > a ) ) {
			throw Error( Errc::OutOfRange, "ball does not intersect the support" );
		}
		compositeRule( a, b, std::clamp<std::size_t>( budget / 16, 1, 64 ), rule, nodes, weights );
		for( std::size_t i = 0; i < nodes.size(); ++i ) {
			y[0] = nodes[i];
			accumulate( weights[i] );
		}
	} else if( d == 2 ) {
		compositeRule( 0.0, r, 2, rule, nodes, weights );
		const std::size_t angles = std::clamp<std::size_t>( budget / nodes.size(), 8, 512 );
		for( std::size_t i = 0; i < nodes.size(); ++i ) {
			for( std::size_t t = 0; t < angles; ++t ) {
				const double theta = 2.0 * std::numbers::pi * static_cast<double>( t ) / static_cast<double>( angles );
				y[0] = x[0] + nodes[i] * std::cos( theta );
				y[1] = x[1] + nodes[i] * std::sin( theta );
				accumulate( weights[i] * nodes[i] );
			}
		}
	} else if( d == 3 ) {
		const GaussLegendre polar = gaussLegendre( 24 );
		compositeRule( 0.0, r, 2, rule, nodes, weights );
		const std::size_t perShell = polar.nodes.size();
		const std::size_t azimuths = std::clamp<std::size_t>( budget / ( nodes.size() * perShell ), 8, 96 );
		for( std::size_t i = 0; i < nodes.size(); ++i ) {
			for( std::size_t j = 0; j < perShell; ++j ) {
				const double cosTheta = polar.nodes[j];
				const double sinTheta = std::sqrt( std::max( 0.0, 1.0 - cosTheta * cosTheta ) );
				for( std::size_t t = 0; t < azimuths; ++t ) {
					const double phi = 2.0 * std::numbers::pi * static_cast<double>( t ) / static_cast<double>( azimuths );
					y[0] = x[0] + nodes[i] * sinTheta * std::cos( phi );
					y[1] = x[1] + nodes[i] * sinTheta * std::sin( phi );
					y[2] = x[2] + nodes[i] * cosTheta;
					accumulate( weights[i] * polar.weights[j] * nodes[i] * nodes[i] );
				}
			}
		}
	} else {
		const ShiftedHalton halton( d, seed );
		std::vector<double> u( d );
		for( std::size_t i = 0; i < budget; ++i ) {
			halton.point( i, u );
			double sq = 0.0;
			for( std::size_t j = 0; j < d; ++j ) {
				const double offset = r * ( 2.0 * u[j] - 1.0 );
				sq += offset * offset;
				y[j] = x[j] + offset;
			}
			if( sq <= r * r ) {
				accumulate( 1.0 );
			}
		}
	}

	if( !( denominator > 0.0 ) ) {
		throw Error( Errc::OutOfRange, "ball does not intersect the support" );
	}
	return numerator / denominator;
}

std::vector<double> fitBiasExpansion( const SyntheticProblem& problem, std::span<const double> x,
	std::span<const double> rGrid, std::size_t order, std::size_t budget )
{
	std::vector<double> sorted( rGrid.begin(), rGrid.end() );
	std::sort( sorted.begin(), sorted.end() );
	if( std::adjacent_find( sorted.begin(), sorted.end() ) != sorted.end() || sorted.size() < order + 1 ) {
		throw Error( Errc::InvalidArgument, "radius grid needs at least C + 1 distinct values" );
	}

	const auto rows = static_cast<Eigen::Index>( rGrid.size() );
	const auto cols = static_cast<Eigen::Index>( order + 1 );
	Eigen::MatrixXd design( rows, cols );
	Eigen::VectorXd response( rows );
	for( Eigen::Index i = 0; i < rows; ++i ) {
		const double r = rGrid[static_cast<std::size_t>( i )];
		response( i ) = etaInfinity( problem, x, r, budget );
		double power = 1.0;
		for( Eigen::Index c = 0; c < cols; ++c ) {
			design( i, c ) = power;
			power *= r * r;
		}
	}
	const Eigen::VectorXd scale = design.colwise().norm().transpose();
	for( Eigen::Index c = 0; c < cols; ++c ) {
		design.col( c ) /= scale( c );
	}
	const Eigen::VectorXd solution = design.colPivHouseholderQr().solve( response );
	std::vector<double> coefficients( static_cast<std::size_t>( cols ) );
	for( Eigen::Index c = 0; c < cols; ++c ) {
		coefficients[static_cast<std::size_t>( c )] = solution( c ) / scale( c );
	}
	return coefficients;
}

double analyticB1( const SyntheticProblem& problem, std::span<const double> x )
{
	if( !problem.etaLaplacian ) {
		throw Error( Errc::Unsupported, "problem '" + problem.name + "' has no Laplacian of eta" );
	}
	const double mu = problem.density( x );
	if( !( mu > 0.0 ) ) {
		throw Error( Errc::OutOfRange, "point lies outside the support" );
	}
	// Uniform density: grad mu = 0 and Laplacian(mu) = 0 in the interior, so
	// Laplacian(eta mu) - eta Laplacian(mu) = mu Laplacian(eta).
	const double laplacianEtaMu = mu * problem.etaLaplacian( x );
	const double etaLaplacianMu = 0.0;
	const double d = static_cast<double>( problem.dim );
	return ( laplacianEtaMu - etaLaplacianMu ) / ( mu * ( 2.0 * d + 4.0 ) );
}

std::string_view rateMethodName( RateMethod method )
{
	switch( method ) {
		case RateMethod::Bayes: return "bayes";
		case RateMethod::Unweighted: return "unweighted";
		case RateMethod::SamworthNonneg: return "samworth_nonneg";
		case RateMethod::SamworthReal: return "samworth_real";
		case RateMethod::MsknnRadius: return "msknn_radius";
		case RateMethod::MsknnLogK: return "msknn_logk";
	}
	return "unknown";
}

RateMethod rateMethodFromName( const std::string& name )
{
	for( RateMethod m : { RateMethod::Bayes, RateMethod::Unweighted, RateMethod::SamworthNonneg,
		     RateMethod::SamworthReal, RateMethod::MsknnRadius, RateMethod::MsknnLogK } ) {
		if( rateMethodName( m ) == name ) {
			return m;
		}
	}
	throw Error( Errc::InvalidArgument, "unknown method '" + name + "'" );
}

const RateCell& RateTable::cell( RateMethod method, std::size_t n ) const
{
	for( const auto& c : cells ) {
		if( c.method == method && c.n == n ) {
			return c;
		}
	}
	throw Error( Errc::OutOfRange, "no rate cell for method " + std::string( rateMethodName( method ) ) + " at n = "
		+ std::to_string( n ) );
}

PairedDifference pairedDifference( const RateTable& table, RateMethod a, RateMethod b, std::size_t n )
{
	const auto& left = table.cell( a, n ).perRepExcess;
	const auto& right = table.cell( b, n ).perRepExcess;
	const std::size_t reps = left.size();
	PairedDifference result;
	if( reps == 0 ) {
		return result;
	}
	for( std::size_t r = 0; r < reps; ++r ) {
		result.mean += left[r] - right[r];
	}
	result.mean /= static_cast<double>( reps );
	if( reps > 1 ) {
		double ss = 0.0;
		for( std::size_t r = 0; r < reps; ++r ) {
			const double dev = left[r] - right[r] - result.mean;
			ss += dev * dev;
		}
		result.stdError = std::sqrt( ss / static_cast<double>( reps - 1 ) / static_cast<double>( reps ) );
	}
	return result;
}

namespace {

struct RepOutcome {
	std::vector<double> excess; // per method
	std::vector<double> risk;
};

RepOutcome runRepetition( const SyntheticProblem& problem, const RateExperimentConfig& config, std::size_t n,
	std::uint64_t seed, const std::vector<std::size_t>& paperKs, const WeightVector& nonneg, const WeightVector& real,
	const MsknnConfig& radiusConfig, const MsknnConfig& logConfig )
{
	const std::size_t d = problem.dim;
	Rng trainRng( mixSeed( seed, 0 ) );
	Rng testRng( mixSeed( seed, 1 ) );

	std::vector<double> features;
	features.reserve( n * d );
	std::vector<int> labels( n );
	for( std::size_t i = 0; i < n; ++i ) {
		const auto x = problem.samplePoint( trainRng );
		labels[i] = trainRng.bernoulli( problem.eta( x ) ) ? 1 : 0;
		features.insert( features.end(), x.begin(), x.end() );
	}
	const Dataset train( std::move( features ), d, labels, 2 );
	const auto labels01 = train.indicator( 1 );

	const bool ratio = config.kRule == KRule::Ratio;
	std::size_t kMax = paperKs.back();
	if( ratio ) {
		kMax = n;
	}

	const std::size_t methodCount = config.methods.size();
	RepOutcome outcome{ std::vector<double>( methodCount, 0.0 ), std::vector<double>( methodCount, 0.0 ) };
	for( std::size_t q = 0; q < config.nTest; ++q ) {
		const auto x = problem.samplePoint( testRng );
		const double eta = problem.eta( x );
		const int bayes = eta >= 0.5 ? 1 : 0;
		const auto neighbors = knnSearch( train, x, kMax );

		std::vector<std::size_t> msKs = paperKs;
		if( ratio ) {
			msKs = selectKsRatio( neighbors, radiusConfig.ratioK1, radiusConfig.ratioEll );
		}

		for( std::size_t m = 0; m < methodCount; ++m ) {
			double estimate = 0.0;
			switch( config.methods[m] ) {
				case RateMethod::Bayes: estimate = eta; break;
				case RateMethod::Unweighted: estimate = unweightedKnn( neighbors, labels01, paperKs.back() ); break;
				case RateMethod::SamworthNonneg: estimate = weightedKnn( neighbors, labels01, nonneg ); break;
				case RateMethod::SamworthReal: estimate = weightedKnn( neighbors, labels01, real ); break;
				case RateMethod::MsknnRadius:
					estimate = msknnFit( neighbors, labels01, msKs, radiusConfig ).estimate;
					break;
				case RateMethod::MsknnLogK: estimate = msknnFit( neighbors, labels01, msKs, logConfig ).estimate; break;
			}
			const int decision = plugInClassify( estimate );
			if( decision != bayes ) {
				outcome.excess[m] += std::abs( 2.0 * eta - 1.0 );
			}
			outcome.risk[m] += decision == 1 ? 1.0 - eta : eta;
		}
	}
	for( std::size_t m = 0; m < methodCount; ++m ) {
		outcome.excess[m] /= static_cast<double>( config.nTest );
		outcome.risk[m] /= static_cast<double>( config.nTest );
	}
	return outcome;
}

RateSlope fitSlope( const std::vector<std::size_t>& nGrid, const std::vector<double>& means )
{
	std::vector<double> xs;
	std::vector<double> ys;
	for( std::size_t i = 0; i < nGrid.size(); ++i ) {
		if( means[i] > 0.0 ) {
			xs.push_back( std::log( static_cast<double>( nGrid[i] ) ) );
			ys.push_back( std::log( means[i] ) );
		}
	}
	RateSlope slope;
	if( xs.size() < 2 ) {
		return slope;
	}
	const auto count = static_cast<double>( xs.size() );
	double mx = 0.0;
	double my = 0.0;
	for( std::size_t i = 0; i < xs.size(); ++i ) {
		mx += xs[i];
		my += ys[i];
	}
	mx /= count;
	my /= count;
	double sxx = 0.0;
	double sxy = 0.0;
	for( std::size_t i = 0; i < xs.size(); ++i ) {
		sxx += ( xs[i] - mx ) * ( xs[i] - mx );
		sxy += ( xs[i] - mx ) * ( ys[i] - my );
	}
	if( !( sxx > 0.0 ) ) {
		return slope;
	}
	slope.slope = sxy / sxx;
	slope.valid = true;
	if( xs.size() > 2 ) {
		double rss = 0.0;
		for( std::size_t i = 0; i < xs.size(); ++i ) {
			const double residual = ys[i] - my - slope.slope * ( xs[i] - mx );
			rss += residual * residual;
		}
		slope.stdError = std::sqrt( rss / ( count - 2.0 ) / sxx );
	}
	return slope;
}

} // namespace

RateTable excessRiskExperiment( const SyntheticProblem& problem, const RateExperimentConfig& config )
{
	if( config.methods.empty() || config.nGrid.empty() || config.reps == 0 || config.nTest == 0 ) {
		throw Error( Errc::InvalidArgument, "rate experiment needs methods, an n grid, reps >= 1 and n_test >= 1" );
	}
	const std::size_t d = problem.dim;
	RateTable table;
	table.nGrid = config.nGrid;
	table.methods = config.methods;
	table.bayesRisk = problem.bayesRisk;

	const std::size_t methodCount = config.methods.size();
	std::vector<std::vector<RepOutcome>> outcomes( config.nGrid.size() );

	for( std::size_t g = 0; g < config.nGrid.size(); ++g ) {
		const std::size_t n = config.nGrid[g];
		const auto paperKs = selectKs( n, d, config.scales );
		const std::size_t k = paperKs.back();
		const WeightVector nonneg = samworthNonnegWeights( k, d );
		const WeightVector real = samworthRealWeights( { k, d, 2, chooseA0( k, d ) } );

		MsknnConfig radiusConfig;
		radiusConfig.scales = config.scales;
		radiusConfig.order = config.order;
		radiusConfig.lambda = config.lambda;
		radiusConfig.predictor = Predictor::Radius;
		if( config.kRule == KRule::Ratio ) {
			radiusConfig.kRule = KRule::Ratio;
			const double exponent = 2.0 * problem.beta / ( 2.0 * problem.beta + static_cast<double>( d ) );
			radiusConfig.ratioK1 = std::clamp<std::size_t>(
				static_cast<std::size_t>( config.ratioK1Factor * std::pow( static_cast<double>( n ), exponent ) ), 1, n );
			radiusConfig.ratioEll = config.ratioEll;
		}
		validate( radiusConfig );
		MsknnConfig logConfig = radiusConfig;
		logConfig.predictor = Predictor::LogK;

		outcomes[g].resize( config.reps );
		detail::parallelFor( config.reps, [&]( std::size_t rep ) {
			const std::uint64_t seed = mixSeed( mixSeed( config.seed, n ), rep );
			outcomes[g][rep] = runRepetition( problem, config, n, seed, paperKs, nonneg, real, radiusConfig, logConfig );
		} );
	}

	for( std::size_t m = 0; m < methodCount; ++m ) {
		std::vector<double> means;
		for( std::size_t g = 0; g < config.nGrid.size(); ++g ) {
			RateCell cell;
			cell.method = config.methods[m];
			cell.n = config.nGrid[g];
			for( const auto& rep : outcomes[g] ) {
				cell.perRepExcess.push_back( rep.excess[m] );
				cell.meanExcess += rep.excess[m];
				cell.meanRisk += rep.risk[m];
			}
			const auto reps = static_cast<double>( config.reps );
			cell.meanExcess /= reps;
			cell.meanRisk /= reps;
			if( config.reps > 1 ) {
				double ss = 0.0;
				for( double e : cell.perRepExcess ) {
					ss += ( e - cell.meanExcess ) * ( e - cell.meanExcess );
				}
				cell.seExcess = std::sqrt( ss / ( reps - 1.0 ) / reps );
			}
			means.push_back( cell.meanExcess );
			table.cells.push_back( std::move( cell ) );
		}
		table.slopes[config.methods[m]] = fitSlope( config.nGrid, means );
	}
	return table;
}

void writeRateTableCsv( std::ostream& out, const RateTable& table, std::size_t reps )
{
	const auto precision = out.precision( 10 );
	out << "method,n,reps,mean_excess,se_excess,mean_risk,slope,slope_se\n";
	for( const auto& cell : table.cells ) {
		const auto& slope = table.slopes.at( cell.method );
		out << rateMethodName( cell.method ) << ',' << cell.n << ',' << reps << ',' << cell.meanExcess << ','
			<< cell.seExcess << ',' << cell.meanRisk << ',';
		if( slope.valid ) {
			out << slope.slope << ',' << slope.stdError;
		} else {
			out << "nan,nan";
		}
		out << '\n';
	}
	out.precision( precision );
}

std::vector<WeightProfileRow> weightProfileReport( std::size_t n, std::size_t d, std::size_t kStar,
	std::size_t scales, std::size_t order )
{
	if( n == 0 || d == 0 || kStar == 0 || kStar > n || scales < 2 || kStar < scales ) {
		throw Error( Errc::InvalidArgument, "weight profile needs n, d >= 1, V >= 2 and V <= k* <= n" );
	}
	if( order + 1 > scales ) {
		throw Error( Errc::InvalidArgument, "order C must not exceed V - 1" );
	}
	std::vector<WeightProfileRow> rows;
	auto emit = [&rows]( const std::string& scheme, const std::vector<double>& w ) {
		for( std::size_t i = 0; i < w.size(); ++i ) {
			rows.push_back( { scheme, i + 1, w[i] } );
		}
	};

	emit( "samworth_nonneg", samworthNonnegWeights( kStar, d ).weights );
	emit( "samworth_real", samworthRealWeights( { kStar, d, 2, chooseA0( kStar, d ) } ).weights );

	std::vector<std::size_t> ks( scales );
	std::vector<double> predictors( scales );
	for( std::size_t v = 0; v < scales; ++v ) {
		ks[v] = kStar * ( v + 1 ) / scales;
		const double r = std::pow( static_cast<double>( ks[v] ) / static_cast<double>( n ), 1.0 / static_cast<double>( d ) );
		predictors[v] = r * r;
	}
	emit( "msknn_implicit", implicitWeightsFromPredictors( predictors, ks, order ).wStar );
	return rows;
}

void writeWeightProfileCsv( std::ostream& out, std::span<const WeightProfileRow> rows )
{
	const auto precision = out.precision( 17 );
	out << "scheme,i,w\n";
	for( const auto& row : rows ) {
		out << row.scheme << ',' << row.index << ',' << row.weight << '\n';
	}
	out.precision( precision );
}

} // namespace msknn
