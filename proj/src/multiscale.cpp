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
#include <msknn/multiscale.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace msknn {

namespace {

// Largest b with b <= n^(4/(4+d)), robust to pow() landing just below an integer.
std::size_t floorRateRoot( std::size_t n, std::size_t d )
{
	const double logTarget = 4.0 * std::log( static_cast<double>( n ) );
	const double power = 4.0 + static_cast<double>( d );
	auto b = static_cast<std::size_t>( std::floor( std::pow( static_cast<double>( n ), 4.0 / power ) ) );
	while( power * std::log( static_cast<double>( b + 1 ) ) <= logTarget + 1e-12 ) {
		++b;
	}
	while( b > 0 && power * std::log( static_cast<double>( b ) ) > logTarget + 1e-12 ) {
		--b;
	}
	return b;
}

std::string joinKs( std::span<const std::size_t> ks )
{
	std::ostringstream out;
	for( std::size_t v = 0; v < ks.size(); ++v ) {
		out << ( v ? "," : "" ) << ks[v];
	}
	return out.str();
}

void requireFinite( std::span<const double> values, const char* what )
{
	for( double x : values ) {
		if( !std::isfinite( x ) ) {
			throw Error( Errc::NonFinite, std::string( what ) + " contains a non-finite value" );
		}
	}
}

// Pairs of scales sharing one predictor value, e.g. "k=10 and k=20 (p=0.25)".
std::vector<std::string> duplicatePredictorPairs( std::span<const double> predictors, std::span<const std::size_t> ks )
{
	std::vector<std::string> pairs;
	for( std::size_t a = 0; a < predictors.size(); ++a ) {
		for( std::size_t b = a + 1; b < predictors.size(); ++b ) {
			if( predictors[a] == predictors[b] ) {
				std::ostringstream out;
				out << "k=" << ks[a] << " and k=" << ks[b] << " (p=" << predictors[a] << ")";
				pairs.push_back( out.str() );
			}
		}
	}
	return pairs;
}

} // namespace

void validate( const MsknnConfig& config )
{
	if( config.scales < 2 ) {
		throw Error( Errc::InvalidArgument, "need at least 2 scales (V >= 2)" );
	}
	if( config.order + 1 > config.scales ) {
		throw Error( Errc::InvalidArgument, "polynomial order C = " + std::to_string( config.order )
			+ " exceeds V - 1 = " + std::to_string( config.scales - 1 ) );
	}
	if( !std::isfinite( config.lambda ) || config.lambda < 0.0 ) {
		throw Error( Errc::InvalidArgument, "ridge coefficient must be finite and non-negative" );
	}
	if( config.kRule == KRule::Explicit ) {
		if( config.explicitKs.size() < 2 ) {
			throw Error( Errc::InvalidArgument, "explicit k list needs at least 2 entries" );
		}
		for( std::size_t v = 0; v < config.explicitKs.size(); ++v ) {
			if( config.explicitKs[v] == 0 || ( v > 0 && config.explicitKs[v] <= config.explicitKs[v - 1] ) ) {
				throw Error( Errc::InvalidArgument, "explicit k list must be positive and strictly increasing: "
					+ joinKs( config.explicitKs ) );
			}
		}
	}
	if( config.kRule == KRule::Ratio ) {
		if( config.ratioK1 == 0 || config.ratioEll.size() < 2 || config.ratioEll.front() != 1.0 ) {
			throw Error( Errc::InvalidArgument, "ratio rule needs k1 >= 1 and ell = (1, ell_2, ...)" );
		}
		for( std::size_t v = 1; v < config.ratioEll.size(); ++v ) {
			if( !( config.ratioEll[v] > config.ratioEll[v - 1] ) || !std::isfinite( config.ratioEll[v] ) ) {
				throw Error( Errc::InvalidArgument, "ratio multipliers must be finite and strictly increasing" );
			}
		}
	}
}

std::vector<std::size_t> selectKs( std::size_t nPred, std::size_t d, std::size_t scales )
{
	if( scales < 2 ) {
		throw Error( Errc::InvalidArgument, "need at least 2 scales" );
	}
	std::size_t base = floorRateRoot( nPred, d );
	if( base * scales > nPred ) {
		base = nPred / scales;
	}
	if( base == 0 ) {
		throw Error( Errc::TooSmall, "n_pred = " + std::to_string( nPred ) + " is too small for "
			+ std::to_string( scales ) + " distinct scales" );
	}
	std::vector<std::size_t> ks( scales );
	for( std::size_t v = 0; v < scales; ++v ) {
		ks[v] = ( v + 1 ) * base;
	}
	return ks;
}

std::vector<std::size_t> selectKsRatio( const NeighborList& neighbors, std::size_t k1, std::span<const double> ell )
{
	const double r1 = radiusAt( neighbors, k1 );
	std::vector<std::size_t> ks{ k1 };
	std::size_t k = k1;
	for( std::size_t v = 1; v < ell.size(); ++v ) {
		const double target = ell[v] * r1;
		while( k <= neighbors.size() && neighbors.distances[k - 1] < target ) {
			++k;
		}
		if( k > neighbors.size() ) {
			throw Error( Errc::TooSmall, "no neighbor reaches radius " + std::to_string( target ) + " (ell_"
				+ std::to_string( v + 1 ) + " * r(k1)) among " + std::to_string( neighbors.size() ) );
		}
		if( k != ks.back() ) {
			ks.push_back( k );
		}
	}
	return ks;
}

std::size_t requiredNeighbors( std::size_t nTrain, std::size_t d, const MsknnConfig& config )
{
	switch( config.kRule ) {
		case KRule::PaperDefault: return selectKs( nTrain, d, config.scales ).back();
		case KRule::Explicit:
			if( config.explicitKs.back() > nTrain ) {
				throw Error( Errc::TooSmall, "largest k = " + std::to_string( config.explicitKs.back() )
					+ " exceeds training size " + std::to_string( nTrain ) );
			}
			return config.explicitKs.back();
		case KRule::Ratio:
			if( config.ratioK1 > nTrain ) {
				throw Error( Errc::TooSmall, "k1 exceeds training size" );
			}
			return nTrain;
	}
	return nTrain;
}

std::vector<std::size_t> resolveKs( std::size_t nTrain, std::size_t d, const MsknnConfig& config,
	const NeighborList& neighbors )
{
	switch( config.kRule ) {
		case KRule::PaperDefault: return selectKs( nTrain, d, config.scales );
		case KRule::Explicit: return config.explicitKs;
		case KRule::Ratio: return selectKsRatio( neighbors, config.ratioK1, config.ratioEll );
	}
	return {};
}

Design buildDesign( const NeighborList& neighbors, std::span<const std::size_t> ks, const MsknnConfig& config )
{
	if( ks.empty() ) {
		throw Error( Errc::InvalidArgument, "no scales given" );
	}
	Design design;
	design.ks.assign( ks.begin(), ks.end() );
	const std::set<std::size_t> distinct( ks.begin(), ks.end() );
	design.order = config.order;
	if( distinct.size() < config.order + 1 ) {
		design.order = distinct.size() - 1;
		design.notes.push_back( "only " + std::to_string( distinct.size() ) + " distinct scales; order reduced from "
			+ std::to_string( config.order ) + " to " + std::to_string( design.order ) );
	}

	design.predictors.reserve( ks.size() );
	for( std::size_t k : ks ) {
		if( config.predictor == Predictor::Radius ) {
			const double r = radiusAt( neighbors, k );
			design.predictors.push_back( r * r );
		} else {
			if( k == 0 ) {
				throw Error( Errc::OutOfRange, "log predictor needs k >= 1" );
			}
			design.predictors.push_back( std::log( static_cast<double>( k ) ) );
		}
	}
	for( const auto& pair : duplicatePredictorPairs( design.predictors, ks ) ) {
		design.notes.push_back( "duplicate predictor value: " + pair );
	}

	const std::size_t cols = design.cols();
	design.values.resize( ks.size() * cols );
	for( std::size_t v = 0; v < ks.size(); ++v ) {
		double power = 1.0;
		for( std::size_t c = 0; c < cols; ++c ) {
			design.values[v * cols + c] = power;
			power *= design.predictors[v];
		}
	}
	return design;
}

std::vector<double> scaleEstimates( const NeighborList& neighbors, std::span<const double> labels01,
	std::span<const std::size_t> ks )
{
	std::vector<double> phi;
	phi.reserve( ks.size() );
	for( std::size_t k : ks ) {
		phi.push_back( unweightedKnn( neighbors, labels01, k ) );
	}
	return phi;
}

MsknnFit fitExtrapolate( const Design& design, std::span<const double> phi, double lambda, bool penalizeIntercept )
{
	const auto rows = static_cast<Eigen::Index>( design.rows() );
	const auto cols = static_cast<Eigen::Index>( design.cols() );
	if( phi.size() != design.rows() ) {
		throw Error( Errc::DimensionMismatch, "phi has " + std::to_string( phi.size() ) + " entries, design has "
			+ std::to_string( design.rows() ) + " rows" );
	}
	if( !std::isfinite( lambda ) || lambda < 0.0 ) {
		throw Error( Errc::InvalidArgument, "ridge coefficient must be finite and non-negative" );
	}
	requireFinite( phi, "scale estimates" );
	requireFinite( design.values, "design" );

	// Augmented system [X; sqrt(lambda) P] b = [phi; 0] with P selecting the penalized coefficients.
	const Eigen::Index firstPenalized = penalizeIntercept ? 0 : 1;
	const Eigen::Index penaltyRows = lambda > 0.0 ? cols - firstPenalized : 0;
	Eigen::MatrixXd a = Eigen::MatrixXd::Zero( rows + penaltyRows, cols );
	for( Eigen::Index v = 0; v < rows; ++v ) {
		for( Eigen::Index c = 0; c < cols; ++c ) {
			a( v, c ) = design.at( static_cast<std::size_t>( v ), static_cast<std::size_t>( c ) );
		}
	}
	for( Eigen::Index j = 0; j < penaltyRows; ++j ) {
		a( rows + j, firstPenalized + j ) = std::sqrt( lambda );
	}

	// Column equilibration is a reparametrization b = D^-1 b' and leaves the minimizer unchanged.
	Eigen::VectorXd colScale = a.colwise().norm().transpose();
	for( Eigen::Index c = 0; c < cols; ++c ) {
		if( colScale( c ) == 0.0 ) {
			colScale( c ) = 1.0;
		}
		a.col( c ) /= colScale( c );
	}

	Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr( a );
	qr.setThreshold( 1e-12 );

	MsknnFit fit;
	fit.diagnostics.notes = design.notes;
	fit.diagnostics.rank = static_cast<std::size_t>( qr.rank() );
	fit.diagnostics.duplicatePredictors = !duplicatePredictorPairs( design.predictors, design.ks ).empty();
	const auto diag = qr.matrixQR().diagonal().cwiseAbs();
	const double smallest = diag( std::max<Eigen::Index>( qr.rank(), 1 ) - 1 );
	fit.diagnostics.conditionEstimate = smallest > 0.0 ? diag( 0 ) / smallest : INFINITY;

	if( qr.rank() < cols ) {
		std::string detail;
		for( const auto& pair : duplicatePredictorPairs( design.predictors, design.ks ) ) {
			detail += ( detail.empty() ? "" : "; " ) + pair;
		}
		throw Error( Errc::Singular, "design is rank-deficient (rank " + std::to_string( qr.rank() ) + " < "
			+ std::to_string( cols ) + ")" + ( detail.empty() ? "" : ": duplicated scales " + detail ) );
	}

	// Right-hand sides: the data, then each unit vector e_v so row 0 of the
	// solution gives the intercept's weights on phi.
	Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero( rows + penaltyRows, 1 + rows );
	for( Eigen::Index v = 0; v < rows; ++v ) {
		rhs( v, 0 ) = phi[static_cast<std::size_t>( v )];
		rhs( v, 1 + v ) = 1.0;
	}
	const Eigen::MatrixXd solution = qr.solve( rhs );

	fit.coefficients.resize( static_cast<std::size_t>( cols ) );
	for( Eigen::Index c = 0; c < cols; ++c ) {
		fit.coefficients[static_cast<std::size_t>( c )] = solution( c, 0 ) / colScale( c );
	}
	fit.estimate = fit.coefficients[0];
	fit.z.resize( static_cast<std::size_t>( rows ) );
	for( Eigen::Index v = 0; v < rows; ++v ) {
		fit.z[static_cast<std::size_t>( v )] = solution( 0, 1 + v ) / colScale( 0 );
		fit.diagnostics.maxAbsZ = std::max( fit.diagnostics.maxAbsZ, std::abs( fit.z[static_cast<std::size_t>( v )] ) );
	}
	if( lambda == 0.0 ) {
		fit.wStar = expandScaleWeights( fit.z, design.ks );
	}
	return fit;
}

std::vector<double> expandScaleWeights( std::span<const double> z, std::span<const std::size_t> ks )
{
	if( z.size() != ks.size() || ks.empty() ) {
		throw Error( Errc::DimensionMismatch, "scale weights and k list differ in length" );
	}
	const std::size_t kMax = *std::max_element( ks.begin(), ks.end() );
	std::vector<double> w( kMax, 0.0 );
	// w_i collects z_v / k_v from every scale whose neighborhood contains i.
	for( std::size_t v = 0; v < ks.size(); ++v ) {
		const double share = z[v] / static_cast<double>( ks[v] );
		for( std::size_t i = 0; i < ks[v]; ++i ) {
			w[i] += share;
		}
	}
	return w;
}

ImplicitWeights implicitWeightsFromPredictors( std::span<const double> predictors, std::span<const std::size_t> ks,
	std::size_t order )
{
	const auto rows = static_cast<Eigen::Index>( predictors.size() );
	if( predictors.size() != ks.size() || rows < 1 ) {
		throw Error( Errc::DimensionMismatch, "predictor and k lists differ in length" );
	}
	requireFinite( predictors, "predictors" );

	const Eigen::VectorXd ones = Eigen::VectorXd::Ones( rows );
	Eigen::VectorXd projectedOnes = Eigen::VectorXd::Zero( rows );
	if( order > 0 ) {
		const auto cols = static_cast<Eigen::Index>( order );
		Eigen::MatrixXd r( rows, cols );
		for( Eigen::Index v = 0; v < rows; ++v ) {
			double power = 1.0;
			for( Eigen::Index j = 0; j < cols; ++j ) {
				power *= predictors[static_cast<std::size_t>( v )];
				r( v, j ) = power;
			}
		}
		for( Eigen::Index j = 0; j < cols; ++j ) {
			const double norm = r.col( j ).norm();
			if( norm > 0.0 ) {
				r.col( j ) /= norm;
			}
		}
		Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr( r );
		qr.setThreshold( 1e-12 );
		if( qr.rank() < cols ) {
			throw Error( Errc::Singular, "radius matrix is rank-deficient (rank " + std::to_string( qr.rank() )
				+ " < " + std::to_string( cols ) + "); deduplicate the k list (k = " + joinKs( ks ) + ")" );
		}
		// P_R 1 = Q_1 Q_1' 1 with Q_1 the first C columns of Q.
		const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity( rows, cols );
		projectedOnes = q * ( q.transpose() * ones );
	}

	const double denominator = static_cast<double>( rows ) - ones.dot( projectedOnes );
	if( !( std::abs( denominator ) > 1e-12 * static_cast<double>( rows ) ) ) {
		throw Error( Errc::Singular, "the constant vector lies in the span of the predictor powers; "
			"deduplicate the k list (k = " + joinKs( ks ) + ")" );
	}
	ImplicitWeights result;
	result.z.resize( static_cast<std::size_t>( rows ) );
	for( Eigen::Index v = 0; v < rows; ++v ) {
		result.z[static_cast<std::size_t>( v )] = ( 1.0 - projectedOnes( v ) ) / denominator;
	}
	result.wStar = expandScaleWeights( result.z, ks );
	return result;
}

ImplicitWeights implicitWeights( const NeighborList& neighbors, std::span<const std::size_t> ks, std::size_t order )
{
	std::vector<double> predictors;
	predictors.reserve( ks.size() );
	for( std::size_t k : ks ) {
		const double r = radiusAt( neighbors, k );
		predictors.push_back( r * r );
	}
	return implicitWeightsFromPredictors( predictors, ks, order );
}

MsknnFit msknnFit( const NeighborList& neighbors, std::span<const double> labels01, std::span<const std::size_t> ks,
	const MsknnConfig& config )
{
	const Design design = buildDesign( neighbors, ks, config );
	const auto phi = scaleEstimates( neighbors, labels01, ks );
	return fitExtrapolate( design, phi, config.lambda, config.penalizeIntercept );
}

double msknnEstimate( const Dataset& train, std::span<const double> query, std::span<const double> labels01,
	const MsknnConfig& config )
{
	validate( config );
	if( labels01.size() != train.size() ) {
		throw Error( Errc::DimensionMismatch, "label vector length differs from training size" );
	}
	const auto neighbors = knnSearch( train, query, requiredNeighbors( train.size(), train.dim(), config ) );
	const auto ks = resolveKs( train.size(), train.dim(), config, neighbors );
	return msknnFit( neighbors, labels01, ks, config ).estimate;
}

std::vector<double> msknnPerClass( const NeighborList& neighbors, std::span<const int> labels, std::size_t classCount,
	std::span<const std::size_t> ks, const MsknnConfig& config )
{
	const Design design = buildDesign( neighbors, ks, config );
	std::vector<double> estimates( classCount );
	std::vector<double> phi( ks.size() );
	for( std::size_t c = 0; c < classCount; ++c ) {
		// Same summation order as unweightedKnn on the class indicator.
		for( std::size_t v = 0; v < ks.size(); ++v ) {
			const double share = 1.0 / static_cast<double>( ks[v] );
			double sum = 0.0;
			for( std::size_t i = 0; i < ks[v]; ++i ) {
				sum += share * ( static_cast<std::size_t>( labels[neighbors.indices[i]] ) == c ? 1.0 : 0.0 );
			}
			phi[v] = sum;
		}
		estimates[c] = fitExtrapolate( design, phi, config.lambda, config.penalizeIntercept ).estimate;
	}
	return estimates;
}

int msknnClassify( const Dataset& train, std::span<const double> query, const MsknnConfig& config )
{
	validate( config );
	const auto neighbors = knnSearch( train, query, requiredNeighbors( train.size(), train.dim(), config ) );
	const auto ks = resolveKs( train.size(), train.dim(), config, neighbors );
	const auto estimates = msknnPerClass( neighbors, train.labels(), train.classCount(), ks, config );
	return decideClass( estimates );
}

} // namespace msknn
