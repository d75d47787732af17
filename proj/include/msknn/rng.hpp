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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace msknn {

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; all derived draws below are computed
// here rather than through <random> distributions (which are
// implementation-defined), so streams are identical across toolchains.
class Rng {
public:
	explicit Rng( std::uint64_t seed ) : engine_( seed ) {}

	std::uint64_t next() { return engine_(); }

	// Uniform on [0, 1) with 53 random bits.
	double uniform() { return static_cast<double>( engine_() >> 11 ) * 0x1.0p-53; }

	double uniform( double lo, double hi ) { return lo + ( hi - lo ) * uniform(); }

	// Uniform integer in [0, bound), bias-free (Lemire's multiply-and-reject).
	std::uint64_t below( std::uint64_t bound );

	bool bernoulli( double p ) { return uniform() < p; }

	// Standard normal via Box-Muller.
	double normal();

	// Uniform random permutation of 0..n-1 (Fisher-Yates).
	std::vector<std::size_t> permutation( std::size_t n );

private:
	std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent per-task seeds from a base seed.
std::uint64_t mixSeed( std::uint64_t base, std::uint64_t stream );

} // namespace msknn
