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

#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace msknn::detail {

void parallelFor( std::size_t count, const std::function<void( std::size_t )>& body )
{
	const std::size_t workers = std::min<std::size_t>( std::max( 1u, std::thread::hardware_concurrency() ), count );
	if( workers <= 1 ) {
		for( std::size_t i = 0; i < count; ++i ) {
			body( i );
		}
		return;
	}

	std::atomic<std::size_t> next{ 0 };
	std::mutex failureMutex;
	std::size_t failedIndex = count;
	std::exception_ptr failure;

	auto worker = [&] {
		for( std::size_t i = next++; i < count; i = next++ ) {
			try {
				body( i );
			} catch( ... ) {
				std::lock_guard lock( failureMutex );
				if( i < failedIndex ) {
					failedIndex = i;
					failure = std::current_exception();
				}
			}
		}
	};
	std::vector<std::jthread> threads;
	threads.reserve( workers - 1 );
	for( std::size_t t = 1; t < workers; ++t ) {
		threads.emplace_back( worker );
	}
	worker();
	threads.clear();
	if( failure ) {
		std::rethrow_exception( failure );
	}
}

} // namespace msknn::detail
