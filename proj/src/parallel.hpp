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
#include <functional>

namespace msknn::detail {

// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
// Each index runs exactly once; callers write results into per-index slots so
// the outcome does not depend on scheduling. If any body throws, the
// exception from the lowest failing index is rethrown after all threads join.
void parallelFor( std::size_t count, const std::function<void( std::size_t )>& body );

} // namespace msknn::detail
