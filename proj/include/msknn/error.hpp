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

#include <stdexcept>
#include <string>

namespace msknn {

// Failure kinds. The category (usage / data / numerical) maps one-to-one onto
// the C API status codes and the CLI exit codes.
enum class Errc {
	// usage
	InvalidArgument,
	Unsupported,
	// data
	MissingFile,
	RaggedRow,
	BadNumber,
	EmptyDataset,
	DimensionMismatch,
	OutOfRange,
	TooSmall,
	// numerical
	NonFinite,
	Singular,
};

enum class ErrorCategory { Usage = 1, Data = 2, Numerical = 3 };

constexpr ErrorCategory categoryOf( Errc code )
{
	switch( code ) {
		case Errc::InvalidArgument:
		case Errc::Unsupported:
			return ErrorCategory::Usage;
		case Errc::NonFinite:
		case Errc::Singular:
			return ErrorCategory::Numerical;
		default:
			return ErrorCategory::Data;
	}
}

class Error : public std::runtime_error {
public:
	Error( Errc code, const std::string& message ) : std::runtime_error( message ), code_( code ) {}

	Errc code() const { return code_; }
	ErrorCategory category() const { return categoryOf( code_ ); }

private:
	Errc code_;
};

} // namespace msknn
