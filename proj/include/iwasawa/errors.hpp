#pragma once

#include <stdexcept>
#include <string>

namespace iwasawa {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Wedge or differential would exceed the top degree of the algebra.
struct DegreeError : Error {
  using Error::Error;
};

// Input fails a structural validation (e.g. J*J != -I).
struct ValidationError : Error {
  using Error::Error;
};

// A form set or matrix that must be independent/invertible is not.
struct DegeneracyError : Error {
  using Error::Error;
};

// The requested echelon chart does not cover this structure.
struct InfinityClassError : Error {
  using Error::Error;
};

// Operation requires an integrable structure.
struct IntegrabilityError : Error {
  using Error::Error;
};

// Input lies outside the domain of the algorithm (e.g. non-positive spectrum).
struct NotApplicableError : Error {
  using Error::Error;
};

}  // namespace iwasawa
