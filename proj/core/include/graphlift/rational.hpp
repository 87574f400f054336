#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace graphlift {

/// Arbitrary-precision rational for exact probability identities in tests
/// and validators. All probability templates in this library accept it as
/// their Scalar.
using BigRational = boost::multiprecision::cpp_rational;

}  // namespace graphlift
