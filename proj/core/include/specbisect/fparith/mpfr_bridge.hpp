#pragma once

#include <mpfr.h>

#include "specbisect/fparith/soft_float.hpp"

namespace specbisect::fp {

// Exact when out has at least 128 bits of precision.
void to_mpfr(mpfr_t out, const SoftFloat& x);

// Round-to-nearest-even of an MPFR value to the configured width. Throws RangeError
// outside the exponent range.
SoftFloat from_mpfr(const mpfr_t x, const PrecisionConfig& cfg);

}  // namespace specbisect::fp
