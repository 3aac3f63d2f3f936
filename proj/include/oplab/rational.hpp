#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

#include "oplab/errors.hpp"

namespace oplab {

// Exact nonnegative rational weights. 64-bit components are plenty for
// desk-scale atom counts and the small weight pools used by the generators.
using Rat = boost::rational<std::int64_t>;

// Parses "p/q" or a bare integer "p". Whitespace is not accepted.
Rat parse_rational(const std::string& text);

// Canonical "p/q" form; integers render without the "/1".
std::string rational_to_string(const Rat& r);

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace oplab
