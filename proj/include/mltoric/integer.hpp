#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace mltoric {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

// Floor and ceiling of a/b for b != 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);

// Nonnegative remainder of a modulo |m|.
Integer mod_floor(const Integer& a, const Integer& m);

Integer gcd(const Integer& a, const Integer& b);
Integer factorial(std::size_t n);

inline int sign(const Integer& v) { return sgn(v); }

}  // namespace mltoric
