#pragma once

#include <gmpxx.h>

#include <string>

namespace formexp {

using Rational = mpq_class;

// "p/q" or "p"; no spaces.
std::string to_string(const Rational& r);
Rational factorial(int n);
Rational binomial(int n, int k);

}  // namespace formexp
