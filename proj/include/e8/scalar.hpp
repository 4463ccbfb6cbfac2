#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace e8 {

// Exact rational. mpq_class keeps numerator/denominator reduced as long as
// every value is built through make_scalar or parse_scalar.
using Scalar = mpq_class;

Scalar make_scalar(long num, long den = 1);

// Accepts "p" or "p/q" with optional leading sign; rejects anything with a
// decimal point or exponent.
Scalar parse_scalar(std::string_view text);

// Always "p/q", with q >= 1 ("-3/1", "1/2", "0/1").
std::string to_string(const Scalar& s);

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

// Fits into int64 exactly (used by the integer-scaled kernels).
bool fits_int64(const mpz_class& z);
std::int64_t to_int64(const mpz_class& z);

class ScalarError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace e8
