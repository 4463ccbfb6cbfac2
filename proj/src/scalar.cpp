#include "e8/scalar.hpp"

#include <cctype>

namespace e8 {

Scalar make_scalar(long num, long den) {
    if (den == 0) throw ScalarError("zero denominator");
    Scalar s(num, den);
    s.canonicalize();
    return s;
}

namespace {

bool valid_integer(std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string strip_plus(std::string_view t) {
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    return std::string(t);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
        throw ScalarError("malformed rational '" + std::string(text) + "'");
    mpz_class n(strip_plus(num)), d{std::string(den)};
    if (d == 0) throw ScalarError("zero denominator in '" + std::string(text) + "'");
    Scalar s(n, d);
    s.canonicalize();
    return s;
}

std::string to_string(const Scalar& s) {
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

bool fits_int64(const mpz_class& z) {
    static const mpz_class lo("-9223372036854775808"), hi("9223372036854775807");
    return z >= lo && z <= hi;
}

std::int64_t to_int64(const mpz_class& z) {
    if (!fits_int64(z)) throw ScalarError("integer does not fit in 64 bits");
    if (z.fits_slong_p()) return z.get_si();
    // long is 64-bit on the supported platforms; keep a portable path anyway.
    std::int64_t hi = static_cast<std::int64_t>(mpz_class(z >> 32).get_si());
    std::int64_t lo = static_cast<std::int64_t>(mpz_class(z & 0xffffffffUL).get_ui());
    return hi * (std::int64_t(1) << 32) + lo;
}

}  // namespace e8
