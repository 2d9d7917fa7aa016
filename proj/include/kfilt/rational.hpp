#ifndef KFILT_RATIONAL_HPP
#define KFILT_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

namespace kfilt {

// GMP keeps mpq_class canonical (lowest terms, positive denominator),
// which is exactly the representation contract we need.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational pow_rational(const Rational& q, unsigned long e) {
    Rational r(1);
    Rational base = q;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

/// Exact square root, when it exists in the rationals.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    const mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(rn, rd);
}

}  // namespace kfilt

#endif
