#ifndef KFILT_FIT_HPP
#define KFILT_FIT_HPP

#include <vector>

#include "kfilt/errors.hpp"
#include "kfilt/rational.hpp"

namespace kfilt {

/// Result of interpolating a sequence by a polynomial of bounded degree.
/// `coefficients` are listed leading-first: p(k) = c[0] k^d + ... + c[d].
struct FitResult {
    std::vector<Rational> coefficients;
    bool certified = false;
    long first_bad_k = -1;  // first index where the tail check failed
    int window_start = 0;
};

namespace detail {

/// Coefficients of the Newton-form interpolant through
/// (k0, seq[k0]), ..., (k0+d, seq[k0+d]), expanded in the monomial basis.
inline std::vector<Rational> newton_coefficients(const std::vector<Rational>& seq, int degree,
                                                 int k0) {
    const std::size_t d = static_cast<std::size_t>(degree);
    std::vector<Rational> diffs;
    for (std::size_t i = 0; i <= d; ++i) diffs.push_back(seq[static_cast<std::size_t>(k0) + i]);
    std::vector<Rational> divided(d + 1);
    // Forward differences: divided[m] = Delta^m seq(k0) / m!
    Rational fact(1);
    for (std::size_t m = 0; m <= d; ++m) {
        if (m > 0) {
            for (std::size_t i = 0; i + m <= d; ++i) diffs[i] = diffs[i + 1] - diffs[i];
            fact *= Rational(static_cast<long>(m));
        }
        divided[m] = diffs[0] / fact;
    }
    // Expand sum_m divided[m] * (x-k0)(x-k0-1)...(x-k0-m+1) into monomials,
    // stored constant-first while accumulating.
    std::vector<Rational> poly(d + 1, Rational(0));
    std::vector<Rational> basis(d + 1, Rational(0));
    basis[0] = 1;  // the empty product
    std::size_t basis_len = 1;
    for (std::size_t m = 0; m <= d; ++m) {
        if (m > 0) {
            const Rational root(static_cast<long>(k0) + static_cast<long>(m) - 1);
            for (std::size_t i = basis_len; i-- > 0;) {
                Rational hi = basis[i];
                basis[i + 1] += hi;
                basis[i] = -root * hi;
            }
            ++basis_len;
        }
        for (std::size_t i = 0; i < basis_len; ++i) poly[i] += divided[m] * basis[i];
    }
    std::vector<Rational> leading_first(poly.rbegin(), poly.rend());
    return leading_first;
}

inline Rational eval_poly(const std::vector<Rational>& coeffs, long k) {
    Rational acc(0);
    for (const Rational& c : coeffs) acc = acc * Rational(k) + c;
    return acc;
}

}  // namespace detail

/// Interpolate seq (indexed k = 0..kmax) on the window [k0, k0+degree] and
/// certify the result: the interpolant must reproduce the sequence on all of
/// [k0, kmax] and the window starting at k0+1 must give the same coefficients.
inline FitResult fit(const std::vector<Rational>& seq, int degree, int k0, int kmax) {
    if (kmax - k0 < degree + 2)
        throw error("fit window too short: need kmax - k0 >= degree + 2");
    if (static_cast<std::size_t>(kmax) >= seq.size())
        throw error("fit: sequence shorter than kmax");
    FitResult res;
    res.window_start = k0;
    res.coefficients = detail::newton_coefficients(seq, degree, k0);
    res.certified = true;
    for (long k = k0; k <= kmax; ++k) {
        if (detail::eval_poly(res.coefficients, k) != seq[static_cast<std::size_t>(k)]) {
            res.certified = false;
            res.first_bad_k = k;
            break;
        }
    }
    if (res.certified) {
        const auto shifted = detail::newton_coefficients(seq, degree, k0 + 1);
        if (shifted != res.coefficients) {
            res.certified = false;
            res.first_bad_k = k0 + 1;
        }
    }
    return res;
}

/// Throwing variant: raises not_yet_polynomial on an uncertified window.
inline FitResult fit_or_throw(const std::vector<Rational>& seq, int degree, int k0, int kmax) {
    FitResult res = fit(seq, degree, k0, kmax);
    if (!res.certified) throw not_yet_polynomial(res.first_bad_k);
    return res;
}

/// Escalate the window start past failures until certified or out of room.
inline FitResult fit_auto(const std::vector<Rational>& seq, int degree, int k0, int kmax) {
    FitResult last;
    int start = k0;
    while (kmax - start >= degree + 2) {
        last = fit(seq, degree, start, kmax);
        if (last.certified) return last;
        start = static_cast<int>(std::max<long>(last.first_bad_k + 1, start + 1));
    }
    return last;
}

}  // namespace kfilt

#endif
