#ifndef KFILT_MONOMIAL_HPP
#define KFILT_MONOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace kfilt {

/// Exponent vector, one entry per ring variable.
using Monomial = std::vector<int>;

namespace mono {

inline int degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

inline Monomial mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline bool divides(const Monomial& d, const Monomial& m) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

inline Monomial quotient(const Monomial& m, const Monomial& d) {
    Monomial r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = m[i] - d[i];
    return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

/// Degree-reverse-lexicographic comparison: a > b iff deg a > deg b, or the
/// degrees agree and the last nonzero entry of a - b is negative.
inline bool grevlex_greater(const Monomial& a, const Monomial& b) {
    const int da = degree(a), db = degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
        const int d = a[i] - b[i];
        if (d != 0) return d < 0;
    }
    return false;
}

/// All monomials of total degree k in `nvars` variables, descending grevlex.
inline std::vector<Monomial> enumerate(int nvars, int k) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        if (k == 0) out.push_back({});
        return out;
    }
    Monomial cur(static_cast<std::size_t>(nvars), 0);
    // Recursive distribution of k among the variables.
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == nvars - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, rem - e);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, k);
    std::sort(out.begin(), out.end(), grevlex_greater);
    return out;
}

}  // namespace mono

/// Strict-weak-order functor; map keyed with this stores leading term first.
struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return mono::grevlex_greater(a, b);
    }
};

}  // namespace kfilt

#endif
