#ifndef KFILT_SUBSPACE_HPP
#define KFILT_SUBSPACE_HPP

#include <vector>

#include "kfilt/errors.hpp"
#include "kfilt/ring.hpp"

namespace kfilt {

namespace detail {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

inline int pivot_of(const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i)
        if (sgn(r[i]) != 0) return static_cast<int>(i);
    return -1;
}

/// Reduce `v` against rows in reduced echelon form. Returns the remainder.
inline Row reduce_against(const Matrix& rows, Row v) {
    for (const Row& r : rows) {
        const int p = pivot_of(r);
        if (p < 0) continue;
        if (sgn(v[static_cast<std::size_t>(p)]) == 0) continue;
        const Rational f = v[static_cast<std::size_t>(p)];  // pivots are 1
        for (std::size_t i = static_cast<std::size_t>(p); i < v.size(); ++i)
            if (sgn(r[i]) != 0) v[i] -= f * r[i];
    }
    return v;
}

/// Insert a vector into a reduced-echelon row set, keeping the set canonical.
/// Returns true when the vector enlarged the span.
inline bool rref_insert(Matrix& rows, Row v) {
    v = reduce_against(rows, std::move(v));
    const int p = pivot_of(v);
    if (p < 0) return false;
    const Rational lead = v[static_cast<std::size_t>(p)];
    for (auto& x : v)
        if (sgn(x) != 0) x /= lead;
    // Back-eliminate the new pivot column from the existing rows.
    for (Row& r : rows) {
        const Rational f = r[static_cast<std::size_t>(p)];
        if (sgn(f) == 0) continue;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (sgn(v[i]) != 0) r[i] -= f * v[i];
    }
    auto it = rows.begin();
    while (it != rows.end() && pivot_of(*it) < p) ++it;
    rows.insert(it, std::move(v));
    return true;
}

}  // namespace detail

/// Subspace of a fixed degree piece R_k, stored as a reduced-row-echelon
/// basis over the standard-monomial basis of R_k. The representation is
/// canonical, so equality of subspaces is equality of matrices.
class Subspace {
public:
    Subspace() = default;
    Subspace(RingPtr ring, int degree) : ring_(std::move(ring)), degree_(degree) {}

    static Subspace zero(RingPtr ring, int degree) { return Subspace(std::move(ring), degree); }

    static Subspace full(RingPtr ring, int degree) {
        Subspace s(ring, degree);
        const std::size_t n = static_cast<std::size_t>(ring->hilbert(degree));
        for (std::size_t i = 0; i < n; ++i) {
            detail::Row r(n, Rational(0));
            r[i] = 1;
            s.rows_.push_back(std::move(r));
        }
        return s;
    }

    static Subspace span(RingPtr ring, int degree, const std::vector<Poly>& vectors) {
        Subspace s(ring, degree);
        for (const Poly& p : vectors) s.insert(p);
        return s;
    }

    RingPtr ring() const { return ring_; }
    int degree() const { return degree_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    long ambient_dim() const { return ring_->hilbert(degree_); }
    bool is_full() const { return dim() == ambient_dim(); }
    const detail::Matrix& rows() const { return rows_; }

    /// Coordinates of a polynomial over the degree-k standard monomials.
    /// The input is normal-formed first; a nonzero remainder of the wrong
    /// degree raises mixed_degree.
    detail::Row coordinates(const Poly& p) const {
        const Poly nf = ring_->normal_form(p);
        detail::Row v(static_cast<std::size_t>(ambient_dim()), Rational(0));
        for (const auto& [m, c] : nf.terms()) {
            if (mono::degree(m) != degree_) throw mixed_degree();
            const int idx = ring_->basis_index(degree_, m);
            if (idx < 0) throw error("monomial missing from the standard basis");
            v[static_cast<std::size_t>(idx)] = c;
        }
        return v;
    }

    Poly row_poly(std::size_t i) const {
        const auto& basis = ring_->degree_basis(degree_);
        Poly p(ring_->nvars());
        for (std::size_t c = 0; c < rows_[i].size(); ++c)
            if (sgn(rows_[i][c]) != 0) p.add_term(basis[c], rows_[i][c]);
        return p;
    }

    std::vector<Poly> basis_polys() const {
        std::vector<Poly> out;
        for (std::size_t i = 0; i < rows_.size(); ++i) out.push_back(row_poly(i));
        return out;
    }

    bool insert(const Poly& p) { return detail::rref_insert(rows_, coordinates(p)); }
    bool insert_vector(detail::Row v) { return detail::rref_insert(rows_, std::move(v)); }

    bool contains_vector(const detail::Row& v) const {
        return detail::pivot_of(detail::reduce_against(rows_, v)) < 0;
    }
    bool contains(const Poly& p) const { return contains_vector(coordinates(p)); }
    bool contains(const Subspace& other) const {
        check_same_ambient(other);
        for (const auto& r : other.rows_)
            if (!contains_vector(r)) return false;
        return true;
    }

    std::vector<int> pivot_columns() const {
        std::vector<int> out;
        for (const auto& r : rows_) out.push_back(detail::pivot_of(r));
        return out;
    }

    bool operator==(const Subspace& o) const {
        return ring_.get() == o.ring_.get() && degree_ == o.degree_ && rows_ == o.rows_;
    }

    void check_same_ambient(const Subspace& o) const {
        if (ring_.get() != o.ring_.get() || degree_ != o.degree_) throw ambient_mismatch();
    }

private:
    RingPtr ring_;
    int degree_ = 0;
    detail::Matrix rows_;
};

inline Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    u.check_same_ambient(v);
    Subspace s = u;
    for (const auto& r : v.rows()) s.insert_vector(r);
    return s;
}

/// Zassenhaus intersection: echelonise [U|U; V|0]; rows with vanishing left
/// half carry an intersection basis in their right half.
inline Subspace intersect(const Subspace& u, const Subspace& v) {
    u.check_same_ambient(v);
    const std::size_t m = static_cast<std::size_t>(u.ambient_dim());
    detail::Matrix work;
    for (const auto& r : u.rows()) {
        detail::Row w(2 * m, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            w[i] = r[i];
            w[m + i] = r[i];
        }
        detail::rref_insert(work, std::move(w));
    }
    for (const auto& r : v.rows()) {
        detail::Row w(2 * m, Rational(0));
        for (std::size_t i = 0; i < m; ++i) w[i] = r[i];
        detail::rref_insert(work, std::move(w));
    }
    Subspace result(u.ring(), u.degree());
    for (const auto& w : work) {
        bool left_zero = true;
        for (std::size_t i = 0; i < m; ++i)
            if (sgn(w[i]) != 0) {
                left_zero = false;
                break;
            }
        if (!left_zero) continue;
        detail::Row r(w.begin() + static_cast<std::ptrdiff_t>(m), w.end());
        result.insert_vector(std::move(r));
    }
    return result;
}

/// Span of all products u_i * v_j inside the degree piece of the sum.
inline Subspace product_span(const Subspace& u, const Subspace& v) {
    if (u.ring().get() != v.ring().get()) throw ambient_mismatch();
    Subspace result(u.ring(), u.degree() + v.degree());
    for (const auto& pu : u.basis_polys())
        for (const auto& pv : v.basis_polys()) result.insert(pu * pv);
    return result;
}

}  // namespace kfilt

#endif
