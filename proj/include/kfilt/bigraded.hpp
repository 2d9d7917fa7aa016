#ifndef KFILT_BIGRADED_HPP
#define KFILT_BIGRADED_HPP

#include <vector>

#include "kfilt/filtration.hpp"

namespace kfilt {

/// Bigraded pieces of the C[t]-subalgebra of R[t] generated by t^{i_a} s_a.
/// piece(k, j) is the coefficient space of t^j in ring degree k, as a
/// subspace of R_k. The table is filled by a sequential dynamic programme
///   piece(k, j) = t . piece(k, j-1) + sum_a s_a . piece(k - k_a, j - i_a),
/// base piece(0, j) = constants. Pieces increase with j; each row of the
/// table is trimmed once it reaches R_k.
class BigradedAlgebraTable {
public:
    BigradedAlgebraTable(RingPtr ring, std::vector<ReesGenerator> gens, int kmax, int jmax)
        : ring_(std::move(ring)), kmax_(kmax), jmax_(jmax) {
        for (auto& g : gens) {
            Poly nf = ring_->normal_form(g.element);
            if (nf.is_zero()) throw error("table generator vanishes in the quotient ring");
            if (!nf.is_homogeneous()) throw error("table generator is not homogeneous");
            gens_.push_back({g.t_power, std::move(nf)});
        }
        build();
    }

    const RingPtr& ring() const { return ring_; }
    int kmax() const { return kmax_; }
    int jmax() const { return jmax_; }
    const std::vector<ReesGenerator>& generators() const { return gens_; }

    const Subspace& piece(int k, int j) const {
        if (k < 0 || k > kmax_ || j < 0 || j > jmax_) throw out_of_bounds();
        const auto& row = rows_[static_cast<std::size_t>(k)];
        const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(j), row.size() - 1);
        return row[idx];
    }

    /// True when t^j . element lies in the algebra.
    bool member(const Poly& element, int j) const {
        const Poly nf = ring_->normal_form(element);
        if (nf.is_zero()) return true;
        if (!nf.is_homogeneous()) throw error("membership query with an inhomogeneous element");
        const int k = nf.degree();
        return piece(k, j).contains(nf);
    }

    /// The row of pieces at ring degree k, viewed as a flag chain in R_k.
    FlagChain chain(int k) const {
        FlagChain c;
        c.levels = rows_[static_cast<std::size_t>(k)];
        c.exhausted = c.levels.back().is_full();
        return c;
    }

private:
    /// Basis polynomials of src[j] that are new relative to src[j-1]
    /// (pivot sets of nested echelon bases nest).
    std::vector<Poly> fresh_polys(const std::vector<Subspace>& src, int j) const {
        if (j < 0) return {};
        const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(j), src.size() - 1);
        if (static_cast<std::size_t>(j) > idx) return {};  // trimmed: no change past the top
        const Subspace& cur = src[idx];
        if (idx == 0) return cur.basis_polys();
        std::set<int> prev;
        for (int p : src[idx - 1].pivot_columns()) prev.insert(p);
        std::vector<Poly> out;
        for (std::size_t r = 0; r < cur.rows().size(); ++r)
            if (!prev.count(detail::pivot_of(cur.rows()[r]))) out.push_back(cur.row_poly(r));
        return out;
    }

    void build() {
        rows_.resize(static_cast<std::size_t>(kmax_) + 1);
        for (int k = 0; k <= kmax_; ++k) {
            auto& row = rows_[static_cast<std::size_t>(k)];
            const long full_dim = ring_->hilbert(k);
            for (int j = 0; j <= jmax_; ++j) {
                Subspace cur = Subspace::zero(ring_, k);
                if (k == 0) {
                    cur = Subspace::full(ring_, 0);
                } else {
                    if (j > 0) cur = row[static_cast<std::size_t>(j - 1)];
                    for (const auto& g : gens_) {
                        const int kk = k - g.element.degree();
                        const int jj = j - g.t_power;
                        if (kk < 0 || jj < 0) continue;
                        const auto& src_row = rows_[static_cast<std::size_t>(kk)];
                        // Products with src pieces below jj entered at j-1.
                        const std::vector<Poly> cand =
                            (j == 0) ? src_row[0].basis_polys() : fresh_polys(src_row, jj);
                        for (const Poly& p : cand) cur.insert(g.element * p);
                    }
                }
                const bool done = cur.dim() == full_dim;
                row.push_back(std::move(cur));
                if (done) break;
            }
        }
    }

    RingPtr ring_;
    std::vector<ReesGenerator> gens_;
    int kmax_ = 0, jmax_ = 0;
    std::vector<std::vector<Subspace>> rows_;
};

}  // namespace kfilt

#endif
