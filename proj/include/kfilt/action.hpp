#ifndef KFILT_ACTION_HPP
#define KFILT_ACTION_HPP

#include <vector>

#include "kfilt/errors.hpp"
#include "kfilt/ring.hpp"

namespace kfilt {

using WeightVector = std::vector<long long>;

inline long long weight_of(const Monomial& m, const WeightVector& w) {
    long long acc = 0;
    for (std::size_t i = 0; i < m.size(); ++i) acc += static_cast<long long>(m[i]) * w[i];
    return acc;
}

inline bool is_weight_homogeneous(const Poly& p, const WeightVector& w) {
    bool first = true;
    long long wt = 0;
    for (const auto& [m, c] : p.terms()) {
        const long long mw = weight_of(m, w);
        if (first) {
            wt = mw;
            first = false;
        } else if (mw != wt) {
            return false;
        }
    }
    return true;
}

/// Generator-wise check that the diagonal action with the given weights
/// preserves the relations ideal.
inline void check_ideal_preserved(const GradedRing& ring, const WeightVector& w) {
    if (static_cast<int>(w.size()) != ring.nvars())
        throw error("weight vector length does not match the variable count");
    const auto& rels = ring.relations();
    for (std::size_t i = 0; i < rels.size(); ++i)
        if (!is_weight_homogeneous(rels[i], w)) throw ideal_not_preserved(i);
}

/// Diagonal one-parameter subgroup acting by t . x_j = t^{w_j} x_j.
struct OneParamSubgroup {
    RingPtr ring;
    WeightVector weights;

    OneParamSubgroup(RingPtr r, WeightVector w) : ring(std::move(r)), weights(std::move(w)) {
        check_ideal_preserved(*ring, weights);
    }

    bool is_trivial() const {
        for (long long w : weights)
            if (w != 0) return false;
        return true;
    }
};

/// Torus acting diagonally, given by a basis of its cocharacter lattice.
struct Torus {
    RingPtr ring;
    std::vector<WeightVector> cocharacters;

    Torus(RingPtr r, std::vector<WeightVector> cochars)
        : ring(std::move(r)), cocharacters(std::move(cochars)) {
        for (const auto& c : cocharacters) check_ideal_preserved(*ring, c);
    }

    int rank() const { return static_cast<int>(cocharacters.size()); }
};

/// T-weight of a monomial: one entry per cocharacter.
inline std::vector<long long> torus_weight(const Monomial& m, const Torus& t) {
    std::vector<long long> w;
    w.reserve(t.cocharacters.size());
    for (const auto& c : t.cocharacters) w.push_back(weight_of(m, c));
    return w;
}

}  // namespace kfilt

#endif
