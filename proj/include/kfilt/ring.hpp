#ifndef KFILT_RING_HPP
#define KFILT_RING_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kfilt/errors.hpp"
#include "kfilt/poly.hpp"

namespace kfilt {

class GradedRing;
using RingPtr = std::shared_ptr<const GradedRing>;

/// Polynomial ring in named variables modulo a homogeneous ideal, with
/// per-degree standard-monomial bases. A reduced Groebner basis under
/// grevlex is computed once at construction and shared read-only; the
/// per-degree caches make repeated queries cheap.
class GradedRing {
public:
    static RingPtr make(std::vector<std::string> vars, std::vector<Poly> relations,
                        std::optional<int> dimension = std::nullopt) {
        auto r = std::shared_ptr<GradedRing>(new GradedRing(std::move(vars), std::move(relations)));
        r->dim_ = dimension ? *dimension : r->infer_dimension();
        return r;
    }

    static RingPtr make(std::vector<std::string> vars,
                        const std::vector<std::string>& relation_exprs,
                        std::optional<int> dimension = std::nullopt) {
        std::vector<Poly> rel;
        rel.reserve(relation_exprs.size());
        for (const auto& e : relation_exprs) rel.push_back(parse_poly(e, vars));
        return make(std::move(vars), std::move(rel), dimension);
    }

    const std::vector<std::string>& variables() const { return vars_; }
    const std::vector<Poly>& relations() const { return relations_; }
    const std::vector<Poly>& groebner_basis() const { return gb_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    int dimension() const { return dim_; }

    bool same_presentation(const GradedRing& o) const {
        return vars_ == o.vars_ && relations_ == o.relations_;
    }

    /// Unique remainder modulo the relations ideal; idempotent and Q-linear.
    Poly normal_form(const Poly& p) const {
        Poly rem(nvars());
        Poly work = p;
        while (!work.is_zero()) {
            const auto& [m, c] = work.leading();
            bool reduced = false;
            for (const Poly& g : gb_) {
                const auto& [gm, gc] = g.leading();
                if (mono::divides(gm, m)) {
                    work -= Poly::term(mono::quotient(m, gm), c / gc) * g;
                    reduced = true;
                    break;
                }
            }
            if (!reduced) {
                rem.add_term(m, c);
                work.add_term(m, -c);
            }
        }
        return rem;
    }

    /// Standard monomials of degree k (descending grevlex); their classes
    /// form a basis of the degree-k piece.
    const std::vector<Monomial>& degree_basis(int k) const {
        auto it = basis_cache_.find(k);
        if (it != basis_cache_.end()) return it->second;
        std::vector<Monomial> basis;
        for (const Monomial& m : mono::enumerate(nvars(), k)) {
            bool standard = true;
            for (const Poly& g : gb_)
                if (mono::divides(g.leading().first, m)) {
                    standard = false;
                    break;
                }
            if (standard) basis.push_back(m);
        }
        auto [ins, ok] = basis_cache_.emplace(k, std::move(basis));
        index_cache_.emplace(k, build_index(ins->second));
        return ins->second;
    }

    std::vector<Poly> degree_basis_polys(int k) const {
        std::vector<Poly> out;
        for (const Monomial& m : degree_basis(k)) out.push_back(Poly::term(m, 1));
        return out;
    }

    long hilbert(int k) const { return static_cast<long>(degree_basis(k).size()); }

    /// Column index of a standard monomial in the degree-k basis.
    int basis_index(int k, const Monomial& m) const {
        degree_basis(k);
        const auto& idx = index_cache_.at(k);
        auto it = idx.find(key_of(m));
        if (it == idx.end()) return -1;
        return it->second;
    }

private:
    GradedRing(std::vector<std::string> vars, std::vector<Poly> relations)
        : vars_(std::move(vars)), relations_(std::move(relations)) {
        for (std::size_t i = 0; i < relations_.size(); ++i) {
            if (relations_[i].is_zero()) throw error("relation #" + std::to_string(i) + " is zero");
            if (!relations_[i].is_homogeneous())
                throw error("relation #" + std::to_string(i) + " is not homogeneous");
            if (relations_[i].nvars() != nvars())
                throw error("relation #" + std::to_string(i) + " has wrong variable count");
        }
        buchberger();
    }

    static std::string key_of(const Monomial& m) {
        std::string s;
        for (int e : m) {
            s += std::to_string(e);
            s += ',';
        }
        return s;
    }

    static std::unordered_map<std::string, int> build_index(const std::vector<Monomial>& basis) {
        std::unordered_map<std::string, int> idx;
        for (std::size_t i = 0; i < basis.size(); ++i)
            idx.emplace(key_of(basis[i]), static_cast<int>(i));
        return idx;
    }

    Poly reduce_by(const Poly& p, const std::vector<Poly>& basis) const {
        Poly rem(nvars());
        Poly work = p;
        while (!work.is_zero()) {
            const auto& [m, c] = work.leading();
            bool reduced = false;
            for (const Poly& g : basis) {
                const auto& [gm, gc] = g.leading();
                if (mono::divides(gm, m)) {
                    work -= Poly::term(mono::quotient(m, gm), c / gc) * g;
                    reduced = true;
                    break;
                }
            }
            if (!reduced) {
                rem.add_term(m, c);
                work.add_term(m, -c);
            }
        }
        return rem;
    }

    void buchberger() {
        std::vector<Poly> g;
        for (const Poly& r : relations_)
            if (!r.is_zero()) g.push_back(r);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) pairs.emplace_back(i, j);
        while (!pairs.empty()) {
            auto [i, j] = pairs.back();
            pairs.pop_back();
            const auto& [mi, ci] = g[i].leading();
            const auto& [mj, cj] = g[j].leading();
            if (mono::coprime(mi, mj)) continue;  // Buchberger's first criterion
            const Monomial l = mono::lcm(mi, mj);
            Poly s = Poly::term(mono::quotient(l, mi), Rational(1) / ci) * g[i] -
                     Poly::term(mono::quotient(l, mj), Rational(1) / cj) * g[j];
            Poly rem = reduce_by(s, g);
            if (!rem.is_zero()) {
                for (std::size_t t = 0; t < g.size(); ++t) pairs.emplace_back(t, g.size());
                g.push_back(rem);
            }
        }
        // Minimalise: drop members whose lead is divisible by another lead.
        std::vector<Poly> minimal;
        for (std::size_t i = 0; i < g.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < g.size(); ++j) {
                if (i == j) continue;
                if (mono::divides(g[j].leading().first, g[i].leading().first)) {
                    // Keep the earlier one on exact leading-term ties.
                    if (g[i].leading().first == g[j].leading().first && i < j) continue;
                    redundant = true;
                    break;
                }
            }
            if (!redundant) minimal.push_back(g[i]);
        }
        // Reduce each member against the others and make it monic.
        gb_.clear();
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> others;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Poly tail = minimal[i] - Poly::term(minimal[i].leading().first, minimal[i].leading().second);
            Poly red = Poly::term(minimal[i].leading().first, minimal[i].leading().second) +
                       reduce_by(tail, others);
            red *= Rational(1) / red.leading().second;
            gb_.push_back(red);
        }
        std::sort(gb_.begin(), gb_.end(), [](const Poly& a, const Poly& b) {
            return mono::grevlex_greater(b.leading().first, a.leading().first);
        });
    }

    int infer_dimension() const {
        if (relations_.empty()) return nvars() - 1;
        const int window = nvars() + 6;
        std::vector<long> seq;
        for (int k = 0; k <= window; ++k) seq.push_back(hilbert(k));
        int d = 0;
        auto tail_constant = [](const std::vector<long>& s) {
            if (s.size() < 3) return true;
            return s[s.size() - 1] == s[s.size() - 2] && s[s.size() - 2] == s[s.size() - 3];
        };
        while (!tail_constant(seq) && seq.size() >= 3) {
            std::vector<long> next;
            for (std::size_t i = 1; i < seq.size(); ++i) next.push_back(seq[i] - seq[i - 1]);
            seq = std::move(next);
            ++d;
        }
        return d;
    }

    std::vector<std::string> vars_;
    std::vector<Poly> relations_;
    std::vector<Poly> gb_;
    int dim_ = 0;
    mutable std::map<int, std::vector<Monomial>> basis_cache_;
    mutable std::map<int, std::unordered_map<std::string, int>> index_cache_;
};

inline Poly normal_form(const Poly& p, const GradedRing& ring) { return ring.normal_form(p); }

}  // namespace kfilt

#endif
