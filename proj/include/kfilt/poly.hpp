#ifndef KFILT_POLY_HPP
#define KFILT_POLY_HPP

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kfilt/errors.hpp"
#include "kfilt/monomial.hpp"
#include "kfilt/rational.hpp"

namespace kfilt {

/// Multivariate polynomial over the rationals. Terms are kept in descending
/// grevlex order and zero coefficients are never stored.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational, MonoGreater>;

    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(const Rational& c, int nvars) {
        Poly p(nvars);
        p.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }
    static Poly variable(int idx, int nvars) {
        Poly p(nvars);
        Monomial m(static_cast<std::size_t>(nvars), 0);
        m[static_cast<std::size_t>(idx)] = 1;
        p.add_term(m, 1);
        return p;
    }
    static Poly term(const Monomial& m, const Rational& c) {
        Poly p(static_cast<int>(m.size()));
        p.add_term(m, c);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c) {
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    /// Leading term under grevlex. Undefined on the zero polynomial.
    const std::pair<const Monomial, Rational>& leading() const { return *terms_.begin(); }

    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, mono::degree(m));
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const int d = mono::degree(terms_.begin()->first);
        for (const auto& [m, c] : terms_)
            if (mono::degree(m) != d) return false;
        return true;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly& operator*=(const Rational& c) {
        if (sgn(c) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(mono::mul(ma, mb), ca * cb);
        return r;
    }

    friend Poly operator-(const Poly& a) {
        Poly r(a.nvars_);
        for (const auto& [m, c] : a.terms_) r.add_term(m, -c);
        return r;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    std::string to_string(const std::vector<std::string>& vars) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (sgn(a) < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (sgn(a) < 0 ? " - " : " + ");
                if (sgn(a) < 0) a = -a;
            }
            const bool is_const = mono::degree(m) == 0;
            if (a != 1 || is_const) os << a.get_str();
            bool printed = a != 1 || is_const;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (printed) os << " ";
                os << vars[i];
                if (m[i] > 1) os << "^" << m[i];
                printed = true;
            }
            first = false;
        }
        return os.str();
    }

private:
    int nvars_;
    TermMap terms_;
};

namespace detail {

/// Recursive-descent parser for the input expression grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor (['*'] factor)*
///   factor := number ['/' number] | var ['^' number]
/// Whitespace is insignificant; variable names are matched longest-first
/// against the declared list, so "xy" is x*y when both are declared.
class ExprParser {
public:
    ExprParser(const std::string& src, const std::vector<std::string>& vars)
        : src_(src), vars_(vars) {
        order_.resize(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) order_[i] = i;
        std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return vars[a].size() > vars[b].size();
        });
    }

    Poly parse() {
        Poly result(static_cast<int>(vars_.size()));
        skip_ws();
        if (at_end()) return result;  // empty input = 0
        int sign = read_sign();
        result += parse_term() * Rational(sign);
        skip_ws();
        while (!at_end()) {
            const char c = src_[pos_];
            if (c != '+' && c != '-') throw parse_error("expected '+' or '-'", pos_);
            ++pos_;
            skip_ws();
            const int s = (c == '-' ? -1 : 1) * read_sign();
            result += parse_term() * Rational(s);
            skip_ws();
        }
        return result;
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    int read_sign() {
        int s = 1;
        while (!at_end() && (src_[pos_] == '+' || src_[pos_] == '-')) {
            if (src_[pos_] == '-') s = -s;
            ++pos_;
            skip_ws();
        }
        return s;
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        for (;;) {
            skip_ws();
            if (at_end()) break;
            const char c = src_[pos_];
            if (c == '*') {
                ++pos_;
                skip_ws();
                acc = acc * parse_factor();
            } else if (std::isdigit(static_cast<unsigned char>(c)) || is_var_start()) {
                acc = acc * parse_factor();
            } else {
                break;
            }
        }
        return acc;
    }

    bool is_var_start() const { return match_var() >= 0; }

    /// Longest declared variable name starting at pos_, or -1.
    int match_var() const {
        for (std::size_t idx : order_) {
            const std::string& v = vars_[idx];
            if (!v.empty() && src_.compare(pos_, v.size(), v) == 0)
                return static_cast<int>(idx);
        }
        return -1;
    }

    Poly parse_factor() {
        skip_ws();
        if (at_end()) throw parse_error("unexpected end of expression", pos_);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = read_integer();
            Rational q(num);
            skip_ws();
            if (!at_end() && src_[pos_] == '/') {
                ++pos_;
                skip_ws();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    throw parse_error("expected denominator after '/'", pos_);
                Integer den = read_integer();
                if (sgn(den) == 0) throw parse_error("zero denominator", pos_);
                q = Rational(num, den);
                q.canonicalize();
            }
            return Poly::constant(q, static_cast<int>(vars_.size()));
        }
        const int vi = match_var();
        if (vi >= 0) {
            pos_ += vars_[static_cast<std::size_t>(vi)].size();
            long e = 1;
            skip_ws();
            if (!at_end() && src_[pos_] == '^') {
                ++pos_;
                skip_ws();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    throw parse_error("expected exponent after '^'", pos_);
                e = read_integer().get_si();
            }
            Monomial m(vars_.size(), 0);
            m[static_cast<std::size_t>(vi)] = static_cast<int>(e);
            return Poly::term(m, 1);
        }
        throw parse_error("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    Integer read_integer() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return Integer(src_.substr(start, pos_ - start));
    }

    const std::string& src_;
    const std::vector<std::string>& vars_;
    std::vector<std::size_t> order_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(const std::string& expr, const std::vector<std::string>& vars) {
    return detail::ExprParser(expr, vars).parse();
}

}  // namespace kfilt

#endif
