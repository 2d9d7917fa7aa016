#ifndef KFILT_REPORT_HPP
#define KFILT_REPORT_HPP

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>

#include "kfilt/filtration.hpp"
#include "kfilt/invariants.hpp"

namespace kfilt {

/// Deterministic report: the body is byte-identical across runs with the
/// same inputs and seed; timing lives outside it. Machine-readable values
/// are exact "p/q" strings; decimals appear only in the text rendering.
struct Report {
    json body;
    double timing_ms = 0.0;
    int exit_code = 0;

    std::string json_str() const {
        json out;
        out["body"] = body;
        out["timing_ms"] = timing_ms;
        return out.dump(2) + "\n";
    }

    std::string text() const {
        std::ostringstream os;
        render(os, body, 0);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f", timing_ms);
        os << "# timing: " << buf << " ms\n";
        return os.str();
    }

private:
    static bool looks_rational(const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = s[0] == '-' ? 1 : 0;
        if (i == s.size()) return false;
        bool slash = false;
        for (; i < s.size(); ++i) {
            if (s[i] == '/' && !slash && i + 1 < s.size()) {
                slash = true;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        }
        return slash;  // decorate proper fractions only
    }

    static void render(std::ostringstream& os, const json& node, int depth) {
        const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
        if (node.is_object()) {
            for (const auto& [key, value] : node.items()) {
                if (value.is_object() || (value.is_array() && !value.empty() &&
                                          (value[0].is_object() || value[0].is_array()))) {
                    os << pad << key << ":\n";
                    render(os, value, depth + 1);
                } else {
                    os << pad << key << ": " << scalar(value) << "\n";
                }
            }
        } else if (node.is_array()) {
            for (const auto& item : node) {
                if (item.is_object() || item.is_array()) {
                    os << pad << "-\n";
                    render(os, item, depth + 1);
                } else {
                    os << pad << "- " << scalar(item) << "\n";
                }
            }
        } else {
            os << pad << scalar(node) << "\n";
        }
    }

    static std::string scalar(const json& v) {
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            if (looks_rational(s)) {
                const Rational q(s);
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.6g", q.get_d());
                return s + " (= " + buf + ")";
            }
            return s;
        }
        if (v.is_array()) {
            std::string out = "[";
            bool first = true;
            for (const auto& item : v) {
                if (!first) out += ", ";
                out += scalar(item);
                first = false;
            }
            return out + "]";
        }
        return v.dump();
    }
};

inline json seq_json(const std::vector<Rational>& seq) {
    json arr = json::array();
    for (const auto& q : seq) arr.push_back(to_string(q));
    return arr;
}

inline json fit_json(const FitResult& fit) {
    json out;
    out["certified"] = fit.certified;
    out["window_start"] = fit.window_start;
    json coeffs = json::array();
    for (const auto& c : fit.coefficients) coeffs.push_back(to_string(c));
    out["coefficients"] = coeffs;
    if (!fit.certified && fit.first_bad_k >= 0) out["first_bad_k"] = fit.first_bad_k;
    return out;
}

inline json weight_data_json(const WeightData& wd) {
    json out;
    out["label"] = wd.label;
    out["n"] = wd.n;
    out["kmax"] = wd.kmax;
    out["sequences"] = {{"h", seq_json(wd.h_seq)}, {"w", seq_json(wd.w_seq)},
                        {"d", seq_json(wd.d_seq)}};
    out["fits"] = {{"h", fit_json(wd.h_fit)}, {"w", fit_json(wd.w_fit)}, {"d", fit_json(wd.d_fit)}};
    out["fit_certified"] = wd.fit_certified;
    return out;
}

inline json weights_json(const WeightVector& w) {
    json arr = json::array();
    for (long long x : w) arr.push_back(x);
    return arr;
}

}  // namespace kfilt

#endif
