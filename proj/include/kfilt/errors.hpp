#ifndef KFILT_ERRORS_HPP
#define KFILT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kfilt {

/// Base class for every error raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expression or document parsing failure; `position` is a 0-based
/// character offset into the offending string.
struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

struct mixed_degree : error {
    mixed_degree() : error("span inputs are not all homogeneous of the requested degree") {}
};

struct ambient_mismatch : error {
    ambient_mismatch() : error("subspaces live in different ambient degree pieces") {}
};

struct ring_mismatch : error {
    ring_mismatch() : error("the two job documents declare different rings") {}
};

struct degree_zero_generator : error {
    degree_zero_generator()
        : error("generator with t-power 0: the subalgebra meets the base ring "
                "in more than the constants") {}
};

struct not_exhaustive : error {
    long degree;
    explicit not_exhaustive(long k)
        : error("flag at degree " + std::to_string(k) +
                " never reaches the full degree piece below the level bound"),
          degree(k) {}
};

struct ideal_not_preserved : error {
    std::size_t relation_index;
    explicit ideal_not_preserved(std::size_t idx)
        : error("relation #" + std::to_string(idx) +
                " is not weight-homogeneous for the requested action"),
          relation_index(idx) {}
};

struct not_yet_polynomial : error {
    long first_bad_k;
    explicit not_yet_polynomial(long k)
        : error("sequence deviates from the interpolating polynomial at k = " +
                std::to_string(k)),
          first_bad_k(k) {}
};

struct uncertified_fit : error {
    uncertified_fit() : error("invariants requested from an uncertified polynomial fit") {}
};

struct degenerate_torus : error {
    degenerate_torus() : error("torus cocharacters are linearly dependent") {}
};

struct bound_exceeded : error {
    bound_exceeded() : error("approximation exponent exceeds the tabulated degree bound") {}
};

struct out_of_bounds : error {
    out_of_bounds() : error("requested bidegree lies outside the computed table bounds") {}
};

struct approximation_unstable : error {
    long disagreement_degree;
    explicit approximation_unstable(long k)
        : error("no approximation exponent below the degree bound reproduces the "
                "weight functions; first disagreement at k = " + std::to_string(k)),
          disagreement_degree(k) {}
};

struct not_equivariant : error {
    not_equivariant() : error("filtration is not equivariant for the given torus") {}
};

struct zero_norm : error {
    zero_norm() : error("distance is undefined when one of the norms vanishes") {}
};

struct cross_check_failure : error {
    using error::error;
};

}  // namespace kfilt

#endif
