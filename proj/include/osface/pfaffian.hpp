#ifndef OSFACE_PFAFFIAN_HPP
#define OSFACE_PFAFFIAN_HPP

// Pfaffians of even-dimensional skew-symmetric matrices.
//
// Three routes are provided and are meant to be cross-checked against each
// other:
//   pf_by_definition   signed sum over perfect matchings, (2n-1)!! terms
//   pf_by_expansion    recursive first-row expansion
//   pf_by_elimination  skew tridiagonalization with complete pivoting, O(n^3)
//
// Indices are zero-based throughout.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace osface {

template <class S>
class skew_matrix {
public:
    using value_type = S;

    /// Relative asymmetry tolerated (and averaged away) on construction.
    static constexpr double symmetrize_tolerance = 1e-12;

    skew_matrix() = default;

    /// Builds from a dense row-major array. Tiny asymmetry relative to max|x| is
    /// symmetrized; anything larger is rejected.
    skew_matrix(std::size_t dim, std::vector<S> entries) : dim_(dim), a_(std::move(entries)) {
        if (dim_ % 2 != 0) throw domain_error("skew matrix dimension must be even");
        if (a_.size() != dim_ * dim_) throw domain_error("entry count does not match dimension");
        double scale = 0.0;
        for (const S& x : a_) scale = std::max(scale, static_cast<double>(std::abs(x)));
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = i; j < dim_; ++j) {
                S& upper = a_[i * dim_ + j];
                S& lower = a_[j * dim_ + i];
                const double asym = static_cast<double>(std::abs(upper + lower));
                if (!(asym <= symmetrize_tolerance * scale))
                    throw domain_error("matrix is not skew-symmetric at (" + std::to_string(i) +
                                       ", " + std::to_string(j) + ")");
                const S avg = (upper - lower) / S(2);
                upper = avg;
                lower = -avg;
            }
        }
    }

    /// Builds from the strict upper triangle, entry(i, j) for i < j.
    template <class F>
    static skew_matrix from_upper(std::size_t dim, F&& entry) {
        if (dim % 2 != 0) throw domain_error("skew matrix dimension must be even");
        skew_matrix m;
        m.dim_ = dim;
        m.a_.assign(dim * dim, S(0));
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = i + 1; j < dim; ++j) {
                const S x = entry(i, j);
                m.a_[i * dim + j] = x;
                m.a_[j * dim + i] = -x;
            }
        }
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    const std::vector<S>& entries() const noexcept { return a_; }

private:
    std::size_t dim_ = 0;
    std::vector<S> a_;
};

/// Removes rows and columns i and k, keeping the remaining order.
template <class S>
skew_matrix<S> remove_rows_cols(const skew_matrix<S>& x, std::size_t i, std::size_t k) {
    const std::size_t n = x.dim();
    if (i == k || i >= n || k >= n) throw domain_error("remove_rows_cols: bad index pair");
    std::vector<std::size_t> keep;
    keep.reserve(n - 2);
    for (std::size_t r = 0; r < n; ++r)
        if (r != i && r != k) keep.push_back(r);
    return skew_matrix<S>::from_upper(
        n - 2, [&](std::size_t a, std::size_t b) { return x(keep[a], keep[b]); });
}

/// Largest dimension pf_by_definition will enumerate (10395 matchings).
inline constexpr std::size_t max_definition_dim = 12;

namespace detail {

inline int permutation_sign(const std::vector<std::size_t>& sigma) {
    int inversions = 0;
    for (std::size_t a = 0; a < sigma.size(); ++a)
        for (std::size_t b = a + 1; b < sigma.size(); ++b)
            if (sigma[a] > sigma[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

// Enumerates sigma with sigma(1) < sigma(3) < ... and sigma(2j-1) < sigma(2j):
// the smallest unused index opens each pair.
template <class Visit>
void enumerate_matchings(std::vector<std::size_t>& sigma, std::vector<bool>& used, Visit& visit) {
    const std::size_t n = used.size();
    if (sigma.size() == n) {
        visit(sigma);
        return;
    }
    std::size_t first = 0;
    while (used[first]) ++first;
    used[first] = true;
    sigma.push_back(first);
    for (std::size_t second = first + 1; second < n; ++second) {
        if (used[second]) continue;
        used[second] = true;
        sigma.push_back(second);
        enumerate_matchings(sigma, used, visit);
        sigma.pop_back();
        used[second] = false;
    }
    sigma.pop_back();
    used[first] = false;
}

} // namespace detail

/// Calls visit(sigma) once per element of M_{2n}, sigma in one-line notation.
template <class Visit>
void for_each_matching(std::size_t dim, Visit&& visit) {
    std::vector<std::size_t> sigma;
    sigma.reserve(dim);
    std::vector<bool> used(dim, false);
    detail::enumerate_matchings(sigma, used, visit);
}

template <class S>
S pf_by_definition(const skew_matrix<S>& x) {
    if (x.dim() > max_definition_dim)
        throw capacity_error("pf_by_definition: dimension " + std::to_string(x.dim()) +
                             " exceeds " + std::to_string(max_definition_dim));
    S total(0);
    for_each_matching(x.dim(), [&](const std::vector<std::size_t>& sigma) {
        S term(static_cast<double>(detail::permutation_sign(sigma)));
        for (std::size_t j = 0; j < sigma.size(); j += 2) term *= x(sigma[j], sigma[j + 1]);
        total += term;
    });
    return total;
}

/// First-row expansion, recursing down to the 0x0 case (Pf = 1).
template <class S>
S pf_by_expansion(const skew_matrix<S>& x) {
    const std::size_t n = x.dim();
    if (n == 0) return S(1);
    if (n == 2) return x(0, 1);
    S total(0);
    for (std::size_t k = 1; k < n; ++k) {
        if (x(0, k) == S(0)) continue;
        // (-1)^k with one-based k equals (-1)^(k+1) zero-based.
        const S term = x(0, k) * pf_by_expansion(remove_rows_cols(x, 0, k));
        total += (k % 2 == 1) ? term : -term;
    }
    return total;
}

/// Skew-symmetric tridiagonalization with complete pivoting: each step moves the
/// largest remaining entry to position (k, k+1). Returns 0 only when the whole
/// trailing block is exactly zero.
template <class S>
S pf_by_elimination(const skew_matrix<S>& x) {
    const std::size_t n = x.dim();
    if (n == 0) return S(1);
    std::vector<S> a = x.entries();
    auto at = [&](std::size_t i, std::size_t j) -> S& { return a[i * n + j]; };
    // Simultaneous row and column exchange; flips the sign of the Pfaffian.
    auto exchange = [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < n; ++c) std::swap(at(i, c), at(j, c));
        for (std::size_t r = 0; r < n; ++r) std::swap(at(r, i), at(r, j));
    };

    S pf(1);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t pr = k, pc = k + 1;
        double best = 0.0;
        for (std::size_t r = k; r < n; ++r) {
            for (std::size_t c = r + 1; c < n; ++c) {
                const double m = std::abs(at(r, c));
                if (m > best) {
                    best = m;
                    pr = r;
                    pc = c;
                }
            }
        }
        if (best == 0.0) return S(0);
        if (pr != k) {
            exchange(pr, k);
            pf = -pf;
            if (pc == k) pc = pr;
        }
        if (pc != k + 1) {
            exchange(pc, k + 1);
            pf = -pf;
        }
        const S pivot = at(k, k + 1);
        pf *= pivot;

        // Zero row/column k beyond k+1 using row/column k+1; the update keeps the
        // trailing block skew-symmetric.
        for (std::size_t i = k + 2; i < n; ++i) {
            const S ti = at(k, i) / pivot;
            for (std::size_t j = k + 2; j < n; ++j) {
                at(i, j) += ti * at(j, k + 1) - at(i, k + 1) * (at(k, j) / pivot);
            }
        }
    }
    return pf;
}

/// Largest dimension pf_max_term handles (one double per subset of indices).
inline constexpr std::size_t max_term_dim = 20;

/// max over matchings of |prod x(sigma(2j-1), sigma(2j))|, the largest term of the
/// defining sum. Dynamic programming over the set of unmatched indices.
template <class S>
double pf_max_term(const skew_matrix<S>& x) {
    const std::size_t n = x.dim();
    if (n > max_term_dim)
        throw capacity_error("pf_max_term: dimension " + std::to_string(n) + " exceeds " +
                             std::to_string(max_term_dim));
    const std::size_t full = (std::size_t{1} << n) - 1;
    // best[S] for the index set S; only sets of even size are ever read.
    std::vector<double> best(full + 1, 0.0);
    best[0] = 1.0;
    for (std::size_t set = 1; set <= full; ++set) {
        if (std::popcount(set) % 2 != 0) continue;
        const std::size_t i = static_cast<std::size_t>(std::countr_zero(set));
        const std::size_t rest = set & ~(std::size_t{1} << i);
        double b = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(rest >> j & 1)) continue;
            b = std::max(b, std::abs(x(i, j)) * best[rest & ~(std::size_t{1} << j)]);
        }
        best[set] = b;
    }
    return best[full];
}

/// Default Pfaffian route for formula evaluation.
template <class S>
S pfaffian(const skew_matrix<S>& x) {
    return pf_by_elimination(x);
}

} // namespace osface

#endif // OSFACE_PFAFFIAN_HPP
