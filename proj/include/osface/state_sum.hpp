#ifndef OSFACE_STATE_SUM_HPP
#define OSFACE_STATE_SUM_HPP

// Brute-force partition functions with OS boundary.
//
// Sites 0 .. 2n-1 carry spectral parameters u_0 .. u_{2n-1}. Row j of the
// triangular lattice is the monodromy
//
//   T_j = R_{j,2n-1} ... R_{j,j+2} R_{j,j+1} K_j,
//   R_{jk} = R(u_j, -u_k | h')   with h' = h for k - j odd, h + 1/2 for k - j even,
//
// so K_j acts first and R_{j,j+1} right after it. P_{2n} is the vacuum
// component of T_{2n-1} ... T_0 |0...0>.
//
// The two-site and closed-form checks in this header index sites from zero;
// reports name them from one.

#include <algorithm>
#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "face_model.hpp"
#include "report.hpp"
#include "theta.hpp"

namespace osface {

/// Spectral parameters u (an even number of them) and the height h.
struct parameter_point {
    std::vector<cplx> u;
    cplx h{};

    parameter_point() = default;
    parameter_point(std::vector<cplx> spectral, cplx height) : u(std::move(spectral)), h(height) {
        if (u.empty() || u.size() % 2 != 0)
            throw domain_error("parameter_point needs a positive even number of spectral parameters");
    }

    std::size_t n() const noexcept { return u.size() / 2; }
    std::size_t sites() const noexcept { return u.size(); }

    /// Copy with u_i and u_j exchanged.
    parameter_point swapped(std::size_t i, std::size_t j) const {
        parameter_point p = *this;
        std::swap(p.u.at(i), p.u.at(j));
        return p;
    }
    /// Copy with u_first replaced.
    parameter_point with_first(cplx value) const {
        parameter_point p = *this;
        p.u.front() = value;
        return p;
    }
    /// Point on the 2n-2 remaining sites after dropping sites 0 and l.
    parameter_point without_first_and(std::size_t l) const {
        std::vector<cplx> rest;
        for (std::size_t j = 1; j < u.size(); ++j)
            if (j != l) rest.push_back(u[j]);
        return {std::move(rest), h};
    }

    sample_params to_params() const { return {u, h}; }
};

/// Dense amplitudes over 2^sites spin configurations; site 0 is the most significant bit.
class state_vector {
public:
    explicit state_vector(std::size_t sites) : sites_(sites), amp_(std::size_t{1} << sites) {}

    static state_vector vacuum(std::size_t sites) {
        state_vector v(sites);
        v.amp_[0] = 1.0;
        return v;
    }

    std::size_t sites() const noexcept { return sites_; }
    std::size_t size() const noexcept { return amp_.size(); }
    cplx& operator[](std::size_t s) { return amp_[s]; }
    const cplx& operator[](std::size_t s) const { return amp_[s]; }

    std::size_t bit(std::size_t site) const noexcept { return sites_ - 1 - site; }

private:
    std::size_t sites_;
    std::vector<cplx> amp_;
};

/// Number of |1> factors in a basis state.
inline int charge(std::size_t basis_state) { return std::popcount(basis_state); }

/// Applies the flip K on one site.
inline state_vector apply_k(std::size_t site, const state_vector& psi) {
    state_vector out(psi.sites());
    const std::size_t mask = std::size_t{1} << psi.bit(site);
    for (std::size_t s = 0; s < psi.size(); ++s) out[s ^ mask] = psi[s];
    return out;
}

/// Applies a two-site operator with `first` in the role of W_a.
inline state_vector apply_pair(const r_matrix& r, std::size_t first, std::size_t second,
                               const state_vector& psi) {
    state_vector out(psi.sites());
    const std::size_t ba = psi.bit(first);
    const std::size_t bb = psi.bit(second);
    const std::size_t clear = ~((std::size_t{1} << ba) | (std::size_t{1} << bb));
    for (std::size_t s = 0; s < psi.size(); ++s) {
        if (psi[s] == cplx(0.0)) continue;
        const int in = static_cast<int>(((s >> ba) & 1) << 1 | ((s >> bb) & 1));
        for (int o = 0; o < 4; ++o) {
            const cplx w = r(o, in);
            if (w == cplx(0.0)) continue;
            const std::size_t t = (s & clear) | (std::size_t((o >> 1) & 1) << ba) |
                                  (std::size_t(o & 1) << bb);
            out[t] += w * psi[s];
        }
    }
    return out;
}

/// Height argument of R_{jk} inside T_j.
inline cplx monodromy_height(std::size_t j, std::size_t k, cplx h) {
    return (k - j) % 2 == 1 ? h : h + 0.5;
}

/// psi -> T_j psi.
inline state_vector apply_monodromy(std::size_t j, const parameter_point& p,
                                    const state_vector& psi, const context& ctx) {
    if (psi.sites() != p.sites()) throw domain_error("state and parameter point disagree on size");
    if (j >= p.sites()) throw domain_error("monodromy row out of range");
    state_vector out = apply_k(j, psi);
    for (std::size_t k = j + 1; k < p.sites(); ++k) {
        const r_matrix r = build_r_matrix(p.u[j], -p.u[k], monodromy_height(j, k, p.h), ctx);
        out = apply_pair(r, j, k, out);
    }
    return out;
}

/// Largest n accepted by the oracle (2^10 amplitudes).
inline constexpr std::size_t max_oracle_n = 5;

/// P_{2n}(u | h) by explicit contraction.
inline cplx partition_function(const parameter_point& p, const context& ctx) {
    if (p.n() > max_oracle_n)
        throw capacity_error("partition_function: n = " + std::to_string(p.n()) + " exceeds " +
                             std::to_string(max_oracle_n));
    guarded(theta(p.h, ctx), "[h]", ctx);
    if (p.sites() > 2) guarded(theta(p.h + 0.5, ctx), "[h + 1/2]", ctx);
    state_vector psi = state_vector::vacuum(p.sites());
    for (std::size_t j = 0; j < p.sites(); ++j) psi = apply_monodromy(j, p, psi, ctx);
    return psi[0];
}

/// Largest |weight| of a single lattice configuration contributing to P_{2n}: the
/// same contraction with |R| entries and max in place of the sum.
inline double partition_function_max_term(const parameter_point& p, const context& ctx) {
    if (p.n() > max_oracle_n)
        throw capacity_error("partition_function_max_term: n = " + std::to_string(p.n()) +
                             " exceeds " + std::to_string(max_oracle_n));
    const std::size_t m = p.sites();
    std::vector<double> psi(std::size_t{1} << m, 0.0);
    psi[0] = 1.0;
    auto bit = [m](std::size_t site) { return m - 1 - site; };
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> flipped(psi.size(), 0.0);
        const std::size_t mask = std::size_t{1} << bit(j);
        for (std::size_t s = 0; s < psi.size(); ++s) flipped[s ^ mask] = psi[s];
        psi = std::move(flipped);
        for (std::size_t k = j + 1; k < m; ++k) {
            const r_matrix r = build_r_matrix(p.u[j], -p.u[k], monodromy_height(j, k, p.h), ctx);
            const std::size_t ba = bit(j), bb = bit(k);
            const std::size_t clear = ~((std::size_t{1} << ba) | (std::size_t{1} << bb));
            std::vector<double> out(psi.size(), 0.0);
            for (std::size_t s = 0; s < psi.size(); ++s) {
                if (psi[s] == 0.0) continue;
                const int in = static_cast<int>(((s >> ba) & 1) << 1 | ((s >> bb) & 1));
                for (int o = 0; o < 4; ++o) {
                    const double w = std::abs(r(o, in));
                    if (w == 0.0) continue;
                    const std::size_t t = (s & clear) | (std::size_t((o >> 1) & 1) << ba) |
                                          (std::size_t(o & 1) << bb);
                    out[t] = std::max(out[t], w * psi[s]);
                }
            }
            psi = std::move(out);
        }
    }
    return psi[0];
}

/// P_{2n} with its largest configuration weight as the scale.
inline scaled_value partition_function_scaled(const parameter_point& p, const context& ctx) {
    return {partition_function(p, ctx), partition_function_max_term(p, ctx)};
}

/// [1/2][h + u_1 + u_2] / [h].
inline cplx two_site_closed_form(cplx u1, cplx u2, cplx h, const context& ctx) {
    return theta(cplx(0.5), ctx) * theta(h + u1 + u2, ctx) / guarded(theta(h, ctx), "[h]", ctx);
}

inline verification_report check_two_site_closed_form(const parameter_point& p, const context& ctx,
                                                      double tol = 1e-11) {
    if (p.n() != 1) throw domain_error("two-site closed form needs n = 1");
    auto r = make_scaled_report("oracle.two_site_closed_form", partition_function_scaled(p, ctx),
                                as_scaled(two_site_closed_form(p.u[0], p.u[1], p.h, ctx)), tol,
                                ctx.zero_tolerance);
    r.params = p.to_params();
    return r;
}

/// P is symmetric under u_i <-> u_j.
inline verification_report check_symmetry(const parameter_point& p, std::size_t i, std::size_t j,
                                          const context& ctx, double tol = 1e-10) {
    if (p.n() > 4) throw capacity_error("check_symmetry supports n <= 4");
    if (i >= p.sites() || j >= p.sites()) throw domain_error("symmetry index out of range");
    const scaled_value a = partition_function_scaled(p, ctx);
    const scaled_value b = i == j ? a : partition_function_scaled(p.swapped(i, j), ctx);
    auto r = make_scaled_report("oracle.symmetry[" + std::to_string(i + 1) + "<->" +
                             std::to_string(j + 1) + "]",
                         a, b, tol, ctx.zero_tolerance);
    r.params = p.to_params();
    return r;
}

/// u_1 -> P_{2n} is an elliptic polynomial of degree 2n-1 with
/// chi(1) = -1 and chi(tau) = -exp(-2 pi i (h + u_2 + ... + u_{2n})).
inline std::pair<verification_report, verification_report>
check_quasi_periodicity_p(const parameter_point& p, const context& ctx, double tol = 1e-9) {
    if (p.n() > 3) throw capacity_error("check_quasi_periodicity_p supports n <= 3");
    const int degree = static_cast<int>(2 * p.n() - 1);
    cplx rest = p.h;
    for (std::size_t j = 1; j < p.sites(); ++j) rest += p.u[j];
    const cplx chi_1 = -1.0;
    const cplx chi_tau = -std::exp(cplx(0.0, -2.0 * std::numbers::pi) * rest);
    auto f = [&](cplx u1) { return partition_function_scaled(p.with_first(u1), ctx); };
    auto [a, b] = check_elliptic_polynomial(f, degree, chi_1, chi_tau, p.u[0], ctx, tol);
    const std::string suffix = "[n=" + std::to_string(p.n()) + "]";
    a.check_name = "oracle.quasi_period_1" + suffix;
    b.check_name = "oracle.quasi_period_tau" + suffix;
    a.params = b.params = p.to_params();
    return {a, b};
}

/// Frozen-row factor for u_1 = -u_l:
/// [1/2] prod_{j != 0, l} [u_j + u_l + 1/2][u_j - u_l + 1/2].
inline cplx antipodal_factor(const parameter_point& p, std::size_t l, const context& ctx) {
    cplx f = theta(cplx(0.5), ctx);
    for (std::size_t j = 1; j < p.sites(); ++j) {
        if (j == l) continue;
        f *= theta(p.u[j] + p.u[l] + 0.5, ctx) * theta(p.u[j] - p.u[l] + 0.5, ctx);
    }
    return f;
}

/// Frozen-row-and-column factor for u_1 = -u_l - 1/2:
/// [h - 1/2][1/2]/[h] prod_{j != 0, l} [u_j + u_l][u_j - u_l - 1/2].
inline cplx antipodal_half_factor(const parameter_point& p, std::size_t l, const context& ctx) {
    cplx f = theta(p.h - 0.5, ctx) * theta(cplx(0.5), ctx) / guarded(theta(p.h, ctx), "[h]", ctx);
    for (std::size_t j = 1; j < p.sites(); ++j) {
        if (j == l) continue;
        f *= theta(p.u[j] + p.u[l], ctx) * theta(p.u[j] - p.u[l] - 0.5, ctx);
    }
    return f;
}

namespace detail {

inline std::string recursion_suffix(const parameter_point& p, std::size_t l) {
    return "[n=" + std::to_string(p.n()) + ",l=" + std::to_string(l + 1) + "]";
}

inline void check_recursion_index(const parameter_point& p, std::size_t l) {
    if (p.n() < 2) throw domain_error("recursion needs n >= 2");
    if (l == 0 || l >= p.sites()) throw domain_error("recursion index out of range");
}

} // namespace detail

/// P_{2n}|_{u_1 = -u_l} = antipodal_factor * P_{2n-2}(u without u_1, u_l).
inline verification_report check_recursion_antipodal(const parameter_point& p, std::size_t l,
                                                     const context& ctx, double tol = 1e-10) {
    detail::check_recursion_index(p, l);
    const parameter_point at = p.with_first(-p.u[l]);
    const scaled_value lhs = partition_function_scaled(at, ctx);
    const scaled_value rhs =
        antipodal_factor(p, l, ctx) * partition_function_scaled(p.without_first_and(l), ctx);
    auto r = make_scaled_report("recursion.antipodal" + detail::recursion_suffix(p, l), lhs, rhs, tol,
                         ctx.zero_tolerance);
    r.params = p.to_params();
    return r;
}

/// P_{2n}|_{u_1 = -u_l - 1/2} = antipodal_half_factor * P_{2n-2}(u without u_1, u_l).
inline verification_report check_recursion_antipodal_half(const parameter_point& p, std::size_t l,
                                                          const context& ctx, double tol = 1e-10) {
    detail::check_recursion_index(p, l);
    const parameter_point at = p.with_first(-p.u[l] - 0.5);
    const scaled_value lhs = partition_function_scaled(at, ctx);
    const scaled_value rhs =
        antipodal_half_factor(p, l, ctx) * partition_function_scaled(p.without_first_and(l), ctx);
    auto r = make_scaled_report("recursion.antipodal_half" + detail::recursion_suffix(p, l), lhs, rhs,
                         tol, ctx.zero_tolerance);
    r.params = p.to_params();
    return r;
}

} // namespace osface

#endif // OSFACE_STATE_SUM_HPP
