#ifndef OSFACE_FORMULAS_HPP
#define OSFACE_FORMULAS_HPP

// Closed-form elliptic Pfaffian expressions for P_{2n}:
//
//   P = prod_{i<j} D_ij [u_j - u_i + 1/2] / [u_j - u_i] * Pf(X),
//   X_ij = [1/2][u_j - u_i][u_i + u_j + h] / ([h] D_ij [u_j - u_i + 1/2]),
//
// where D_ij = [u_i + u_j] for pfaffian_form::sum and
// D_ij = [u_i + u_j + 1/2] for pfaffian_form::shifted_sum. Also the identity
// relating the two Pfaffians, the two factorization formulas it reduces to at
// h = 0, and the chain of addition-formula steps that proves it for n = 2.

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "face_model.hpp"
#include "pfaffian.hpp"
#include "report.hpp"
#include "state_sum.hpp"
#include "theta.hpp"

namespace osface {

enum class pfaffian_form {
    sum,         ///< D_ij = [u_i + u_j]
    shifted_sum, ///< D_ij = [u_i + u_j + 1/2]
};

inline const char* to_string(pfaffian_form f) {
    return f == pfaffian_form::sum ? "E" : "F";
}

namespace detail {

inline std::string pair_name(const char* pattern, std::size_t i, std::size_t j) {
    std::string s = pattern;
    const std::string a = std::to_string(i + 1), b = std::to_string(j + 1);
    for (std::size_t pos; (pos = s.find('i')) != std::string::npos;) s.replace(pos, 1, a);
    for (std::size_t pos; (pos = s.find('j')) != std::string::npos;) s.replace(pos, 1, b);
    return s;
}

inline cplx pair_denominator(pfaffian_form form, cplx ui, cplx uj, const context& ctx) {
    return form == pfaffian_form::sum ? theta(ui + uj, ctx) : theta(ui + uj + 0.5, ctx);
}

inline const char* pair_denominator_name(pfaffian_form form) {
    return form == pfaffian_form::sum ? "[u_i + u_j]" : "[u_i + u_j + 1/2]";
}

// Entry (i, j) built without assuming skew-symmetry, so construction of the
// skew_matrix checks it.
inline cplx kernel_entry(const parameter_point& p, pfaffian_form form, std::size_t i,
                         std::size_t j, cplx half_over_h, const context& ctx) {
    if (i == j) return 0.0;
    const cplx ui = p.u[i], uj = p.u[j];
    const cplx d = guarded(pair_denominator(form, ui, uj, ctx),
                           pair_name(pair_denominator_name(form), i, j), ctx);
    const cplx s = guarded(theta(uj - ui + 0.5, ctx), pair_name("[u_j - u_i + 1/2]", i, j), ctx);
    return half_over_h * theta(uj - ui, ctx) * theta(ui + uj + p.h, ctx) / (d * s);
}

// c_ij = D_ij [u_j - u_i + 1/2] / [u_j - u_i], i < j.
inline cplx prefactor_pair(const parameter_point& p, pfaffian_form form, std::size_t i,
                           std::size_t j, const context& ctx) {
    const cplx ui = p.u[i], uj = p.u[j];
    const cplx diff = guarded(theta(uj - ui, ctx), pair_name("[u_j - u_i]", i, j), ctx);
    return pair_denominator(form, ui, uj, ctx) * theta(uj - ui + 0.5, ctx) / diff;
}

template <class Entry>
skew_matrix<cplx> dense_skew(std::size_t dim, Entry&& entry) {
    std::vector<cplx> a(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) a[i * dim + j] = entry(i, j);
    return {dim, std::move(a)};
}

} // namespace detail

/// The matrix X of the Pfaffian factor.
inline skew_matrix<cplx> pfaffian_kernel(const parameter_point& p, pfaffian_form form,
                                         const context& ctx) {
    const cplx half_over_h = theta(cplx(0.5), ctx) / guarded(theta(p.h, ctx), "[h]", ctx);
    return detail::dense_skew(p.sites(), [&](std::size_t i, std::size_t j) {
        return detail::kernel_entry(p, form, i, j, half_over_h, ctx);
    });
}

/// prod_{i<j} D_ij [u_j - u_i + 1/2] / [u_j - u_i].
inline cplx pfaffian_prefactor(const parameter_point& p, pfaffian_form form, const context& ctx) {
    cplx acc = 1.0;
    for (std::size_t i = 0; i < p.sites(); ++i)
        for (std::size_t j = i + 1; j < p.sites(); ++j)
            acc *= detail::prefactor_pair(p, form, i, j, ctx);
    return acc;
}

/// prefactor * Pf(X), Pfaffian by elimination.
inline cplx eval_pfaffian_form(const parameter_point& p, pfaffian_form form, const context& ctx) {
    const skew_matrix<cplx> x = pfaffian_kernel(p, form, ctx);
    return pfaffian_prefactor(p, form, ctx) * pf_by_elimination(x);
}

/// prefactor * Pf(X) with |prefactor| times the largest matching term of X as the scale.
inline scaled_value eval_pfaffian_form_scaled(const parameter_point& p, pfaffian_form form,
                                              const context& ctx) {
    const skew_matrix<cplx> x = pfaffian_kernel(p, form, ctx);
    return pfaffian_prefactor(p, form, ctx) * scaled_value{pf_by_elimination(x), pf_max_term(x)};
}

inline cplx eval_E(const parameter_point& p, const context& ctx) {
    return eval_pfaffian_form(p, pfaffian_form::sum, ctx);
}

inline cplx eval_F(const parameter_point& p, const context& ctx) {
    return eval_pfaffian_form(p, pfaffian_form::shifted_sum, ctx);
}

/// Same value through the first-row expansion of Pf(X), with each X_{1k} multiplied into
/// its own prefactor pair first:
///
///   sum_k (-1)^k ([1/2][u_1 + u_k + h]/[h]) prod_{j != 1,k} c_1j prod_{1 < i < j} c_ij Pf(X^{1k}).
///
/// No D_1k appears in a denominator, so this stays finite at u_1 = -u_l (sum form) and at
/// u_1 = -u_l - 1/2 (shifted form), where the elimination route hits a pole.
inline scaled_value eval_by_row_expansion_scaled(const parameter_point& p, pfaffian_form form,
                                                 const context& ctx) {
    const std::size_t m = p.sites();
    const cplx half_over_h = theta(cplx(0.5), ctx) / guarded(theta(p.h, ctx), "[h]", ctx);
    if (m == 2) return as_scaled(half_over_h * theta(p.u[0] + p.u[1] + p.h, ctx));

    std::vector<cplx> first_row(m, 0.0);
    for (std::size_t k = 1; k < m; ++k) first_row[k] = detail::prefactor_pair(p, form, 0, k, ctx);
    cplx inner = 1.0;
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) inner *= detail::prefactor_pair(p, form, i, j, ctx);

    scaled_value total;
    for (std::size_t k = 1; k < m; ++k) {
        cplx others = 1.0;
        for (std::size_t j = 1; j < m; ++j)
            if (j != k) others *= first_row[j];
        if (others == cplx(0.0)) continue;
        const parameter_point minor = p.without_first_and(k);
        const skew_matrix<cplx> x = pfaffian_kernel(minor, form, ctx);
        const cplx coef = half_over_h * theta(p.u[0] + p.u[k] + p.h, ctx) * others;
        const cplx term = coef * pf_by_elimination(x);
        total.value += (k % 2 == 1) ? term : -term;
        total.scale = std::max(total.scale, std::abs(coef) * pf_max_term(x));
    }
    return inner * total;
}

inline cplx eval_by_row_expansion(const parameter_point& p, pfaffian_form form,
                                  const context& ctx) {
    return eval_by_row_expansion_scaled(p, form, ctx).value;
}

// ---------------------------------------------------------------------------
// Checks

namespace detail {

inline std::string n_suffix(const parameter_point& p) {
    return "[n=" + std::to_string(p.n()) + "]";
}

} // namespace detail

/// Closed form against the state-sum oracle.
inline verification_report check_against_oracle(const parameter_point& p, pfaffian_form form,
                                                const context& ctx, double tol = 1e-9) {
    auto r = make_scaled_report(std::string("formulas.oracle_vs_") + to_string(form) +
                                    detail::n_suffix(p),
                                partition_function_scaled(p, ctx),
                                eval_pfaffian_form_scaled(p, form, ctx), tol, ctx.zero_tolerance);
    r.params = p.to_params();
    return r;
}

inline verification_report check_E_vs_F(const parameter_point& p, const context& ctx,
                                        double tol = 1e-9) {
    auto r = make_scaled_report("formulas.E_vs_F" + detail::n_suffix(p),
                                eval_pfaffian_form_scaled(p, pfaffian_form::sum, ctx),
                                eval_pfaffian_form_scaled(p, pfaffian_form::shifted_sum, ctx), tol,
                                ctx.zero_tolerance);
    r.params = p.to_params();
    return r;
}

/// Elimination route against the row-expansion route.
inline verification_report check_expansion_consistency(const parameter_point& p,
                                                       pfaffian_form form, const context& ctx,
                                                       double tol = 1e-10) {
    auto r = make_scaled_report(std::string("formulas.row_expansion_") + to_string(form) +
                                    detail::n_suffix(p),
                                eval_pfaffian_form_scaled(p, form, ctx),
                                eval_by_row_expansion_scaled(p, form, ctx), tol,
                                ctx.zero_tolerance);
    r.params = p.to_params();
    return r;
}

/// Largest |X_ij + X_ji| relative to max|X|, for a kernel whose two triangles are
/// evaluated independently.
inline verification_report check_kernel_skewness(const parameter_point& p, pfaffian_form form,
                                                 const context& ctx, double tol = 1e-11) {
    const cplx half_over_h = theta(cplx(0.5), ctx) / guarded(theta(p.h, ctx), "[h]", ctx);
    double worst = 0.0, scale = 0.0;
    cplx worst_upper = 0.0, worst_lower = 0.0;
    for (std::size_t i = 0; i < p.sites(); ++i) {
        for (std::size_t j = i + 1; j < p.sites(); ++j) {
            const cplx a = detail::kernel_entry(p, form, i, j, half_over_h, ctx);
            const cplx b = detail::kernel_entry(p, form, j, i, half_over_h, ctx);
            scale = std::max({scale, std::abs(a), std::abs(b)});
            if (std::abs(a + b) >= worst) {
                worst = std::abs(a + b);
                worst_upper = a;
                worst_lower = -b;
            }
        }
    }
    auto r = make_report_with_residual(std::string("formulas.kernel_skew_") + to_string(form) +
                                           detail::n_suffix(p),
                                       worst_upper, worst_lower,
                                       relative_residual(worst, scale, ctx.zero_tolerance), tol);
    r.params = p.to_params();
    return r;
}

/// Reduction of the closed form at its special point against the closed form on 2n-2
/// sites: sum form at u_1 = -u_l with the antipodal factor, shifted form at
/// u_1 = -u_l - 1/2 with the antipodal-half factor.
inline verification_report check_form_reduction(const parameter_point& p, pfaffian_form form,
                                                std::size_t l, const context& ctx,
                                                double tol = 1e-10) {
    detail::check_recursion_index(p, l);
    const bool sum = form == pfaffian_form::sum;
    const parameter_point at = p.with_first(sum ? -p.u[l] : -p.u[l] - 0.5);
    const scaled_value lhs = eval_by_row_expansion_scaled(at, form, ctx);
    const cplx factor = sum ? antipodal_factor(p, l, ctx) : antipodal_half_factor(p, l, ctx);
    const scaled_value rhs = factor * eval_pfaffian_form_scaled(p.without_first_and(l), form, ctx);
    auto r = make_scaled_report(std::string("formulas.reduction_") + to_string(form) +
                                    detail::recursion_suffix(p, l),
                                lhs, rhs, tol, ctx.zero_tolerance);
    r.params = p.to_params();
    return r;
}

/// Quasi-periodicities in u_1 of the sum-form prefactor e1 and Pfaffian factor e2:
///   e1(u_1 + 1) = -e1,  e1(u_1 + tau) = -q^{-(2n-1)} exp(-2 pi i ((2n-1) u_1 + sum_{j>1} u_j - 1/2)) e1
///   e2(u_1 + 1) =  e2,  e2(u_1 + tau) = exp(-2 pi i (h + 1/2)) e2
inline std::array<verification_report, 4> check_factor_quasi_periodicity(const parameter_point& p,
                                                                         const context& ctx,
                                                                         double tol = 1e-10) {
    constexpr double pi = std::numbers::pi;
    const int degree = static_cast<int>(2 * p.n() - 1);
    cplx rest = 0.0;
    for (std::size_t j = 1; j < p.sites(); ++j) rest += p.u[j];

    auto e1 = [&](cplx u1) { return pfaffian_prefactor(p.with_first(u1), pfaffian_form::sum, ctx); };
    auto e2 = [&](cplx u1) {
        const skew_matrix<cplx> x = pfaffian_kernel(p.with_first(u1), pfaffian_form::sum, ctx);
        return scaled_value{pf_by_elimination(x), pf_max_term(x)};
    };
    // e1 has degree 2n-1 with chi(1) = -1, chi(tau) = -exp(-2 pi i (rest - 1/2)).
    auto [a, b] = check_elliptic_polynomial(e1, degree, -1.0,
                                            -std::exp(cplx(0.0, -2.0 * pi) * (rest - 0.5)),
                                            p.u[0], ctx, tol);
    // e2 is elliptic of degree 0 with chi(tau) = exp(-2 pi i (h + 1/2)).
    auto [c, d] = check_elliptic_polynomial(e2, 0, 1.0,
                                            std::exp(cplx(0.0, -2.0 * pi) * (p.h + 0.5)), p.u[0],
                                            ctx, tol);
    const std::string suffix = detail::n_suffix(p);
    a.check_name = "formulas.prefactor_period_1" + suffix;
    b.check_name = "formulas.prefactor_period_tau" + suffix;
    c.check_name = "formulas.pfaffian_factor_period_1" + suffix;
    d.check_name = "formulas.pfaffian_factor_period_tau" + suffix;
    for (auto* r : {&a, &b, &c, &d}) r->params = p.to_params();
    return {a, b, c, d};
}

// ---------------------------------------------------------------------------
// Identity between the two Pfaffians and its h = 0 factorizations. These use
// their own kernels without the [1/2]/[h] normalization.

/// Both sides of
///   prod [u_j + u_i] Pf([u_j - u_i][u_i + u_j + h] / ([u_i + u_j][u_j - u_i + 1/2]))
/// = prod [u_j + u_i + 1/2] Pf([u_j - u_i][u_i + u_j + h] / ([u_i + u_j + 1/2][u_j - u_i + 1/2])).
inline std::pair<scaled_value, scaled_value> pfaffian_pair_sides(const parameter_point& p,
                                                                 const context& ctx) {
    auto side = [&](pfaffian_form form) {
        cplx pre = 1.0;
        for (std::size_t i = 0; i < p.sites(); ++i)
            for (std::size_t j = i + 1; j < p.sites(); ++j)
                pre *= detail::pair_denominator(form, p.u[i], p.u[j], ctx);
        const skew_matrix<cplx> x =
            detail::dense_skew(p.sites(), [&](std::size_t i, std::size_t j) {
                return detail::kernel_entry(p, form, i, j, 1.0, ctx);
            });
        return pre * scaled_value{pf_by_elimination(x), pf_max_term(x)};
    };
    return {side(pfaffian_form::sum), side(pfaffian_form::shifted_sum)};
}

inline verification_report check_pfaffian_pair_identity(const parameter_point& p,
                                                        const context& ctx, double tol = 1e-8) {
    const auto [lhs, rhs] = pfaffian_pair_sides(p, ctx);
    auto r = make_scaled_report("identity.pfaffian_pair" + detail::n_suffix(p), lhs, rhs, tol,
                                ctx.zero_tolerance);
    r.params = p.to_params();
    return r;
}

/// Pf([u_j - u_i]/[u_j - u_i + 1/2]) = prod_{i<j} [u_j - u_i]/[u_j - u_i + 1/2]   (Rosengren)
/// Pf([u_j - u_i][u_i + u_j]/([u_i + u_j + 1/2][u_j - u_i + 1/2])) = prod of the same (Rains)
inline std::pair<verification_report, verification_report>
check_factorizations(const std::vector<cplx>& u, const context& ctx, double tol = 1e-9) {
    if (u.empty() || u.size() % 2 != 0) throw domain_error("factorizations need an even count");
    const std::size_t m = u.size();
    auto ratio = [&](std::size_t i, std::size_t j) {
        return theta(u[j] - u[i], ctx) /
               guarded(theta(u[j] - u[i] + 0.5, ctx), detail::pair_name("[u_j - u_i + 1/2]", i, j),
                       ctx);
    };
    auto rains = [&](std::size_t i, std::size_t j) {
        return ratio(i, j) * theta(u[i] + u[j], ctx) /
               guarded(theta(u[i] + u[j] + 0.5, ctx), detail::pair_name("[u_i + u_j + 1/2]", i, j),
                       ctx);
    };
    auto one = [&](auto&& entry, const char* name) {
        const skew_matrix<cplx> x = detail::dense_skew(m, [&](std::size_t i, std::size_t j) {
            return i == j ? cplx(0.0) : entry(i, j);
        });
        cplx prod = 1.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) prod *= entry(i, j);
        auto r = make_scaled_report(std::string(name) + "[n=" + std::to_string(m / 2) + "]",
                                    {pf_by_elimination(x), pf_max_term(x)}, as_scaled(prod), tol,
                                    ctx.zero_tolerance);
        r.params.u = u;
        return r;
    };
    return {one(ratio, "factorization.rosengren"), one(rains, "factorization.rains")};
}

/// At h = 0 both sides of the Pfaffian-pair identity equal
/// prod_{i<j} [u_j + u_i][u_j - u_i]/[u_j - u_i + 1/2], which is what the two
/// factorizations give after multiplying by the respective prefactors.
inline std::pair<verification_report, verification_report>
check_identity_at_zero_height(const std::vector<cplx>& u, const context& ctx,
                              double tol = 1e-9) {
    const parameter_point p(u, 0.0);
    const auto [lhs, rhs] = pfaffian_pair_sides(p, ctx);
    cplx closed = 1.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            closed *= theta(u[j] + u[i], ctx) * theta(u[j] - u[i], ctx) /
                      theta(u[j] - u[i] + 0.5, ctx);
    const std::string suffix = "[n=" + std::to_string(p.n()) + "]";
    auto a = make_scaled_report("identity.zero_height_sum_side" + suffix, lhs, as_scaled(closed),
                                tol, ctx.zero_tolerance);
    auto b = make_scaled_report("identity.zero_height_shifted_side" + suffix, rhs,
                                as_scaled(closed), tol, ctx.zero_tolerance);
    a.params = b.params = p.to_params();
    return {a, b};
}

// ---------------------------------------------------------------------------
// n = 2: the identity written out term by term and reduced with the addition
// formula. Five reports, in order: full identity, the three quartic
// differences, and the final vanishing three-term relation.

inline std::array<verification_report, 5> check_n2_chain(const std::array<cplx, 4>& u, cplx h,
                                                         const context& ctx, double tol = 1e-10) {
    auto t = [&](cplx z) { return theta(z, ctx); };
    const cplx u1 = u[0], u2 = u[1], u3 = u[2], u4 = u[3];
    const cplx half = t(cplx(0.5));
    const cplx total = t(u1 + u2 + u3 + u4 + 0.5);

    auto g = [&](cplx a, cplx b) {
        return t(b - a) * t(a + b + h) / guarded(t(b - a + 0.5), "[u_j - u_i + 1/2]", ctx);
    };
    // Pairing {12|34}, {13|24}, {14|23}: leading ratio and the four cross factors.
    const cplx lead[3] = {g(u1, u2) * g(u3, u4), g(u1, u3) * g(u2, u4), g(u1, u4) * g(u2, u3)};
    const std::array<cplx, 4> cross[3] = {{u3 + u1, u4 + u1, u3 + u2, u4 + u2},
                                          {u2 + u1, u4 + u1, u3 + u2, u4 + u3},
                                          {u2 + u1, u3 + u1, u4 + u2, u4 + u3}};
    auto shifted = [&](const std::array<cplx, 4>& c) {
        return t(c[0] + 0.5) * t(c[1] + 0.5) * t(c[2] + 0.5) * t(c[3] + 0.5);
    };
    auto plain = [&](const std::array<cplx, 4>& c) { return t(c[0]) * t(c[1]) * t(c[2]) * t(c[3]); };

    std::array<verification_report, 5> out;
    const sample_params params{{u1, u2, u3, u4}, h};

    const cplx lhs_terms[3] = {lead[0] * shifted(cross[0]), -lead[1] * shifted(cross[1]),
                               lead[2] * shifted(cross[2])};
    const cplx rhs_terms[3] = {lead[0] * plain(cross[0]), -lead[1] * plain(cross[1]),
                               lead[2] * plain(cross[2])};
    const cplx lhs = lhs_terms[0] + lhs_terms[1] + lhs_terms[2];
    const cplx rhs = rhs_terms[0] + rhs_terms[1] + rhs_terms[2];
    const double scale = max_magnitude({lhs_terms[0], lhs_terms[1], lhs_terms[2], rhs_terms[0],
                                        rhs_terms[1], rhs_terms[2]});
    out[0] = make_report_with_residual("n2_chain.full_identity", lhs, rhs,
                                       relative_residual(lhs - rhs, scale, ctx.zero_tolerance),
                                       tol);

    // shifted - plain = [1/2][u1+u2+u3+u4+1/2] times two [. + 1/2] factors.
    const std::array<std::pair<cplx, cplx>, 3> tails = {
        std::pair{u2 - u1, u4 - u3}, std::pair{u3 - u1, u4 - u2}, std::pair{u3 - u2, u4 - u1}};
    const char* names[3] = {"n2_chain.quartic_12_34", "n2_chain.quartic_13_24",
                            "n2_chain.quartic_14_23"};
    for (int k = 0; k < 3; ++k) {
        const cplx a = shifted(cross[k]);
        const cplx b = plain(cross[k]);
        const cplx c = half * total * t(tails[k].first + 0.5) * t(tails[k].second + 0.5);
        out[1 + k] = make_report_with_residual(
            names[k], a - b, c, relative_residual(a - b - c, max_magnitude({a, b, c}),
                                                  ctx.zero_tolerance),
            tol);
    }

    auto f = [&](cplx a, cplx b) { return t(b - a) * t(a + b + h); };
    const cplx r1 = f(u1, u2) * f(u3, u4);
    const cplx r2 = f(u1, u3) * f(u2, u4);
    const cplx r3 = f(u1, u4) * f(u2, u3);
    out[4] = make_report_with_residual(
        "n2_chain.three_term", r1 + r3, r2,
        relative_residual(r1 - r2 + r3, max_magnitude({r1, r2, r3}), ctx.zero_tolerance), tol);

    for (auto& r : out) r.params = params;
    return out;
}

} // namespace osface

#endif // OSFACE_FORMULAS_HPP
