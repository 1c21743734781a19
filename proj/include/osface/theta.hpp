#ifndef OSFACE_THETA_HPP
#define OSFACE_THETA_HPP

// Odd theta function [u] = H(pi i u) with
//
//   H(x) = 2 sinh x prod_{j>=1} (1 - 2 q^{2j} cosh 2x + q^{4j}) (1 - q^{2j}),
//
// normalized so that the real period is 1:
//
//   [u + 1]   = -[u]
//   [u + tau] = -q^{-1} exp(-2 pi i u) [u],     tau = -i log(q) / pi.
//
// The nome q is real in (0, 1), so tau is purely imaginary with positive
// imaginary part. Everything here is templated on the real type so tests can
// run the same product in long double.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <utility>

#include "errors.hpp"
#include "report.hpp"

namespace osface {

template <std::floating_point T>
struct elliptic_context {
    T nome;
    int truncation_order;
    T zero_tolerance = T(1e-12);
    T denominator_guard = T(1e-6);

    /// Smallest N with q^{2N} <= 1e-16.
    static int default_truncation(T q) {
        if (!(q > T(0) && q < T(1))) throw domain_error("nome must lie in (0, 1)");
        const T n = std::ceil(std::log(T(1e-16)) / (T(2) * std::log(q)));
        return n < T(1) ? 1 : static_cast<int>(n);
    }

    explicit elliptic_context(T q) : nome(q), truncation_order(default_truncation(q)) {}

    elliptic_context(T q, int order, T zero_tol, T guard)
        : nome(q), truncation_order(order), zero_tolerance(zero_tol), denominator_guard(guard) {
        validate();
    }

    void validate() const {
        if (!(nome > T(0) && nome < T(1))) throw domain_error("nome must lie in (0, 1)");
        if (truncation_order < 1) throw domain_error("truncation_order must be >= 1");
        if (!(zero_tolerance >= T(0))) throw domain_error("zero_tolerance must be >= 0");
        if (!(denominator_guard > T(0))) throw domain_error("denominator_guard must be > 0");
    }

    /// Imaginary half-period, tau = -i log(q) / pi.
    std::complex<T> tau() const { return {T(0), -std::log(nome) / std::numbers::pi_v<T>}; }
};

using context = elliptic_context<double>;

namespace detail {

template <std::floating_point T>
bool finite(std::complex<T> z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Plain truncated product, no argument reduction.
template <std::floating_point T>
std::complex<T> theta_product(std::complex<T> u, const elliptic_context<T>& ctx) {
    using C = std::complex<T>;
    constexpr T pi = std::numbers::pi_v<T>;
    const C i_pi_u = C(T(0), pi) * u;
    const C c = std::cosh(T(2) * i_pi_u);
    const T q2 = ctx.nome * ctx.nome;
    C acc = T(2) * std::sinh(i_pi_u);
    T qj = T(1);
    for (int j = 1; j <= ctx.truncation_order; ++j) {
        qj *= q2;
        acc *= (T(1) - T(2) * qj * c + qj * qj) * (T(1) - qj);
    }
    return acc;
}

} // namespace detail

/// Arguments with |Im u| above this multiple of Im tau are shifted back into the strip first.
inline constexpr double reduction_threshold = 5.0;

/// u = reduced + k tau with |Im reduced| <= Im tau / 2.
template <std::floating_point T>
struct reduced_argument {
    std::complex<T> reduced;
    long k;
};

template <std::floating_point T>
reduced_argument<T> reduce_imaginary(std::complex<T> u, const elliptic_context<T>& ctx) {
    const std::complex<T> tau = ctx.tau();
    const long k = std::lround(u.imag() / tau.imag());
    return {u - static_cast<T>(k) * tau, k};
}

/// [u]. Throws domain_error on non-finite input.
template <std::floating_point T>
std::complex<T> theta(std::complex<T> u, const elliptic_context<T>& ctx) {
    if (!detail::finite(u)) throw domain_error("theta argument is not finite");
    const std::complex<T> tau = ctx.tau();
    if (std::abs(u.imag()) <= T(reduction_threshold) * tau.imag())
        return detail::theta_product(u, ctx);

    // [w + k tau] = (-1)^k q^{-k^2} exp(-2 pi i k w) [w]
    constexpr T pi = std::numbers::pi_v<T>;
    const auto [w, k] = reduce_imaginary(u, ctx);
    const T kk = static_cast<T>(k);
    const std::complex<T> log_factor(-kk * kk * std::log(ctx.nome) + T(2) * pi * kk * w.imag(),
                                     -T(2) * pi * kk * w.real() + pi * kk);
    return std::exp(log_factor) * detail::theta_product(w, ctx);
}

template <std::floating_point T>
std::complex<T> theta(T u, const elliptic_context<T>& ctx) {
    return theta(std::complex<T>(u, T(0)), ctx);
}

// ---------------------------------------------------------------------------
// Checkable laws. All residuals are relative to the largest participating
// magnitude.

inline verification_report check_oddness(cplx u, const context& ctx, double tol = 1e-10) {
    const cplx tu = theta(u, ctx);
    if (std::abs(tu) < ctx.zero_tolerance) throw degenerate_sample("[u] vanishes at the sample");
    return make_report("theta.oddness", theta(-u, ctx), -tu, tol, ctx.zero_tolerance);
}

/// Real and imaginary quasi-periodicity at u.
inline std::pair<verification_report, verification_report>
check_quasi_periodicity(cplx u, const context& ctx, double tol = 1e-10) {
    const cplx tu = theta(u, ctx);
    if (std::abs(tu) < ctx.zero_tolerance) throw degenerate_sample("[u] vanishes at the sample");
    constexpr double pi = std::numbers::pi;

    const cplx shifted_1 = theta(u + 1.0, ctx);
    verification_report real_shift = make_report_with_residual(
        "theta.quasi_period_1", shifted_1, -tu,
        relative_residual(shifted_1 + tu, max_magnitude({shifted_1, tu}), ctx.zero_tolerance),
        tol);

    const cplx shifted_tau = theta(u + ctx.tau(), ctx);
    const cplx expected = -std::exp(cplx(0.0, -2.0 * pi) * u) / ctx.nome * tu;
    verification_report tau_shift = make_report_with_residual(
        "theta.quasi_period_tau", shifted_tau, expected,
        relative_residual(shifted_tau - expected, max_magnitude({shifted_tau, expected, tu}),
                          ctx.zero_tolerance),
        tol);
    return {real_shift, tau_shift};
}

/// [u - 1/2] = [-u - 1/2].
inline verification_report check_half_shift_symmetry(cplx u, const context& ctx,
                                                     double tol = 1e-10) {
    const cplx lhs = theta(u - 0.5, ctx);
    const cplx rhs = theta(-u - 0.5, ctx);
    if (max_magnitude({lhs, rhs}) < ctx.zero_tolerance)
        throw degenerate_sample("both sides of the half-shift law vanish");
    return make_report("theta.half_shift", lhs, rhs, tol, ctx.zero_tolerance);
}

/// Three-term addition formula. lhs is the first product, rhs the sum of the other two.
inline verification_report check_addition_formula(cplx u, cplx v, cplx x, cplx y,
                                                  const context& ctx, double tol = 1e-10) {
    auto t = [&](cplx z) { return theta(z, ctx); };
    const cplx first = t(u + x) * t(u - x) * t(v + y) * t(v - y);
    const cplx second = t(v + x) * t(v - x) * t(u + y) * t(u - y);
    const cplx third = t(x + y) * t(x - y) * t(u + v) * t(u - v);
    const double scale = max_magnitude({first, second, third});
    if (scale < ctx.zero_tolerance) throw degenerate_sample("all addition-formula terms vanish");
    return make_report_with_residual("theta.addition", first, second + third,
                                     std::abs(first - second - third) / scale, tol);
}

/// Checks f(u + 1) = chi_1 f(u) and f(u + tau) = chi_tau exp(-2 pi i n u - pi i n tau) f(u)
/// for an elliptic polynomial of degree n. f may return a scaled_value, whose term
/// scale then enters the normalization.
template <class F>
std::pair<verification_report, verification_report>
check_elliptic_polynomial(F&& f, int degree, cplx chi_1, cplx chi_tau, cplx u,
                          const context& ctx, double tol = 1e-10) {
    if (degree < 0) throw domain_error("degree must be non-negative");
    const scaled_value fu = as_scaled(f(u));
    if (std::abs(fu.value) < ctx.zero_tolerance) throw degenerate_sample("f vanishes at the sample");
    constexpr double pi = std::numbers::pi;
    const cplx tau = ctx.tau();
    const double n = degree;

    const scaled_value f1 = as_scaled(f(u + 1.0));
    // f(u) itself also participates in both normalizations.
    scaled_value e1 = chi_1 * fu;
    e1.scale = std::max({e1.scale, fu.scale, std::abs(fu.value)});
    verification_report real_shift = make_scaled_report("elliptic_polynomial.period_1", f1, e1,
                                                        tol, ctx.zero_tolerance);

    const scaled_value ft = as_scaled(f(u + tau));
    scaled_value et =
        chi_tau * std::exp(cplx(0.0, -2.0 * pi * n) * u - cplx(0.0, pi * n) * tau) * fu;
    et.scale = std::max({et.scale, fu.scale, std::abs(fu.value)});
    verification_report tau_shift = make_scaled_report("elliptic_polynomial.period_tau", ft, et,
                                                       tol, ctx.zero_tolerance);
    return {real_shift, tau_shift};
}

} // namespace osface

#endif // OSFACE_THETA_HPP
