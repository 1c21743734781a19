#ifndef OSFACE_REPORT_HPP
#define OSFACE_REPORT_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace osface {

using cplx = std::complex<double>;

/// Coordinates of one sampled check, carried into the report file.
struct sample_params {
    std::vector<cplx> u;
    std::optional<cplx> h;
    double nome = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t sample_index = 0;
};

/// One identity check: both sides, the residual and the verdict.
struct verification_report {
    std::string check_name;
    sample_params params;
    cplx lhs{};
    cplx rhs{};
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::int64_t elapsed_micros = 0;
};

/// Largest modulus among `values`.
inline double max_magnitude(std::initializer_list<cplx> values) {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
}

/// A computed value together with the largest magnitude among the terms that were
/// summed to produce it. For a sum with heavy cancellation the rounding error is
/// set by the terms, not by the result.
struct scaled_value {
    cplx value{};
    double scale = 0.0;
};

/// A value that is not a sum is its own scale.
inline scaled_value as_scaled(cplx z) { return {z, std::abs(z)}; }
inline scaled_value as_scaled(scaled_value z) { return z; }

inline scaled_value operator*(cplx a, scaled_value b) {
    return {a * b.value, std::abs(a) * b.scale};
}

/// |difference| / scale, or |difference| itself when scale is below zero_tolerance.
inline double relative_residual(cplx difference, double scale, double zero_tolerance) {
    const double d = std::abs(difference);
    return scale < zero_tolerance ? d : d / scale;
}

/// Fills lhs/rhs/residual/tolerance/pass. Residual is |lhs - rhs| relative to max(|lhs|, |rhs|).
inline verification_report make_report(std::string name, cplx lhs, cplx rhs, double tolerance,
                                       double zero_tolerance) {
    verification_report r;
    r.check_name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = relative_residual(lhs - rhs, max_magnitude({lhs, rhs}), zero_tolerance);
    r.tolerance = tolerance;
    r.pass = r.residual <= tolerance;
    return r;
}

/// Residual relative to the largest of |lhs|, |rhs| and both term scales.
inline verification_report make_scaled_report(std::string name, scaled_value lhs,
                                              scaled_value rhs, double tolerance,
                                              double zero_tolerance) {
    const double scale = std::max({std::abs(lhs.value), std::abs(rhs.value), lhs.scale, rhs.scale});
    verification_report r;
    r.check_name = std::move(name);
    r.lhs = lhs.value;
    r.rhs = rhs.value;
    r.residual = relative_residual(lhs.value - rhs.value, scale, zero_tolerance);
    r.tolerance = tolerance;
    r.pass = r.residual <= tolerance;
    return r;
}

/// Same, but with an explicit residual (e.g. a max-entry matrix residual).
inline verification_report make_report_with_residual(std::string name, cplx lhs, cplx rhs,
                                                     double residual, double tolerance) {
    verification_report r;
    r.check_name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = r.residual <= tolerance;
    return r;
}

} // namespace osface

#endif // OSFACE_REPORT_HPP
