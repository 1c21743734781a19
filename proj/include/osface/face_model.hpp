#ifndef OSFACE_FACE_MODEL_HPP
#define OSFACE_FACE_MODEL_HPP

// Boltzmann weights of the elliptic free-fermion face model, written as a
// dynamical R-matrix on W_a (x) W_b, and the constant off-diagonal K-matrix.
//
// Basis order |00>, |01>, |10>, |11> with the first label on W_a. Rows are
// outgoing states, columns incoming ones, so R(out, in) = <out| R |in>.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include "errors.hpp"
#include "report.hpp"
#include "theta.hpp"

namespace osface {

using matrix4 = Eigen::Matrix<cplx, 4, 4>;
using matrix8 = Eigen::Matrix<cplx, 8, 8>;
using matrix2 = Eigen::Matrix<cplx, 2, 2>;

/// Total charge of a two-site basis index 2a + b.
constexpr int pair_charge(int index) { return (index >> 1) + (index & 1); }

/// Throws pole_error if |value| is below the context's denominator guard.
inline cplx guarded(cplx value, const std::string& factor, const context& ctx) {
    if (std::abs(value) < ctx.denominator_guard) throw pole_error(factor, std::abs(value));
    return value;
}

struct r_matrix {
    matrix4 weights = matrix4::Zero();

    cplx operator()(int out, int in) const { return weights(out, in); }
};

/// R at spectral difference x = u - v and height h. Only the six charge-conserving
/// slots are written.
inline r_matrix build_r_difference(cplx x, cplx h, const context& ctx) {
    auto t = [&](cplx z) { return theta(z, ctx); };
    const cplx th = guarded(t(h), "[h]", ctx);
    const cplx half = t(cplx(0.5));
    const cplx tx = t(x);

    r_matrix r;
    r.weights(0, 0) = t(x + 0.5);
    r.weights(3, 3) = r.weights(0, 0);
    r.weights(1, 1) = t(h - 0.5) * tx / th;
    r.weights(1, 2) = t(h + x) * half / th;
    r.weights(2, 1) = t(h - x) * half / th;
    r.weights(2, 2) = t(h + 0.5) * tx / th;
    return r;
}

inline r_matrix build_r_matrix(cplx u, cplx v, cplx h, const context& ctx) {
    return build_r_difference(u - v, h, ctx);
}

/// K(u, h) = [[0, 1], [1, 0]]; constant, the arguments are kept for symmetry with R.
inline matrix2 k_matrix(cplx = {}, cplx = {}) {
    matrix2 k;
    k << 0.0, 1.0, 1.0, 0.0;
    return k;
}

// ---------------------------------------------------------------------------
// Embedding of one- and two-site operators into small tensor products. Site 0
// is the leftmost (most significant) factor.

/// Two-site operator acting on factors (first, second) of an m-site space, with
/// `first` playing the role of W_a in the 4x4 basis.
template <int Sites>
Eigen::Matrix<cplx, (1 << Sites), (1 << Sites)> embed_pair(const matrix4& op, int first,
                                                            int second) {
    constexpr int dim = 1 << Sites;
    Eigen::Matrix<cplx, dim, dim> out = Eigen::Matrix<cplx, dim, dim>::Zero();
    const int sa = Sites - 1 - first;
    const int sb = Sites - 1 - second;
    for (int s = 0; s < dim; ++s) {
        const int in = (((s >> sa) & 1) << 1) | ((s >> sb) & 1);
        for (int o = 0; o < 4; ++o) {
            if (op(o, in) == cplx(0.0)) continue;
            int t = s & ~(1 << sa) & ~(1 << sb);
            t |= ((o >> 1) & 1) << sa;
            t |= (o & 1) << sb;
            out(t, s) += op(o, in);
        }
    }
    return out;
}

template <int Sites>
Eigen::Matrix<cplx, (1 << Sites), (1 << Sites)> embed_single(const matrix2& op, int site) {
    constexpr int dim = 1 << Sites;
    Eigen::Matrix<cplx, dim, dim> out = Eigen::Matrix<cplx, dim, dim>::Zero();
    const int shift = Sites - 1 - site;
    for (int s = 0; s < dim; ++s) {
        const int in = (s >> shift) & 1;
        for (int o = 0; o < 2; ++o) {
            if (op(o, in) == cplx(0.0)) continue;
            const int t = (s & ~(1 << shift)) | (o << shift);
            out(t, s) += op(o, in);
        }
    }
    return out;
}

/// max_ij |a_ij - b_ij| / max_ij max(|a_ij|, |b_ij|).
template <class M>
double max_entry_residual(const M& a, const M& b, double zero_tolerance) {
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return relative_residual((a - b).cwiseAbs().maxCoeff(), scale, zero_tolerance);
}

/// Largest single term |a_{i k1} b_{k1 k2} ... z_{km j}| over all entries of a matrix
/// product, i.e. the product taken with max in place of the sum over k.
template <class M>
double max_product_term(std::initializer_list<M> factors) {
    using real_matrix = Eigen::Matrix<double, M::RowsAtCompileTime, M::ColsAtCompileTime>;
    auto it = factors.begin();
    real_matrix acc = it->cwiseAbs();
    for (++it; it != factors.end(); ++it) {
        const real_matrix next = it->cwiseAbs();
        real_matrix out = real_matrix::Zero();
        for (Eigen::Index i = 0; i < acc.rows(); ++i)
            for (Eigen::Index j = 0; j < next.cols(); ++j)
                for (Eigen::Index k = 0; k < acc.cols(); ++k)
                    out(i, j) = std::max(out(i, j), acc(i, k) * next(k, j));
        acc = out;
    }
    return acc.maxCoeff();
}

// Reports for matrix identities carry the entry of largest |lhs - rhs| as lhs/rhs. The
// residual is relative to the largest entry of either side or term_scale.
template <class M>
verification_report matrix_report(std::string name, const M& lhs, const M& rhs, double tol,
                                  double zero_tolerance, double term_scale = 0.0) {
    Eigen::Index r = 0, c = 0;
    const double worst = (lhs - rhs).cwiseAbs().maxCoeff(&r, &c);
    const double scale =
        std::max({lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff(), term_scale});
    return make_report_with_residual(std::move(name), lhs(r, c), rhs(r, c),
                                     relative_residual(worst, scale, zero_tolerance), tol);
}

/// R(u, v | h + 1) = R(u, v | h).
inline verification_report check_h_periodicity(cplx u, cplx v, cplx h, const context& ctx,
                                               double tol = 1e-12) {
    const matrix4 a = build_r_matrix(u, v, h, ctx).weights;
    const matrix4 b = build_r_matrix(u, v, h + 1.0, ctx).weights;
    return matrix_report("face.h_periodicity", a, b, tol, ctx.zero_tolerance);
}

/// R_bc(v,w|h) R_ac(u,w|h+1/2) R_ab(u,v|h) = R_ab(u,v|h+1/2) R_ac(u,w|h) R_bc(v,w|h+1/2)
/// on W_a (x) W_b (x) W_c.
inline verification_report check_dynamical_ybe(cplx u, cplx v, cplx w, cplx h,
                                               const context& ctx, double tol = 1e-10) {
    guarded(theta(h + 0.5, ctx), "[h + 1/2]", ctx);
    auto r = [&](cplx x, cplx y, cplx hh) { return build_r_matrix(x, y, hh, ctx).weights; };
    const matrix8 l1 = embed_pair<3>(r(v, w, h), 1, 2), l2 = embed_pair<3>(r(u, w, h + 0.5), 0, 2),
                  l3 = embed_pair<3>(r(u, v, h), 0, 1);
    const matrix8 r1 = embed_pair<3>(r(u, v, h + 0.5), 0, 1), r2 = embed_pair<3>(r(u, w, h), 0, 2),
                  r3 = embed_pair<3>(r(v, w, h + 0.5), 1, 2);
    const double terms = std::max(max_product_term({l1, l2, l3}), max_product_term({r1, r2, r3}));
    return matrix_report("face.ybe", matrix8(l1 * l2 * l3), matrix8(r1 * r2 * r3), tol,
                         ctx.zero_tolerance, terms);
}

/// Height shifts on the four R factors of the reflection equation, in the order
/// they are written: lhs outer, lhs inner, rhs inner, rhs outer.
struct reflection_shifts {
    double lhs_first = 0.0;
    double lhs_second = 0.0;
    double rhs_first = 0.0;
    double rhs_second = 0.0;

    bool literal() const {
        return lhs_first == 0.0 && lhs_second == 0.0 && rhs_first == 0.0 && rhs_second == 0.0;
    }
    std::string label() const {
        auto s = [](double x) { return x == 0.0 ? std::string("0") : std::string("1/2"); };
        return "(" + s(lhs_first) + "," + s(lhs_second) + "," + s(rhs_first) + "," +
               s(rhs_second) + ")";
    }
};

/// R_ba(u-v) K_b R_ab(v+u) K_a = K_a R_ba(u+v) K_b R_ab(u-v) on W_a (x) W_b, with R read
/// in difference form.
inline verification_report check_reflection_equation(cplx u, cplx v, cplx h, const context& ctx,
                                                     double tol = 1e-10,
                                                     reflection_shifts shifts = {}) {
    auto r_ab = [&](cplx x, double dh) {
        return embed_pair<2>(build_r_difference(x, h + dh, ctx).weights, 0, 1);
    };
    auto r_ba = [&](cplx x, double dh) {
        return embed_pair<2>(build_r_difference(x, h + dh, ctx).weights, 1, 0);
    };
    const matrix4 ka = embed_single<2>(k_matrix(v, h), 0);
    const matrix4 kb = embed_single<2>(k_matrix(u, h), 1);
    const matrix4 l1 = r_ba(u - v, shifts.lhs_first), l3 = r_ab(v + u, shifts.lhs_second);
    const matrix4 r2 = r_ba(u + v, shifts.rhs_first), r4 = r_ab(u - v, shifts.rhs_second);
    const double terms =
        std::max(max_product_term({l1, kb, l3, ka}), max_product_term({ka, r2, kb, r4}));
    std::string name = shifts.literal() ? "face.reflection"
                                        : "face.reflection_variant[" + shifts.label() + "]";
    return matrix_report(std::move(name), matrix4(l1 * kb * l3 * ka), matrix4(ka * r2 * kb * r4),
                         tol, ctx.zero_tolerance, terms);
}

/// All sixteen 0 / +1/2 height-shift patterns except the literal one. By h-periodicity of R
/// a -1/2 shift coincides with +1/2.
inline std::vector<reflection_shifts> shifted_reflection_variants() {
    std::vector<reflection_shifts> out;
    for (int mask = 1; mask < 16; ++mask) {
        out.push_back({(mask & 1) ? 0.5 : 0.0, (mask & 2) ? 0.5 : 0.0, (mask & 4) ? 0.5 : 0.0,
                       (mask & 8) ? 0.5 : 0.0});
    }
    return out;
}

/// Every entry whose in-charge differs from its out-charge must be exactly zero.
inline verification_report check_ice_rule(const r_matrix& r) {
    double worst = 0.0;
    cplx worst_value = 0.0;
    for (int out = 0; out < 4; ++out) {
        for (int in = 0; in < 4; ++in) {
            if (pair_charge(out) == pair_charge(in)) continue;
            if (std::abs(r(out, in)) > worst) {
                worst = std::abs(r(out, in));
                worst_value = r(out, in);
            }
        }
    }
    return make_report_with_residual("face.ice_rule", worst_value, 0.0, worst, 0.0);
}

} // namespace osface

#endif // OSFACE_FACE_MODEL_HPP
