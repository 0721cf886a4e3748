#pragma once

// Extrinsic geometry of the immersed surface. Everything descends from the
// shape tensor with the sign convention -II(X,Y) = (nabla_X Y)^perp, so that
// a round sphere in a flat slice has K_n = (1/r) gbar with n the outward
// normal and H = (2/r) n.
//
// In the orthonormal tangent basis the second fundamental form K_N and the
// Weingarten operator A_N coincide numerically; both are kept because the
// operator contract A_N = gbar^{-1} K_N is what extends to arbitrary bases.

#include <functional>
#include <optional>

#include "umbilic/surface.hpp"

namespace umbilic {

struct ShapeTensor {
    Sym2 K_l, K_k;              // second fundamental forms along l, k (ON tangent basis)
    std::array<Vec4, 3> II_on;  // II(e1,e1), II(e1,e2), II(e2,e2) as normal 4-vectors
};

struct WeingartenPair {
    Sym2 A_l, A_k;
    SymEigen2 eig_l, eig_k;
    double scale = 1.0;  // 1 + |A_l|_F + |A_k|_F, used by thresholded "= 0" tests
};

struct MeanCurvatureData {
    Vec4 H, star_H;
    double theta_l = 0.0, theta_k = 0.0;  // null expansions tr A_l, tr A_k
    double theta_u = 0.0, theta_n = 0.0;
    double H2 = 0.0;  // g(H, H)
};

struct GData {
    double sigma_l = 0.0, sigma_k = 0.0;  // nonnegative roots of sigma^2_N
    double sigma_u = 0.0, sigma_n = 0.0;
    Vec4 G, star_G;
};

struct CasoratiData {
    Sym2 B;       // -{A_k, A_l}
    double trB = 0.0, detB = 0.0;
    Sym2 J;       // J(X,Y) = sum_i g(II(e_i,X), II(e_i,Y)), computed from II directly
    double duality_residual = 0.0;  // max |B - J| component (ON basis)
};

struct NormalConnectionData {
    double s_u = 0.0, s_v = 0.0;  // s on the coordinate basis (gauge-dependent)
    double ds_coord = 0.0;        // ds(d_u, d_v)
    double ds_on = 0.0;           // ds(e1, e2)
    double beta = 0.0;            // gauge at the point
};

struct ExtrinsicState {
    double u = 0.0, v = 0.0;
    Vec4 x;
    Metric4 g;
    TangentFrame tan;
    NormalFrame nor;
    ShapeTensor shape;
    WeingartenPair pair;
    MeanCurvatureData mean;
    GData gdata;
    CasoratiData casorati;
    std::optional<NormalConnectionData> connection;
};

inline ShapeTensor shape_at(const SurfaceModel& surf, const SpacetimeModel& model,
                            const FrameBundle& fr) {
    const auto hess = surface_hessian(surf, fr.u, fr.v);
    const Christoffel gam = christoffel_at(model, fr.x);

    // (nabla_{E_i} E_j)^a = d_i d_j Phi^a + Gamma^a_bc E_i^b E_j^c
    const Vec4 nab[3] = {
        hess[0] + covariant_correction(gam, fr.tan.E1, fr.tan.E1),
        hess[1] + covariant_correction(gam, fr.tan.E1, fr.tan.E2),
        hess[2] + covariant_correction(gam, fr.tan.E2, fr.tan.E2),
    };

    auto perp = [&](const Vec4& w) {
        return w - ip(fr.g, w, fr.tan.e1) * fr.tan.e1 - ip(fr.g, w, fr.tan.e2) * fr.tan.e2;
    };
    // coordinate-basis II, then push to the ON basis
    const Vec4 II_coord[3] = {-1.0 * perp(nab[0]), -1.0 * perp(nab[1]), -1.0 * perp(nab[2])};

    const Mat2& c = fr.tan.on_from_coord;
    auto on = [&](int i, int j) {
        const double ci[2] = {i == 0 ? c.a : c.c, i == 0 ? c.b : c.d};
        const double cj[2] = {j == 0 ? c.a : c.c, j == 0 ? c.b : c.d};
        // II(E_p, E_q) indexed (0,0)->0, (0,1)=(1,0)->1, (1,1)->2
        Vec4 r{};
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
                const int idx = p + q;  // 0,1,1,2
                r = r + (ci[p] * cj[q]) * II_coord[idx];
            }
        return r;
    };

    ShapeTensor s;
    s.II_on = {on(0, 0), on(0, 1), on(1, 1)};
    auto project = [&](const Vec4& N) {
        return Sym2{ip(fr.g, N, s.II_on[0]), ip(fr.g, N, s.II_on[1]), ip(fr.g, N, s.II_on[2])};
    };
    s.K_l = project(fr.nor.l);
    s.K_k = project(fr.nor.k);
    return s;
}

// A_N = gbar^{-1} K_N; in the ON basis gbar is the identity to frame
// tolerance, so this reduces to the K matrices plus their eigensystems.
inline WeingartenPair weingarten_at(const ShapeTensor& shape, const Sym2& gram) {
    const double d = gram.det();
    if (!(d > kTauPositiveDefinite) || gram.xx <= 0.0)
        throw DegenerateInducedMetric("weingarten_at: induced metric not invertible");
    const Mat2 ginv = (1.0 / d) * Mat2{gram.yy, -gram.xy, -gram.xy, gram.xx};
    WeingartenPair p;
    p.A_l = symmetrize(ginv * shape.K_l.mat());
    p.A_k = symmetrize(ginv * shape.K_k.mat());
    p.eig_l = eigen_sym2(p.A_l);
    p.eig_k = eigen_sym2(p.A_k);
    p.scale = 1.0 + p.A_l.frobenius() + p.A_k.frobenius();
    return p;
}

// Decompose normal N = alpha l + beta k using g(l,k) = -1:
// N = -g(N,k) l - g(N,l) k.
inline Vec2 null_components(const Vec4& N, const NormalFrame& f, const Metric4& g) {
    return {-ip(g, N, f.k), -ip(g, N, f.l)};
}

// Weingarten operator along an arbitrary normal, by linearity.
inline Sym2 weingarten_along(const WeingartenPair& p, const Vec4& N, const NormalFrame& f,
                             const Metric4& g) {
    const Vec2 ab = null_components(N, f, g);
    return ab.x * p.A_l + ab.y * p.A_k;
}

inline Sym2 weingarten_u(const WeingartenPair& p) {
    return (1.0 / std::sqrt(2.0)) * (p.A_l + p.A_k);
}
inline Sym2 weingarten_n(const WeingartenPair& p) {
    return (1.0 / std::sqrt(2.0)) * (p.A_l - p.A_k);
}

inline MeanCurvatureData mean_curvature_at(const WeingartenPair& p, const NormalFrame& f,
                                           const Metric4& g) {
    MeanCurvatureData m;
    m.theta_l = p.A_l.trace();
    m.theta_k = p.A_k.trace();
    m.theta_u = weingarten_u(p).trace();
    m.theta_n = weingarten_n(p).trace();
    m.H = -m.theta_k * f.l - m.theta_l * f.k;
    m.star_H = -m.theta_k * f.l + m.theta_l * f.k;
    m.H2 = ip(g, m.H, m.H);  // = -2 theta_l theta_k
    return m;
}

inline double shear_sq(const Sym2& a) {
    const double t = a.trace();
    return t * t - 4.0 * a.det();
}

inline GData g_field_at(const WeingartenPair& p, const NormalFrame& f) {
    GData o;
    o.sigma_l = std::sqrt(std::max(0.0, shear_sq(p.A_l)));
    o.sigma_k = std::sqrt(std::max(0.0, shear_sq(p.A_k)));
    o.sigma_u = std::sqrt(std::max(0.0, shear_sq(weingarten_u(p))));
    o.sigma_n = std::sqrt(std::max(0.0, shear_sq(weingarten_n(p))));
    o.G = o.sigma_k * f.l + o.sigma_l * f.k;
    o.star_G = o.sigma_k * f.l - o.sigma_l * f.k;
    return o;
}

inline CasoratiData casorati_at(const WeingartenPair& p, const ShapeTensor& shape,
                                const FrameBundle& fr) {
    CasoratiData c;
    c.B = -1.0 * sym_anticommutator(p.A_k, p.A_l);
    c.trB = c.B.trace();
    c.detB = c.B.det();
    // independent route through II itself
    const Vec4& I11 = shape.II_on[0];
    const Vec4& I12 = shape.II_on[1];
    const Vec4& I22 = shape.II_on[2];
    c.J.xx = ip(fr.g, I11, I11) + ip(fr.g, I12, I12);
    c.J.xy = ip(fr.g, I11, I12) + ip(fr.g, I12, I22);
    c.J.yy = ip(fr.g, I12, I12) + ip(fr.g, I22, I22);
    const Sym2 diff = c.B - c.J;
    c.duality_residual = std::max({std::abs(diff.xx), std::abs(diff.xy), std::abs(diff.yy)});
    return c;
}

// g(II, II), contracted with the ON tangent basis and the ambient metric.
inline double shape_norm_sq(const ShapeTensor& shape, const Metric4& g) {
    return ip(g, shape.II_on[0], shape.II_on[0]) + 2.0 * ip(g, shape.II_on[1], shape.II_on[1]) +
           ip(g, shape.II_on[2], shape.II_on[2]);
}

using GaugeFn = std::function<double(double, double)>;

inline GaugeFn constant_gauge(double beta) {
    return [beta](double, double) { return beta; };
}

namespace detail {

// s(E_i) = -g(k, nabla_{E_i} l) at a point, with the frame differentiated by
// central differences along the surface coordinates.
inline Vec2 s_components(const SurfaceModel& surf, const SpacetimeModel& model, double u,
                         double v, const GaugeFn& gauge, double h) {
    const FrameBundle c = frames_at(surf, model, u, v, gauge ? gauge(u, v) : 0.0);
    const Christoffel gam = christoffel_at(model, c.x);
    Vec2 s;
    for (int dir = 0; dir < 2; ++dir) {
        const double du = dir == 0 ? h : 0.0;
        const double dv = dir == 1 ? h : 0.0;
        const FrameBundle fp =
            frames_at(surf, model, u + du, v + dv, gauge ? gauge(u + du, v + dv) : 0.0);
        const FrameBundle fm =
            frames_at(surf, model, u - du, v - dv, gauge ? gauge(u - du, v - dv) : 0.0);
        // the canonical frame must vary continuously across the stencil
        if (std::abs(ip(c.g, fp.nor.l, c.nor.k) + 1.0) > 0.5 ||
            std::abs(ip(c.g, fm.nor.l, c.nor.k) + 1.0) > 0.5)
            throw FrameBranchCut(surf.name + ": normal frame jumps across the s stencil");
        const Vec4 dl = (1.0 / (2.0 * h)) * (fp.nor.l - fm.nor.l);
        const Vec4& E = dir == 0 ? c.tan.E1 : c.tan.E2;
        const Vec4 nabla_l = dl + covariant_correction(gam, E, c.nor.l);
        (dir == 0 ? s.x : s.y) = -ip(c.g, c.nor.k, nabla_l);
    }
    return s;
}

}  // namespace detail

inline constexpr double kDsOuterStep = 1e-3;

inline NormalConnectionData normal_connection_at(const SurfaceModel& surf,
                                                 const SpacetimeModel& model, double u, double v,
                                                 const GaugeFn& gauge = {},
                                                 double outer_step = kDsOuterStep) {
    // frames built from finite-difference Jacobians carry ~1e-11 noise; the
    // inner step must widen there or the nested ds stencil amplifies it past
    // the ds_floor tolerance
    const double h = surf.analytic_path() ? surf.fd_step : std::max(surf.fd_step, 1e-3);
    const double H = outer_step;
    detail::require_surface_stencil(surf, u, v, H + h);
    NormalConnectionData out;
    out.beta = gauge ? gauge(u, v) : 0.0;
    const Vec2 s0 = detail::s_components(surf, model, u, v, gauge, h);
    out.s_u = s0.x;
    out.s_v = s0.y;
    // ds(d_u, d_v) = d_u s_v - d_v s_u  (coordinate basis, no bracket term)
    const double svp = detail::s_components(surf, model, u + H, v, gauge, h).y;
    const double svm = detail::s_components(surf, model, u - H, v, gauge, h).y;
    const double sup = detail::s_components(surf, model, u, v + H, gauge, h).x;
    const double sum = detail::s_components(surf, model, u, v - H, gauge, h).x;
    out.ds_coord = (svp - svm) / (2.0 * H) - (sup - sum) / (2.0 * H);
    const FrameBundle fr = frames_at(surf, model, u, v, out.beta);
    const Mat2& c = fr.tan.on_from_coord;
    out.ds_on = c.det() * out.ds_coord;  // ds(e1,e2) = det(c) ds(d_u,d_v)
    return out;
}

inline ExtrinsicState extrinsic_state_at(const SurfaceModel& surf, const SpacetimeModel& model,
                                         double u, double v, const GaugeFn& gauge = {},
                                         bool with_connection = true) {
    const double beta = gauge ? gauge(u, v) : 0.0;
    const FrameBundle fr = frames_at(surf, model, u, v, beta);
    ExtrinsicState st;
    st.u = u;
    st.v = v;
    st.x = fr.x;
    st.g = fr.g;
    st.tan = fr.tan;
    st.nor = fr.nor;
    st.shape = shape_at(surf, model, fr);
    st.pair = weingarten_at(st.shape, fr.tan.on_gram);
    st.mean = mean_curvature_at(st.pair, fr.nor, fr.g);
    st.gdata = g_field_at(st.pair, fr.nor);
    st.casorati = casorati_at(st.pair, st.shape, fr);
    if (with_connection)
        st.connection = normal_connection_at(surf, model, u, v, gauge);
    return st;
}

inline FrameBundle bundle_of(const ExtrinsicState& st) {
    FrameBundle fr;
    fr.u = st.u;
    fr.v = st.v;
    fr.x = st.x;
    fr.g = st.g;
    fr.tan = st.tan;
    fr.nor = st.nor;
    return fr;
}

}  // namespace umbilic
