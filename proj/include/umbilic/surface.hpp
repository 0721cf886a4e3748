#pragma once

// Induced geometry of an immersed spacelike surface: tangent frame, first
// fundamental form, oriented orthonormal + null normal frames, the normal
// Hodge rotation, and boost gauge transformations.

#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "umbilic/errors.hpp"
#include "umbilic/spacetime.hpp"

namespace umbilic {

struct SurfaceParam {
    double u = 0.0, v = 0.0;
};

// Immersion (u,v) -> chart coordinates. Analytic Jacobian/Hessian are
// optional; central differences with step fd_step are used otherwise.
struct SurfaceModel {
    std::string name;
    std::function<Vec4(double, double)> immersion;
    std::function<bool(double, double)> in_domain;                     // empty = everywhere
    std::function<std::array<Vec4, 2>(double, double)> jacobian;       // dPhi/du, dPhi/dv
    std::function<std::array<Vec4, 3>(double, double)> hessian;        // uu, uv, vv
    double fd_step = 1e-5;
    double u_min = 0.0, u_max = 1.0, v_min = 0.0, v_max = 1.0;  // default grid ranges

    bool analytic_path() const { return jacobian && hessian; }
};

inline bool in_domain(const SurfaceModel& s, double u, double v) {
    return !s.in_domain || s.in_domain(u, v);
}

inline Vec4 surface_point(const SurfaceModel& s, const SpacetimeModel& m, double u, double v) {
    if (!in_domain(s, u, v))
        throw OutOfChart(s.name + ": parameter outside surface domain");
    const Vec4 x = s.immersion(u, v);
    if (!in_chart(m, x)) throw OutOfChart(s.name + ": immersion leaves chart of " + m.name);
    return x;
}

namespace detail {

inline void require_surface_stencil(const SurfaceModel& s, double u, double v, double h) {
    const double us[] = {u - h, u + h, u};
    const double vs[] = {v - h, v + h, v};
    for (double uu : us)
        for (double vv : vs)
            if (!in_domain(s, uu, vv))
                throw StencilOutOfDomain(s.name + ": surface stencil leaves parameter domain");
}

}  // namespace detail

inline std::array<Vec4, 2> surface_jacobian(const SurfaceModel& s, double u, double v) {
    if (s.jacobian) return s.jacobian(u, v);
    const double h = s.fd_step;
    detail::require_surface_stencil(s, u, v, h);
    const Vec4 up = s.immersion(u + h, v), um = s.immersion(u - h, v);
    const Vec4 vp = s.immersion(u, v + h), vm = s.immersion(u, v - h);
    return {(1.0 / (2.0 * h)) * (up - um), (1.0 / (2.0 * h)) * (vp - vm)};
}

inline std::array<Vec4, 3> surface_hessian(const SurfaceModel& s, double u, double v) {
    if (s.hessian) return s.hessian(u, v);
    const double h = s.fd_step;
    detail::require_surface_stencil(s, u, v, h);
    const Vec4 c = s.immersion(u, v);
    const Vec4 up = s.immersion(u + h, v), um = s.immersion(u - h, v);
    const Vec4 vp = s.immersion(u, v + h), vm = s.immersion(u, v - h);
    const Vec4 pp = s.immersion(u + h, v + h), pm = s.immersion(u + h, v - h);
    const Vec4 mp = s.immersion(u - h, v + h), mm = s.immersion(u - h, v - h);
    const double ih2 = 1.0 / (h * h);
    const Vec4 duu = ih2 * (up - 2.0 * c + um);
    const Vec4 dvv = ih2 * (vp - 2.0 * c + vm);
    const Vec4 duv = (0.25 * ih2) * (pp - pm - mp + mm);
    return {duu, duv, dvv};
}

struct TangentFrame {
    Vec4 E1, E2;        // coordinate tangents dPhi/du, dPhi/dv
    Vec4 e1, e2;        // orthonormal tangents
    Sym2 induced;       // first fundamental form in the coordinate basis
    Sym2 on_gram;       // g(e_i, e_j); identity to tolerance
    Mat2 on_from_coord; // e_i = c[i][p] E_p, rows = (e1, e2)
    double orientation = 1.0;
};

struct NormalFrame {
    Vec4 u;  // unit timelike, future-pointing
    Vec4 n;  // unit spacelike, fixed by orientation
    Vec4 l;  // future null, sqrt(2) l = u + n
    Vec4 k;  // future null, sqrt(2) k = u - n, g(l,k) = -1
    double beta = 0.0;  // boost applied relative to the canonical gauge
};

struct FrameBundle {
    double u = 0.0, v = 0.0;
    Vec4 x;
    Metric4 g;
    TangentFrame tan;
    NormalFrame nor;
};

inline constexpr double kTauPositiveDefinite = 1e-10;

inline TangentFrame tangent_frame_at(const SurfaceModel& surf, const SpacetimeModel& model,
                                     double u, double v) {
    const Vec4 x = surface_point(surf, model, u, v);
    const Metric4 g = metric_at(model, x);
    const auto J = surface_jacobian(surf, u, v);

    TangentFrame f;
    f.E1 = J[0];
    f.E2 = J[1];
    f.induced = {ip(g, f.E1, f.E1), ip(g, f.E1, f.E2), ip(g, f.E2, f.E2)};

    const auto eig = eigen_sym2(f.induced);
    const double scale = 1.0 + std::abs(eig.eval1);
    if (eig.eval2 < kTauPositiveDefinite * scale)
        throw NotSpacelike(surf.name + ": induced metric not positive definite");

    // Gram-Schmidt; orientation of (E1, E2) is preserved.
    const double n1 = std::sqrt(f.induced.xx);
    f.e1 = (1.0 / n1) * f.E1;
    const double p = ip(g, f.E2, f.e1);
    const Vec4 w = f.E2 - p * f.e1;
    const double n2 = std::sqrt(ip(g, w, w));
    f.e2 = (1.0 / n2) * w;
    f.on_from_coord = {1.0 / n1, 0.0, -p / (n1 * n2), 1.0 / n2};
    f.on_gram = {ip(g, f.e1, f.e1), ip(g, f.e1, f.e2), ip(g, f.e2, f.e2)};
    f.orientation = 1.0;
    return f;
}

inline NormalFrame boost(const NormalFrame& f, double beta) {
    NormalFrame out;
    const double ch = std::cosh(beta), sh = std::sinh(beta);
    out.u = ch * f.u + sh * f.n;
    out.n = sh * f.u + ch * f.n;
    out.l = std::exp(beta) * f.l;
    out.k = std::exp(-beta) * f.k;
    out.beta = f.beta + beta;
    return out;
}

namespace detail {

// Canonical gauge: u is the normalized normal projection of the sharp of the
// model's future-orientation covector; n completes the frame so that the
// ambient volume form is positive on (e1, e2, u, n).
inline NormalFrame canonical_normal_frame(const SurfaceModel& surf, const SpacetimeModel& model,
                                          const Metric4& g, const TangentFrame& tan,
                                          const Vec4& x) {
    const Vec4 wref = sharp(model.future_covector(x), g);
    auto project_normal = [&](const Vec4& w) {
        return w - ip(g, w, tan.e1) * tan.e1 - ip(g, w, tan.e2) * tan.e2;
    };
    Vec4 up = project_normal(wref);
    const double uu = ip(g, up, up);
    if (!(uu < -kTauPositiveDefinite))
        throw FrameDegeneracy(surf.name + ": future reference projects to a non-timelike normal");
    Vec4 u = (1.0 / std::sqrt(-uu)) * up;
    if (ip(g, u, wref) > 0.0) u = -u;  // future: g(u, future reference) < 0

    // complete with the best-conditioned coordinate direction
    Vec4 n{};
    double best = -1.0;
    for (int d = 0; d < 4; ++d) {
        Vec4 cand{};
        cand[d] = 1.0;
        Vec4 m = project_normal(cand) + ip(g, cand, u) * u;
        const double nn = ip(g, m, m);
        if (nn > best) {
            best = nn;
            n = m;
        }
    }
    if (best < kTauPositiveDefinite)
        throw FrameDegeneracy(surf.name + ": normal space projection lost rank");
    n = (1.0 / std::sqrt(best)) * n;

    // orientation: epsilon(e1, e2, u, n) > 0
    Mat4 cols;
    for (int i = 0; i < 4; ++i) {
        cols(i, 0) = tan.e1[i];
        cols(i, 1) = tan.e2[i];
        cols(i, 2) = u[i];
        cols(i, 3) = n[i];
    }
    if (det4(cols) < 0.0) n = -n;

    NormalFrame f;
    f.u = u;
    f.n = n;
    const double is2 = 1.0 / std::sqrt(2.0);
    f.l = is2 * (u + n);
    f.k = is2 * (u - n);
    f.beta = 0.0;
    return f;
}

}  // namespace detail

inline NormalFrame normal_frame_at(const SurfaceModel& surf, const SpacetimeModel& model,
                                   double u, double v, double beta = 0.0) {
    const Vec4 x = surface_point(surf, model, u, v);
    const Metric4 g = metric_at(model, x);
    const TangentFrame tan = tangent_frame_at(surf, model, u, v);
    NormalFrame f = detail::canonical_normal_frame(surf, model, g, tan, x);
    if (beta != 0.0) f = boost(f, beta);
    return f;
}

inline FrameBundle frames_at(const SurfaceModel& surf, const SpacetimeModel& model, double u,
                             double v, double beta = 0.0) {
    FrameBundle b;
    b.u = u;
    b.v = v;
    b.x = surface_point(surf, model, u, v);
    b.g = metric_at(model, b.x);
    b.tan = tangent_frame_at(surf, model, u, v);
    b.nor = detail::canonical_normal_frame(surf, model, b.g, b.tan, b.x);
    if (beta != 0.0) b.nor = boost(b.nor, beta);
    return b;
}

inline constexpr double kTauFrameAnalytic = 1e-8;
inline constexpr double kTauFrameFd = 1e-4;

// Decompose a normal vector as N = a u + b n.
inline Vec2 normal_components(const Vec4& N, const NormalFrame& f, const Metric4& g) {
    return {-ip(g, N, f.u), ip(g, N, f.n)};
}

// The 90-degree rotation of the normal bundle: star u = n, star n = u,
// star l = l, star k = -k.
inline Vec4 hodge_perp(const Vec4& N, const FrameBundle& fr,
                       double tau_normal = kTauFrameAnalytic) {
    const double scale = norm_e(N);
    const double t1 = std::abs(ip(fr.g, N, fr.tan.e1));
    const double t2 = std::abs(ip(fr.g, N, fr.tan.e2));
    if (t1 > tau_normal * (1.0 + scale) || t2 > tau_normal * (1.0 + scale))
        throw NotNormal("hodge_perp: vector has tangential components");
    const Vec2 ab = normal_components(N, fr.nor, fr.g);
    return ab.x * fr.nor.n + ab.y * fr.nor.u;
}

struct OrientationData {
    Vec4 star_u, star_n, star_l, star_k;
};

inline OrientationData orientation_table(const FrameBundle& fr) {
    return {hodge_perp(fr.nor.u, fr), hodge_perp(fr.nor.n, fr), hodge_perp(fr.nor.l, fr),
            hodge_perp(fr.nor.k, fr)};
}

// Residual of g = -u b(x) u + n(x) n + e1(x) e1 + e2(x) e2, max over components.
inline double frame_completeness_residual(const FrameBundle& fr) {
    const Vec4 ub = flat(fr.nor.u, fr.g), nb = flat(fr.nor.n, fr.g);
    const Vec4 e1b = flat(fr.tan.e1, fr.g), e2b = flat(fr.tan.e2, fr.g);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double rec = -ub[i] * ub[j] + nb[i] * nb[j] + e1b[i] * e1b[j] + e2b[i] * e2b[j];
            worst = std::max(worst, std::abs(rec - fr.g.g(i, j)));
        }
    return worst;
}

}  // namespace umbilic
