#pragma once

// Point-wise ambient geometry of a 4-dimensional Lorentzian manifold with
// signature (-,+,+,+): metric, Christoffel symbols, Riemann/Ricci/scalar/Weyl
// curvature, and the musical isomorphisms.
//
// Sign conventions (see docs/conventions.md for the full table):
//   Gamma^a_bc = (1/2) g^ad (d_b g_dc + d_c g_db - d_d g_bc)
//   R^a_bcd    = d_c Gamma^a_db - d_d Gamma^a_cb
//                + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
//   R_abcd     = g_ae R^e_bcd          (so R_abcd = K (g_ac g_bd - g_ad g_bc)
//                                       on a space form of curvature K)
//   Ric_bd     = g^ac R_abcd,  S = g^bd Ric_bd
//   C_abcd     = R_abcd + (S/6)(g_ac g_bd - g_ad g_bc)
//                - (1/2)(Ric_ac g_bd - Ric_ad g_bc - Ric_bc g_ad + Ric_bd g_ac)

#include <functional>
#include <optional>
#include <string>

#include "umbilic/errors.hpp"
#include "umbilic/linalg.hpp"

namespace umbilic {

struct Metric4 {
    Mat4 g;
    Mat4 ginv;
    double det = 0.0;
};

// g(a, b)
inline double ip(const Metric4& g, const Vec4& a, const Vec4& b) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += g.g(i, j) * a[i] * b[j];
    return s;
}

inline Vec4 flat(const Vec4& v, const Metric4& g) { return g.g * v; }
inline Vec4 sharp(const Vec4& w, const Metric4& g) { return g.ginv * w; }

struct Christoffel {
    std::array<double, 64> v{};
    double& at(int a, int b, int c) { return v[(a * 4 + b) * 4 + c]; }
    double at(int a, int b, int c) const { return v[(a * 4 + b) * 4 + c]; }
};

// Fully covariant R_abcd.
struct Riemann {
    std::array<double, 256> v{};
    double& at(int a, int b, int c, int d) { return v[((a * 4 + b) * 4 + c) * 4 + d]; }
    double at(int a, int b, int c, int d) const { return v[((a * 4 + b) * 4 + c) * 4 + d]; }

    double contract(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) const {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) {
            if (a[i] == 0.0) continue;
            for (int j = 0; j < 4; ++j) {
                if (b[j] == 0.0) continue;
                for (int k = 0; k < 4; ++k) {
                    if (c[k] == 0.0) continue;
                    for (int l = 0; l < 4; ++l)
                        s += at(i, j, k, l) * a[i] * b[j] * c[k] * d[l];
                }
            }
        }
        return s;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
};

struct CurvatureBundle {
    Christoffel christoffel;
    Riemann riemann;   // R_abcd
    Mat4 ricci;        // Ric_ab
    double scalar = 0.0;
    Riemann weyl;      // C_abcd
};

enum class DiffStrategy { Analytic, FiniteDifference };

struct CkvData {
    std::function<Vec4(const Vec4&)> xi;     // conformal Killing field
    std::function<double(const Vec4&)> phi;  // conformal factor
};

// Immutable description of a spacetime chart. All evaluators are pure, so a
// model can be shared across threads freely.
struct SpacetimeModel {
    std::string name;
    std::function<Mat4(const Vec4&)> metric;
    std::function<Christoffel(const Vec4&)> christoffel_analytic;  // may be empty
    std::function<bool(const Vec4&)> in_chart;                     // may be empty = everywhere
    std::function<Vec4(const Vec4&)> future_covector;  // sharp of it is future timelike
    DiffStrategy strategy = DiffStrategy::Analytic;
    double fd_step = 1e-5;
    std::optional<double> constant_curvature;  // set for space forms
    bool conformally_flat = false;
    std::optional<CkvData> ckv;

    bool analytic_path() const {
        return strategy == DiffStrategy::Analytic && static_cast<bool>(christoffel_analytic);
    }
};

inline bool in_chart(const SpacetimeModel& m, const Vec4& x) {
    return !m.in_chart || m.in_chart(x);
}

inline constexpr double kDegenerateDet = 1e-12;

inline Metric4 metric_at(const SpacetimeModel& model, const Vec4& x) {
    if (!in_chart(model, x)) throw OutOfChart(model.name + ": point outside chart domain");
    Mat4 g = model.metric(x);
    for (int i = 0; i < 4; ++i)  // constructed symmetric; enforce exactly
        for (int j = i + 1; j < 4; ++j) {
            const double s = 0.5 * (g(i, j) + g(j, i));
            g(i, j) = g(j, i) = s;
        }
    if (!finite(g)) throw DegenerateMetric(model.name + ": non-finite metric component");
    const double det = det4(g);
    if (std::abs(det) < kDegenerateDet)
        throw DegenerateMetric(model.name + ": |det g| below threshold");
    Metric4 out;
    out.g = g;
    out.det = det;
    out.ginv = inverse4(g);
    return out;
}

namespace detail {

inline void require_stencil(const SpacetimeModel& m, const Vec4& x, double h) {
    for (int d = 0; d < 4; ++d) {
        for (double s : {-h, h}) {
            Vec4 p = x;
            p[d] += s;
            if (!in_chart(m, p))
                throw StencilOutOfDomain(m.name + ": finite-difference stencil leaves chart");
        }
    }
}

inline Christoffel christoffel_fd(const SpacetimeModel& model, const Vec4& x) {
    const double h = model.fd_step;
    require_stencil(model, x, h);
    const Metric4 g0 = metric_at(model, x);
    // dg[d](a,b) = d_d g_ab
    std::array<Mat4, 4> dg;
    for (int d = 0; d < 4; ++d) {
        Vec4 xp = x, xm = x;
        xp[d] += h;
        xm[d] -= h;
        const Mat4 gp = metric_at(model, xp).g;
        const Mat4 gm = metric_at(model, xm).g;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) dg[d](a, b) = (gp(a, b) - gm(a, b)) / (2.0 * h);
    }
    Christoffel gam;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = b; c < 4; ++c) {
                double s = 0.0;
                for (int d = 0; d < 4; ++d)
                    s += g0.ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
                gam.at(a, b, c) = gam.at(a, c, b) = 0.5 * s;
            }
    return gam;
}

}  // namespace detail

inline Christoffel christoffel_at(const SpacetimeModel& model, const Vec4& x) {
    if (!in_chart(model, x)) throw OutOfChart(model.name + ": point outside chart domain");
    if (model.analytic_path()) return model.christoffel_analytic(x);
    return detail::christoffel_fd(model, x);
}

// Covariant derivative of a vector field given its coordinate derivative:
// (nabla_X V)^a = X^b d_b V^a + Gamma^a_bc X^b V^c.
inline Vec4 covariant_correction(const Christoffel& gam, const Vec4& X, const Vec4& V) {
    Vec4 r;
    for (int a = 0; a < 4; ++a) {
        double s = 0.0;
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) s += gam.at(a, b, c) * X[b] * V[c];
        r[a] = s;
    }
    return r;
}

inline CurvatureBundle curvature_at(const SpacetimeModel& model, const Vec4& x) {
    const double h = model.fd_step;
    detail::require_stencil(model, x, h);
    const Metric4 g = metric_at(model, x);
    const Christoffel gam = christoffel_at(model, x);

    // dgam[c].at(a,d,b) = d_c Gamma^a_db; one Richardson level keeps the
    // truncation error harmless where the symbols vary steeply (coordinate
    // poles)
    std::array<Christoffel, 4> dgam;
    for (int c = 0; c < 4; ++c) {
        auto central = [&](double step) {
            Vec4 xp = x, xm = x;
            xp[c] += step;
            xm[c] -= step;
            const Christoffel gp = christoffel_at(model, xp);
            const Christoffel gm = christoffel_at(model, xm);
            Christoffel d;
            for (std::size_t i = 0; i < gp.v.size(); ++i)
                d.v[i] = (gp.v[i] - gm.v[i]) / (2.0 * step);
            return d;
        };
        const Christoffel coarse = central(h);
        const Christoffel fine = central(0.5 * h);
        for (std::size_t i = 0; i < coarse.v.size(); ++i)
            dgam[c].v[i] = (4.0 * fine.v[i] - coarse.v[i]) / 3.0;
    }

    CurvatureBundle out;
    out.christoffel = gam;

    // R^a_bcd, lowered on the fly
    std::array<double, 256> rup{};
    auto up = [&rup](int a, int b, int c, int d) -> double& {
        return rup[((a * 4 + b) * 4 + c) * 4 + d];
    };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double s = dgam[c].at(a, d, b) - dgam[d].at(a, c, b);
                    for (int e = 0; e < 4; ++e)
                        s += gam.at(a, c, e) * gam.at(e, d, b) -
                             gam.at(a, d, e) * gam.at(e, c, b);
                    up(a, b, c, d) = s;
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double s = 0.0;
                    for (int e = 0; e < 4; ++e) s += g.g(a, e) * up(e, b, c, d);
                    out.riemann.at(a, b, c, d) = s;
                }

    for (int b = 0; b < 4; ++b)
        for (int d = 0; d < 4; ++d) {
            double s = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c) s += g.ginv(a, c) * out.riemann.at(a, b, c, d);
            out.ricci(b, d) = s;
        }
    out.scalar = 0.0;
    for (int b = 0; b < 4; ++b)
        for (int d = 0; d < 4; ++d) out.scalar += g.ginv(b, d) * out.ricci(b, d);

    const auto& R = out.riemann;
    const auto& Ric = out.ricci;
    const double S = out.scalar;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    const double gg = g.g(a, c) * g.g(b, d) - g.g(a, d) * g.g(b, c);
                    const double ric_terms = Ric(a, c) * g.g(b, d) - Ric(a, d) * g.g(b, c) -
                                             Ric(b, c) * g.g(a, d) + Ric(b, d) * g.g(a, c);
                    out.weyl.at(a, b, c, d) =
                        R.at(a, b, c, d) + (S / 6.0) * gg - 0.5 * ric_terms;
                }
    return out;
}

// Largest absolute value over all single contractions of a (0,4) tensor with
// g^{-1}; the Weyl tensor must drive this to zero.
inline double max_trace_residual(const Riemann& t, const Metric4& g) {
    double worst = 0.0;
    // contract slot pairs (0,2), (0,3), (1,2), (1,3), (0,1), (2,3)
    for (int p = 0; p < 6; ++p) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        const double w = g.ginv(a, b);
                        switch (p) {
                            case 0: s += w * t.at(a, i, b, j); break;
                            case 1: s += w * t.at(a, i, j, b); break;
                            case 2: s += w * t.at(i, a, b, j); break;
                            case 3: s += w * t.at(i, a, j, b); break;
                            case 4: s += w * t.at(a, b, i, j); break;
                            case 5: s += w * t.at(i, j, a, b); break;
                        }
                    }
                worst = std::max(worst, std::abs(s));
            }
    }
    return worst;
}

}  // namespace umbilic
