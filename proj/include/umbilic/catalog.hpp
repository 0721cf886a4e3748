#pragma once

// Catalog of closed-form spacetimes and surfaces with analytic derivatives
// and known ground truth. These are the fixtures and oracles for everything
// in classify/ and verify/: each expected value can be re-derived from the
// closed forms recorded here.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "umbilic/classify.hpp"

namespace umbilic {

struct ParamMap {
    std::map<std::string, double> values;

    double get(const std::string& key, double fallback) const {
        auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }
    bool has(const std::string& key) const { return values.count(key) > 0; }
};

// ---------------------------------------------------------------------------
// Spacetime models

inline SpacetimeModel make_minkowski() {
    SpacetimeModel m;
    m.name = "minkowski";
    m.metric = [](const Vec4&) {
        Mat4 g;
        g(0, 0) = -1.0;
        g(1, 1) = g(2, 2) = g(3, 3) = 1.0;
        return g;
    };
    m.christoffel_analytic = [](const Vec4&) { return Christoffel{}; };
    m.future_covector = [](const Vec4&) { return Vec4{{{-1.0, 0.0, 0.0, 0.0}}}; };
    m.constant_curvature = 0.0;
    m.conformally_flat = true;
    return m;
}

// (t, r, theta, phi) exterior chart; the horizon r = 2M is inside the chart
// predicate so it surfaces as DegenerateMetric, anything below it as
// OutOfChart.
inline SpacetimeModel make_schwarzschild(double M) {
    SpacetimeModel m;
    m.name = "schwarzschild";
    m.metric = [M](const Vec4& x) {
        const double r = x[1], th = x[2];
        const double f = 1.0 - 2.0 * M / r;
        Mat4 g;
        g(0, 0) = -f;
        g(1, 1) = 1.0 / f;
        g(2, 2) = r * r;
        g(3, 3) = r * r * std::sin(th) * std::sin(th);
        return g;
    };
    m.in_chart = [M](const Vec4& x) {
        return x[1] >= 2.0 * M && x[2] > 0.0 && x[2] < 3.14159265358979323846;
    };
    m.christoffel_analytic = [M](const Vec4& x) {
        const double r = x[1], th = x[2];
        const double f = 1.0 - 2.0 * M / r;
        const double fp = 2.0 * M / (r * r);
        const double st = std::sin(th), ct = std::cos(th);
        Christoffel c;
        c.at(0, 0, 1) = c.at(0, 1, 0) = fp / (2.0 * f);
        c.at(1, 0, 0) = f * fp / 2.0;
        c.at(1, 1, 1) = -fp / (2.0 * f);
        c.at(1, 2, 2) = -r * f;
        c.at(1, 3, 3) = -r * f * st * st;
        c.at(2, 1, 2) = c.at(2, 2, 1) = 1.0 / r;
        c.at(2, 3, 3) = -st * ct;
        c.at(3, 1, 3) = c.at(3, 3, 1) = 1.0 / r;
        c.at(3, 2, 3) = c.at(3, 3, 2) = ct / st;
        return c;
    };
    m.future_covector = [](const Vec4&) { return Vec4{{{-1.0, 0.0, 0.0, 0.0}}}; };
    return m;
}

namespace detail {

// g = a(eta)^2 (-deta^2 + dx^2 + dy^2 + dz^2); w = a'/a drives the
// Christoffel symbols: Gamma^l_mn = w (d^l_m d^0_n + d^l_n d^0_m + eta_mn d^l_0).
inline SpacetimeModel make_conformally_flat(std::string name,
                                            std::function<double(double)> a,
                                            std::function<double(double)> aprime,
                                            std::function<bool(double)> eta_ok) {
    SpacetimeModel m;
    m.name = std::move(name);
    m.metric = [a](const Vec4& x) {
        const double s = a(x[0]);
        const double s2 = s * s;
        Mat4 g;
        g(0, 0) = -s2;
        g(1, 1) = g(2, 2) = g(3, 3) = s2;
        return g;
    };
    m.in_chart = [eta_ok](const Vec4& x) { return eta_ok(x[0]); };
    m.christoffel_analytic = [a, aprime](const Vec4& x) {
        const double w = aprime(x[0]) / a(x[0]);
        const double eta[4] = {-1.0, 1.0, 1.0, 1.0};
        Christoffel c;
        for (int l = 0; l < 4; ++l)
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu) {
                    double v = 0.0;
                    if (l == mu && nu == 0) v += w;
                    if (l == nu && mu == 0) v += w;
                    if (l == 0 && mu == nu) v += w * eta[mu];
                    c.at(l, mu, nu) = v;
                }
        return c;
    };
    m.future_covector = [](const Vec4&) { return Vec4{{{-1.0, 0.0, 0.0, 0.0}}}; };
    m.conformally_flat = true;
    m.ckv = CkvData{
        [](const Vec4&) { return Vec4{{{1.0, 0.0, 0.0, 0.0}}}; },
        [a, aprime](const Vec4& x) { return aprime(x[0]) / a(x[0]); },
    };
    return m;
}

}  // namespace detail

// Conformal chart a(eta) = -1/(H eta), eta < 0, constant curvature K = H^2.
inline SpacetimeModel make_de_sitter(double K) {
    const double H = std::sqrt(K);
    SpacetimeModel m = detail::make_conformally_flat(
        "desitter", [H](double eta) { return -1.0 / (H * eta); },
        [H](double eta) { return 1.0 / (H * eta * eta); },
        [](double eta) { return eta < -0.05; });
    m.constant_curvature = K;
    return m;
}

// a(eta) = 1 + q eta^2: conformally flat, expanding, not a space form.
inline SpacetimeModel make_flrw(double q) {
    return detail::make_conformally_flat(
        "flrw", [q](double eta) { return 1.0 + q * eta * eta; },
        [q](double eta) { return 2.0 * q * eta; }, [](double) { return true; });
}

// R x Sigma with Sigma = (R^3, dx^2 + dy^2 + cosh^2(x) dz^2); static, not
// conformally flat, with the Killing field xi = d_t.
inline SpacetimeModel make_static_product() {
    SpacetimeModel m;
    m.name = "static-product";
    m.metric = [](const Vec4& x) {
        const double c = std::cosh(x[1]);
        Mat4 g;
        g(0, 0) = -1.0;
        g(1, 1) = g(2, 2) = 1.0;
        g(3, 3) = c * c;
        return g;
    };
    m.christoffel_analytic = [](const Vec4& x) {
        Christoffel c;
        const double t = std::tanh(x[1]);
        c.at(3, 1, 3) = c.at(3, 3, 1) = t;
        c.at(1, 3, 3) = -std::sinh(x[1]) * std::cosh(x[1]);
        return c;
    };
    m.future_covector = [](const Vec4&) { return Vec4{{{-1.0, 0.0, 0.0, 0.0}}}; };
    m.ckv = CkvData{
        [](const Vec4&) { return Vec4{{{1.0, 0.0, 0.0, 0.0}}}; },
        [](const Vec4&) { return 0.0; },
    };
    return m;
}

// ---------------------------------------------------------------------------
// Surface models (all with closed-form Jacobians and Hessians)

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPoleMargin = 2e-2;

inline SurfaceModel make_round_sphere(double r, double t0, std::string name = "sphere") {
    SurfaceModel s;
    s.name = std::move(name);
    s.immersion = [r, t0](double th, double ph) {
        return Vec4{{{t0, r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph),
                      r * std::cos(th)}}};
    };
    s.in_domain = [](double th, double) { return th > kPoleMargin && th < kPi - kPoleMargin; };
    s.jacobian = [r](double th, double ph) -> std::array<Vec4, 2> {
        const double st = std::sin(th), ct = std::cos(th);
        const double sp = std::sin(ph), cp = std::cos(ph);
        return {Vec4{{{0.0, r * ct * cp, r * ct * sp, -r * st}}},
                Vec4{{{0.0, -r * st * sp, r * st * cp, 0.0}}}};
    };
    s.hessian = [r](double th, double ph) -> std::array<Vec4, 3> {
        const double st = std::sin(th), ct = std::cos(th);
        const double sp = std::sin(ph), cp = std::cos(ph);
        return {Vec4{{{0.0, -r * st * cp, -r * st * sp, -r * ct}}},
                Vec4{{{0.0, -r * ct * sp, r * ct * cp, 0.0}}},
                Vec4{{{0.0, -r * st * cp, -r * st * sp, 0.0}}}};
    };
    s.u_min = kPoleMargin * 2;
    s.u_max = kPi - kPoleMargin * 2;
    s.v_min = 0.0;
    s.v_max = 2.0 * kPi;
    return s;
}

inline SurfaceModel make_plane() {
    SurfaceModel s;
    s.name = "plane";
    s.immersion = [](double u, double v) { return Vec4{{{0.0, u, v, 0.0}}}; };
    s.jacobian = [](double, double) -> std::array<Vec4, 2> {
        return {Vec4{{{0.0, 1.0, 0.0, 0.0}}}, Vec4{{{0.0, 0.0, 1.0, 0.0}}}};
    };
    s.hessian = [](double, double) -> std::array<Vec4, 3> { return {}; };
    s.u_min = -1.0;
    s.u_max = 1.0;
    s.v_min = -1.0;
    s.v_max = 1.0;
    return s;
}

// (R + a cos th) circle swept around the z axis, in the t = 0 slice.
inline SurfaceModel make_torus(double R, double a) {
    SurfaceModel s;
    s.name = "torus";
    s.immersion = [R, a](double th, double ph) {
        const double w = R + a * std::cos(th);
        return Vec4{{{0.0, w * std::cos(ph), w * std::sin(ph), a * std::sin(th)}}};
    };
    s.jacobian = [R, a](double th, double ph) -> std::array<Vec4, 2> {
        const double st = std::sin(th), ct = std::cos(th);
        const double sp = std::sin(ph), cp = std::cos(ph);
        const double w = R + a * ct;
        return {Vec4{{{0.0, -a * st * cp, -a * st * sp, a * ct}}},
                Vec4{{{0.0, -w * sp, w * cp, 0.0}}}};
    };
    s.hessian = [R, a](double th, double ph) -> std::array<Vec4, 3> {
        const double st = std::sin(th), ct = std::cos(th);
        const double sp = std::sin(ph), cp = std::cos(ph);
        const double w = R + a * ct;
        return {Vec4{{{0.0, -a * ct * cp, -a * ct * sp, -a * st}}},
                Vec4{{{0.0, a * st * sp, -a * st * cp, 0.0}}},
                Vec4{{{0.0, -w * cp, -w * sp, 0.0}}}};
    };
    s.u_min = 0.0;
    s.u_max = 2.0 * kPi;
    s.v_min = 0.0;
    s.v_max = 2.0 * kPi;
    return s;
}

// Standard sphere pushed through a t-x boost; still totally umbilical, but
// the canonical frame is no longer aligned with d_t.
inline SurfaceModel make_boosted_sphere(double r, double speed) {
    const double gamma = 1.0 / std::sqrt(1.0 - speed * speed);
    SurfaceModel base = make_round_sphere(r, 0.0, "boosted-sphere");
    auto boost_vec = [gamma, speed](const Vec4& p) {
        Vec4 q = p;
        q[0] = gamma * (p[0] + speed * p[1]);
        q[1] = gamma * (p[1] + speed * p[0]);
        return q;
    };
    SurfaceModel s = base;
    s.immersion = [base, boost_vec](double u, double v) { return boost_vec(base.immersion(u, v)); };
    s.jacobian = [base, boost_vec](double u, double v) -> std::array<Vec4, 2> {
        const auto J = base.jacobian(u, v);
        return {boost_vec(J[0]), boost_vec(J[1])};
    };
    s.hessian = [base, boost_vec](double u, double v) -> std::array<Vec4, 3> {
        const auto H = base.hessian(u, v);
        return {boost_vec(H[0]), boost_vec(H[1]), boost_vec(H[2])};
    };
    return s;
}

// Graph (f(x,y), x, y, h(x,y)) with f = cf x^2, h = ch x y. The two second
// fundamental forms have different eigenbases, so the null Weingarten
// operators do not commute anywhere with cf, ch != 0, y != 0.
inline SurfaceModel make_graph_noncommuting(double cf, double ch) {
    SurfaceModel s;
    s.name = "graph-noncommuting";
    s.immersion = [cf, ch](double x, double y) {
        return Vec4{{{cf * x * x, x, y, ch * x * y}}};
    };
    s.jacobian = [cf, ch](double x, double y) -> std::array<Vec4, 2> {
        return {Vec4{{{2.0 * cf * x, 1.0, 0.0, ch * y}}}, Vec4{{{0.0, 0.0, 1.0, ch * x}}}};
    };
    s.hessian = [cf, ch](double, double) -> std::array<Vec4, 3> {
        return {Vec4{{{2.0 * cf, 0.0, 0.0, 0.0}}}, Vec4{{{0.0, 0.0, 0.0, ch}}}, Vec4{}};
    };
    s.u_min = 0.1;
    s.u_max = 0.7;
    s.v_min = 0.1;
    s.v_max = 0.7;
    return s;
}

// Coordinate sphere t = t0, r = r0 in the Schwarzschild chart.
inline SurfaceModel make_rsphere(double r0, double t0) {
    SurfaceModel s;
    s.name = "rsphere";
    s.immersion = [r0, t0](double th, double ph) { return Vec4{{{t0, r0, th, ph}}}; };
    s.in_domain = [](double th, double) { return th > kPoleMargin && th < kPi - kPoleMargin; };
    s.jacobian = [](double, double) -> std::array<Vec4, 2> {
        return {Vec4{{{0.0, 0.0, 1.0, 0.0}}}, Vec4{{{0.0, 0.0, 0.0, 1.0}}}};
    };
    s.hessian = [](double, double) -> std::array<Vec4, 3> { return {}; };
    s.u_min = kPoleMargin * 2;
    s.u_max = kPi - kPoleMargin * 2;
    s.v_min = 0.0;
    s.v_max = 2.0 * kPi;
    return s;
}

// Graph z = c sin(u) cos(v) inside the t = 0 slice of the static product;
// like every surface inside a static slice it is ortho-umbilical wherever it
// is not minimal (and it is minimal along u = 0).
inline SurfaceModel make_sigma_graph(double c) {
    SurfaceModel s;
    s.name = "sigma-graph";
    s.immersion = [c](double u, double v) {
        return Vec4{{{0.0, u, v, c * std::sin(u) * std::cos(v)}}};
    };
    s.jacobian = [c](double u, double v) -> std::array<Vec4, 2> {
        return {Vec4{{{0.0, 1.0, 0.0, c * std::cos(u) * std::cos(v)}}},
                Vec4{{{0.0, 0.0, 1.0, -c * std::sin(u) * std::sin(v)}}}};
    };
    s.hessian = [c](double u, double v) -> std::array<Vec4, 3> {
        return {Vec4{{{0.0, 0.0, 0.0, -c * std::sin(u) * std::cos(v)}}},
                Vec4{{{0.0, 0.0, 0.0, -c * std::cos(u) * std::sin(v)}}},
                Vec4{{{0.0, 0.0, 0.0, -c * std::sin(u) * std::cos(v)}}}};
    };
    s.u_min = -1.2;
    s.u_max = 1.2;
    s.v_min = -1.2;
    s.v_max = 1.2;
    return s;
}

// ---------------------------------------------------------------------------
// Catalog

using ExpectFn = std::function<std::optional<std::string>(
    const ExtrinsicState&, const PointClassification&, const UmbilicalResult&)>;

struct Expectation {
    std::string name;
    std::string provenance;  // how the expected value is re-derived
    ExpectFn check;
};

struct SurfaceFamily {
    std::string name;
    std::string params_doc;
    std::function<SurfaceModel(const ParamMap&)> make;
};

struct CatalogEntry {
    std::string name;
    std::string params_doc;
    std::function<SpacetimeModel(const ParamMap&)> make;
    std::vector<SurfaceFamily> surfaces;
    std::map<std::string, std::vector<Expectation>> expectations;
};

namespace detail {

inline Expectation expect_status(UmbilicalStatus want, std::string provenance) {
    return {"umbilical-status", std::move(provenance),
            [want](const ExtrinsicState&, const PointClassification&, const UmbilicalResult& u)
                -> std::optional<std::string> {
                if (u.status != want) return "unexpected umbilical status";
                return std::nullopt;
            }};
}

inline Expectation expect_umbilical_exists(std::string provenance) {
    return {"umbilical-exists", std::move(provenance),
            [](const ExtrinsicState&, const PointClassification&, const UmbilicalResult& u)
                -> std::optional<std::string> {
                if (u.status == UmbilicalStatus::None) return "expected an umbilical direction";
                return std::nullopt;
            }};
}

inline Expectation expect_h_causal(HCausal want, std::string provenance) {
    return {"H-causal-class", std::move(provenance),
            [want](const ExtrinsicState&, const PointClassification& c, const UmbilicalResult&)
                -> std::optional<std::string> {
                if (c.h_causal != want) return "unexpected causal class of H";
                return std::nullopt;
            }};
}

inline Expectation expect_ortho(bool want, std::string provenance) {
    return {"ortho-umbilical", std::move(provenance),
            [want](const ExtrinsicState&, const PointClassification& c, const UmbilicalResult&)
                -> std::optional<std::string> {
                if (c.minimal) return std::nullopt;  // flag not defined there
                if (c.ortho_umbilical.value_or(!want) != want)
                    return "unexpected ortho-umbilical flag";
                return std::nullopt;
            }};
}

inline Expectation expect_totally_geodesic(std::string provenance) {
    return {"totally-geodesic", std::move(provenance),
            [](const ExtrinsicState&, const PointClassification& c, const UmbilicalResult&)
                -> std::optional<std::string> {
                if (!c.totally_geodesic) return "expected a totally geodesic point";
                return std::nullopt;
            }};
}

inline Expectation expect_dim_n1(int want, std::string provenance) {
    return {"dim-first-normal-space", std::move(provenance),
            [want](const ExtrinsicState&, const PointClassification& c, const UmbilicalResult&)
                -> std::optional<std::string> {
                if (c.dim_first_normal_space != want) return "unexpected dim N1";
                return std::nullopt;
            }};
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> cat;

        {
            CatalogEntry e;
            e.name = "minkowski";
            e.params_doc = "";
            e.make = [](const ParamMap&) { return make_minkowski(); };
            e.surfaces = {
                {"plane", "", [](const ParamMap&) { return make_plane(); }},
                {"sphere", "r=2,t0=0",
                 [](const ParamMap& p) { return make_round_sphere(p.get("r", 2.0), p.get("t0", 0.0)); }},
                {"torus", "R=2,a=0.5",
                 [](const ParamMap& p) { return make_torus(p.get("R", 2.0), p.get("a", 0.5)); }},
                {"boosted-sphere", "r=2,v=0.5",
                 [](const ParamMap& p) {
                     return make_boosted_sphere(p.get("r", 2.0), p.get("v", 0.5));
                 }},
                {"graph-noncommuting", "cf=0.1,ch=0.1",
                 [](const ParamMap& p) {
                     return make_graph_noncommuting(p.get("cf", 0.1), p.get("ch", 0.1));
                 }},
            };
            e.expectations["plane"] = {
                detail::expect_totally_geodesic("affine plane in flat space"),
                detail::expect_dim_n1(0, "II = 0 for an affine plane"),
            };
            e.expectations["sphere"] = {
                detail::expect_status(UmbilicalStatus::TotallyUmbilical,
                                      "round sphere: A_n = (1/r) 1, A_u = 0"),
                detail::expect_h_causal(HCausal::Spacelike, "g(H,H) = 4/r^2 > 0"),
            };
            e.expectations["torus"] = {
                detail::expect_status(UmbilicalStatus::UniqueDirection,
                                      "distinct principal curvatures away from kappa1 = kappa2"),
                detail::expect_ortho(true, "surface inside a static slice"),
            };
            e.expectations["boosted-sphere"] = {
                detail::expect_status(UmbilicalStatus::TotallyUmbilical,
                                      "boost is an isometry of the round sphere"),
            };
            e.expectations["graph-noncommuting"] = {
                detail::expect_status(UmbilicalStatus::None,
                                      "independent Hessian eigenbases; confirmed by the "
                                      "normal-circle scan"),
                detail::expect_dim_n1(2, "two independent normal-valued Hessians"),
                detail::expect_ortho(false, "A_{*H} != 0 by direct evaluation"),
            };
            cat.push_back(std::move(e));
        }

        {
            CatalogEntry e;
            e.name = "schwarzschild";
            e.params_doc = "M=1";
            e.make = [](const ParamMap& p) { return make_schwarzschild(p.get("M", 1.0)); };
            e.surfaces = {
                {"rsphere", "r=4,t0=0",
                 [](const ParamMap& p) { return make_rsphere(p.get("r", 4.0), p.get("t0", 0.0)); }},
            };
            e.expectations["rsphere"] = {
                detail::expect_status(UmbilicalStatus::TotallyUmbilical,
                                      "round spheres in spherical symmetry"),
                detail::expect_h_causal(HCausal::Spacelike,
                                        "g(H,H) = 4(1 - 2M/r)/r^2 > 0 outside the horizon"),
            };
            cat.push_back(std::move(e));
        }

        {
            CatalogEntry e;
            e.name = "desitter";
            e.params_doc = "K=0.04";
            e.make = [](const ParamMap& p) { return make_de_sitter(p.get("K", 0.04)); };
            e.surfaces = {
                {"slice-sphere", "rho=1,eta0=-5",
                 [](const ParamMap& p) {
                     return make_round_sphere(p.get("rho", 1.0), p.get("eta0", -5.0),
                                              "slice-sphere");
                 }},
            };
            e.expectations["slice-sphere"] = {
                detail::expect_status(UmbilicalStatus::TotallyUmbilical,
                                      "spheres in conformally flat slices"),
            };
            cat.push_back(std::move(e));
        }

        {
            CatalogEntry e;
            e.name = "flrw";
            e.params_doc = "q=0.25";
            e.make = [](const ParamMap& p) { return make_flrw(p.get("q", 0.25)); };
            e.surfaces = {
                {"slice-sphere", "rho=1,eta0=0.8",
                 [](const ParamMap& p) {
                     return make_round_sphere(p.get("rho", 1.0), p.get("eta0", 0.8),
                                              "slice-sphere");
                 }},
                {"slice-torus", "R=2,a=0.5,eta0=0.8",
                 [](const ParamMap& p) {
                     SurfaceModel s = make_torus(p.get("R", 2.0), p.get("a", 0.5));
                     const double eta0 = p.get("eta0", 0.8);
                     SurfaceModel base = s;
                     s.name = "slice-torus";
                     s.immersion = [base, eta0](double u, double v) {
                         Vec4 x = base.immersion(u, v);
                         x[0] = eta0;
                         return x;
                     };
                     return s;
                 }},
            };
            e.expectations["slice-sphere"] = {
                detail::expect_status(UmbilicalStatus::TotallyUmbilical,
                                      "spheres in conformally flat slices"),
            };
            e.expectations["slice-torus"] = {
                detail::expect_umbilical_exists(
                    "A_u proportional to 1 on umbilical slices, so the operators commute"),
            };
            cat.push_back(std::move(e));
        }

        {
            CatalogEntry e;
            e.name = "static-product";
            e.params_doc = "";
            e.make = [](const ParamMap&) { return make_static_product(); };
            e.surfaces = {
                {"sigma-graph", "c=0.3",
                 [](const ParamMap& p) { return make_sigma_graph(p.get("c", 0.3)); }},
            };
            e.expectations["sigma-graph"] = {
                detail::expect_ortho(true, "surfaces inside a static slice are ortho-umbilical"),
                detail::expect_umbilical_exists("A_u = 0 commutes with everything"),
            };
            cat.push_back(std::move(e));
        }

        return cat;
    }();
    return entries;
}

inline const CatalogEntry& find_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw ConfigError("unknown spacetime '" + name + "'");
}

inline const SurfaceFamily& find_surface(const CatalogEntry& e, const std::string& name) {
    for (const auto& s : e.surfaces)
        if (s.name == name) return s;
    throw ConfigError("unknown surface '" + name + "' for spacetime '" + e.name + "'");
}

// ---------------------------------------------------------------------------
// Synthetic operator-level fixtures. These bypass the geometry entirely and
// feed the classification machinery directly; each mode satisfies its
// defining algebraic property by construction.

enum class SynthMode {
    Commuting,
    CommutingNonUmbilical,        // commuting with a guaranteed eigenvalue gap
    NonCommuting,                 // commutator bounded away from zero
    MinimalNonCommutingBIdentity, // trace-free pair, B proportional to 1, H = 0
    NullHZeroB,                   // A_l = 0, tr A_k != 0: g(H,H) = 0, B = 0
};

inline Sym2 rotated_diag(double d1, double d2, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    // R diag(d1,d2) R^T
    return {c * c * d1 + s * s * d2, c * s * (d1 - d2), s * s * d1 + c * c * d2};
}

inline WeingartenPair make_pair(const Sym2& A_l, const Sym2& A_k) {
    WeingartenPair p;
    p.A_l = A_l;
    p.A_k = A_k;
    p.eig_l = eigen_sym2(A_l);
    p.eig_k = eigen_sym2(A_k);
    p.scale = 1.0 + A_l.frobenius() + A_k.frobenius();
    return p;
}

inline WeingartenPair synthetic_weingarten(std::uint64_t seed, SynthMode mode) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::uniform_real_distribution<double> angle(0.0, kPi);
    switch (mode) {
        case SynthMode::Commuting: {
            const double th = angle(rng);
            return make_pair(rotated_diag(uni(rng), uni(rng), th),
                             rotated_diag(uni(rng), uni(rng), th));
        }
        case SynthMode::CommutingNonUmbilical: {
            const double th = angle(rng);
            double n1 = uni(rng), n2 = uni(rng);
            if (std::abs(n1 - n2) < 0.3) n2 = n1 + (n2 >= n1 ? 0.3 : -0.3);
            return make_pair(rotated_diag(n1, n2, th),
                             rotated_diag(uni(rng), uni(rng), th));
        }
        case SynthMode::NonCommuting: {
            const double th = angle(rng);
            std::uniform_real_distribution<double> dth(0.25, kPi / 2.0 - 0.25);
            double l1 = uni(rng), l2 = uni(rng), n1 = uni(rng), n2 = uni(rng);
            if (std::abs(n1 - n2) < 0.4) n2 = n1 + (n2 >= n1 ? 0.4 : -0.4);
            if (std::abs(l1 - l2) < 0.4) l2 = l1 + (l2 >= l1 ? 0.4 : -0.4);
            return make_pair(rotated_diag(n1, n2, th), rotated_diag(l1, l2, th + dth(rng)));
        }
        case SynthMode::MinimalNonCommutingBIdentity: {
            // trace-free symmetric pair with non-parallel deviators; the
            // anticommutator of such a pair is always proportional to 1
            const double th = angle(rng);
            std::uniform_real_distribution<double> dth(0.3, kPi / 2.0 - 0.3);
            std::uniform_real_distribution<double> amp(0.5, 2.0);
            const double a = amp(rng), b = amp(rng);
            return make_pair(rotated_diag(a, -a, th), rotated_diag(b, -b, th + dth(rng)));
        }
        case SynthMode::NullHZeroB: {
            std::uniform_real_distribution<double> amp(0.5, 2.0);
            const double tr = amp(rng);   // nonzero expansion: H = -tr(A_k) l != 0
            const double dev = amp(rng);  // nonzero deviator: not totally umbilical
            const Sym2 A_k = rotated_diag(0.5 * tr + dev, 0.5 * tr - dev, angle(rng));
            return make_pair(Sym2{}, A_k);
        }
    }
    return make_pair(Sym2{}, Sym2{});
}

// Wrap an operator pair in a flat-space frame so classify_point and friends
// can run on it.
inline ExtrinsicState synthetic_state(const WeingartenPair& pair) {
    ExtrinsicState st;
    const SpacetimeModel mink = make_minkowski();
    st.x = Vec4{};
    st.g = metric_at(mink, st.x);
    st.tan.E1 = st.tan.e1 = Vec4{{{0.0, 1.0, 0.0, 0.0}}};
    st.tan.E2 = st.tan.e2 = Vec4{{{0.0, 0.0, 1.0, 0.0}}};
    st.tan.induced = st.tan.on_gram = Sym2::identity();
    st.tan.on_from_coord = Mat2::identity();
    st.nor.u = Vec4{{{1.0, 0.0, 0.0, 0.0}}};
    st.nor.n = Vec4{{{0.0, 0.0, 0.0, 1.0}}};
    const double is2 = 1.0 / std::sqrt(2.0);
    st.nor.l = is2 * (st.nor.u + st.nor.n);
    st.nor.k = is2 * (st.nor.u - st.nor.n);
    st.pair = pair;
    st.shape.K_l = pair.A_l;
    st.shape.K_k = pair.A_k;
    auto ii = [&](double kl, double kk) { return -kk * st.nor.l - kl * st.nor.k; };
    st.shape.II_on = {ii(pair.A_l.xx, pair.A_k.xx), ii(pair.A_l.xy, pair.A_k.xy),
                      ii(pair.A_l.yy, pair.A_k.yy)};
    st.mean = mean_curvature_at(pair, st.nor, st.g);
    st.gdata = g_field_at(pair, st.nor);
    const FrameBundle fr = bundle_of(st);
    st.casorati = casorati_at(pair, st.shape, fr);
    return st;
}

}  // namespace umbilic
