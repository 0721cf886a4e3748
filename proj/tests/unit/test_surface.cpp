#include <random>

#include "test_common.hpp"

using namespace umbilic;
using testutil::vec;

namespace {

SurfaceModel null_tangent_surface() {
    // d_u Phi = d_t + d_x is null, so the induced metric degenerates
    SurfaceModel s;
    s.name = "null-tangent";
    s.immersion = [](double u, double v) { return vec(u, u, v, 0.0); };
    s.jacobian = [](double, double) -> std::array<Vec4, 2> {
        return {vec(1.0, 1.0, 0.0, 0.0), vec(0.0, 0.0, 1.0, 0.0)};
    };
    s.hessian = [](double, double) -> std::array<Vec4, 3> { return {}; };
    return s;
}

}  // namespace

TEST_CASE("tangent frames") {
    const auto mink = make_minkowski();
    SECTION("round sphere induced metric") {
        const double r = 2.0;
        const auto sph = make_round_sphere(r, 0.0);
        const double th = 1.1, ph = 0.7;
        const TangentFrame f = tangent_frame_at(sph, mink, th, ph);
        REQUIRE(std::abs(f.induced.xx - r * r) < 1e-12);
        REQUIRE(std::abs(f.induced.xy) < 1e-12);
        REQUIRE(std::abs(f.induced.yy - r * r * std::sin(th) * std::sin(th)) < 1e-12);
        REQUIRE(std::abs(f.on_gram.xx - 1.0) < 1e-13);
        REQUIRE(std::abs(f.on_gram.xy) < 1e-13);
        REQUIRE(std::abs(f.on_gram.yy - 1.0) < 1e-13);
    }
    SECTION("schwarzschild r-sphere induced metric") {
        const auto schw = make_schwarzschild(1.0);
        const double r = 4.0;
        const auto sph = make_rsphere(r, 0.0);
        const double th = 0.9;
        const TangentFrame f = tangent_frame_at(sph, schw, th, 0.3);
        REQUIRE(std::abs(f.induced.xx - r * r) < 1e-12);
        REQUIRE(std::abs(f.induced.yy - r * r * std::sin(th) * std::sin(th)) < 1e-12);
    }
    SECTION("null tangent rejected") {
        REQUIRE_THROWS_AS(tangent_frame_at(null_tangent_surface(), mink, 0.0, 0.0),
                          NotSpacelike);
    }
    SECTION("finite-difference stencil respects the parameter domain") {
        auto sph = testutil::fd_copy(make_round_sphere(2.0, 0.0));
        REQUIRE_THROWS_AS(surface_jacobian(sph, kPoleMargin + 0.5e-5, 0.3),
                          StencilOutOfDomain);
    }
}

TEST_CASE("frame construction guards") {
    const auto sph = make_round_sphere(2.0, 0.0);
    SECTION("a spacelike orientation reference cannot define a frame") {
        SpacetimeModel broken = make_minkowski();
        broken.future_covector = [](const Vec4&) { return testutil::vec(0.0, 1.0, 0.0, 0.0); };
        REQUIRE_THROWS_AS(normal_frame_at(sph, broken, 1.1, 0.7), FrameDegeneracy);
    }
    SECTION("a discontinuous orientation reference trips the branch-cut check") {
        SpacetimeModel broken = make_minkowski();
        broken.future_covector = [](const Vec4& x) {
            // time orientation flips across x = 1.1 (crosses the s stencil of
            // the point below)
            const double s = x[3] > 1.1 ? 1.0 : -1.0;
            return testutil::vec(s, 0.0, 0.0, 0.0);
        };
        // theta just below the flip plane z = r cos(theta) = 1.1
        const double th = std::acos(1.1 / 2.0);
        REQUIRE_THROWS_AS(normal_connection_at(sph, broken, th + 1e-6, 0.7),
                          FrameBranchCut);
    }
}

TEST_CASE("normal frames") {
    const auto mink = make_minkowski();
    const auto sph = make_round_sphere(2.0, 0.0);
    const double th = 1.1, ph = 0.7;

    SECTION("minkowski sphere canonical frame") {
        const NormalFrame f = normal_frame_at(sph, mink, th, ph);
        REQUIRE(testutil::max_abs_diff(f.u, vec(1.0, 0.0, 0.0, 0.0)) < 1e-12);
        const Vec4 radial = vec(0.0, std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                std::cos(th));
        REQUIRE(testutil::max_abs_diff(f.n, radial) < 1e-12);
        const double is2 = 1.0 / std::sqrt(2.0);
        REQUIRE(testutil::max_abs_diff(f.l, is2 * (f.u + f.n)) < 1e-15);
        REQUIRE(testutil::max_abs_diff(f.k, is2 * (f.u - f.n)) < 1e-15);
    }
    SECTION("frame normalization invariants across the catalog") {
        struct Case {
            SpacetimeModel m;
            SurfaceModel s;
            double u, v;
        };
        const std::vector<Case> cases = {
            {make_minkowski(), make_torus(2.0, 0.5), 1.0, 0.5},
            {make_minkowski(), make_boosted_sphere(2.0, 0.5), 1.0, 0.5},
            {make_minkowski(), make_graph_noncommuting(0.1, 0.1), 0.3, 0.4},
            {make_schwarzschild(1.0), make_rsphere(4.0, 0.0), 1.1, 0.3},
            {make_de_sitter(0.04), make_round_sphere(1.0, -5.0, "slice-sphere"), 1.1, 0.3},
            {make_flrw(0.25), make_round_sphere(1.0, 0.8, "slice-sphere"), 1.1, 0.3},
            {make_static_product(), make_sigma_graph(0.3), 0.5, -0.4},
        };
        for (const auto& c : cases) {
            INFO(c.m.name + "/" + c.s.name);
            const FrameBundle fr = frames_at(c.s, c.m, c.u, c.v);
            const Metric4& g = fr.g;
            const NormalFrame& f = fr.nor;
            REQUIRE(std::abs(ip(g, f.u, f.u) + 1.0) < 1e-10);
            REQUIRE(std::abs(ip(g, f.n, f.n) - 1.0) < 1e-10);
            REQUIRE(std::abs(ip(g, f.u, f.n)) < 1e-10);
            REQUIRE(std::abs(ip(g, f.l, f.l)) < 1e-10);
            REQUIRE(std::abs(ip(g, f.k, f.k)) < 1e-10);
            REQUIRE(std::abs(ip(g, f.l, f.k) + 1.0) < 1e-10);
            for (const Vec4* N : {&f.u, &f.n, &f.l, &f.k}) {
                REQUIRE(std::abs(ip(g, *N, fr.tan.e1)) < 1e-9);
                REQUIRE(std::abs(ip(g, *N, fr.tan.e2)) < 1e-9);
            }
            // future orientation against the model's reference covector
            const Vec4 wref = sharp(c.m.future_covector(fr.x), g);
            REQUIRE(ip(g, f.u, wref) < 0.0);
            REQUIRE(frame_completeness_residual(fr) < 1e-9);
        }
    }
    SECTION("schwarzschild r-sphere static normals") {
        const auto schw = make_schwarzschild(1.0);
        const auto rsph = make_rsphere(4.0, 0.0);
        const NormalFrame f = normal_frame_at(rsph, schw, 1.1, 0.3);
        const double fval = 1.0 - 2.0 / 4.0;
        REQUIRE(std::abs(f.u[0] - 1.0 / std::sqrt(fval)) < 1e-12);
        REQUIRE(std::abs(f.n[1] - std::sqrt(fval)) < 1e-12);
        REQUIRE(std::abs(f.u[1]) < 1e-12);
        REQUIRE(std::abs(f.n[0]) < 1e-12);
    }
    SECTION("boost gauge composes to identity") {
        const NormalFrame f0 = normal_frame_at(sph, mink, th, ph);
        const NormalFrame f = boost(boost(f0, 0.8), -0.8);
        REQUIRE(testutil::max_abs_diff(f.u, f0.u) < 1e-12);
        REQUIRE(testutil::max_abs_diff(f.n, f0.n) < 1e-12);
        REQUIRE(testutil::max_abs_diff(f.l, f0.l) < 1e-12);
        REQUIRE(testutil::max_abs_diff(f.k, f0.k) < 1e-12);
    }
    SECTION("null directions are gauge invariant") {
        const NormalFrame f0 = normal_frame_at(sph, mink, th, ph);
        for (double beta : {-1.5, -0.3, 0.7, 2.0}) {
            const NormalFrame f = boost(f0, beta);
            REQUIRE(wedge_norm(f.l, f0.l) < 1e-12);
            REQUIRE(wedge_norm(f.k, f0.k) < 1e-12);
        }
    }
}

TEST_CASE("normal hodge rotation") {
    const auto mink = make_minkowski();
    const auto sph = make_round_sphere(2.0, 0.0);
    const FrameBundle fr = frames_at(sph, mink, 1.1, 0.7);
    const NormalFrame& f = fr.nor;

    SECTION("action table") {
        REQUIRE(testutil::max_abs_diff(hodge_perp(f.u, fr), f.n) < 1e-12);
        REQUIRE(testutil::max_abs_diff(hodge_perp(f.n, fr), f.u) < 1e-12);
        REQUIRE(testutil::max_abs_diff(hodge_perp(f.l, fr), f.l) < 1e-12);
        REQUIRE(testutil::max_abs_diff(hodge_perp(f.k, fr), -1.0 * f.k) < 1e-12);
    }
    SECTION("linearity") {
        const Vec4 N = 0.7 * f.u + 1.3 * f.n;
        const Vec4 want = 0.7 * f.n + 1.3 * f.u;
        REQUIRE(testutil::max_abs_diff(hodge_perp(N, fr), want) < 1e-12);
    }
    SECTION("involution and orthogonality") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int t = 0; t < 50; ++t) {
            const Vec4 N = u(rng) * f.u + u(rng) * f.n;
            const Vec4 sN = hodge_perp(N, fr);
            REQUIRE(testutil::max_abs_diff(hodge_perp(sN, fr), N) < 1e-12);
            REQUIRE(std::abs(ip(fr.g, N, sN)) < 1e-12 * (1.0 + norm_e(N) * norm_e(N)));
        }
    }
    SECTION("gauge covariance") {
        FrameBundle boosted = fr;
        boosted.nor = boost(fr.nor, 0.9);
        REQUIRE(testutil::max_abs_diff(hodge_perp(boosted.nor.l, boosted), boosted.nor.l) <
                1e-12);
        // the operator itself does not depend on the gauge of the frame
        const Vec4 N = 0.4 * f.u + 0.9 * f.n;
        REQUIRE(testutil::max_abs_diff(hodge_perp(N, boosted), hodge_perp(N, fr)) < 1e-11);
    }
    SECTION("tangential input rejected") {
        REQUIRE_THROWS_AS(hodge_perp(fr.tan.e1, fr), NotNormal);
        const Vec4 mixed = f.u + 0.5 * fr.tan.e2;
        REQUIRE_THROWS_AS(hodge_perp(mixed, fr), NotNormal);
    }
    SECTION("orientation table") {
        const OrientationData table = orientation_table(fr);
        REQUIRE(testutil::max_abs_diff(table.star_u, f.n) < 1e-12);
        REQUIRE(testutil::max_abs_diff(table.star_n, f.u) < 1e-12);
        REQUIRE(testutil::max_abs_diff(table.star_l, f.l) < 1e-12);
        REQUIRE(testutil::max_abs_diff(table.star_k, -1.0 * f.k) < 1e-12);
    }
}

TEST_CASE("finite-difference surface path matches analytic derivatives") {
    const auto mink = make_minkowski();
    const auto torus = make_torus(2.0, 0.5);
    const auto torus_fd = testutil::fd_copy(torus);
    const double th = 1.0, ph = 0.6;
    const auto Ja = surface_jacobian(torus, th, ph);
    const auto Jf = surface_jacobian(torus_fd, th, ph);
    REQUIRE(testutil::max_abs_diff(Ja[0], Jf[0]) < 1e-8);
    REQUIRE(testutil::max_abs_diff(Ja[1], Jf[1]) < 1e-8);
    const auto Ha = surface_hessian(torus, th, ph);
    const auto Hf = surface_hessian(torus_fd, th, ph);
    for (int i = 0; i < 3; ++i) REQUIRE(testutil::max_abs_diff(Ha[i], Hf[i]) < 1e-5);
    const TangentFrame fa = tangent_frame_at(torus, mink, th, ph);
    const TangentFrame ff = tangent_frame_at(torus_fd, mink, th, ph);
    REQUIRE(std::abs(fa.induced.xx - ff.induced.xx) < 1e-9);
    REQUIRE(std::abs(fa.induced.yy - ff.induced.yy) < 1e-9);
}
