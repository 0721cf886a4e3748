#include <random>

#include "test_common.hpp"

using namespace umbilic;
using testutil::vec;

namespace {

ExtrinsicState geo_state(const SpacetimeModel& m, const SurfaceModel& s, double u, double v) {
    return extrinsic_state_at(s, m, u, v, {}, false);
}

UmbilicalResult classify_pair(const WeingartenPair& p) {
    const ExtrinsicState st = synthetic_state(p);
    return umbilical_direction(st.pair, st.nor, st.mean, Tolerances::analytic());
}

}  // namespace

TEST_CASE("weingarten commutator") {
    SECTION("surfaces in static slices commute") {
        const auto st = geo_state(make_minkowski(), make_torus(2.0, 0.5), 1.0, 0.5);
        REQUIRE(commutator_norm(st.pair) < 1e-10 * st.pair.scale);
        const auto st2 =
            geo_state(make_schwarzschild(1.0), make_rsphere(4.0, 0.0), 1.1, 0.3);
        REQUIRE(commutator_norm(st2.pair) < 1e-10 * st2.pair.scale);
    }
    SECTION("graph fixture does not commute") {
        const auto st =
            geo_state(make_minkowski(), make_graph_noncommuting(0.1, 0.1), 0.3, 0.4);
        REQUIRE(commutator_norm(st.pair) > 1e-6 * st.pair.scale * 10.0);
    }
    SECTION("simultaneously diagonal pair commutes exactly") {
        const auto p = make_pair(Sym2{1.0, 0.0, 2.0}, Sym2{3.0, 0.0, 5.0});
        REQUIRE(commutator_norm(p) == 0.0);
    }
}

TEST_CASE("umbilical direction: existence on commuting pairs") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const WeingartenPair p = synthetic_weingarten(seed, SynthMode::Commuting);
        const ExtrinsicState st = synthetic_state(p);
        const UmbilicalResult r = umbilical_direction(st.pair, st.nor, st.mean, {});
        REQUIRE(r.status != UmbilicalStatus::None);
        if (r.status == UmbilicalStatus::UniqueDirection) {
            const double res =
                umbilical_residual_along(p, r.n_umb, st.nor, st.g, st.mean);
            REQUIRE(res < 1e-7 * p.scale);
        }
    }
}

TEST_CASE("umbilical direction: none on non-commuting pairs, scan agrees") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const WeingartenPair p = synthetic_weingarten(seed, SynthMode::NonCommuting);
        REQUIRE(classify_pair(p).status == UmbilicalStatus::None);
        const ScanResult scan = scan_umbilical_directions(p, 10000, 1e-6 * p.scale);
        REQUIRE(scan.passing_phis.empty());
        REQUIRE(scan.min_residual >= 1e-6 * p.scale);
    }
}

TEST_CASE("umbilical direction: uniqueness via the normal-circle scan") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const WeingartenPair p = synthetic_weingarten(seed, SynthMode::CommutingNonUmbilical);
        const ExtrinsicState st = synthetic_state(p);
        const UmbilicalResult r = umbilical_direction(st.pair, st.nor, st.mean, {});
        REQUIRE(r.status == UmbilicalStatus::UniqueDirection);
        const ScanResult scan = scan_umbilical_directions(p, 10000, 1e-6 * p.scale);
        REQUIRE(scan.passing_phis.size() == 1);
        // explicit formula matches the scanned direction
        const double phi = scan.passing_phis[0];
        const Vec4 scanned = std::cos(phi) * st.nor.u + std::sin(phi) * st.nor.n;
        REQUIRE(direction_wedge(r.n_umb, scanned) < 1e-8);
    }
}

TEST_CASE("causal character algebra") {
    SECTION("norm identity on commuting pairs") {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const WeingartenPair p = synthetic_weingarten(seed, SynthMode::CommutingNonUmbilical);
            const ExtrinsicState st = synthetic_state(p);
            const UmbilicalResult r = umbilical_direction(st.pair, st.nor, st.mean, {});
            REQUIRE(r.status == UmbilicalStatus::UniqueDirection);
            const double norm_numb = ip(st.g, r.n_umb, r.n_umb);
            REQUIRE(std::abs(norm_numb - r.causal_discriminant) <
                    1e-10 * (1.0 + std::abs(norm_numb)));
            // 2(l1-l2)(n1-n2) route
            const double via_eigs = 2.0 * (r.eigen.lambda1 - r.eigen.lambda2) *
                                    (r.eigen.nu1 - r.eigen.nu2);
            REQUIRE(std::abs(norm_numb - via_eigs) < 1e-10 * (1.0 + std::abs(norm_numb)));
            // ordered eigenbases agree -> spacelike, opposite -> timelike
            if (r.causal == CausalClass::Spacelike) REQUIRE(via_eigs > 0.0);
            if (r.causal == CausalClass::Timelike) REQUIRE(via_eigs < 0.0);
        }
    }
    SECTION("trace identity holds for arbitrary pairs") {
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int t = 0; t < 1000; ++t) {
            const Sym2 A_l{u(rng), u(rng), u(rng)};
            const Sym2 A_k{u(rng), u(rng), u(rng)};
            const Mat2 prod = A_k.mat() * A_l.mat();
            const double lhs = 4.0 * prod.trace() - 2.0 * A_k.trace() * A_l.trace();
            const double g_HH = -2.0 * A_l.trace() * A_k.trace();
            const double trB = -2.0 * prod.trace();
            REQUIRE(std::abs(lhs - (g_HH - 2.0 * trB)) < 1e-12 * (1.0 + std::abs(lhs)));
        }
    }
    SECTION("torus: timelike umbilical direction along u") {
        const auto st = geo_state(make_minkowski(), make_torus(2.0, 0.5), 1.0, 0.5);
        const UmbilicalResult r = umbilical_direction(st.pair, st.nor, st.mean, {});
        REQUIRE(r.status == UmbilicalStatus::UniqueDirection);
        REQUIRE(r.causal == CausalClass::Timelike);
        REQUIRE(direction_wedge(r.n_umb, st.nor.u) < 1e-9);
        // discriminant = -(k1 - k2)^2 for A_l = -A_k = A_n / sqrt(2)
        const double th = 1.0;
        const double k1 = -1.0 / 0.5;
        const double k2 = -std::cos(th) / (2.0 + 0.5 * std::cos(th));
        REQUIRE(std::abs(r.causal_discriminant + (k1 - k2) * (k1 - k2)) < 1e-9);
    }
    SECTION("sphere: totally umbilical") {
        const auto st = geo_state(make_minkowski(), make_round_sphere(2.0, 0.0), 1.1, 0.7);
        REQUIRE(umbilical_direction(st.pair, st.nor, st.mean, {}).status ==
                UmbilicalStatus::TotallyUmbilical);
    }
    SECTION("graph fixture: none") {
        const auto st =
            geo_state(make_minkowski(), make_graph_noncommuting(0.1, 0.1), 0.3, 0.4);
        REQUIRE(umbilical_direction(st.pair, st.nor, st.mean, {}).status ==
                UmbilicalStatus::None);
    }
}

TEST_CASE("umbilical direction is G or star G") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const WeingartenPair p = synthetic_weingarten(seed, SynthMode::CommutingNonUmbilical);
        const ExtrinsicState st = synthetic_state(p);
        const UmbilicalResult r = umbilical_direction(st.pair, st.nor, st.mean, {});
        REQUIRE(r.status == UmbilicalStatus::UniqueDirection);
        const double w = std::min(direction_wedge(r.n_umb, st.gdata.G),
                                  direction_wedge(r.n_umb, st.gdata.star_G));
        REQUIRE(w < 1e-7);
    }
}

TEST_CASE("point classification") {
    SECTION("static-slice fixtures are ortho-umbilical") {
        struct Case {
            SpacetimeModel m;
            SurfaceModel s;
            double u, v;
        };
        const std::vector<Case> cases = {
            {make_minkowski(), make_torus(2.0, 0.5), 1.0, 0.5},
            {make_minkowski(), make_round_sphere(2.0, 0.0), 1.1, 0.7},
            {make_static_product(), make_sigma_graph(0.3), 0.5, -0.4},
        };
        for (const auto& c : cases) {
            const auto st = geo_state(c.m, c.s, c.u, c.v);
            const auto cls = classify_point(st, {});
            INFO(c.m.name + "/" + c.s.name);
            REQUIRE(!cls.minimal);
            REQUIRE(cls.ortho_umbilical.has_value());
            REQUIRE(*cls.ortho_umbilical);
        }
    }
    SECTION("graph fixture: not ortho, dim N1 = 2") {
        const auto st =
            geo_state(make_minkowski(), make_graph_noncommuting(0.1, 0.1), 0.3, 0.4);
        const auto cls = classify_point(st, {});
        REQUIRE(!cls.minimal);
        REQUIRE(!*cls.ortho_umbilical);
        REQUIRE(!*cls.pseudo_umbilical);
        REQUIRE(cls.dim_first_normal_space == 2);
        REQUIRE(!cls.subgeodesic_along.has_value());
    }
    SECTION("sphere: totally umbilical, subgeodesic along H") {
        const auto st = geo_state(make_minkowski(), make_round_sphere(2.0, 0.0), 1.1, 0.7);
        const auto cls = classify_point(st, {});
        REQUIRE(cls.totally_umbilical);
        REQUIRE(!cls.totally_geodesic);
        REQUIRE(*cls.pseudo_umbilical);
        REQUIRE(*cls.ortho_umbilical);
        REQUIRE(cls.dim_first_normal_space == 1);
        REQUIRE(cls.subgeodesic_along.has_value());
        REQUIRE(direction_wedge(*cls.subgeodesic_along, st.mean.H) < 1e-9);
        REQUIRE(cls.h_causal == HCausal::Spacelike);
        REQUIRE(cls.h_orientation == TimeOrientation::NotApplicable);
    }
    SECTION("plane: totally geodesic") {
        const auto st = geo_state(make_minkowski(), make_plane(), 0.2, -0.1);
        const auto cls = classify_point(st, {});
        REQUIRE(cls.minimal);
        REQUIRE(cls.totally_geodesic);
        REQUIRE(cls.totally_umbilical);
        REQUIRE(!cls.pseudo_umbilical.has_value());
        REQUIRE(!cls.ortho_umbilical.has_value());
        REQUIRE(cls.dim_first_normal_space == 0);
        REQUIRE(cls.h_causal == HCausal::Zero);
    }
    SECTION("minimal non-geodesic point reports pseudo/ortho as undefined") {
        // u = 0 line of the sigma graph: H = 0 but II != 0
        const auto st = geo_state(make_static_product(), make_sigma_graph(0.3), 0.0, 0.5);
        const auto cls = classify_point(st, {});
        REQUIRE(cls.minimal);
        REQUIRE(!cls.totally_geodesic);
        REQUIRE(!cls.pseudo_umbilical.has_value());
        REQUIRE(!cls.ortho_umbilical.has_value());
    }
    SECTION("implication chain and Proposition-1 equivalence on a sample") {
        std::vector<ExtrinsicState> states;
        states.push_back(geo_state(make_minkowski(), make_round_sphere(2.0, 0.0), 1.1, 0.7));
        states.push_back(geo_state(make_minkowski(), make_torus(2.0, 0.5), 1.0, 0.5));
        states.push_back(geo_state(make_minkowski(), make_plane(), 0.2, -0.1));
        states.push_back(
            geo_state(make_minkowski(), make_graph_noncommuting(0.1, 0.1), 0.3, 0.4));
        for (std::uint64_t s = 0; s < 50; ++s)
            states.push_back(synthetic_state(synthetic_weingarten(s, SynthMode::Commuting)));
        for (const auto& st : states) {
            const auto cls = classify_point(st, {});
            if (cls.totally_geodesic) REQUIRE(cls.totally_umbilical);
            if (cls.totally_umbilical && !cls.minimal) {
                REQUIRE(*cls.pseudo_umbilical);
                REQUIRE(*cls.ortho_umbilical);
            }
            if (!cls.minimal) {
                const bool sub_exists = cls.dim_first_normal_space <= 1;
                const Sym2 A_starH =
                    weingarten_along(st.pair, st.mean.star_H, st.nor, st.g);
                const bool astar_zero =
                    A_starH.frobenius() < 1e-7 * st.pair.scale * st.pair.scale;
                REQUIRE(*cls.ortho_umbilical == sub_exists);
                REQUIRE(*cls.ortho_umbilical == astar_zero);
                if (*cls.ortho_umbilical && cls.subgeodesic_along)
                    REQUIRE(direction_wedge(*cls.subgeodesic_along, st.mean.H) < 1e-6);
            }
        }
    }
    SECTION("trapped-type tags from synthetic expansions") {
        // both null expansions negative: H future timelike, trapped
        const auto trapped = synthetic_state(
            make_pair(Sym2{-0.5, 0.0, -0.6}, Sym2{-0.7, 0.0, -0.4}));
        auto cls = classify_point(trapped, {});
        REQUIRE(cls.h_causal == HCausal::Timelike);
        REQUIRE(cls.h_orientation == TimeOrientation::Future);
        REQUIRE(cls.tags.trapped_point);
        REQUIRE(cls.tags.weakly_trapped_point);
        REQUIRE(!cls.tags.mots_point);

        // theta_l = 0, theta_k < 0: marginally trapped / MOTS point
        const auto mots = synthetic_state(
            make_pair(Sym2{0.5, 0.0, -0.5}, Sym2{-0.7, 0.0, -0.4}));
        cls = classify_point(mots, {});
        REQUIRE(cls.h_causal == HCausal::Null);
        REQUIRE(cls.tags.mots_point);
        REQUIRE(cls.tags.null_star_point);
        REQUIRE(cls.tags.marginally_trapped_point);

        // mixed signs: H spacelike, no trapped tags
        const auto untrapped = synthetic_state(
            make_pair(Sym2{0.5, 0.0, 0.6}, Sym2{-0.7, 0.0, -0.4}));
        cls = classify_point(untrapped, {});
        REQUIRE(cls.h_causal == HCausal::Spacelike);
        REQUIRE(!cls.tags.weakly_trapped_point);
    }
    SECTION("pseudo-umbilical converse guard: minimal non-commuting B prop. to 1") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const WeingartenPair p =
                synthetic_weingarten(seed, SynthMode::MinimalNonCommutingBIdentity);
            REQUIRE(commutator_norm(p) > 1e-3);
            const ExtrinsicState st = synthetic_state(p);
            REQUIRE(st.casorati.B.traceless().frobenius() < 1e-12);
            REQUIRE(norm_e(st.mean.H) < 1e-12);
            // no umbilical direction despite B proportional to the identity
            REQUIRE(classify_pair(p).status == UmbilicalStatus::None);
            const auto cls = classify_point(st, {});
            REQUIRE(cls.minimal);
            REQUIRE(!cls.pseudo_umbilical.has_value());
        }
    }
}

TEST_CASE("pseudo-umbilical iff B proportional to identity (non-minimal)") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const WeingartenPair p = synthetic_weingarten(seed, SynthMode::Commuting);
        const ExtrinsicState st = synthetic_state(p);
        const auto cls = classify_point(st, {});
        if (cls.minimal) continue;
        const Sym2 A_H = weingarten_along(st.pair, st.mean.H, st.nor, st.g);
        const Sym2 dev = A_H - (0.5 * st.mean.H2) * Sym2::identity();
        const bool pseudo_direct = dev.frobenius() < 1e-7 * st.pair.scale * st.pair.scale;
        REQUIRE(*cls.pseudo_umbilical == pseudo_direct);
        // invariant characterization (tr B)^2 - 4 det B = 0
        const double invariant = st.casorati.trB * st.casorati.trB - 4.0 * st.casorati.detB;
        if (*cls.pseudo_umbilical)
            REQUIRE(std::abs(invariant) < 1e-6 * st.pair.scale * st.pair.scale * st.pair.scale);
    }
}

TEST_CASE("ortho kappa") {
    SECTION("sphere: kappa = 1/2 identity") {
        const auto st = geo_state(make_minkowski(), make_round_sphere(2.0, 0.0), 1.1, 0.7);
        const KappaData k = ortho_kappa(st, {});
        REQUIRE((k.kappa_tilde - 0.5 * Sym2::identity()).frobenius() < 1e-9);
        REQUIRE(std::abs(k.det_kappa - 0.25) < 1e-9);
        REQUIRE(k.trace_residual < 1e-12);
        REQUIRE(k.trace_relation_residual < 1e-9);
    }
    SECTION("torus: kappa from principal curvatures") {
        const double R = 2.0, a = 0.5, th = 1.0;
        const auto st = geo_state(make_minkowski(), make_torus(R, a), th, 0.5);
        const KappaData k = ortho_kappa(st, {});
        const double k1 = -1.0 / a;
        const double k2 = -std::cos(th) / (R + a * std::cos(th));
        REQUIRE(std::abs(k.kappa_tilde.xx - k1 / (k1 + k2)) < 1e-9);
        REQUIRE(std::abs(k.kappa_tilde.yy - k2 / (k1 + k2)) < 1e-9);
        REQUIRE(std::abs(k.det_kappa - k1 * k2 / ((k1 + k2) * (k1 + k2))) < 1e-9);
        REQUIRE(k.trace_relation_residual < 1e-9);
    }
    SECTION("non-ortho point rejected") {
        const auto st =
            geo_state(make_minkowski(), make_graph_noncommuting(0.1, 0.1), 0.3, 0.4);
        REQUIRE_THROWS_AS(ortho_kappa(st, {}), NotOrthoUmbilical);
    }
}

TEST_CASE("joint pseudo- and ortho-umbilical cases") {
    SECTION("sphere: totally umbilical case") {
        const auto st = geo_state(make_minkowski(), make_round_sphere(2.0, 0.0), 1.1, 0.7);
        REQUIRE(pseudo_ortho_joint_check(st, {}) == JointCase::TotallyUmbilicalCase);
    }
    SECTION("null-H fixture: H-subgeodesic MOTS case") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const WeingartenPair p = synthetic_weingarten(seed, SynthMode::NullHZeroB);
            const ExtrinsicState st = synthetic_state(p);
            REQUIRE(std::abs(st.mean.H2) < 1e-13);
            REQUIRE(norm_e(st.mean.H) > 0.1);  // null but nonzero
            REQUIRE(st.casorati.B.frobenius() < 1e-13);
            REQUIRE(pseudo_ortho_joint_check(st, {}) == JointCase::NullHSubgeodesicMOTSCase);
            const auto cls = classify_point(st, {});
            REQUIRE(cls.tags.mots_point);
            REQUIRE(*cls.pseudo_umbilical);
            REQUIRE(*cls.ortho_umbilical);
        }
    }
    SECTION("generic torus point: not both") {
        const auto st = geo_state(make_minkowski(), make_torus(2.0, 0.5), 1.0, 0.5);
        REQUIRE(pseudo_ortho_joint_check(st, {}) == JointCase::NotBoth);
    }
}
