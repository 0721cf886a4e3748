#pragma once

// Surface-type classification: the commutator criterion for the existence of
// an umbilical direction, the explicit direction and its causal character,
// and the point-wise taxonomy (minimal / geodesic / totally umbilical /
// pseudo- and ortho-umbilical / subgeodesic / trapped-type tags).
//
// Every "= 0" becomes a thresholded test |.| < tau * scale with
// scale = 1 + |A_l|_F + |A_k|_F so verdicts are covariant under surface
// reparametrization.

#include <optional>
#include <vector>

#include "umbilic/extrinsic.hpp"

namespace umbilic {

struct Tolerances {
    double geo = 1e-9;
    double frame = 1e-8;
    double pd = 1e-10;
    double ext = 1e-8;
    double gauge = 1e-7;
    double cls = 1e-7;
    double eig = 1e-7;
    double ver = 1e-8;
    // floor for quantities built from the nested ds stencil, whose noise does
    // not improve on the analytic path
    double ds_floor = 1e-4;

    static Tolerances analytic() { return {}; }
    static Tolerances finite_difference() {
        Tolerances t;
        t.geo = 1e-4;
        t.frame = 1e-4;
        t.ext = 1e-4;
        t.gauge = 1e-3;
        t.cls = 1e-3;
        t.eig = 1e-3;
        t.ver = 1e-4;
        return t;
    }
    static Tolerances for_models(const SpacetimeModel& m, const SurfaceModel& s) {
        return (m.analytic_path() && s.analytic_path()) ? analytic() : finite_difference();
    }
};

inline Mat2 weingarten_commutator(const WeingartenPair& p) {
    return commutator(p.A_l.mat(), p.A_k.mat());
}

inline double commutator_norm(const WeingartenPair& p) {
    return weingarten_commutator(p).frobenius();
}

enum class UmbilicalStatus { TotallyUmbilical, UniqueDirection, None };
enum class CausalClass { Timelike, Spacelike, Null };

struct EigenStructure {
    double lambda1 = 0.0, lambda2 = 0.0;  // eigenvalues of A_k
    double nu1 = 0.0, nu2 = 0.0;          // eigenvalues of A_l, paired by eigenvector
    bool has_common_basis = false;
    Vec2 basis1{1.0, 0.0}, basis2{0.0, 1.0};
};

struct UmbilicalResult {
    UmbilicalStatus status = UmbilicalStatus::None;
    Vec4 n_umb{};                      // set when status == UniqueDirection
    double commutator_norm = 0.0;
    CausalClass causal = CausalClass::Null;
    double causal_discriminant = 0.0;  // g(H,H) - 2 tr B = g(N_umb, N_umb)
    EigenStructure eigen;
    double defining_residual = 0.0;    // |A_N - (1/2) g(H,N) 1|_F at the returned direction
};

// Residual of the umbilical condition along the normal direction
// N(phi) = cos(phi) u + sin(phi) n; the trace part is subtracted exactly.
inline double umbilical_residual(const WeingartenPair& p, double phi) {
    const Sym2 A = std::cos(phi) * weingarten_u(p) + std::sin(phi) * weingarten_n(p);
    return A.traceless().frobenius();
}

inline double umbilical_residual_along(const WeingartenPair& p, const Vec4& N,
                                       const NormalFrame& f, const Metric4& g,
                                       const MeanCurvatureData& mean) {
    const Sym2 A = weingarten_along(p, N, f, g);
    const Sym2 dev = A - (0.5 * ip(g, mean.H, N)) * Sym2::identity();
    return dev.frobenius();
}

// Common eigenbasis of a commuting pair. Diagonalizes whichever trace-free
// part is larger; eigenvalues of both operators are then read off by
// projection, paired by eigenvector, and ordered by descending lambda
// (descending nu on ties, angle to e1 last).
inline EigenStructure common_eigenbasis(const WeingartenPair& p) {
    EigenStructure es;
    const Sym2 devk = p.A_k.traceless();
    const Sym2 devl = p.A_l.traceless();
    const Sym2& lead = devk.frobenius() >= devl.frobenius() ? devk : devl;
    const SymEigen2 e = eigen_sym2(lead);
    Vec2 b1 = e.evec1, b2 = e.evec2;
    double l1 = quad_form(p.A_k, b1), l2 = quad_form(p.A_k, b2);
    double n1 = quad_form(p.A_l, b1), n2 = quad_form(p.A_l, b2);
    const bool swap = (l1 < l2) || (l1 == l2 && n1 < n2);
    if (swap) {
        std::swap(b1, b2);
        std::swap(l1, l2);
        std::swap(n1, n2);
    }
    es.lambda1 = l1;
    es.lambda2 = l2;
    es.nu1 = n1;
    es.nu2 = n2;
    es.basis1 = b1;
    es.basis2 = b2;
    es.has_common_basis = true;
    return es;
}

inline UmbilicalResult umbilical_direction(const WeingartenPair& p, const NormalFrame& f,
                                           const MeanCurvatureData& mean,
                                           const Tolerances& tol = {}) {
    UmbilicalResult r;
    r.commutator_norm = commutator_norm(p);
    const Sym2 B = -1.0 * sym_anticommutator(p.A_k, p.A_l);
    r.causal_discriminant = mean.H2 - 2.0 * B.trace();
    if (r.commutator_norm >= tol.cls * p.scale) {
        r.status = UmbilicalStatus::None;
        return r;
    }
    r.eigen = common_eigenbasis(p);
    const double dl = r.eigen.lambda1 - r.eigen.lambda2;
    const double dn = r.eigen.nu1 - r.eigen.nu2;
    if (std::abs(dl) < tol.eig * p.scale && std::abs(dn) < tol.eig * p.scale) {
        r.status = UmbilicalStatus::TotallyUmbilical;
        // any normal direction is umbilical; report the residual along u
        r.defining_residual = weingarten_u(p).traceless().frobenius();
        return r;
    }
    r.status = UmbilicalStatus::UniqueDirection;
    r.n_umb = dl * f.l - dn * f.k;
    if (r.causal_discriminant < -tol.cls * p.scale * p.scale)
        r.causal = CausalClass::Timelike;
    else if (r.causal_discriminant > tol.cls * p.scale * p.scale)
        r.causal = CausalClass::Spacelike;
    else
        r.causal = CausalClass::Null;
    const Sym2 A = dl * p.A_l - dn * p.A_k;
    r.defining_residual = A.traceless().frobenius();
    return r;
}

// ---------------------------------------------------------------------------
// Normal-circle scan: the independent oracle for the existence / uniqueness
// of an umbilical direction. Works purely through umbilical_residual, so it
// shares nothing with the eigenvalue route above. Grid minima are sharpened
// by derivative-free ternary search before being tested against the pass
// threshold.

struct ScanResult {
    double min_residual = 0.0;
    double argmin_phi = 0.0;
    std::vector<double> passing_phis;  // refined local minima below threshold, phi in [0, pi)
};

inline ScanResult scan_umbilical_directions(const WeingartenPair& p, int n_grid,
                                            double pass_threshold) {
    ScanResult out;
    const double pi = 3.14159265358979323846;
    std::vector<double> res(static_cast<std::size_t>(n_grid));
    for (int i = 0; i < n_grid; ++i) res[i] = umbilical_residual(p, i * pi / n_grid);
    auto refine = [&](double lo, double hi) {
        for (int it = 0; it < 80; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (umbilical_residual(p, m1) < umbilical_residual(p, m2))
                hi = m2;
            else
                lo = m1;
        }
        return 0.5 * (lo + hi);
    };
    out.min_residual = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_grid; ++i) {
        const double prev = res[(i + n_grid - 1) % n_grid];
        const double next = res[(i + 1) % n_grid];
        if (res[i] <= prev && res[i] <= next) {
            const double h = pi / n_grid;
            const double phi = refine(i * h - h, i * h + h);
            const double r = umbilical_residual(p, phi);
            if (r < out.min_residual) {
                out.min_residual = r;
                out.argmin_phi = phi;
            }
            if (r < pass_threshold) {
                double canon = std::fmod(phi, pi);
                if (canon < 0.0) canon += pi;
                bool dup = false;
                for (double q : out.passing_phis) {
                    double d = std::abs(q - canon);
                    d = std::min(d, pi - d);
                    if (d < 10.0 * h) dup = true;
                }
                if (!dup) out.passing_phis.push_back(canon);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Point-wise taxonomy

enum class HCausal { Zero, Timelike, Null, Spacelike };
enum class TimeOrientation { Future, Past, NotApplicable };
enum class JointCase { TotallyUmbilicalCase, NullHSubgeodesicMOTSCase, NotBoth };

struct PointClassification {
    bool minimal = false;          // H = 0
    bool totally_geodesic = false; // II = 0
    bool totally_umbilical = false;  // G = 0
    std::optional<bool> pseudo_umbilical;  // unset at minimal points
    std::optional<bool> ortho_umbilical;   // unset at minimal points
    std::optional<Vec4> subgeodesic_along;
    int dim_first_normal_space = 0;
    HCausal h_causal = HCausal::Zero;
    TimeOrientation h_orientation = TimeOrientation::NotApplicable;
    int sign_theta_l = 0, sign_theta_k = 0;
    struct Tags {
        bool mots_point = false;
        bool marginally_trapped_point = false;
        bool weakly_trapped_point = false;
        bool trapped_point = false;
        bool null_star_point = false;
    } tags;
};

// rank of span{II(e_i, e_j)} with thresholded linear-dependence tests on the
// three normal-valued components
inline int first_normal_space_dim(const ShapeTensor& shape, double tau, double scale) {
    const auto& I = shape.II_on;
    double maxn = 0.0;
    for (const auto& w : I) maxn = std::max(maxn, norm_e(w));
    if (maxn < tau * scale) return 0;
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) worst = std::max(worst, wedge_norm(I[i], I[j]));
    return worst < tau * scale * scale ? 1 : 2;
}

inline PointClassification classify_point(const ExtrinsicState& st, const Tolerances& tol = {}) {
    PointClassification c;
    const double scale = st.pair.scale;
    const double tau = tol.cls * scale;
    const double tau2 = tol.cls * scale * scale;

    c.minimal = std::abs(st.mean.theta_l) < tau && std::abs(st.mean.theta_k) < tau;
    c.totally_geodesic =
        st.pair.A_l.frobenius() < tau && st.pair.A_k.frobenius() < tau;
    c.totally_umbilical = st.gdata.sigma_l < tau && st.gdata.sigma_k < tau;

    c.dim_first_normal_space = first_normal_space_dim(st.shape, tol.cls, scale);
    if (c.dim_first_normal_space == 1) {
        const auto& I = st.shape.II_on;
        const Vec4* best = &I[0];
        for (const auto& w : I)
            if (norm_e(w) > norm_e(*best)) best = &w;
        c.subgeodesic_along = (1.0 / norm_e(*best)) * (*best);
    }

    if (!c.minimal) {
        const Sym2 B = st.casorati.B;
        const Sym2 devB = B.traceless();
        c.pseudo_umbilical = devB.frobenius() < tau2;
        const Sym2 A_starH = weingarten_along(st.pair, st.mean.star_H, st.nor, st.g);
        c.ortho_umbilical = A_starH.frobenius() < tau2;
    }

    const auto sgn = [tau](double x) { return x > tau ? 1 : (x < -tau ? -1 : 0); };
    c.sign_theta_l = sgn(st.mean.theta_l);
    c.sign_theta_k = sgn(st.mean.theta_k);

    if (c.minimal) {
        c.h_causal = HCausal::Zero;
    } else if (st.mean.H2 < -tau2) {
        c.h_causal = HCausal::Timelike;
    } else if (st.mean.H2 > tau2) {
        c.h_causal = HCausal::Spacelike;
    } else {
        c.h_causal = HCausal::Null;
    }

    // H = -theta_k l - theta_l k with l, k future null: H is future causal
    // iff both coefficients are nonnegative.
    if (!c.minimal && c.h_causal != HCausal::Spacelike) {
        if (c.sign_theta_l <= 0 && c.sign_theta_k <= 0)
            c.h_orientation = TimeOrientation::Future;
        else if (c.sign_theta_l >= 0 && c.sign_theta_k >= 0)
            c.h_orientation = TimeOrientation::Past;
    }

    const bool h_null_nonzero = !c.minimal && c.h_causal == HCausal::Null;
    c.tags.null_star_point = h_null_nonzero;
    c.tags.mots_point = h_null_nonzero;  // H along a single null direction
    c.tags.marginally_trapped_point =
        h_null_nonzero && c.h_orientation != TimeOrientation::NotApplicable;
    c.tags.weakly_trapped_point =
        !c.minimal && c.h_causal != HCausal::Spacelike &&
        c.h_orientation != TimeOrientation::NotApplicable;
    c.tags.trapped_point = c.h_causal == HCausal::Timelike &&
                           c.h_orientation != TimeOrientation::NotApplicable;
    return c;
}

struct KappaData {
    Sym2 kappa_tilde;       // unit-trace common Weingarten shape
    double det_kappa = 0.0;
    double trace_residual = 0.0;  // |tr kappa - 1|
    double trace_relation_residual = 0.0; // |tr B - g(H,H)(1 - 2 det kappa)|
};

// kappa with tr = 1 exists for ortho-umbilical non-minimal points; extracted
// from the Weingarten operator with the largest expansion.
inline KappaData ortho_kappa(const ExtrinsicState& st, const Tolerances& tol = {}) {
    const PointClassification c = classify_point(st, tol);
    if (c.minimal || !c.ortho_umbilical.has_value() || !*c.ortho_umbilical)
        throw NotOrthoUmbilical("ortho_kappa: point is not ortho-umbilical (or is minimal)");
    struct Cand {
        Sym2 A;
        double tr;
    };
    const Cand cands[4] = {{st.pair.A_l, st.mean.theta_l},
                           {st.pair.A_k, st.mean.theta_k},
                           {weingarten_u(st.pair), st.mean.theta_u},
                           {weingarten_n(st.pair), st.mean.theta_n}};
    const Cand* best = &cands[0];
    for (const auto& cd : cands)
        if (std::abs(cd.tr) > std::abs(best->tr)) best = &cd;
    KappaData k;
    k.kappa_tilde = (1.0 / best->tr) * best->A;
    k.det_kappa = k.kappa_tilde.det();
    k.trace_residual = std::abs(k.kappa_tilde.trace() - 1.0);
    k.trace_relation_residual =
        std::abs(st.casorati.trB - st.mean.H2 * (1.0 - 2.0 * k.det_kappa));
    return k;
}

inline JointCase pseudo_ortho_joint_check(const ExtrinsicState& st, const Tolerances& tol = {}) {
    const PointClassification c = classify_point(st, tol);
    if (c.minimal || !c.pseudo_umbilical.value_or(false) || !c.ortho_umbilical.value_or(false))
        return JointCase::NotBoth;
    const double scale = st.pair.scale;
    const KappaData k = ortho_kappa(st, tol);
    const Sym2 two_kappa_dev = 2.0 * k.kappa_tilde - Sym2::identity();
    if (two_kappa_dev.frobenius() < tol.cls * scale) return JointCase::TotallyUmbilicalCase;
    if (std::abs(st.mean.H2) < tol.cls * scale * scale &&
        st.casorati.B.frobenius() < tol.cls * scale * scale)
        return JointCase::NullHSubgeodesicMOTSCase;
    return JointCase::NotBoth;
}

}  // namespace umbilic
