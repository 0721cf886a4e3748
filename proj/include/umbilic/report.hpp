#pragma once

// Grid runner and machine-readable reports. A run samples a cell-centered
// parameter grid, pushes every point through the extrinsic/classify/verify
// pipeline, and emits a JSON or CSV report.
//
// Reports are byte-deterministic for a fixed config and seed: rows are
// assembled in grid order regardless of thread count and floats are printed
// with 17 significant digits.

#include <cstdio>
#include <cstdlib>
#include <thread>

#include "umbilic/catalog.hpp"
#include "umbilic/verify.hpp"

namespace umbilic {

enum class RunMode { Classify, Verify, Full };
enum class OutputFormat { Json, Csv };

struct RunConfig {
    std::string spacetime_spec = "minkowski";
    std::string surface_spec = "sphere";
    int grid_u = 16, grid_v = 16;
    std::optional<std::array<double, 4>> ranges;  // u_min, u_max, v_min, v_max
    double gauge_beta = 0.0;
    RunMode mode = RunMode::Full;
    OutputFormat format = OutputFormat::Json;
    std::string out_path;  // empty = stdout
    std::uint64_t seed = 0;
    std::optional<double> tol_cls, tol_ver, fd_step;
};

struct GridRow {
    int iu = 0, iv = 0;
    double u = 0.0, v = 0.0;
    Vec4 x;
    double theta_l = 0.0, theta_k = 0.0, theta_u = 0.0, theta_n = 0.0;
    Vec4 H;
    double g_HH = 0.0;
    Vec4 G, star_G;
    double sigma_l = 0.0, sigma_k = 0.0;
    double commutator_norm = 0.0;
    UmbilicalStatus status = UmbilicalStatus::None;
    std::optional<Vec4> n_umb;
    std::optional<CausalClass> numb_causal;
    double causal_discriminant = 0.0;
    PointClassification cls;
    std::optional<double> s_u, s_v, ds;
    std::optional<double> gauss_residual, ricci_residual, tangent_normal_residual;
    std::optional<bool> tangent_normal_consistent, conformally_flat_consistent;
    std::optional<double> space_form_residual, ckv_residual, boost_drift;
    std::vector<std::string> expectation_failures;
};

struct CheckSummary {
    double max = 0.0;
    double tol = 0.0;
    int evaluated = 0;
    bool pass = true;
};

struct GridSummary {
    int n_rows = 0;
    int minimal = 0, totally_geodesic = 0, totally_umbilical = 0;
    int pseudo_umbilical = 0, ortho_umbilical = 0;
    int status_totally_umbilical = 0, status_unique_direction = 0, status_none = 0;
    int mots_points = 0, trapped_points = 0, weakly_trapped_points = 0;
    int expectation_failures = 0;
    CheckSummary gauss, ricci, tangent_normal, boost;
    int tangent_normal_inconsistent = 0, conformally_flat_inconsistent = 0;
    CheckSummary space_form, ckv;
    bool all_pass = true;
};

struct GridReport {
    RunConfig config;
    std::string spacetime_name, surface_name;
    bool analytic_path = true;
    Tolerances tolerances;
    std::vector<GridRow> rows;
    GridSummary summary;
};

// --------------------------------------------------------------------------
// "name:key=val,key=val" parsing for --spacetime and --surface

inline std::pair<std::string, ParamMap> parse_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    std::pair<std::string, ParamMap> out;
    out.first = spec.substr(0, colon);
    if (out.first.empty()) throw ConfigError("empty name in spec '" + spec + "'");
    if (colon == std::string::npos) return out;
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        const std::string kv = rest.substr(pos, comma - pos);
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("spec '" + spec + "': expected key=value at '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        char* end = nullptr;
        const double d = std::strtod(val.c_str(), &end);
        if (end == val.c_str() || *end != '\0')
            throw ConfigError("spec '" + spec + "': bad numeric value '" + val + "'");
        out.second.values[key] = d;
        pos = comma + 1;
    }
    return out;
}

namespace detail {

inline unsigned thread_budget(std::size_t n_items) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("UMBILIC_SCAN_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return std::min<std::size_t>(n, std::max<std::size_t>(n_items, 1));
}

inline double spot_beta(std::uint64_t seed, int row_index) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (row_index + 1)));
    std::uniform_real_distribution<double> b(-2.0, 2.0);
    return b(rng);
}

}  // namespace detail

inline GridReport run(const RunConfig& cfg) {
    GridReport rep;
    rep.config = cfg;

    auto [st_name, st_params] = parse_spec(cfg.spacetime_spec);
    auto [sf_name, sf_params] = parse_spec(cfg.surface_spec);
    const CatalogEntry& entry = find_entry(st_name);
    const SurfaceFamily& family = find_surface(entry, sf_name);
    SpacetimeModel model = entry.make(st_params);
    SurfaceModel surf = family.make(sf_params);
    if (cfg.fd_step) {
        model.fd_step = *cfg.fd_step;
        surf.fd_step = *cfg.fd_step;
    }
    rep.spacetime_name = model.name;
    rep.surface_name = surf.name;
    rep.analytic_path = model.analytic_path() && surf.analytic_path();

    Tolerances tol = Tolerances::for_models(model, surf);
    if (cfg.tol_cls) tol.cls = tol.eig = *cfg.tol_cls;
    if (cfg.tol_ver) tol.ver = *cfg.tol_ver;
    rep.tolerances = tol;

    if (cfg.grid_u < 2 || cfg.grid_v < 2)
        throw ConfigError("grid must be at least 2x2");
    double u0 = surf.u_min, u1 = surf.u_max, v0 = surf.v_min, v1 = surf.v_max;
    if (cfg.ranges) {
        u0 = (*cfg.ranges)[0];
        u1 = (*cfg.ranges)[1];
        v0 = (*cfg.ranges)[2];
        v1 = (*cfg.ranges)[3];
    }
    const double du = (u1 - u0) / cfg.grid_u;
    const double dv = (v1 - v0) / cfg.grid_v;

    const int n = cfg.grid_u * cfg.grid_v;
    rep.rows.resize(n);
    const bool with_conn = cfg.mode != RunMode::Classify;
    const auto* expectations = [&]() -> const std::vector<Expectation>* {
        auto it = entry.expectations.find(sf_name);
        return it == entry.expectations.end() ? nullptr : &it->second;
    }();

    const GaugeFn gauge =
        cfg.gauge_beta != 0.0 ? constant_gauge(cfg.gauge_beta) : GaugeFn{};

    auto compute_row = [&](int idx) {
        GridRow row;
        row.iu = idx / cfg.grid_v;
        row.iv = idx % cfg.grid_v;
        row.u = u0 + (row.iu + 0.5) * du;
        row.v = v0 + (row.iv + 0.5) * dv;

        const ExtrinsicState st =
            extrinsic_state_at(surf, model, row.u, row.v, gauge, with_conn);
        row.x = st.x;
        row.theta_l = st.mean.theta_l;
        row.theta_k = st.mean.theta_k;
        row.theta_u = st.mean.theta_u;
        row.theta_n = st.mean.theta_n;
        row.H = st.mean.H;
        row.g_HH = st.mean.H2;
        row.G = st.gdata.G;
        row.star_G = st.gdata.star_G;
        row.sigma_l = st.gdata.sigma_l;
        row.sigma_k = st.gdata.sigma_k;

        const UmbilicalResult ur = umbilical_direction(st.pair, st.nor, st.mean, tol);
        row.commutator_norm = ur.commutator_norm;
        row.status = ur.status;
        row.causal_discriminant = ur.causal_discriminant;
        if (ur.status == UmbilicalStatus::UniqueDirection) {
            row.n_umb = ur.n_umb;
            row.numb_causal = ur.causal;
        }
        row.cls = classify_point(st, tol);
        if (st.connection) {
            row.s_u = st.connection->s_u;
            row.s_v = st.connection->s_v;
            row.ds = st.connection->ds_on;
        }

        if (expectations) {
            for (const auto& e : *expectations)
                if (auto fail = e.check(st, row.cls, ur))
                    row.expectation_failures.push_back(e.name + ": " + *fail);
        }

        if (cfg.mode != RunMode::Classify) {
            const ResidualReport vr =
                verify_point(model, surf, st, tol, detail::spot_beta(cfg.seed, idx));
            row.gauss_residual = vr.gauss.residual;
            row.ricci_residual = vr.ricci.max_residual;
            row.tangent_normal_residual = vr.tangent_normal.max_residual;
            row.tangent_normal_consistent = vr.tangent_normal.consistent;
            if (vr.conformally_flat) row.conformally_flat_consistent = vr.conformally_flat->consistent;
            if (vr.space_form) row.space_form_residual = vr.space_form->residual_space_form;
            if (vr.ckv) row.ckv_residual = vr.ckv->residual;
            row.boost_drift = vr.boost_drift;
        }
        return row;
    };

    const unsigned n_threads = detail::thread_budget(n);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n_threads);
    std::vector<int> error_rows(n_threads, n);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            for (int idx = t; idx < n; idx += n_threads) {
                try {
                    rep.rows[idx] = compute_row(idx);
                } catch (...) {
                    if (idx < error_rows[t]) {
                        error_rows[t] = idx;
                        errors[t] = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    int first_err = n;
    std::exception_ptr first;
    for (unsigned t = 0; t < n_threads; ++t)
        if (errors[t] && error_rows[t] < first_err) {
            first_err = error_rows[t];
            first = errors[t];
        }
    if (first) std::rethrow_exception(first);

    // summary: a deterministic reduction over rows, in grid order
    GridSummary& s = rep.summary;
    s.n_rows = n;
    s.gauss.tol = tol.ver;
    s.ricci.tol = tol.ds_floor;
    s.tangent_normal.tol = tol.ds_floor;
    s.boost.tol = tol.gauge;
    s.space_form.tol = tol.ds_floor;
    s.ckv.tol = tol.ds_floor;
    for (const GridRow& r : rep.rows) {
        s.minimal += r.cls.minimal;
        s.totally_geodesic += r.cls.totally_geodesic;
        s.totally_umbilical += r.cls.totally_umbilical;
        s.pseudo_umbilical += r.cls.pseudo_umbilical.value_or(false);
        s.ortho_umbilical += r.cls.ortho_umbilical.value_or(false);
        s.status_totally_umbilical += r.status == UmbilicalStatus::TotallyUmbilical;
        s.status_unique_direction += r.status == UmbilicalStatus::UniqueDirection;
        s.status_none += r.status == UmbilicalStatus::None;
        s.mots_points += r.cls.tags.mots_point;
        s.trapped_points += r.cls.tags.trapped_point;
        s.weakly_trapped_points += r.cls.tags.weakly_trapped_point;
        s.expectation_failures += static_cast<int>(r.expectation_failures.size());
        auto fold = [](CheckSummary& c, const std::optional<double>& v) {
            if (!v) return;
            ++c.evaluated;
            c.max = std::max(c.max, *v);
            if (*v >= c.tol) c.pass = false;
        };
        fold(s.gauss, r.gauss_residual);
        fold(s.ricci, r.ricci_residual);
        fold(s.tangent_normal, r.tangent_normal_residual);
        fold(s.boost, r.boost_drift);
        fold(s.space_form, r.space_form_residual);
        fold(s.ckv, r.ckv_residual);
        if (r.tangent_normal_consistent && !*r.tangent_normal_consistent) ++s.tangent_normal_inconsistent;
        if (r.conformally_flat_consistent && !*r.conformally_flat_consistent) ++s.conformally_flat_inconsistent;
    }
    // the tangent-normal criterion's raw max is only meaningful together with the per-row
    // consistency verdict (non-commuting points are supposed to violate it)
    s.tangent_normal.pass = s.tangent_normal_inconsistent == 0;

    s.all_pass = s.expectation_failures == 0;
    if (cfg.mode != RunMode::Classify) {
        s.all_pass = s.all_pass && s.gauss.pass && s.ricci.pass && s.tangent_normal.pass &&
                     s.boost.pass && s.space_form.pass && s.ckv.pass &&
                     s.conformally_flat_inconsistent == 0;
    }
    return rep;
}

inline int exit_code(const GridReport& rep) { return rep.summary.all_pass ? 0 : 1; }

// --------------------------------------------------------------------------
// serialization

namespace detail {

inline std::string fmt(double x) {
    if (x == 0.0) return "0";  // collapse negative zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline const char* to_string(UmbilicalStatus s) {
    switch (s) {
        case UmbilicalStatus::TotallyUmbilical: return "totally-umbilical";
        case UmbilicalStatus::UniqueDirection: return "unique-direction";
        default: return "none";
    }
}
inline const char* to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Timelike: return "timelike";
        case CausalClass::Spacelike: return "spacelike";
        default: return "null";
    }
}
inline const char* to_string(HCausal c) {
    switch (c) {
        case HCausal::Zero: return "zero";
        case HCausal::Timelike: return "timelike";
        case HCausal::Null: return "null";
        default: return "spacelike";
    }
}
inline const char* to_string(TimeOrientation o) {
    switch (o) {
        case TimeOrientation::Future: return "future";
        case TimeOrientation::Past: return "past";
        default: return "na";
    }
}
inline const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::Classify: return "classify";
        case RunMode::Verify: return "verify";
        default: return "full";
    }
}

inline std::vector<std::string> tag_list(const PointClassification::Tags& t) {
    std::vector<std::string> out;
    if (t.mots_point) out.push_back("MOTS-point");
    if (t.marginally_trapped_point) out.push_back("marginally-trapped-point");
    if (t.weakly_trapped_point) out.push_back("weakly-trapped-point");
    if (t.trapped_point) out.push_back("trapped-point");
    if (t.null_star_point) out.push_back("null-star-point");
    return out;
}

}  // namespace detail

inline std::string to_json(const GridReport& rep) {
    std::string out;
    out.reserve(1 << 20);
    using detail::fmt;
    auto vec4 = [&](const Vec4& v) {
        return "[" + fmt(v[0]) + "," + fmt(v[1]) + "," + fmt(v[2]) + "," + fmt(v[3]) + "]";
    };
    auto opt = [&](const std::optional<double>& v) { return v ? fmt(*v) : "null"; };
    auto optb = [&](const std::optional<bool>& v) {
        return v ? (*v ? std::string("true") : std::string("false")) : std::string("null");
    };

    out += "{\"schema\":\"umbilic-scan/1\",";
    out += "\"config\":{";
    out += "\"spacetime\":\"" + rep.config.spacetime_spec + "\",";
    out += "\"surface\":\"" + rep.config.surface_spec + "\",";
    out += "\"grid\":[" + std::to_string(rep.config.grid_u) + "," +
           std::to_string(rep.config.grid_v) + "],";
    out += "\"mode\":\"" + std::string(detail::to_string(rep.config.mode)) + "\",";
    out += "\"gauge_beta\":" + fmt(rep.config.gauge_beta) + ",";
    out += "\"seed\":" + std::to_string(rep.config.seed) + ",";
    out += "\"analytic_path\":" + std::string(rep.analytic_path ? "true" : "false") + ",";
    out += "\"tol_cls\":" + fmt(rep.tolerances.cls) + ",";
    out += "\"tol_ver\":" + fmt(rep.tolerances.ver) + "},";

    out += "\"rows\":[";
    bool first_row = true;
    for (const GridRow& r : rep.rows) {
        if (!first_row) out += ",";
        first_row = false;
        out += "{";
        out += "\"iu\":" + std::to_string(r.iu) + ",\"iv\":" + std::to_string(r.iv) + ",";
        out += "\"u\":" + fmt(r.u) + ",\"v\":" + fmt(r.v) + ",";
        out += "\"x\":" + vec4(r.x) + ",";
        out += "\"theta_l\":" + fmt(r.theta_l) + ",\"theta_k\":" + fmt(r.theta_k) + ",";
        out += "\"theta_u\":" + fmt(r.theta_u) + ",\"theta_n\":" + fmt(r.theta_n) + ",";
        out += "\"H\":" + vec4(r.H) + ",\"g_HH\":" + fmt(r.g_HH) + ",";
        out += "\"G\":" + vec4(r.G) + ",\"star_G\":" + vec4(r.star_G) + ",";
        out += "\"sigma_l\":" + fmt(r.sigma_l) + ",\"sigma_k\":" + fmt(r.sigma_k) + ",";
        out += "\"commutator_norm\":" + fmt(r.commutator_norm) + ",";
        out += "\"umb_status\":\"" + std::string(detail::to_string(r.status)) + "\",";
        out += "\"N_umb\":" + (r.n_umb ? vec4(*r.n_umb) : std::string("null")) + ",";
        out += "\"numb_causal\":" +
               (r.numb_causal ? "\"" + std::string(detail::to_string(*r.numb_causal)) + "\""
                              : std::string("null")) +
               ",";
        out += "\"causal_discriminant\":" + fmt(r.causal_discriminant) + ",";
        out += "\"minimal\":" + std::string(r.cls.minimal ? "true" : "false") + ",";
        out += "\"totally_geodesic\":" + std::string(r.cls.totally_geodesic ? "true" : "false") +
               ",";
        out += "\"totally_umbilical\":" +
               std::string(r.cls.totally_umbilical ? "true" : "false") + ",";
        out += "\"pseudo_umbilical\":" + optb(r.cls.pseudo_umbilical) + ",";
        out += "\"ortho_umbilical\":" + optb(r.cls.ortho_umbilical) + ",";
        out += "\"subgeodesic_along\":" +
               (r.cls.subgeodesic_along ? vec4(*r.cls.subgeodesic_along) : std::string("null")) +
               ",";
        out += "\"dim_N1\":" + std::to_string(r.cls.dim_first_normal_space) + ",";
        out += "\"H_causal\":\"" + std::string(detail::to_string(r.cls.h_causal)) + "\",";
        out += "\"H_orientation\":\"" + std::string(detail::to_string(r.cls.h_orientation)) +
               "\",";
        out += "\"sign_theta_l\":" + std::to_string(r.cls.sign_theta_l) + ",";
        out += "\"sign_theta_k\":" + std::to_string(r.cls.sign_theta_k) + ",";
        out += "\"tags\":[";
        bool ft = true;
        for (const auto& t : detail::tag_list(r.cls.tags)) {
            if (!ft) out += ",";
            ft = false;
            out += "\"" + t + "\"";
        }
        out += "],";
        out += "\"s_u\":" + opt(r.s_u) + ",\"s_v\":" + opt(r.s_v) + ",\"ds\":" + opt(r.ds) + ",";
        out += "\"gauss_residual\":" + opt(r.gauss_residual) + ",";
        out += "\"ricci_residual\":" + opt(r.ricci_residual) + ",";
        out += "\"tangent_normal_residual\":" + opt(r.tangent_normal_residual) + ",";
        out += "\"tangent_normal_consistent\":" + optb(r.tangent_normal_consistent) + ",";
        out += "\"conformally_flat_consistent\":" + optb(r.conformally_flat_consistent) + ",";
        out += "\"space_form_residual\":" + opt(r.space_form_residual) + ",";
        out += "\"ckv_residual\":" + opt(r.ckv_residual) + ",";
        out += "\"boost_drift\":" + opt(r.boost_drift) + ",";
        out += "\"expectation_failures\":[";
        ft = true;
        for (const auto& f : r.expectation_failures) {
            if (!ft) out += ",";
            ft = false;
            out += "\"" + f + "\"";
        }
        out += "]}";
    }
    out += "],";

    const GridSummary& s = rep.summary;
    auto check = [&](const char* name, const CheckSummary& c) {
        return "\"" + std::string(name) + "\":{\"max\":" + fmt(c.max) + ",\"tol\":" + fmt(c.tol) +
               ",\"evaluated\":" + std::to_string(c.evaluated) +
               ",\"pass\":" + (c.pass ? "true" : "false") + "}";
    };
    out += "\"summary\":{";
    out += "\"n_rows\":" + std::to_string(s.n_rows) + ",";
    out += "\"minimal\":" + std::to_string(s.minimal) + ",";
    out += "\"totally_geodesic\":" + std::to_string(s.totally_geodesic) + ",";
    out += "\"totally_umbilical\":" + std::to_string(s.totally_umbilical) + ",";
    out += "\"pseudo_umbilical\":" + std::to_string(s.pseudo_umbilical) + ",";
    out += "\"ortho_umbilical\":" + std::to_string(s.ortho_umbilical) + ",";
    out += "\"status_totally_umbilical\":" + std::to_string(s.status_totally_umbilical) + ",";
    out += "\"status_unique_direction\":" + std::to_string(s.status_unique_direction) + ",";
    out += "\"status_none\":" + std::to_string(s.status_none) + ",";
    out += "\"mots_points\":" + std::to_string(s.mots_points) + ",";
    out += "\"trapped_points\":" + std::to_string(s.trapped_points) + ",";
    out += "\"weakly_trapped_points\":" + std::to_string(s.weakly_trapped_points) + ",";
    out += "\"expectation_failures\":" + std::to_string(s.expectation_failures) + ",";
    out += check("gauss", s.gauss) + ",";
    out += check("ricci", s.ricci) + ",";
    out += check("tangent_normal", s.tangent_normal) + ",";
    out += check("boost_invariance", s.boost) + ",";
    out += check("space_form", s.space_form) + ",";
    out += check("ckv", s.ckv) + ",";
    out += "\"tangent_normal_inconsistent\":" + std::to_string(s.tangent_normal_inconsistent) + ",";
    out += "\"conformally_flat_inconsistent\":" + std::to_string(s.conformally_flat_inconsistent) + ",";
    out += "\"all_pass\":" + std::string(s.all_pass ? "true" : "false");
    out += "}}";
    return out;
}

inline const std::vector<std::string>& csv_header() {
    static const std::vector<std::string> h = {
        "iu", "iv", "u", "v", "x_0", "x_1", "x_2", "x_3",
        "theta_l", "theta_k", "theta_u", "theta_n",
        "H_0", "H_1", "H_2", "H_3", "g_HH",
        "G_0", "G_1", "G_2", "G_3", "star_G_0", "star_G_1", "star_G_2", "star_G_3",
        "sigma_l", "sigma_k", "commutator_norm", "umb_status",
        "N_umb_0", "N_umb_1", "N_umb_2", "N_umb_3", "numb_causal", "causal_discriminant",
        "minimal", "totally_geodesic", "totally_umbilical", "pseudo_umbilical",
        "ortho_umbilical",
        "subgeodesic_0", "subgeodesic_1", "subgeodesic_2", "subgeodesic_3",
        "dim_N1", "H_causal", "H_orientation",
        "sign_theta_l", "sign_theta_k", "tags",
        "s_u", "s_v", "ds",
        "gauss_residual", "ricci_residual", "tangent_normal_residual", "tangent_normal_consistent",
        "conformally_flat_consistent", "space_form_residual", "ckv_residual", "boost_drift",
        "expectation_failures"};
    return h;
}

inline std::string to_csv(const GridReport& rep) {
    using detail::fmt;
    std::string out;
    out.reserve(1 << 20);
    const auto& header = csv_header();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ",";
        out += header[i];
    }
    out += "\n";
    auto cell_opt = [&](const std::optional<double>& v) { return v ? fmt(*v) : "na"; };
    auto cell_optb = [&](const std::optional<bool>& v) {
        return v ? (*v ? std::string("true") : std::string("false")) : std::string("na");
    };
    auto cell_bool = [](bool b) { return b ? "true" : "false"; };
    for (const GridRow& r : rep.rows) {
        std::vector<std::string> cells;
        cells.push_back(std::to_string(r.iu));
        cells.push_back(std::to_string(r.iv));
        cells.push_back(fmt(r.u));
        cells.push_back(fmt(r.v));
        for (int i = 0; i < 4; ++i) cells.push_back(fmt(r.x[i]));
        cells.push_back(fmt(r.theta_l));
        cells.push_back(fmt(r.theta_k));
        cells.push_back(fmt(r.theta_u));
        cells.push_back(fmt(r.theta_n));
        for (int i = 0; i < 4; ++i) cells.push_back(fmt(r.H[i]));
        cells.push_back(fmt(r.g_HH));
        for (int i = 0; i < 4; ++i) cells.push_back(fmt(r.G[i]));
        for (int i = 0; i < 4; ++i) cells.push_back(fmt(r.star_G[i]));
        cells.push_back(fmt(r.sigma_l));
        cells.push_back(fmt(r.sigma_k));
        cells.push_back(fmt(r.commutator_norm));
        cells.push_back(detail::to_string(r.status));
        for (int i = 0; i < 4; ++i)
            cells.push_back(r.n_umb ? fmt((*r.n_umb)[i]) : "na");
        cells.push_back(r.numb_causal ? detail::to_string(*r.numb_causal) : "na");
        cells.push_back(fmt(r.causal_discriminant));
        cells.push_back(cell_bool(r.cls.minimal));
        cells.push_back(cell_bool(r.cls.totally_geodesic));
        cells.push_back(cell_bool(r.cls.totally_umbilical));
        cells.push_back(cell_optb(r.cls.pseudo_umbilical));
        cells.push_back(cell_optb(r.cls.ortho_umbilical));
        for (int i = 0; i < 4; ++i)
            cells.push_back(r.cls.subgeodesic_along ? fmt((*r.cls.subgeodesic_along)[i]) : "na");
        cells.push_back(std::to_string(r.cls.dim_first_normal_space));
        cells.push_back(detail::to_string(r.cls.h_causal));
        cells.push_back(detail::to_string(r.cls.h_orientation));
        cells.push_back(std::to_string(r.cls.sign_theta_l));
        cells.push_back(std::to_string(r.cls.sign_theta_k));
        {
            std::string tags;
            for (const auto& t : detail::tag_list(r.cls.tags)) {
                if (!tags.empty()) tags += ";";
                tags += t;
            }
            cells.push_back(tags);
        }
        cells.push_back(cell_opt(r.s_u));
        cells.push_back(cell_opt(r.s_v));
        cells.push_back(cell_opt(r.ds));
        cells.push_back(cell_opt(r.gauss_residual));
        cells.push_back(cell_opt(r.ricci_residual));
        cells.push_back(cell_opt(r.tangent_normal_residual));
        cells.push_back(cell_optb(r.tangent_normal_consistent));
        cells.push_back(cell_optb(r.conformally_flat_consistent));
        cells.push_back(cell_opt(r.space_form_residual));
        cells.push_back(cell_opt(r.ckv_residual));
        cells.push_back(cell_opt(r.boost_drift));
        {
            std::string fails;
            for (const auto& f : r.expectation_failures) {
                if (!fails.empty()) fails += ";";
                fails += f;
            }
            cells.push_back(fails);
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ",";
            out += cells[i];
        }
        out += "\n";
    }
    return out;
}

}  // namespace umbilic
