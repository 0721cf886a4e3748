#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "test_common.hpp"
#include "umbilic/report.hpp"

using namespace umbilic;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// rebuild the CSV cell a JSON value should have produced
std::string cell_of(const json& v) {
    if (v.is_null()) return "na";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    return detail::fmt(v.get<double>());
}

}  // namespace

TEST_CASE("spec parsing") {
    auto [name, params] = parse_spec("sphere:r=2,t0=0.5");
    REQUIRE(name == "sphere");
    REQUIRE(params.get("r", 0.0) == 2.0);
    REQUIRE(params.get("t0", 0.0) == 0.5);
    REQUIRE(params.get("missing", 7.0) == 7.0);
    REQUIRE(parse_spec("minkowski").first == "minkowski");
    REQUIRE_THROWS_AS(parse_spec("sphere:r"), ConfigError);
    REQUIRE_THROWS_AS(parse_spec("sphere:r=abc"), ConfigError);
    REQUIRE_THROWS_AS(parse_spec(":r=1"), ConfigError);
}

TEST_CASE("classify run on the minkowski sphere") {
    RunConfig cfg;
    cfg.spacetime_spec = "minkowski";
    cfg.surface_spec = "sphere:r=2";
    cfg.grid_u = 4;
    cfg.grid_v = 8;
    cfg.mode = RunMode::Classify;
    const GridReport rep = run(cfg);
    REQUIRE(rep.summary.n_rows == 32);
    REQUIRE(static_cast<int>(rep.rows.size()) == 32);
    REQUIRE(rep.summary.totally_umbilical == 32);
    REQUIRE(rep.summary.status_totally_umbilical == 32);
    REQUIRE(rep.summary.expectation_failures == 0);
    REQUIRE(rep.summary.all_pass);
    REQUIRE(exit_code(rep) == 0);
    // summary counts are re-derivable from the rows
    int tu = 0;
    for (const auto& r : rep.rows) tu += r.cls.totally_umbilical;
    REQUIRE(tu == rep.summary.totally_umbilical);
}

TEST_CASE("classify run on the non-commuting graph fixture") {
    RunConfig cfg;
    cfg.spacetime_spec = "minkowski";
    cfg.surface_spec = "graph-noncommuting";
    cfg.grid_u = 4;
    cfg.grid_v = 4;
    cfg.mode = RunMode::Classify;
    const GridReport rep = run(cfg);
    REQUIRE(rep.summary.status_none == 16);
    REQUIRE(rep.summary.all_pass);
}

TEST_CASE("domain errors surface as exceptions") {
    RunConfig cfg;
    cfg.spacetime_spec = "schwarzschild:M=1";
    cfg.surface_spec = "rsphere:r=1.5";
    cfg.grid_u = 4;
    cfg.grid_v = 4;
    cfg.mode = RunMode::Classify;
    REQUIRE_THROWS_AS(run(cfg), OutOfChart);
    RunConfig bad = cfg;
    bad.spacetime_spec = "nowhere";
    REQUIRE_THROWS_AS(run(bad), ConfigError);
    RunConfig tiny = cfg;
    tiny.spacetime_spec = "minkowski";
    tiny.surface_spec = "sphere";
    tiny.grid_u = 1;
    REQUIRE_THROWS_AS(run(tiny), ConfigError);
}

TEST_CASE("verify run is reproducible and thread-count independent") {
    RunConfig cfg;
    cfg.spacetime_spec = "minkowski";
    cfg.surface_spec = "torus";
    cfg.grid_u = 3;
    cfg.grid_v = 4;
    cfg.mode = RunMode::Full;
    cfg.seed = 42;
    const std::string a = to_json(run(cfg));
    const std::string b = to_json(run(cfg));
    REQUIRE(a == b);
    setenv("UMBILIC_SCAN_THREADS", "1", 1);
    const std::string c = to_json(run(cfg));
    unsetenv("UMBILIC_SCAN_THREADS");
    REQUIRE(a == c);
    // all checks pass on the torus in full mode
    const GridReport rep = run(cfg);
    REQUIRE(rep.summary.all_pass);
    REQUIRE(rep.summary.gauss.pass);
    REQUIRE(rep.summary.ricci.pass);
    REQUIRE(rep.summary.tangent_normal.pass);
    REQUIRE(rep.summary.boost.pass);
}

TEST_CASE("json and csv encode the same rows") {
    RunConfig cfg;
    cfg.spacetime_spec = "flrw";
    cfg.surface_spec = "slice-sphere";
    cfg.grid_u = 3;
    cfg.grid_v = 3;
    cfg.mode = RunMode::Full;
    cfg.seed = 7;
    const GridReport rep = run(cfg);
    const json parsed = json::parse(to_json(rep));
    REQUIRE(parsed["schema"] == "umbilic-scan/1");
    REQUIRE(parsed["rows"].size() == 9);

    std::istringstream csv(to_csv(rep));
    std::string line;
    REQUIRE(std::getline(csv, line));
    const auto header = split(line, ',');
    REQUIRE(header == csv_header());

    for (const auto& jrow : parsed["rows"]) {
        REQUIRE(std::getline(csv, line));
        const auto cells = split(line, ',');
        REQUIRE(cells.size() == header.size());
        auto expect = [&](const std::string& col, const std::string& want) {
            for (std::size_t i = 0; i < header.size(); ++i)
                if (header[i] == col) {
                    INFO(col);
                    REQUIRE(cells[i] == want);
                    return;
                }
            FAIL("missing column " + col);
        };
        for (const char* scalar :
             {"u", "v", "theta_l", "theta_k", "theta_u", "theta_n", "g_HH", "sigma_l",
              "sigma_k", "commutator_norm", "causal_discriminant", "s_u", "s_v", "ds",
              "gauss_residual", "ricci_residual", "tangent_normal_residual", "space_form_residual",
              "ckv_residual", "boost_drift"})
            expect(scalar, cell_of(jrow[scalar]));
        for (const char* vecf : {"x", "H", "G", "star_G", "N_umb"}) {
            for (int i = 0; i < 4; ++i) {
                const std::string col = std::string(vecf) + "_" + std::to_string(i);
                expect(col, jrow[vecf].is_null() ? "na" : cell_of(jrow[vecf][i]));
            }
        }
        for (const char* b :
             {"minimal", "totally_geodesic", "totally_umbilical", "pseudo_umbilical",
              "ortho_umbilical", "tangent_normal_consistent", "conformally_flat_consistent"})
            expect(b, cell_of(jrow[b]));
        for (const char* s : {"umb_status", "numb_causal", "H_causal", "H_orientation"})
            expect(s, cell_of(jrow[s]));
        for (const char* n : {"iu", "iv", "dim_N1", "sign_theta_l", "sign_theta_k"})
            expect(n, std::to_string(jrow[n].get<int>()));
        for (int i = 0; i < 4; ++i) {
            const std::string col = "subgeodesic_" + std::to_string(i);
            expect(col, jrow["subgeodesic_along"].is_null()
                            ? "na"
                            : cell_of(jrow["subgeodesic_along"][i]));
        }
        std::string tags;
        for (const auto& t : jrow["tags"]) {
            if (!tags.empty()) tags += ";";
            tags += t.get<std::string>();
        }
        expect("tags", tags);
    }
}

TEST_CASE("check failures produce exit code 1") {
    RunConfig cfg;
    cfg.spacetime_spec = "minkowski";
    cfg.surface_spec = "sphere";
    cfg.grid_u = 2;
    cfg.grid_v = 2;
    cfg.mode = RunMode::Verify;
    cfg.tol_ver = 1e-30;  // unattainable, every gauss residual fails
    const GridReport rep = run(cfg);
    REQUIRE(!rep.summary.gauss.pass);
    REQUIRE(!rep.summary.all_pass);
    REQUIRE(exit_code(rep) == 1);
}

TEST_CASE("gauge flag feeds the pipeline") {
    RunConfig cfg;
    cfg.spacetime_spec = "minkowski";
    cfg.surface_spec = "torus";
    cfg.grid_u = 2;
    cfg.grid_v = 2;
    cfg.mode = RunMode::Classify;
    const GridReport base = run(cfg);
    cfg.gauge_beta = 1.1;
    const GridReport boosted = run(cfg);
    // expansions rescale, invariants do not
    REQUIRE(std::abs(boosted.rows[0].theta_l -
                     std::exp(1.1) * base.rows[0].theta_l) < 1e-9);
    REQUIRE(testutil::max_abs_diff(boosted.rows[0].H, base.rows[0].H) < 1e-9);
    REQUIRE(boosted.rows[0].status == base.rows[0].status);
}
