#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "femtodl/errors.hpp"
#include "femtodl/params.hpp"

#include <cmath>
#include <numbers>

using namespace femtodl;

namespace {

const char* kTable1 = R"({
  "power_macro_dbm": 43, "power_femto_dbm": 13, "wall_loss_linear": 0.5,
  "alpha": 4, "beta": 4, "radius_macro_m": 500, "radius_indoor_m": 20,
  "num_femtocells": 20, "num_cellular_users": 20, "num_home_users": 1,
  "shannon_gap_db": 3, "num_mod_levels": 8,
  "qos_omega_c": 0.01, "qos_omega_h": 0.1, "qos_epsilon": 0.01
})";

std::string with(const std::string& key, const std::string& value) {
    std::string s = kTable1;
    const auto pos = s.find("\"" + key + "\":");
    REQUIRE(pos != std::string::npos);
    const auto val_start = s.find(':', pos) + 1;
    auto val_end = s.find_first_of(",}", val_start);
    return s.substr(0, val_start) + " " + value + s.substr(val_end);
}

} // namespace

TEST_CASE("table-1 config loads and converts units") {
    const SystemParams p = load_params(kTable1);
    CHECK(p.p_macro_mw == doctest::Approx(std::pow(10.0, 4.3)).epsilon(1e-12));
    CHECK(p.p_femto_mw == doctest::Approx(std::pow(10.0, 1.3)).epsilon(1e-12));
    CHECK(p.shannon_gap == doctest::Approx(std::pow(10.0, 0.3)).epsilon(1e-12));
    CHECK(p.wall_loss == 0.5);
    CHECK(p.n_mod_levels == 8);
}

TEST_CASE("invalid configs are rejected") {
    // wall loss must be linear in (0, 1]
    CHECK_THROWS_AS((void)load_params(with("wall_loss_linear", "2.0")), ConfigError);
    // swapped powers with no wall loss: kappa < 1
    {
        std::string s = with("power_macro_dbm", "13");
        s = [&] {
            std::string t = s;
            const auto pos = t.find("\"power_femto_dbm\":");
            const auto vs = t.find(':', pos) + 1;
            const auto ve = t.find_first_of(",}", vs);
            return t.substr(0, vs) + " 43" + t.substr(ve);
        }();
        const auto pos = s.find("\"wall_loss_linear\":");
        const auto vs = s.find(':', pos) + 1;
        const auto ve = s.find_first_of(",}", vs);
        s = s.substr(0, vs) + " 1" + s.substr(ve);
        CHECK_THROWS_AS((void)load_params(s), ConfigError);
    }
    CHECK_THROWS_AS((void)load_params(with("alpha", "2.0")), ConfigError);
    CHECK_THROWS_AS((void)load_params(with("beta", "1.5")), ConfigError);
    CHECK_THROWS_AS((void)load_params(with("radius_indoor_m", "600")), ConfigError);
    CHECK_THROWS_AS((void)load_params(with("num_cellular_users", "0")), ConfigError);
    CHECK_THROWS_AS((void)load_params(with("qos_epsilon", "1.5")), ConfigError);
    CHECK_THROWS_AS((void)load_params("{}"), ConfigError);
    CHECK_THROWS_AS((void)load_params("not json"), ConfigError);

    // missing key reports which one
    std::string missing = kTable1;
    const auto pos = missing.find("\"alpha\": 4,");
    missing.erase(pos, std::string("\"alpha\": 4,").size());
    try {
        (void)load_params(missing);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }
}

TEST_CASE("home user count defaults to 1") {
    std::string s = kTable1;
    const auto pos = s.find("\"num_home_users\": 1,");
    s.erase(pos, std::string("\"num_home_users\": 1,").size());
    const SystemParams p = load_params(s);
    CHECK(p.n_home == 1.0);
}

TEST_CASE("derived constants at table-1 values") {
    const SystemParams p = load_params(kTable1);
    const DerivedConstants d = derive_constants(p);

    // kappa = 10^((43-13)/10) / 0.5
    CHECK(d.kappa == doctest::Approx(2000.0).epsilon(1e-12));
    // C_4 = pi^2/2
    CHECK(d.c_alpha ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0).epsilon(1e-14));
    // threshold distance reported as 130 m
    CHECK(std::abs(d.d_th_m - 130.0) < 1.0);
    CHECK(d.density ==
          doctest::Approx(20.0 / (std::numbers::pi * 500.0 * 500.0)).epsilon(1e-14));
    // split is exact by construction
    CHECK(d.n_f_inner + d.n_f_outer == p.n_femto);
    CHECK(d.c_alpha > 0.0);
    // k_geom * D_th^2 == 1/2 identically (definition of the threshold)
    CHECK(d.k_geom * d.d_th_m * d.d_th_m == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("derive_constants is deterministic") {
    const SystemParams p = load_params(kTable1);
    const DerivedConstants a = derive_constants(p);
    const DerivedConstants b = derive_constants(p);
    CHECK(a.kappa == b.kappa);
    CHECK(a.d_th_m == b.d_th_m);
    CHECK(a.c_alpha == b.c_alpha);
    CHECK(a.k_geom == b.k_geom);
}

TEST_CASE("metadata echoes the home-user default") {
    const SystemParams p = load_params(kTable1);
    const std::string meta = params_metadata(p);
    CHECK(meta.find("num_home_users=1") != std::string::npos);
    CHECK(meta.find("alpha=4") != std::string::npos);
}
