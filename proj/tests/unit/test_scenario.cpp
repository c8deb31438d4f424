#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qmem/errors.hpp"
#include "qmem/scenario.hpp"

using namespace qmem;
using namespace qmem::scenario;

namespace {

std::string override_one(const std::string& text, const std::string& item) {
    const std::vector<std::string> items{item};
    return apply_overrides(text, items);
}

std::string field_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string direct_document(double alpha, double beta) {
    std::ostringstream os;
    os << R"({"schema_version": 1, "coupling_scheme": "both",
      "mode": {"omega_rad_per_ns": 6.16, "alpha": )"
       << format_double(alpha) << R"(, "beta": )" << format_double(beta) << R"(, "cap_sigma_fF": 3.6},
      "drive": {"flux_offset": "pi/2"},
      "initial_state": {"theta": ["pi/4", "pi/3"], "phi": ["pi/2", "pi/2"]},
      "duration_periods": 6})";
    return os.str();
}

}  // namespace

TEST_CASE("every preset parses and carries its quoted values") {
    const auto names = preset_names();
    CHECK(names.size() == 8);
    for (const auto& n : names) {
        const auto cfg = parse_config(preset_json(n));
        CHECK(cfg.name == n);
        CHECK_FALSE(cfg.notes.empty());
        CHECK(cfg.drive[0].flux_offset == doctest::Approx(kPi / 2));
    }
    const auto f2a = parse_config(preset_json("fig2a"));
    CHECK(f2a.theta[0] == doctest::Approx(kPi / 4));
    CHECK(f2a.phase[0] == doctest::Approx(kPi / 2));
    CHECK(f2a.theta[1] == doctest::Approx(kPi / 3));
    CHECK(f2a.phase[1] == doctest::Approx(kPi / 2));
    CHECK(f2a.circuit->cap_sigma[0] == doctest::Approx(3.6e-15));
    CHECK(f2a.circuit->coupling_capacitance == doctest::Approx(0.9e-15));
    CHECK(f2a.circuit->inductance[1] == doctest::Approx(6.1e-6));
    CHECK(*f2a.reference->omega == 5.03);

    const auto f2b = parse_config(preset_json("fig2b"));
    CHECK(f2b.theta[1] == doctest::Approx(kPi / 4));
    CHECK(f2b.phase[1] == 0.0);

    const auto f3 = parse_config(preset_json("fig3_nonidentical"));
    REQUIRE(f3.direct.has_value());
    CHECK(f3.direct->omega == std::array<double, 2>{6.0, 8.0});

    const auto d = parse_config(preset_json("appD_both"));
    CHECK(d.scheme == CouplingScheme::Both);
    CHECK(d.circuit->coupling_capacitance > 0.0);
    CHECK(d.circuit->coupling_inductance.has_value());

    CHECK_THROWS_AS(preset_json("fig9"), ConfigError);
}

TEST_CASE("validation names the offending field") {
    const std::string base = preset_json("fig2a");
    CHECK(field_of(override_one(base, "circuit.cap_sigma_fF=[-3.6, 3.6]")) == "circuit.cap_sigma_fF[0]");
    CHECK(field_of(override_one(base, "duration_periods=0.5")) == "duration_periods");
    CHECK(field_of(override_one(base, "schema_version=2")) == "schema_version");
    CHECK(field_of(override_one(base, "initial_state.theta=[4, 0]")) == "initial_state.theta[0]");
    CHECK(field_of(override_one(base, "initial_state.phi=\"2*pi\"")) == "initial_state.phi[0]");
    CHECK(field_of(override_one(base, "coupling_scheme=\"inductive\"")) == "coupling_scheme");
    CHECK(field_of(override_one(base, "circuit.bogus=1")) == "circuit.bogus");
    CHECK(field_of(override_one(base, "mode={\"omega_rad_per_ns\": 6, \"cap_sigma_fF\": 3.6}")) == "circuit");
    CHECK(field_of(override_one(base, "drive.amplitude=\"two pi\"")) == "drive.amplitude");
    CHECK(field_of("{not json") == "<document>");
    CHECK_THROWS_AS(override_one(base, "no_equals_sign"), ConfigError);
    CHECK_THROWS_AS(override_one(base, "circuit.cap_sigma_fF.7=1"), ConfigError);
}

TEST_CASE("angles and overrides") {
    const std::string base = preset_json("fig2a");
    auto cfg = parse_config(override_one(base, "initial_state.theta=[\"3*pi/4\", \"0.5pi\"]"));
    CHECK(cfg.theta[0] == doctest::Approx(3 * kPi / 4));
    CHECK(cfg.theta[1] == doctest::Approx(kPi / 2));
    cfg = parse_config(override_one(base, "name=renamed"));
    CHECK(cfg.name == "renamed");
    cfg = parse_config(override_one(base, "circuit.cap_sigma_fF.1=2.6"));
    CHECK(cfg.circuit->cap_sigma[1] == doctest::Approx(2.6e-15));
    CHECK(*scalar_at(base, "circuit.coupling_capacitance_fF") == 0.9);
    CHECK_THROWS_AS(scalar_at(base, "circuit"), ConfigError);
    CHECK_THROWS_AS(scalar_at(base, "circuit.nothing"), ConfigError);
}

TEST_CASE("fig2a run: cross-check, loops and the frequency report") {
    const auto r = run(parse_config(preset_json("fig2a")));
    CHECK(r.crosscheck_max < 1e-6);
    CHECK(r.two_level_physicality.ok());
    CHECK(r.exact_physicality.ok());
    CHECK(r.concurrence.value.front() < 1e-10);
    CHECK(r.loops[0].size() >= 20);
    CHECK(r.system.mode.omega[0] == doctest::Approx(6.160).epsilon(1e-3));
    CHECK(r.frequencies.symmetric_mode == doctest::Approx(1.2 * r.system.mode.omega[0]).epsilon(1e-12));
    CHECK(r.two_level_deviation > 1e-3);  // the two-level model does not close on first moments
    CHECK_NOTHROW(enforce_crosscheck(r));
}

TEST_CASE("uncoupled runs give one loop per drive period") {
    const auto cfg = parse_config(override_one(preset_json("fig3_identical"), "circuit.coupling_capacitance_fF=0"));
    const auto r = run(cfg);
    CHECK(r.system.mode.exchange_coupling == 0.0);
    CHECK(r.loops[0].size() + 1 >= static_cast<std::size_t>(cfg.duration_periods));
    CHECK(r.loops[0].size() <= static_cast<std::size_t>(cfg.duration_periods));
    for (double c : r.concurrence.value) CHECK(c < 1e-8);
}

TEST_CASE("bundle files are byte-identical across runs") {
    const auto cfg = parse_config(override_one(preset_json("fig5"), "duration_periods=4"));
    const auto tmp = std::filesystem::temp_directory_path() / "qmem_unit_bundle";
    std::filesystem::remove_all(tmp);
    write_bundle(run(cfg), tmp / "a");
    write_bundle(run(cfg), tmp / "b");
    for (const char* f : {"timeseries.csv", "loops.csv", "formfactor.csv", "summary.json"}) {
        const auto a = slurp(tmp / "a" / f);
        CHECK_FALSE(a.empty());
        CHECK(a == slurp(tmp / "b" / f));
    }
    const auto header = slurp(tmp / "a" / "timeseries.csv").substr(0, 120);
    CHECK(header.rfind("t_ns,n1,phi1,n2,phi2,V1_V,I1_A,V2_V,I2_A,Gamma1,Gamma2,concurrence,crosscheck_residual\r\n", 0) == 0);
    std::filesystem::remove_all(tmp);
}

TEST_CASE("sweeps") {
    const std::string base = override_one(preset_json("fig2a"), "duration_periods=4");
    const std::vector<double> zero{0.0};
    const auto rows = sweep(base, "circuit.coupling_capacitance_fF", zero);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].exchange_coupling == 0.0);
    CHECK(rows[0].peak_concurrence < 1e-10);

    CHECK_THROWS_AS(sweep(base, "initial_state", zero), ConfigError);
    CHECK_THROWS_AS(sweep(base, "circuit.cap_sigma_fF", zero), ConfigError);

    const std::vector<double> values{0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4};
    const auto serial = sweep(base, "circuit.coupling_capacitance_fF", values, 1);
    const auto parallel = sweep(base, "circuit.coupling_capacitance_fF", values, 4);
    CHECK(sweep_csv(serial, "cc") == sweep_csv(parallel, "cc"));
    for (std::size_t k = 0; k < values.size(); ++k) CHECK(parallel[k].value == values[k]);
}

TEST_CASE("only alpha - beta matters") {
    for (double x : {0.1, 0.25}) {
        const auto capacitive = run(parse_config(direct_document(0.0, x)));
        const auto inductive = run(parse_config(direct_document(-x, 0.0)));
        CHECK(capacitive.system.mode.exchange_coupling == doctest::Approx(inductive.system.mode.exchange_coupling));
        REQUIRE(capacitive.concurrence.value.size() == inductive.concurrence.value.size());
        double worst = 0.0;
        for (std::size_t k = 0; k < capacitive.concurrence.value.size(); ++k) {
            worst = std::max(worst, std::abs(capacitive.concurrence.value[k] - inductive.concurrence.value[k]));
        }
        CHECK(worst < 1e-8);
        CHECK(*std::max_element(capacitive.concurrence.value.begin(), capacitive.concurrence.value.end()) > 1e-3);
    }
}

TEST_CASE("shortest round-trip formatting") {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -4.45e-5, 0.0, 1e-300}) {
        const auto s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
}
