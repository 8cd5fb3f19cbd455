#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pfcsim/pipeline.hpp"
#include "pfcsim/report_io.hpp"
#include "support.hpp"

using namespace pfc;
using namespace pfc::test;

namespace {

const std::string kDataDir = PFCSIM_DATA_DIR;
const std::string kScenarioDir = kDataDir + "/scenarios";

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "pfcsim_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = temp_dir() / name;
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return path;
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(PFCSIM_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("bundled boundary-mode scenario loads with the published parameters") {
    const Scenario s = load_scenario(kScenarioDir + "/paper_dcm_qr.json", kDataDir);
    CHECK(s.operating_point.vin_rms == 150.0);
    CHECK(s.operating_point.vout == 400.0);
    CHECK(s.operating_point.pout == 300.0);
    CHECK(s.controller.mode == ConductionMode::DcmCrcmQr);
    CHECK(close_rel(s.inductance, 650e-6, 1e-4)); // gap solved for the target
    CHECK(close_rel(s.core.gap_length, 2.1e-3, 0.10));
    CHECK(s.winding.turns == 65);
    CHECK(s.winding.dc_resistance == 0.211);
}

TEST_CASE("scenario validation failures carry context") {
    const auto bad_boost = write_temp("bad_boost.json", R"({
      "operating_point": {"vin_rms_V": 150.0, "vout_V": 100.0, "pout_W": 300.0},
      "controller": {"mode": "dcm_crcm_qr"},
      "core": "E42/21/15",
      "material": "3F3",
      "winding": {"turns": 65, "layers": 2,
                  "wire": {"type": "solid", "diameter_m": 0.7e-3},
                  "dc_resistance_ohm": 0.211, "axial_length_m": 29.6e-3}
    })");
    CHECK_THROWS_AS(load_scenario(bad_boost.string(), kDataDir), ValidationError);

    const auto empty = write_temp("empty.json", "");
    CHECK_THROWS_AS(load_scenario(empty.string(), kDataDir), ValidationError);

    CHECK_THROWS_AS(load_scenario("/nonexistent/path.json", kDataDir), IoError);
}

TEST_CASE("unknown keys are rejected at every level") {
    const auto stray_root = write_temp("stray_root.json", R"({
      "operating_point": {"vin_rms_V": 150.0, "vout_V": 400.0, "pout_W": 300.0},
      "controller": {"mode": "dcm_crcm_qr"},
      "core": "E42/21/15",
      "material": "3F3",
      "winding": {"turns": 65, "layers": 2,
                  "wire": {"type": "solid", "diameter_m": 0.7e-3},
                  "dc_resistance_ohm": 0.211, "axial_length_m": 29.6e-3},
      "surprise": 1
    })");
    CHECK_THROWS_WITH_AS(load_scenario(stray_root.string(), kDataDir),
                         doctest::Contains("surprise"), ValidationError);

    const auto stray_nested = write_temp("stray_nested.json", R"({
      "operating_point": {"vin_rms_V": 150.0, "vout_V": 400.0, "pout_W": 300.0,
                          "ripple": 2},
      "controller": {"mode": "dcm_crcm_qr"},
      "core": "E42/21/15",
      "material": "3F3",
      "winding": {"turns": 65, "layers": 2,
                  "wire": {"type": "solid", "diameter_m": 0.7e-3},
                  "dc_resistance_ohm": 0.211, "axial_length_m": 29.6e-3}
    })");
    CHECK_THROWS_WITH_AS(load_scenario(stray_nested.string(), kDataDir),
                         doctest::Contains("ripple"), ValidationError);
}

TEST_CASE("boundary-mode run reproduces the published DC loss band") {
    const Scenario s = load_scenario(kScenarioDir + "/paper_dcm_qr.json", kDataDir);
    const RunResult r = run_scenario(s);
    CHECK(close_rel(r.losses.p_dc, 1.52, 0.15));
    CHECK(r.losses.p_fringing > 0.0);
    CHECK(r.peak_flux < s.material.saturation_flux);
    CHECK(r.winding_stats.argmax_section == 16);

    const auto out = temp_dir() / "dcm_out";
    write_run_outputs(r, out.string());
    for (const char* name :
         {"report.json", "loss.json", "waveform.csv", "cycles.csv", "thermal.csv"})
        CHECK(std::filesystem::exists(out / name));

    // the loss report carries the documented keys
    const std::string loss_json = slurp(out / "loss.json");
    for (const char* key : {"p_dc_W", "p_ac_W", "p_fringing_W", "p_core_W", "p_total_W",
                            "axial_density_W"})
        CHECK(loss_json.find(key) != std::string::npos);
}

TEST_CASE("mixed run reproduces the published RMS band") {
    const Scenario s = load_scenario(kScenarioDir + "/paper_mixed.json", kDataDir);
    const RunResult r = run_scenario(s);
    CHECK(close_rel(r.rms, 2.31, 0.10));
    CHECK(r.period_at_crest == doctest::Approx(17e-6).epsilon(1e-9));
}

TEST_CASE("distributed-gap run has no fringing loss") {
    const Scenario s = load_scenario(kScenarioDir + "/paper_dcm_qr_distributed.json", kDataDir);
    const RunResult r = run_scenario(s);
    CHECK(r.losses.p_fringing == 0.0);
    CHECK(close_rel(s.inductance, 586.6e-6, 1e-3));
}

TEST_CASE("comparison: boundary mode vs mixed reproduces the RMS ordering") {
    const Scenario a = load_scenario(kScenarioDir + "/paper_dcm_qr.json", kDataDir);
    const Scenario b = load_scenario(kScenarioDir + "/paper_mixed.json", kDataDir);
    const ComparisonReport cmp = compare_scenarios(a, b);
    CHECK(cmp.a.rms > cmp.b.rms);
    CHECK(cmp.rms_delta > 0.0);
    CHECK(cmp.range_delta > 0.0); // boundary mode also runs the wider profile
}

TEST_CASE("comparison of a scenario with itself is all zeros") {
    const Scenario s = load_scenario(kScenarioDir + "/paper_mixed.json", kDataDir);
    const ComparisonReport cmp = compare_scenarios(s, s);
    CHECK(cmp.rms_delta == 0.0);
    CHECK(cmp.range_delta == 0.0);
}

TEST_CASE("gapped vs distributed: the fringing delta is the gapped wattage") {
    const Scenario a = load_scenario(kScenarioDir + "/paper_dcm_qr.json", kDataDir);
    const Scenario b = load_scenario(kScenarioDir + "/paper_dcm_qr_distributed.json", kDataDir);
    const ComparisonReport cmp = compare_scenarios(a, b);
    CHECK(cmp.b.losses.p_fringing == 0.0);
    CHECK(cmp.a.losses.p_fringing ==
          doctest::Approx(cmp.a.losses.p_fringing - cmp.b.losses.p_fringing));
}

TEST_CASE("reports are byte-identical across runs") {
    const Scenario s = load_scenario(kScenarioDir + "/paper_dcm_qr.json", kDataDir);
    const std::string first = run_report_json(run_scenario(s));
    const std::string second = run_report_json(run_scenario(s));
    CHECK(first == second);
    CHECK(first.find("p_dc_W") != std::string::npos);
}

TEST_CASE("capture import round-trips the synthesized waveform RMS") {
    const Scenario s = load_scenario(kScenarioDir + "/paper_dcm_qr.json", kDataDir);
    Scenario dense = s;
    dense.output.waveform_points_per_ramp = 24;
    dense.output.waveform_points_per_ring = 24;
    const RunResult r = run_scenario(dense);
    const auto out = temp_dir() / "roundtrip";
    write_run_outputs(r, out.string());

    // re-shape waveform.csv into a capture file
    std::ifstream in(out / "waveform.csv");
    std::string header, line, capture = "time_s,current_A\n";
    std::getline(in, header);
    while (std::getline(in, line)) {
        const auto first_comma = line.find(',');
        const auto second_comma = line.find(',', first_comma + 1);
        capture += line.substr(0, second_comma);
        capture += "\n";
    }
    const auto capture_path = write_temp("capture.csv", capture);
    const auto samples = import_capture(capture_path.string());
    CHECK(close_rel(rms_of_samples(samples), rms_current(r.profile), 0.005));
}

TEST_CASE("capture import validates its format") {
    const auto constant = write_temp("constant.csv",
                                     "time_s,current_A\n0.0,1.0\n0.5,1.0\n1.0,1.0\n");
    CHECK(rms_of_samples(import_capture(constant.string())) == doctest::Approx(1.0));

    const auto short_file = write_temp("short.csv", "time_s,current_A\n0.0,1.0\n");
    CHECK_THROWS_AS(import_capture(short_file.string()), ValidationError);

    const auto backwards =
        write_temp("backwards.csv", "time_s,current_A\n0.0,1.0\n2.0,1.0\n1.0,1.0\n");
    CHECK_THROWS_AS(import_capture(backwards.string()), ValidationError);

    const auto bad_header = write_temp("bad_header.csv", "t,i\n0.0,1.0\n1.0,1.0\n");
    CHECK_THROWS_AS(import_capture(bad_header.string()), ValidationError);
}

TEST_CASE("litz command recommends from the bundled catalog") {
    const Scenario s = load_scenario(kScenarioDir + "/paper_mixed.json", kDataDir);
    const auto catalog = load_strand_catalog(kDataDir + "/litz_strands.json");
    const LitzReport report = litz_command(s, catalog);
    CHECK(report.f_effective > 55e3);
    CHECK(report.f_effective < 62e3);
    CHECK(report.recommendation.feasible);
    CHECK(report.recommendation.strand_diameter <= 90.9e-6);
}

TEST_CASE("the command-line tool maps errors to exit codes") {
    const std::string data = " --data " + kDataDir;
    CHECK(run_tool("simulate --config " + kScenarioDir + "/paper_mixed.json --out " +
                   (temp_dir() / "cli_out").string() + data) == 0);
    CHECK(run_tool("simulate --config /nonexistent.json --out /tmp/x" + data) == kExitIo);
    const auto bad = write_temp("cli_bad.json", "{\"not\": \"a scenario\"}");
    CHECK(run_tool("simulate --config " + bad.string() + " --out /tmp/x" + data) ==
          kExitValidation);
    CHECK(run_tool("rms --capture /nonexistent.csv") == kExitIo);
}

TEST_CASE("electro-thermal relaxation stays stable when requested") {
    Scenario s = load_scenario(kScenarioDir + "/paper_dcm_qr.json", kDataDir);
    s.loss.electrothermal_iterations = 3;
    const RunResult r = run_scenario(s);
    CHECK(r.loss_temperature_used >= 0.0);
    CHECK(r.loss_temperature_used <= 150.0);
    CHECK(r.losses.p_total > 0.0);
}
