#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pfcsim/pipeline.hpp"
#include "pfcsim/report_io.hpp"

namespace {

void print_error(const char* kind, const std::string& message) {
    pfc::JsonWriter w;
    w.begin_object();
    w.begin_object("error").field("kind", kind).field("message", message).end_object();
    w.end_object();
    std::cerr << w.str();
}

pfc::ConductionMode parse_mode_override(const std::string& mode) {
    if (mode == "dcm_crcm_qr")
        return pfc::ConductionMode::DcmCrcmQr;
    if (mode == "fixed_ccm")
        return pfc::ConductionMode::FixedFreqCcm;
    if (mode == "mixed")
        return pfc::ConductionMode::Mixed;
    throw pfc::ValidationError("unknown --mode value '" + mode + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boost-PFC inductor simulator: conduction-mode waveforms, winding/core/"
                 "fringing losses, axial temperature profile and litz sizing"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string data_dir = "data";
    app.add_option("--data", data_dir, "Directory with core_library.json and litz_strands.json")
        ->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Run one scenario and write its reports");
    std::string sim_config, sim_out = "out", sim_mode;
    simulate->add_option("--config", sim_config, "Scenario JSON file")->required();
    simulate->add_option("--out", sim_out, "Output directory")->capture_default_str();
    simulate->add_option("--mode", sim_mode,
                         "Conduction mode override: dcm_crcm_qr | fixed_ccm | mixed");

    auto* compare = app.add_subcommand("compare", "Run two scenarios side by side");
    std::string cmp_a, cmp_b, cmp_out = "out";
    compare->add_option("--config-a", cmp_a, "First scenario JSON file")->required();
    compare->add_option("--config-b", cmp_b, "Second scenario JSON file")->required();
    compare->add_option("--out", cmp_out, "Output directory")->capture_default_str();

    auto* litz = app.add_subcommand("litz", "Litz wire recommendation for a scenario");
    std::string litz_config, litz_catalog;
    litz->add_option("--config", litz_config, "Scenario JSON file")->required();
    litz->add_option("--catalog", litz_catalog, "Strand catalog JSON (default from --data)");

    auto* rms = app.add_subcommand("rms", "Trapezoidal RMS of an oscilloscope capture CSV");
    std::string rms_capture;
    rms->add_option("--capture", rms_capture, "CSV with time_s,current_A columns")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            pfc::Scenario scenario = pfc::load_scenario(sim_config, data_dir);
            if (!sim_mode.empty())
                scenario.controller.mode = parse_mode_override(sim_mode);
            const pfc::RunResult result = pfc::run_scenario(scenario);
            pfc::write_run_outputs(result, sim_out);
            std::cout << pfc::run_report_json(result);
        } else if (compare->parsed()) {
            const pfc::Scenario a = pfc::load_scenario(cmp_a, data_dir);
            const pfc::Scenario b = pfc::load_scenario(cmp_b, data_dir);
            const pfc::ComparisonReport report = pfc::compare_scenarios(a, b);
            pfc::write_comparison_outputs(report, cmp_out);
            std::cout << pfc::comparison_report_json(report);
        } else if (litz->parsed()) {
            const pfc::Scenario scenario = pfc::load_scenario(litz_config, data_dir);
            if (litz_catalog.empty())
                litz_catalog =
                    (std::filesystem::path(data_dir) / "litz_strands.json").string();
            const auto catalog = pfc::load_strand_catalog(litz_catalog);
            std::cout << pfc::litz_report_json(pfc::litz_command(scenario, catalog));
        } else if (rms->parsed()) {
            const auto samples = pfc::import_capture(rms_capture);
            pfc::JsonWriter w;
            w.begin_object()
                .field("samples", static_cast<long long>(samples.size()))
                .field("rms_A", pfc::rms_of_samples(samples))
                .end_object();
            std::cout << w.str();
        }
    } catch (const pfc::ValidationError& e) {
        print_error("validation", e.what());
        return pfc::kExitValidation;
    } catch (const pfc::IoError& e) {
        print_error("io", e.what());
        return pfc::kExitIo;
    } catch (const std::exception& e) {
        print_error("runtime", e.what());
        return pfc::kExitRuntime;
    }
    return pfc::kExitOk;
}
