#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pfcsim/litz.hpp"
#include "pfcsim/scenario.hpp"
#include "pfcsim/thermal.hpp"

namespace pfc {

struct RunResult {
    Scenario scenario;
    HalfLineProfile profile;
    double rms = 0.0;                 // A
    double input_power = 0.0;         // W
    double f_sw_at_crest = 0.0;       // Hz
    double period_at_crest = 0.0;     // s
    double f_effective = 0.0;         // Hz
    double peak_flux = 0.0;           // T
    LossBreakdown losses;
    TemperatureProfile winding_profile; // winding sections only
    ProfileStatistics winding_stats;
    double core_node_temperature = 0.0; // C (ambient when no core node)
    double loss_temperature_used = 0.0; // C, after optional relaxation
};

/// synthesize -> losses -> thermal. Throws on any model error.
RunResult run_scenario(const Scenario& scenario);

/// Writes report.json, loss.json, waveform.csv, cycles.csv and thermal.csv
/// into out_dir (created if needed). All files are written atomically.
void write_run_outputs(const RunResult& result, const std::string& out_dir);

struct ComparisonReport {
    RunResult a;
    RunResult b;
    double rms_delta = 0.0;
    double range_delta = 0.0; // K, range(a) - range(b)
};

/// Runs both scenarios (concurrently) and assembles the side-by-side report.
ComparisonReport compare_scenarios(const Scenario& a, const Scenario& b);

void write_comparison_outputs(const ComparisonReport& report, const std::string& out_dir);

/// Oscilloscope capture import: CSV with a header row and columns
/// time_s,current_A, strictly increasing time, at least two rows.
std::vector<std::pair<double, double>> import_capture(const std::string& path);

/// Trapezoidal-rule RMS over the capture window.
double rms_of_samples(const std::vector<std::pair<double, double>>& samples);

/// Litz design report for the scenario: effective frequency from the
/// synthesized profile, recommendation from the strand catalog.
struct LitzReport {
    double f_effective = 0.0;
    LitzRecommendation recommendation;
};

LitzReport litz_command(const Scenario& scenario, const std::vector<double>& strand_catalog);

std::string litz_report_json(const LitzReport& report);
std::string run_report_json(const RunResult& result);
std::string comparison_report_json(const ComparisonReport& report);

} // namespace pfc
