#include "pfcsim/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "pfcsim/numerics.hpp"
#include "pfcsim/report_io.hpp"

namespace pfc {

namespace {

FringingModel resolved_fringing(const Scenario& s) {
    FringingModel fr = s.fringing;
    if (fr.decay_length <= 0.0)
        fr.decay_length = default_fringing_decay(s.core.gap_length, s.winding.axial_length);
    return fr;
}

// Thermal pass for a given loss breakdown; returns the full node vector
// (winding sections plus optional core node).
TemperatureProfile solve_thermal(const Scenario& s, const LossBreakdown& losses) {
    const ThermalNetwork net = build_coil_network(s.thermal, s.winding);
    std::vector<double> injections(losses.axial_density);
    if (net.size() > s.thermal.sections)
        injections.push_back(losses.p_core);
    return solve_steady_state(net, injections);
}

double mean_winding_temperature(const TemperatureProfile& full, std::size_t sections) {
    KahanSum sum;
    for (std::size_t i = 0; i < sections; ++i)
        sum.add(full.temperatures[i]);
    return sum.value() / static_cast<double>(sections);
}

} // namespace

RunResult run_scenario(const Scenario& scenario) {
    RunResult r;
    r.scenario = scenario;

    HalfLineProfile profile =
        synthesize_half_cycle(scenario.operating_point, scenario.inductance, scenario.controller);
    profile = annotate_flux_swing(profile, scenario.winding, scenario.core);

    double i_peak_max = 0.0;
    for (const SwitchingCycle& c : profile.cycles)
        i_peak_max = std::max(i_peak_max, c.i_peak);
    r.peak_flux = flux_density(scenario.inductance, scenario.winding, scenario.core, i_peak_max);
    if (is_saturated(r.peak_flux, scenario.material))
        throw SaturationError("peak flux density " + format_g9(r.peak_flux) +
                              " T reaches the material saturation limit");

    const FringingModel fringing = resolved_fringing(scenario);
    const SpectrumOptions spectrum_options{scenario.loss.spectrum_samples,
                                           scenario.loss.spectrum_harmonics};

    double loss_temperature = scenario.loss.temperature_c;
    LossBreakdown losses =
        loss_breakdown(profile, scenario.core, scenario.material, scenario.winding, fringing,
                       loss_temperature, scenario.thermal.sections, spectrum_options);
    TemperatureProfile full = solve_thermal(scenario, losses);
    for (int i = 0; i < scenario.loss.electrothermal_iterations; ++i) {
        loss_temperature = std::clamp(mean_winding_temperature(full, scenario.thermal.sections),
                                      0.0, 150.0);
        losses = loss_breakdown(profile, scenario.core, scenario.material, scenario.winding,
                                fringing, loss_temperature, scenario.thermal.sections,
                                spectrum_options);
        full = solve_thermal(scenario, losses);
    }

    r.profile = std::move(profile);
    r.losses = std::move(losses);
    r.loss_temperature_used = loss_temperature;

    r.rms = rms_current(r.profile);
    r.input_power = average_input_power(r.profile);
    r.f_effective = effective_switching_frequency(r.profile);

    const double t_crest = 0.5 * r.profile.half_line_duration();
    auto it = std::upper_bound(r.profile.cycles.begin(), r.profile.cycles.end(), t_crest,
                               [](double v, const SwitchingCycle& c) { return v < c.t_start; });
    const SwitchingCycle& crest = *std::prev(it);
    r.period_at_crest = crest.period();
    r.f_sw_at_crest = 1.0 / crest.period();

    r.winding_profile = make_profile(std::vector<double>(
        full.temperatures.begin(), full.temperatures.begin() + scenario.thermal.sections));
    r.winding_stats = profile_statistics(r.winding_profile);
    r.core_node_temperature = full.temperatures.size() > scenario.thermal.sections
                                  ? full.temperatures.back()
                                  : scenario.thermal.ambient_c;
    return r;
}

std::string run_report_json(const RunResult& r) {
    const char* mode = "dcm_crcm_qr";
    if (r.scenario.controller.mode == ConductionMode::FixedFreqCcm)
        mode = "fixed_ccm";
    else if (r.scenario.controller.mode == ConductionMode::Mixed)
        mode = "mixed";

    JsonWriter w;
    w.begin_object()
        .field("scenario", r.scenario.name)
        .field("mode", mode)
        .field("core", r.scenario.core_name)
        .field("material", r.scenario.material_name)
        .field("inductance_H", r.scenario.inductance)
        .field("gap_m", r.scenario.core.gap_length)
        .field("rms_A", r.rms)
        .field("input_power_W", r.input_power)
        .field("f_sw_crest_Hz", r.f_sw_at_crest)
        .field("period_crest_s", r.period_at_crest)
        .field("f_effective_Hz", r.f_effective)
        .field("peak_flux_T", r.peak_flux)
        .field("cycles", static_cast<long long>(r.profile.cycles.size()))
        .field("loss_temperature_C", r.loss_temperature_used);
    w.begin_object("losses")
        .field("p_dc_W", r.losses.p_dc)
        .field("p_ac_W", r.losses.p_ac_skin_prox)
        .field("p_fringing_W", r.losses.p_fringing)
        .field("p_core_W", r.losses.p_core)
        .field("p_total_W", r.losses.p_total)
        .end_object();
    w.begin_object("thermal")
        .field("ambient_C", r.scenario.thermal.ambient_c)
        .field("t_min_C", r.winding_stats.t_min)
        .field("t_max_C", r.winding_stats.t_max)
        .field("range_C", r.winding_stats.range)
        .field("argmax_section", static_cast<long long>(r.winding_stats.argmax_section))
        .field("core_node_C", r.core_node_temperature)
        .end_object();
    w.end_object();
    return w.str();
}

namespace {

std::string loss_report_json(const LossBreakdown& losses) {
    JsonWriter w;
    w.begin_object()
        .field("p_dc_W", losses.p_dc)
        .field("p_ac_W", losses.p_ac_skin_prox)
        .field("p_fringing_W", losses.p_fringing)
        .field("p_core_W", losses.p_core)
        .field("p_total_W", losses.p_total);
    w.begin_array("axial_density_W");
    for (double d : losses.axial_density)
        w.element(d);
    w.end_array();
    w.end_object();
    return w.str();
}

// Reconstructed drain-node voltage for export: 0 while the switch is on,
// vout during demagnetization, then ringing around v_in down to the valley
// (clamped at zero where the body diode would conduct).
double drain_voltage(const OperatingPoint& op, const ControllerConfig& cfg, double inductance_h,
                     const SwitchingCycle& c, double tau) {
    const double v_in = instantaneous_input_voltage(op, c.t_start);
    if (tau < c.t_on)
        return 0.0;
    if (tau < c.t_on + c.t_off)
        return op.vout;
    if (cfg.coss_node_capacitance <= 0.0)
        return v_in;
    const double omega =
        1.0 / std::sqrt(inductance_h * cfg.coss_node_capacitance);
    const double ring_tau = tau - c.t_on - c.t_off;
    return std::max(0.0, v_in + (op.vout - v_in) * std::cos(omega * ring_tau));
}

std::string waveform_csv(const RunResult& r) {
    const OutputOptions& out = r.scenario.output;
    std::string csv = "t_s,i_L_A,v_drain_V\n";
    for (const SwitchingCycle& c : r.profile.cycles) {
        std::vector<double> taus;
        const int ramp_points = std::max(out.waveform_points_per_ramp, 2);
        if (c.t_on > 0.0)
            for (int k = 0; k < ramp_points; ++k)
                taus.push_back(c.t_on * k / ramp_points);
        if (c.t_off > 0.0)
            for (int k = 0; k < ramp_points; ++k)
                taus.push_back(c.t_on + c.t_off * k / ramp_points);
        if (c.t_idle > 0.0) {
            const int ring_points = std::max(out.waveform_points_per_ring, 2);
            for (int k = 0; k < ring_points; ++k)
                taus.push_back(c.t_on + c.t_off + c.t_idle * k / ring_points);
        }
        for (double tau : taus) {
            const double t = c.t_start + tau;
            csv += format_g9(t);
            csv += ",";
            csv += format_g9(current_at(r.profile, t));
            csv += ",";
            csv += format_g9(drain_voltage(r.scenario.operating_point, r.scenario.controller,
                                           r.scenario.inductance, c, tau));
            csv += "\n";
        }
    }
    return csv;
}

std::string cycles_csv(const RunResult& r) {
    const MaterialParams& m = r.scenario.material;
    const double t = r.loss_temperature_used;
    const double poly = m.ct - m.ct1 * t + m.ct2 * t * t;
    std::string csv = "t_start_s,f_sw_Hz,delta_B_T,p_v_kW_m3\n";
    for (const SwitchingCycle& c : r.profile.cycles) {
        const double f = 1.0 / c.period();
        const double p_v = c.delta_b > 0.0
                               ? m.steinmetz_kf * std::pow(f, m.steinmetz_x) *
                                     std::pow(c.delta_b, m.steinmetz_y) * poly
                               : 0.0;
        csv += format_g9(c.t_start);
        csv += ",";
        csv += format_g9(f);
        csv += ",";
        csv += format_g9(c.delta_b);
        csv += ",";
        csv += format_g9(p_v);
        csv += "\n";
    }
    return csv;
}

std::string thermal_csv(const RunResult& r) {
    const double pitch_mm =
        r.scenario.winding.axial_length * 1e3 / static_cast<double>(r.scenario.thermal.sections);
    std::string csv = "section_index,axial_position_mm,temperature_C\n";
    for (std::size_t i = 0; i < r.winding_profile.temperatures.size(); ++i) {
        csv += std::to_string(i);
        csv += ",";
        csv += format_g9((static_cast<double>(i) + 0.5) * pitch_mm);
        csv += ",";
        csv += format_g9(r.winding_profile.temperatures[i]);
        csv += "\n";
    }
    return csv;
}

} // namespace

void write_run_outputs(const RunResult& result, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
    const std::filesystem::path dir(out_dir);
    write_file_atomic((dir / "report.json").string(), run_report_json(result));
    write_file_atomic((dir / "loss.json").string(), loss_report_json(result.losses));
    write_file_atomic((dir / "waveform.csv").string(), waveform_csv(result));
    write_file_atomic((dir / "cycles.csv").string(), cycles_csv(result));
    write_file_atomic((dir / "thermal.csv").string(), thermal_csv(result));
}

ComparisonReport compare_scenarios(const Scenario& a, const Scenario& b) {
    // Pure computation over immutable inputs; the two runs share nothing.
    auto future_a = std::async(std::launch::async, [&a] { return run_scenario(a); });
    auto future_b = std::async(std::launch::async, [&b] { return run_scenario(b); });

    ComparisonReport report;
    report.a = future_a.get();
    report.b = future_b.get();
    report.rms_delta = report.a.rms - report.b.rms;
    report.range_delta = compare_ranges(report.a.winding_profile, report.b.winding_profile);
    return report;
}

std::string comparison_report_json(const ComparisonReport& r) {
    auto side = [](JsonWriter& w, const char* key, const RunResult& run) {
        w.begin_object(key)
            .field("scenario", run.scenario.name)
            .field("rms_A", run.rms)
            .field("f_sw_crest_Hz", run.f_sw_at_crest)
            .field("p_dc_W", run.losses.p_dc)
            .field("p_ac_W", run.losses.p_ac_skin_prox)
            .field("p_fringing_W", run.losses.p_fringing)
            .field("p_core_W", run.losses.p_core)
            .field("p_total_W", run.losses.p_total)
            .field("thermal_range_C", run.winding_stats.range)
            .field("argmax_section", static_cast<long long>(run.winding_stats.argmax_section))
            .end_object();
    };
    JsonWriter w;
    w.begin_object();
    side(w, "a", r.a);
    side(w, "b", r.b);
    w.begin_object("delta")
        .field("rms_A", r.rms_delta)
        .field("p_fringing_W", r.a.losses.p_fringing - r.b.losses.p_fringing)
        .field("p_total_W", r.a.losses.p_total - r.b.losses.p_total)
        .field("thermal_range_K", r.range_delta)
        .end_object();
    w.end_object();
    return w.str();
}

void write_comparison_outputs(const ComparisonReport& report, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
    const std::filesystem::path dir(out_dir);
    write_file_atomic((dir / "compare.json").string(), comparison_report_json(report));
    write_run_outputs(report.a, (dir / "a").string());
    write_run_outputs(report.b, (dir / "b").string());
}

std::vector<std::pair<double, double>> import_capture(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open capture " + path);

    std::string line;
    if (!std::getline(in, line))
        throw ValidationError(path + ": empty capture file");
    auto strip = [](std::string s) {
        s.erase(std::remove_if(s.begin(), s.end(),
                               [](unsigned char c) { return std::isspace(c); }),
                s.end());
        return s;
    };
    if (strip(line) != "time_s,current_A")
        throw ValidationError(path + ": expected header 'time_s,current_A'");

    std::vector<std::pair<double, double>> samples;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty())
            continue;
        std::istringstream row(line);
        std::string t_str, i_str;
        if (!std::getline(row, t_str, ',') || !std::getline(row, i_str))
            throw ValidationError(path + ":" + std::to_string(line_no) + ": expected two columns");
        try {
            samples.emplace_back(std::stod(t_str), std::stod(i_str));
        } catch (const std::exception&) {
            throw ValidationError(path + ":" + std::to_string(line_no) + ": non-numeric value");
        }
        if (samples.size() > 1 && samples.back().first <= samples[samples.size() - 2].first)
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": time must be strictly increasing");
    }
    if (samples.size() < 2)
        throw ValidationError(path + ": capture needs at least two samples");
    return samples;
}

double rms_of_samples(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2)
        throw ValidationError("RMS needs at least two samples");
    KahanSum sum; // trapezoidal integral of i^2 dt
    for (std::size_t k = 1; k < samples.size(); ++k) {
        const double dt = samples[k].first - samples[k - 1].first;
        const double a = samples[k - 1].second, b = samples[k].second;
        sum.add(0.5 * dt * (a * a + b * b));
    }
    return std::sqrt(sum.value() / (samples.back().first - samples.front().first));
}

LitzReport litz_command(const Scenario& scenario, const std::vector<double>& strand_catalog) {
    const HalfLineProfile profile =
        synthesize_half_cycle(scenario.operating_point, scenario.inductance, scenario.controller);

    LitzDesignInputs inputs;
    inputs.f_effective = effective_switching_frequency(profile);
    inputs.turns = scenario.winding.turns;
    inputs.layers = scenario.winding.layers;
    // The former breadth equals the window dimension along the gapped leg.
    inputs.winding_breadth = scenario.core.window_height;
    inputs.window_area = scenario.core.window_breadth * scenario.core.window_height;
    if (const auto* solid = std::get_if<SolidWire>(&scenario.winding.wire))
        inputs.solid_baseline_diameter = solid->diameter;
    else
        throw ValidationError("litz design needs a solid-wire baseline scenario");
    inputs.temperature_c = scenario.loss.temperature_c;

    LitzReport report;
    report.f_effective = inputs.f_effective;
    report.recommendation = recommend(inputs, strand_catalog);
    return report;
}

std::string litz_report_json(const LitzReport& r) {
    JsonWriter w;
    w.begin_object()
        .field("f_effective_Hz", r.f_effective)
        .field("strand_diameter_m", r.recommendation.strand_diameter)
        .field("strand_count", static_cast<long long>(r.recommendation.strand_count))
        .field("predicted_fr", r.recommendation.predicted_fr_at_f)
        .field("copper_area_ratio_vs_solid", r.recommendation.copper_area_ratio_vs_solid)
        .field("feasible", r.recommendation.feasible)
        .end_object();
    return w.str();
}

} // namespace pfc
