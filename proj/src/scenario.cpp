#include "pfcsim/scenario.hpp"

#include <filesystem>

#include "json_util.hpp"
#include "pfcsim/losses.hpp"

namespace pfc {

namespace {

OperatingPoint parse_operating_point(StrictObject obj) {
    OperatingPoint op;
    op.vin_rms = obj.required<double>("vin_rms_V");
    op.line_frequency = obj.optional<double>("line_frequency_Hz", 50.0);
    op.vout = obj.required<double>("vout_V");
    op.pout = obj.required<double>("pout_W");
    op.efficiency = obj.optional<double>("efficiency", 0.93);
    obj.finish();
    validate(op);
    return op;
}

ControllerConfig parse_controller(StrictObject obj) {
    ControllerConfig cfg;
    const std::string mode = obj.required<std::string>("mode");
    if (mode == "dcm_crcm_qr")
        cfg.mode = ConductionMode::DcmCrcmQr;
    else if (mode == "fixed_ccm")
        cfg.mode = ConductionMode::FixedFreqCcm;
    else if (mode == "mixed")
        cfg.mode = ConductionMode::Mixed;
    else
        throw ValidationError(obj.path() + ".mode: unknown value '" + mode + "'");

    cfg.f_sw_ccm = obj.optional<double>("f_sw_ccm_Hz", cfg.f_sw_ccm);
    cfg.coss_node_capacitance = obj.optional<double>("coss_node_F", cfg.coss_node_capacitance);
    cfg.mixed_boundary_hysteresis =
        obj.optional<double>("mixed_boundary_hysteresis", cfg.mixed_boundary_hysteresis);
    cfg.min_on_time = obj.optional<double>("min_on_time_s", cfg.min_on_time);
    if (obj.child_present("valley_policy")) {
        StrictObject vp(obj.raw("valley_policy"), obj.path() + ".valley_policy");
        const std::string type = vp.required<std::string>("type");
        if (type == "first_valley") {
            cfg.valley_policy.kind = ValleyPolicy::Kind::FirstValley;
        } else if (type == "frequency_clamp") {
            cfg.valley_policy.kind = ValleyPolicy::Kind::FrequencyClamp;
            cfg.valley_policy.f_max = vp.required<double>("f_max_Hz");
        } else {
            throw ValidationError(vp.path() + ".type: unknown value '" + type + "'");
        }
        vp.finish();
    }
    obj.finish();
    validate(cfg);
    return cfg;
}

WindingSpec parse_winding(StrictObject obj) {
    WindingSpec w;
    w.turns = obj.required<int>("turns");
    w.layers = obj.required<int>("layers");
    w.dc_resistance = obj.required<double>("dc_resistance_ohm");
    w.axial_length = obj.required<double>("axial_length_m");
    StrictObject wire(obj.raw("wire"), obj.path() + ".wire");
    const std::string type = wire.required<std::string>("type");
    if (type == "solid") {
        SolidWire solid;
        solid.diameter = wire.required<double>("diameter_m");
        w.wire = solid;
    } else if (type == "litz") {
        LitzWire litz;
        litz.strand_count = wire.required<int>("strands");
        litz.strand_diameter = wire.required<double>("strand_diameter_m");
        w.wire = litz;
    } else {
        throw ValidationError(wire.path() + ".type: unknown value '" + type + "'");
    }
    wire.finish();
    obj.finish();
    validate(w);
    return w;
}

} // namespace

Scenario load_scenario(const std::string& path, const std::string& data_dir) {
    const nlohmann::json doc = load_json_file(path);
    StrictObject root(doc, std::filesystem::path(path).filename().string());

    Scenario s;
    s.name = root.optional<std::string>("name",
                                        std::filesystem::path(path).stem().string());
    s.operating_point = parse_operating_point(root.child("operating_point"));
    s.controller = parse_controller(root.child("controller"));
    s.core_name = root.required<std::string>("core");
    s.material_name = root.required<std::string>("material");
    s.winding = parse_winding(root.child("winding"));

    const PartLibrary library =
        load_part_library((std::filesystem::path(data_dir) / "core_library.json").string());
    s.core = library.core(s.core_name);
    s.material = library.material(s.material_name);

    if (root.child_present("inductance")) {
        StrictObject ind(root.raw("inductance"), root.path() + ".inductance");
        const bool has_target = ind.has("target_H");
        const bool has_gap = ind.has("gap_m");
        if (has_target == has_gap)
            throw ValidationError(ind.path() + ": give exactly one of target_H or gap_m");
        if (has_target) {
            const double target = ind.required<double>("target_H");
            s.core.gap_length = solve_gap_for_inductance(s.core, s.material, s.winding, target);
        } else {
            if (s.core.gap_style == GapStyle::Distributed)
                throw ValidationError(ind.path() + ": a distributed-gap core takes no gap_m");
            s.core.gap_length = ind.required<double>("gap_m");
        }
        ind.finish();
    }
    validate(s.core);
    s.inductance = inductance(s.core, s.material, s.winding);

    s.fringing.coupling_coefficient = default_fringing_coupling();
    s.fringing.decay_length = 0.0; // 0: derived from the gap at evaluation time
    if (root.child_present("fringing")) {
        StrictObject fr(root.raw("fringing"), root.path() + ".fringing");
        s.fringing.coupling_coefficient =
            fr.optional<double>("coupling_coefficient", s.fringing.coupling_coefficient);
        s.fringing.decay_length = fr.optional<double>("decay_length_m", 0.0);
        fr.finish();
    }

    if (root.child_present("thermal")) {
        StrictObject th(root.raw("thermal"), root.path() + ".thermal");
        s.thermal.sections = th.optional<int>("sections", static_cast<int>(s.thermal.sections));
        s.thermal.ambient_c = th.optional<double>("ambient_C", s.thermal.ambient_c);
        s.thermal.h_convection = th.optional<double>("h_convection_W_m2K", s.thermal.h_convection);
        s.thermal.transverse_conductivity =
            th.optional<double>("transverse_conductivity_W_mK", s.thermal.transverse_conductivity);
        s.thermal.mean_turn_length =
            th.optional<double>("mean_turn_length_m", s.thermal.mean_turn_length);
        s.thermal.core_link_conductance =
            th.optional<double>("core_link_W_K", s.thermal.core_link_conductance);
        s.thermal.core_ambient_conductance =
            th.optional<double>("core_ambient_W_K", s.thermal.core_ambient_conductance);
        th.finish();
        if (s.thermal.sections < 3)
            throw ValidationError(path + ": thermal.sections must be >= 3");
    }

    if (root.child_present("loss")) {
        StrictObject lo(root.raw("loss"), root.path() + ".loss");
        s.loss.temperature_c = lo.optional<double>("temperature_C", s.loss.temperature_c);
        s.loss.spectrum_samples = lo.optional<std::size_t>("spectrum_samples", 0);
        s.loss.spectrum_harmonics =
            lo.optional<std::size_t>("spectrum_harmonics", s.loss.spectrum_harmonics);
        s.loss.electrothermal_iterations =
            lo.optional<int>("electrothermal_iterations", s.loss.electrothermal_iterations);
        lo.finish();
    }

    if (root.child_present("output")) {
        StrictObject out(root.raw("output"), root.path() + ".output");
        s.output.waveform_points_per_ramp =
            out.optional<int>("waveform_points_per_ramp", s.output.waveform_points_per_ramp);
        s.output.waveform_points_per_ring =
            out.optional<int>("waveform_points_per_ring", s.output.waveform_points_per_ring);
        out.finish();
    }

    root.finish();
    return s;
}

} // namespace pfc
