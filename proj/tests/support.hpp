#pragma once

#include <cmath>

#include "pfcsim/controller.hpp"
#include "pfcsim/magnetics.hpp"

namespace pfc::test {

// E42-size gapped ferrite setup used throughout the tests (datasheet
// effective parameters, 65-turn double-layer 0.7 mm coil).
inline CoreGeometry e42_core(double gap_m = 2.1e-3) {
    CoreGeometry core;
    core.effective_area = 178e-6;
    core.effective_length = 97.2e-3;
    core.effective_volume = 17.3e-6;
    core.center_leg_width = 12.2e-3;
    core.window_breadth = 8.65e-3;
    core.window_height = 29.6e-3;
    core.gap_length = gap_m;
    core.gap_style = GapStyle::DiscreteCenterGap;
    return core;
}

inline MaterialParams ferrite_3f3() {
    MaterialParams m;
    m.relative_permeability = 2000.0;
    m.saturation_flux = 0.44;
    m.steinmetz_kf = 0.25e-3;
    m.steinmetz_x = 1.63;
    m.steinmetz_y = 2.45;
    m.ct = 1.26;
    m.ct1 = 1.05e-2;
    m.ct2 = 0.79e-4;
    return m;
}

inline WindingSpec solid_coil() {
    WindingSpec w;
    w.turns = 65;
    w.layers = 2;
    w.wire = SolidWire{0.7e-3};
    w.dc_resistance = 0.211;
    w.axial_length = 29.6e-3;
    return w;
}

inline WindingSpec litz_coil() {
    WindingSpec w = solid_coil();
    w.wire = LitzWire{300, 50e-6};
    w.dc_resistance = 0.13785;
    return w;
}

inline OperatingPoint bench_point(double efficiency = 0.93) {
    OperatingPoint op;
    op.vin_rms = 150.0;
    op.line_frequency = 50.0;
    op.vout = 400.0;
    op.pout = 300.0;
    op.efficiency = efficiency;
    return op;
}

// Boundary mode without ring or idle time.
inline ControllerConfig pure_crcm_config() {
    ControllerConfig cfg;
    cfg.mode = ConductionMode::DcmCrcmQr;
    cfg.coss_node_capacitance = 0.0;
    cfg.valley_policy.kind = ValleyPolicy::Kind::FirstValley;
    return cfg;
}

inline ControllerConfig qr_config() {
    ControllerConfig cfg;
    cfg.mode = ConductionMode::DcmCrcmQr;
    cfg.coss_node_capacitance = 100e-12;
    cfg.valley_policy.kind = ValleyPolicy::Kind::FrequencyClamp;
    cfg.valley_policy.f_max = 130e3;
    return cfg;
}

inline ControllerConfig mixed_config() {
    ControllerConfig cfg = qr_config();
    cfg.mode = ConductionMode::Mixed;
    cfg.f_sw_ccm = 58823.529411764706;
    cfg.mixed_boundary_hysteresis = 0.15;
    return cfg;
}

inline bool close_rel(double value, double reference, double tolerance) {
    return std::abs(value - reference) <= tolerance * std::abs(reference);
}

} // namespace pfc::test
