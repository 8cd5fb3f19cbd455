#include "pfcsim/magnetics.hpp"

#include <cmath>
#include <string>

#include "pfcsim/numerics.hpp"

namespace pfc {

void validate(const CoreGeometry& core) {
    if (core.effective_area <= 0.0 || core.effective_length <= 0.0 || core.effective_volume <= 0.0)
        throw ValidationError("core: effective area/length/volume must be positive");
    if (core.center_leg_width <= 0.0 || core.window_breadth <= 0.0 || core.window_height <= 0.0)
        throw ValidationError("core: leg and window dimensions must be positive");
    if (core.gap_length < 0.0)
        throw ValidationError("core: gap length must be >= 0");
    if (core.gap_style == GapStyle::Distributed && core.gap_length != 0.0)
        throw ValidationError("core: a distributed-gap core has no discrete gap length");
}

void validate(const MaterialParams& material) {
    if (material.relative_permeability <= 1.0)
        throw ValidationError("material: relative permeability must exceed 1");
    if (material.saturation_flux <= 0.0)
        throw ValidationError("material: saturation flux must be positive");
    if (material.steinmetz_x < 1.0 || material.steinmetz_x > 3.0)
        throw ValidationError("material: steinmetz exponent x outside [1, 3]");
    if (material.steinmetz_y < 2.0 || material.steinmetz_y > 4.0)
        throw ValidationError("material: steinmetz exponent y outside [2, 4]");
    for (double t = 0.0; t <= 150.0; t += 1.0) {
        if (material.ct - material.ct1 * t + material.ct2 * t * t <= 0.0)
            throw ValidationError("material: temperature polynomial not positive on [0, 150] C");
    }
}

void validate(const WindingSpec& winding) {
    if (winding.turns < 1)
        throw ValidationError("winding: turns must be >= 1");
    if (winding.layers < 1)
        throw ValidationError("winding: layers must be >= 1");
    if (winding.dc_resistance <= 0.0)
        throw ValidationError("winding: DC resistance must be positive");
    if (winding.axial_length <= 0.0)
        throw ValidationError("winding: axial length must be positive");
    if (const auto* solid = std::get_if<SolidWire>(&winding.wire)) {
        if (solid->diameter <= 0.0)
            throw ValidationError("winding: wire diameter must be positive");
    } else {
        const auto& litz = std::get<LitzWire>(winding.wire);
        if (litz.strand_count < 1)
            throw ValidationError("winding: litz strand count must be >= 1");
        if (litz.strand_diameter <= 0.0)
            throw ValidationError("winding: litz strand diameter must be positive");
    }
}

double copper_area(const WireSpec& wire) {
    constexpr double kQuarterPi = std::numbers::pi / 4.0;
    if (const auto* solid = std::get_if<SolidWire>(&wire))
        return kQuarterPi * solid->diameter * solid->diameter;
    const auto& litz = std::get<LitzWire>(wire);
    return litz.strand_count * kQuarterPi * litz.strand_diameter * litz.strand_diameter;
}

double conductor_diameter(const WireSpec& wire) {
    if (const auto* solid = std::get_if<SolidWire>(&wire))
        return solid->diameter;
    return std::get<LitzWire>(wire).strand_diameter;
}

double overall_diameter(const WireSpec& wire) {
    if (const auto* solid = std::get_if<SolidWire>(&wire))
        return solid->diameter;
    const auto& litz = std::get<LitzWire>(wire);
    constexpr double kBundlePacking = 0.45;
    return litz.strand_diameter * std::sqrt(litz.strand_count / kBundlePacking);
}

double fringing_factor(const CoreGeometry& core) {
    if (core.gap_length <= 0.0)
        return 1.0;
    return 1.0 + core.gap_length / std::sqrt(core.effective_area) *
                     std::log(2.0 * core.window_height / core.gap_length);
}

double gap_reluctance(const CoreGeometry& core, bool include_fringing) {
    if (core.gap_style != GapStyle::DiscreteCenterGap)
        throw ValidationError("gap reluctance requires a discrete center gap");
    if (core.gap_length <= 0.0)
        throw ValidationError("gap reluctance requires a positive gap length");
    if (core.gap_length >= core.window_height)
        throw ValidationError("gap length at or above the window height: model invalid");
    const double ff = include_fringing ? fringing_factor(core) : 1.0;
    return core.gap_length / (kMu0 * core.effective_area * ff);
}

double core_reluctance(const CoreGeometry& core, const MaterialParams& material) {
    return core.effective_length / (kMu0 * material.relative_permeability * core.effective_area);
}

double inductance(const CoreGeometry& core, const MaterialParams& material,
                  const WindingSpec& winding, bool include_fringing) {
    const double n2 = static_cast<double>(winding.turns) * winding.turns;
    if (core.gap_style == GapStyle::Distributed)
        return kMu0 * material.relative_permeability * n2 * core.effective_area /
               core.effective_length;
    double reluctance = core_reluctance(core, material);
    if (core.gap_length > 0.0)
        reluctance += gap_reluctance(core, include_fringing);
    return n2 / reluctance;
}

double solve_gap_for_inductance(const CoreGeometry& core, const MaterialParams& material,
                                const WindingSpec& winding, double target_inductance) {
    if (core.gap_style != GapStyle::DiscreteCenterGap)
        throw ValidationError("gap solving requires a discrete-gap core");
    if (target_inductance <= 0.0)
        throw ValidationError("target inductance must be positive");

    CoreGeometry trial = core;
    trial.gap_length = 0.0;
    const double ungapped = inductance(trial, material, winding);
    if (target_inductance >= ungapped)
        throw InfeasibleError("target inductance not below the ungapped inductance");

    double lo = 1e-7;                        // m
    double hi = 0.99 * core.window_height;   // model validity bound
    trial.gap_length = hi;
    if (inductance(trial, material, winding) > target_inductance)
        throw InfeasibleError("target inductance below the largest modelable gap");

    // Inductance is monotone decreasing in the gap, so plain bisection.
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        trial.gap_length = mid;
        const double l = inductance(trial, material, winding);
        if (std::abs(l - target_inductance) / target_inductance < 1e-6)
            return mid;
        (l > target_inductance ? lo : hi) = mid;
    }
    trial.gap_length = 0.5 * (lo + hi);
    const double l = inductance(trial, material, winding);
    if (std::abs(l - target_inductance) / target_inductance >= 1e-4)
        throw InfeasibleError("gap bisection failed to converge");
    return trial.gap_length;
}

double flux_density(double inductance_h, const WindingSpec& winding, const CoreGeometry& core,
                    double current_a) {
    if (current_a < 0.0)
        throw ValidationError("flux density expects a nonnegative current");
    return inductance_h * current_a / (winding.turns * core.effective_area);
}

} // namespace pfc
