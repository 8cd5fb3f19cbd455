#pragma once

#include <vector>

#include "pfcsim/controller.hpp"
#include "pfcsim/losses.hpp"
#include "pfcsim/magnetics.hpp"

namespace pfc {

struct LitzRecommendation {
    double strand_diameter = 0.0; // m
    int strand_count = 0;
    double predicted_fr_at_f = 1.0;
    double copper_area_ratio_vs_solid = 0.0;
    bool feasible = false;
};

struct LitzDesignInputs {
    double f_effective = 0.0;     // Hz, single design frequency
    int turns = 0;
    int layers = 1;
    double winding_breadth = 0.0; // m, former breadth available to the coil
    double window_area = 0.0;     // m^2, core window cross-section
    double solid_baseline_diameter = 0.0; // m
    double fill_factor = 0.15;    // copper fraction of the per-turn window share
    double temperature_c = 20.0;
};

/// Strand selection: largest catalog diameter at or below skin_depth/3 at
/// f_effective, strand count maximized within the per-turn window share and
/// floored at the solid baseline's copper area. Infeasibility is reported in
/// the result, not thrown.
LitzRecommendation recommend(const LitzDesignInputs& inputs,
                             const std::vector<double>& strand_catalog);

/// Feasibility and predicted AC factor of a specific strand/count pair under
/// the same constraints as recommend().
LitzRecommendation evaluate_candidate(const LitzDesignInputs& inputs, double strand_diameter,
                                      int strand_count);

/// P_ac(litz)/P_ac(solid) on the given spectrum. Preconditions: equal turns,
/// DC copper areas within 60%. A spectrum with no AC content returns the DC
/// resistance ratio (the DC limit of the total-loss ratio).
double ac_factor_comparison(const HarmonicSpectrum& spectrum, const WindingSpec& solid,
                            const WindingSpec& litz, double temperature_c);

/// RMS^2-weighted mean switching frequency of the profile; the dominant
/// ripple frequency used as the litz design frequency.
double effective_switching_frequency(const HalfLineProfile& profile);

} // namespace pfc
