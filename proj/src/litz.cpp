#include "pfcsim/litz.hpp"

#include <algorithm>
#include <cmath>

#include "pfcsim/numerics.hpp"

namespace pfc {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kStrandRuleDivisor = 3.0; // strands no thicker than skin depth / 3

void check_inputs(const LitzDesignInputs& in) {
    if (in.f_effective <= 0.0)
        throw ValidationError("litz design needs a positive effective frequency");
    if (in.turns < 1 || in.layers < 1)
        throw ValidationError("litz design needs at least one turn and one layer");
    if (in.window_area <= 0.0 || in.winding_breadth <= 0.0)
        throw ValidationError("litz design needs positive former dimensions");
    if (in.solid_baseline_diameter <= 0.0)
        throw ValidationError("litz design needs the solid baseline diameter");
    if (in.fill_factor <= 0.0 || in.fill_factor > 1.0)
        throw ValidationError("litz fill factor must lie in (0, 1]");
}

LitzRecommendation evaluate(const LitzDesignInputs& in, double strand_diameter,
                            int strand_count) {
    LitzRecommendation rec;
    rec.strand_diameter = strand_diameter;
    rec.strand_count = strand_count;

    const double strand_area = kQuarterPi * strand_diameter * strand_diameter;
    const double solid_area =
        kQuarterPi * in.solid_baseline_diameter * in.solid_baseline_diameter;
    rec.copper_area_ratio_vs_solid = strand_count * strand_area / solid_area;

    const double strand_limit = skin_depth(in.f_effective, in.temperature_c) / kStrandRuleDivisor;
    const double per_turn_copper_budget = in.fill_factor * in.window_area / in.turns;
    rec.feasible = strand_diameter <= strand_limit &&
                   strand_count * strand_area <= per_turn_copper_budget &&
                   strand_count * strand_area >= solid_area;

    const double m_eff = in.layers * std::sqrt(static_cast<double>(strand_count));
    rec.predicted_fr_at_f =
        dowell_factor(dowell_phi(strand_diameter, in.f_effective, in.temperature_c), m_eff);
    return rec;
}

} // namespace

LitzRecommendation recommend(const LitzDesignInputs& inputs,
                             const std::vector<double>& strand_catalog) {
    check_inputs(inputs);
    LitzRecommendation rec;
    if (strand_catalog.empty())
        return rec; // infeasible, not an error

    const double strand_limit =
        skin_depth(inputs.f_effective, inputs.temperature_c) / kStrandRuleDivisor;
    double best = 0.0;
    for (double d : strand_catalog)
        if (d > 0.0 && d <= strand_limit)
            best = std::max(best, d);
    if (best <= 0.0) {
        // No catalog strand thin enough; report the thinnest one as the
        // failed candidate.
        const double thinnest = *std::min_element(strand_catalog.begin(), strand_catalog.end());
        rec = evaluate(inputs, thinnest, 1);
        rec.feasible = false;
        return rec;
    }

    const double strand_area = kQuarterPi * best * best;
    const double per_turn_copper_budget = inputs.fill_factor * inputs.window_area / inputs.turns;
    const double solid_area =
        kQuarterPi * inputs.solid_baseline_diameter * inputs.solid_baseline_diameter;
    const int count_fill = static_cast<int>(std::floor(per_turn_copper_budget / strand_area));
    const int count_floor = static_cast<int>(std::ceil(solid_area / strand_area - 1e-9));
    if (count_fill < std::max(count_floor, 1)) {
        rec = evaluate(inputs, best, std::max(count_fill, 1));
        rec.feasible = false;
        return rec;
    }
    return evaluate(inputs, best, count_fill);
}

LitzRecommendation evaluate_candidate(const LitzDesignInputs& inputs, double strand_diameter,
                                      int strand_count) {
    check_inputs(inputs);
    if (strand_diameter <= 0.0 || strand_count < 1)
        throw ValidationError("litz candidate needs a positive strand diameter and count");
    return evaluate(inputs, strand_diameter, strand_count);
}

double ac_factor_comparison(const HarmonicSpectrum& spectrum, const WindingSpec& solid,
                            const WindingSpec& litz, double temperature_c) {
    if (solid.turns != litz.turns)
        throw ValidationError("AC factor comparison needs equal turn counts");
    const double area_solid = copper_area(solid.wire);
    const double area_litz = copper_area(litz.wire);
    if (std::abs(area_litz - area_solid) / area_solid > 0.6)
        throw ValidationError("AC factor comparison needs DC copper areas within 60%");

    const double p_solid = ac_copper_loss(spectrum, solid, temperature_c);
    const double p_litz = ac_copper_loss(spectrum, litz, temperature_c);
    if (p_solid <= 0.0) // no AC content: the total-loss ratio degenerates to DC
        return litz.dc_resistance / solid.dc_resistance;
    return p_litz / p_solid;
}

double effective_switching_frequency(const HalfLineProfile& profile) {
    KahanSum weight_sum, weighted;
    for (const SwitchingCycle& c : profile.cycles) {
        if (c.i_peak <= 0.0)
            continue;
        const double energy = // integral of i^2 dt over the cycle
            c.t_on * (c.i_start * c.i_start + c.i_start * c.i_peak + c.i_peak * c.i_peak) / 3.0 +
            c.t_off * (c.i_peak * c.i_peak + c.i_peak * c.i_end + c.i_end * c.i_end) / 3.0 +
            c.t_idle * c.i_end * c.i_end;
        weight_sum.add(energy);
        weighted.add(energy / c.period());
    }
    if (weight_sum.value() <= 0.0)
        throw ValidationError("effective frequency of a zero-current profile");
    return weighted.value() / weight_sum.value();
}

} // namespace pfc
