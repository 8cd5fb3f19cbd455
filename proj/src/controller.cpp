#include "pfcsim/controller.hpp"

#include <algorithm>
#include <cmath>

#include "pfcsim/numerics.hpp"

namespace pfc {

namespace {

constexpr double kIdleCurrentThreshold = 1e-3; // A, below this a cycle is emitted as idle
constexpr int kPeakCorrectionIterations = 20;
constexpr double kPeakCorrectionTolerance = 1e-6;

double ring_period(double inductance_h, const ControllerConfig& cfg) {
    if (cfg.coss_node_capacitance <= 0.0)
        return 0.0;
    return 2.0 * std::numbers::pi * std::sqrt(inductance_h * cfg.coss_node_capacitance);
}

// Smallest valley index n >= 1 whose idle time (n - 1/2)*T_ring brings the
// cycle frequency down to f_max.
int select_valley(const ControllerConfig& cfg, double t_conduct, double t_ring) {
    if (cfg.valley_policy.kind == ValleyPolicy::Kind::FirstValley || t_ring <= 0.0)
        return 1;
    const double required = 1.0 / cfg.valley_policy.f_max - t_conduct;
    if (required <= 0.5 * t_ring)
        return 1;
    return 1 + static_cast<int>(std::ceil((required - 0.5 * t_ring) / t_ring - 1e-12));
}

SwitchingCycle idle_cycle(double t_start, double period) {
    SwitchingCycle c;
    c.t_start = t_start;
    c.t_idle = period;
    return c;
}

double idle_cycle_period(const ControllerConfig& cfg, double t_ring) {
    if (cfg.valley_policy.kind == ValleyPolicy::Kind::FrequencyClamp)
        return 1.0 / cfg.valley_policy.f_max;
    return std::max(t_ring, cfg.min_on_time);
}

} // namespace

void validate(const OperatingPoint& op) {
    if (op.vin_rms <= 0.0)
        throw ValidationError("operating point: input RMS voltage must be positive");
    if (op.line_frequency <= 0.0)
        throw ValidationError("operating point: line frequency must be positive");
    if (op.vout <= std::numbers::sqrt2 * op.vin_rms)
        throw ValidationError("operating point: output voltage must exceed the input peak "
                              "(boost constraint)");
    if (op.pout <= 0.0)
        throw ValidationError("operating point: output power must be positive");
    if (op.efficiency <= 0.0 || op.efficiency > 1.0)
        throw ValidationError("operating point: efficiency must lie in (0, 1]");
}

void validate(const ControllerConfig& cfg) {
    if ((cfg.mode == ConductionMode::FixedFreqCcm || cfg.mode == ConductionMode::Mixed) &&
        cfg.f_sw_ccm <= 0.0)
        throw ValidationError("controller: CCM switching frequency must be positive");
    if (cfg.coss_node_capacitance < 0.0)
        throw ValidationError("controller: drain node capacitance must be >= 0");
    if (cfg.valley_policy.kind == ValleyPolicy::Kind::FrequencyClamp &&
        cfg.valley_policy.f_max <= 0.0)
        throw ValidationError("controller: frequency clamp needs a positive f_max");
    if (cfg.mixed_boundary_hysteresis < 0.0)
        throw ValidationError("controller: boundary hysteresis must be >= 0");
    if (cfg.min_on_time <= 0.0)
        throw ValidationError("controller: minimum on-time must be positive");
}

double current_reference(const OperatingPoint& op, double t) {
    const double peak = std::numbers::sqrt2 * op.pout / (op.efficiency * op.vin_rms);
    return peak * std::abs(std::sin(2.0 * std::numbers::pi * op.line_frequency * t));
}

double instantaneous_input_voltage(const OperatingPoint& op, double t) {
    return std::numbers::sqrt2 * op.vin_rms *
           std::abs(std::sin(2.0 * std::numbers::pi * op.line_frequency * t));
}

double HalfLineProfile::span() const {
    if (cycles.empty())
        return 0.0;
    const SwitchingCycle& last = cycles.back();
    return last.t_start + last.period() - cycles.front().t_start;
}

SwitchingCycle synth_cycle_crcm_qr(const OperatingPoint& op, double inductance_h,
                                   const ControllerConfig& cfg, double t) {
    const double v_in = instantaneous_input_voltage(op, t);
    if (v_in >= op.vout)
        throw ModeError("instantaneous input voltage at or above the output voltage");

    const double i_ref = current_reference(op, t);
    const double t_ring = ring_period(inductance_h, cfg);

    double i_peak = 2.0 * i_ref;
    if (v_in <= 0.0 || i_peak < kIdleCurrentThreshold) {
        // Zero-crossing clamp: try the minimum on-pulse; if it still moves
        // no appreciable current the cycle is pure idle.
        i_peak = v_in * cfg.min_on_time / inductance_h;
        if (i_peak < kIdleCurrentThreshold)
            return idle_cycle(t, idle_cycle_period(cfg, t_ring));
    }

    double t_on = 0.0, t_off = 0.0, t_idle = 0.0;
    for (int i = 0; i < kPeakCorrectionIterations; ++i) {
        t_on = inductance_h * i_peak / v_in;
        t_off = inductance_h * i_peak / (op.vout - v_in);
        const int valley = select_valley(cfg, t_on + t_off, t_ring);
        t_idle = t_ring > 0.0 ? (valley - 0.5) * t_ring : 0.0;
        // Idle time starves the delivered charge; stretch the peak so the
        // cycle average still equals i_ref.
        const double corrected = 2.0 * i_ref * (t_on + t_off + t_idle) / (t_on + t_off);
        const double change = std::abs(corrected - i_peak) / std::max(i_peak, 1e-12);
        i_peak = corrected;
        if (change < kPeakCorrectionTolerance)
            break;
    }

    t_on = inductance_h * i_peak / v_in;
    if (t_on < cfg.min_on_time) {
        t_on = cfg.min_on_time;
        i_peak = v_in * t_on / inductance_h;
        if (i_peak < kIdleCurrentThreshold)
            return idle_cycle(t, idle_cycle_period(cfg, t_ring));
    }
    t_off = inductance_h * i_peak / (op.vout - v_in);
    const int valley = select_valley(cfg, t_on + t_off, t_ring);
    t_idle = t_ring > 0.0 ? (valley - 0.5) * t_ring : 0.0;

    SwitchingCycle cycle;
    cycle.t_start = t;
    cycle.t_on = t_on;
    cycle.t_off = t_off;
    cycle.t_idle = t_idle;
    cycle.i_peak = i_peak;
    return cycle;
}

double ccm_ripple(const OperatingPoint& op, double inductance_h, const ControllerConfig& cfg,
                  double t) {
    const double v_in = instantaneous_input_voltage(op, t);
    const double duty = 1.0 - v_in / op.vout;
    return v_in * duty / (inductance_h * cfg.f_sw_ccm);
}

SwitchingCycle synth_cycle_ccm(const OperatingPoint& op, double inductance_h,
                               const ControllerConfig& cfg, double t) {
    const double v_in = instantaneous_input_voltage(op, t);
    if (v_in >= op.vout)
        throw ModeError("instantaneous input voltage at or above the output voltage");

    const double period = 1.0 / cfg.f_sw_ccm;
    const double duty = 1.0 - v_in / op.vout;
    const double ripple = ccm_ripple(op, inductance_h, cfg, t);
    const double i_ref = current_reference(op, t);
    const double i_start = i_ref - 0.5 * ripple;
    if (i_start < 0.0)
        throw ModeError("CCM valley current negative: cycle lies in the DCM region");

    SwitchingCycle cycle;
    cycle.t_start = t;
    cycle.t_on = duty * period;
    cycle.t_off = period - cycle.t_on;
    cycle.i_start = i_start;
    cycle.i_peak = i_ref + 0.5 * ripple;
    cycle.i_end = i_start;
    return cycle;
}

namespace {

// Discontinuous cycle at the fixed CCM period: triangle sized so the cycle
// average matches i_ref, idle for the rest of the period. Keeps the
// fixed-frequency profile at a constant period across the whole half line.
SwitchingCycle synth_cycle_dcm_fixed_period(const OperatingPoint& op, double inductance_h,
                                            const ControllerConfig& cfg, double t) {
    const double v_in = instantaneous_input_voltage(op, t);
    if (v_in >= op.vout)
        throw ModeError("instantaneous input voltage at or above the output voltage");

    const double period = 1.0 / cfg.f_sw_ccm;
    const double i_ref = current_reference(op, t);
    if (v_in <= 0.0 || i_ref <= 0.0)
        return idle_cycle(t, period);

    const double ramp_per_amp =
        inductance_h / v_in + inductance_h / (op.vout - v_in); // (t_on+t_off)/i_peak
    double i_peak = std::sqrt(2.0 * period * i_ref / ramp_per_amp);
    double t_on = inductance_h * i_peak / v_in;
    if (t_on < cfg.min_on_time) {
        t_on = cfg.min_on_time;
        i_peak = v_in * t_on / inductance_h;
    }
    if (i_peak < kIdleCurrentThreshold)
        return idle_cycle(t, period);

    SwitchingCycle cycle;
    cycle.t_start = t;
    cycle.t_on = t_on;
    cycle.t_off = inductance_h * i_peak / (op.vout - v_in);
    cycle.t_idle = std::max(period - cycle.t_on - cycle.t_off, 0.0);
    cycle.i_peak = i_peak;
    return cycle;
}

} // namespace

BoundaryChoice mixed_boundary(const OperatingPoint& op, double inductance_h,
                              const ControllerConfig& cfg, double t) {
    const double ripple = ccm_ripple(op, inductance_h, cfg, t);
    const double threshold = (1.0 + cfg.mixed_boundary_hysteresis) * 0.5 * ripple;
    return current_reference(op, t) > threshold ? BoundaryChoice::UseCcm
                                                : BoundaryChoice::UseDcmQr;
}

HalfLineProfile synthesize_half_cycle(const OperatingPoint& op, double inductance_h,
                                      const ControllerConfig& cfg) {
    validate(op);
    validate(cfg);
    if (inductance_h <= 0.0)
        throw ValidationError("inductance must be positive");

    HalfLineProfile profile;
    profile.operating_point = op;
    profile.inductance = inductance_h;

    const double t_half = profile.half_line_duration();
    double t = 0.0;
    while (t < t_half) {
        SwitchingCycle cycle;
        switch (cfg.mode) {
        case ConductionMode::DcmCrcmQr:
            cycle = synth_cycle_crcm_qr(op, inductance_h, cfg, t);
            break;
        case ConductionMode::FixedFreqCcm:
            if (current_reference(op, t) > 0.5 * ccm_ripple(op, inductance_h, cfg, t))
                cycle = synth_cycle_ccm(op, inductance_h, cfg, t);
            else
                cycle = synth_cycle_dcm_fixed_period(op, inductance_h, cfg, t);
            break;
        case ConductionMode::Mixed:
            if (mixed_boundary(op, inductance_h, cfg, t) == BoundaryChoice::UseCcm)
                cycle = synth_cycle_ccm(op, inductance_h, cfg, t);
            else
                cycle = synth_cycle_crcm_qr(op, inductance_h, cfg, t);
            break;
        }
        cycle.t_start = t;
        if (cycle.period() <= 0.0)
            throw ModeError("degenerate switching cycle with zero period");
        profile.cycles.push_back(cycle);
        t += cycle.period();
    }
    return profile;
}

double rms_current(const HalfLineProfile& profile) {
    if (profile.cycles.empty())
        return 0.0;
    KahanSum sum; // integral of i^2 dt
    for (const SwitchingCycle& c : profile.cycles) {
        // linear ramp a->b over tau: integral = tau*(a^2 + a*b + b^2)/3
        sum.add(c.t_on * (c.i_start * c.i_start + c.i_start * c.i_peak + c.i_peak * c.i_peak) /
                3.0);
        sum.add(c.t_off * (c.i_peak * c.i_peak + c.i_peak * c.i_end + c.i_end * c.i_end) / 3.0);
        sum.add(c.t_idle * c.i_end * c.i_end);
    }
    return std::sqrt(sum.value() / profile.span());
}

double average_input_power(const HalfLineProfile& profile) {
    if (profile.cycles.empty())
        return 0.0;
    KahanSum sum;
    for (const SwitchingCycle& c : profile.cycles) {
        const double charge = 0.5 * (c.i_start + c.i_peak) * c.t_on +
                              0.5 * (c.i_peak + c.i_end) * c.t_off + c.i_end * c.t_idle;
        sum.add(instantaneous_input_voltage(profile.operating_point, c.t_start) * charge);
    }
    return sum.value() / profile.span();
}

std::vector<std::pair<double, double>> switching_frequency_profile(
    const HalfLineProfile& profile) {
    std::vector<std::pair<double, double>> out;
    out.reserve(profile.cycles.size());
    for (const SwitchingCycle& c : profile.cycles)
        out.emplace_back(c.t_start, 1.0 / c.period());
    return out;
}

double current_at(const HalfLineProfile& profile, double t) {
    if (profile.cycles.empty())
        return 0.0;
    auto it = std::upper_bound(profile.cycles.begin(), profile.cycles.end(), t,
                               [](double value, const SwitchingCycle& c) {
                                   return value < c.t_start;
                               });
    if (it == profile.cycles.begin())
        return 0.0;
    const SwitchingCycle& c = *std::prev(it);
    const double tau = t - c.t_start;
    if (tau < c.t_on && c.t_on > 0.0)
        return c.i_start + (c.i_peak - c.i_start) * tau / c.t_on;
    if (tau < c.t_on + c.t_off && c.t_off > 0.0)
        return c.i_peak + (c.i_end - c.i_peak) * (tau - c.t_on) / c.t_off;
    return c.i_end;
}

HalfLineProfile annotate_flux_swing(HalfLineProfile profile, const WindingSpec& winding,
                                    const CoreGeometry& core) {
    const double scale = profile.inductance / (winding.turns * core.effective_area);
    for (SwitchingCycle& c : profile.cycles)
        c.delta_b = scale * (c.i_peak - c.i_start);
    return profile;
}

} // namespace pfc
