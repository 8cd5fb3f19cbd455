#pragma once

#include <utility>
#include <vector>

#include "pfcsim/errors.hpp"
#include "pfcsim/magnetics.hpp"

namespace pfc {

/// Electrical operating point of the PFC stage.
struct OperatingPoint {
    double vin_rms = 0.0;        // V
    double line_frequency = 0.0; // Hz
    double vout = 0.0;           // V
    double pout = 0.0;           // W
    double efficiency = 0.93;    // (0, 1]
};

void validate(const OperatingPoint& op);

enum class ConductionMode {
    DcmCrcmQr,    // boundary mode with quasi-resonant valley turn-on
    FixedFreqCcm, // fixed switching period over the whole half-line
    Mixed,        // CCM around the crest, DCM/QR near the zero crossings
};

struct ValleyPolicy {
    enum class Kind { FirstValley, FrequencyClamp };
    Kind kind = Kind::FrequencyClamp;
    double f_max = 130e3; // Hz, only used by FrequencyClamp
};

struct ControllerConfig {
    ConductionMode mode = ConductionMode::DcmCrcmQr;
    double f_sw_ccm = 58823.529411764706; // Hz (17 us period)
    double coss_node_capacitance = 100e-12; // F; 0 disables the QR ring/idle
    ValleyPolicy valley_policy;
    double mixed_boundary_hysteresis = 0.15;
    double min_on_time = 200e-9; // s, zero-crossing clamp
};

void validate(const ControllerConfig& cfg);

/// One switch on/off cycle. Current is piecewise linear: i_start -> i_peak
/// over t_on, i_peak -> i_end over t_off, then i_end (0 in DCM) held for
/// t_idle.
struct SwitchingCycle {
    double t_start = 0.0;
    double t_on = 0.0;
    double t_off = 0.0;
    double t_idle = 0.0;
    double i_start = 0.0;
    double i_peak = 0.0;
    double i_end = 0.0;
    double delta_b = 0.0; // T, filled by annotate_flux_swing()

    double period() const { return t_on + t_off + t_idle; }
};

/// Contiguous tiling of one mains half-cycle with switching cycles.
struct HalfLineProfile {
    std::vector<SwitchingCycle> cycles;
    OperatingPoint operating_point;
    double inductance = 0.0; // H

    double half_line_duration() const { return 0.5 / operating_point.line_frequency; }
    /// End time of the last cycle; exceeds the half-line duration by less
    /// than one cycle period.
    double span() const;
};

/// Rectified-sine current program i_ref(t) tracking the input voltage.
double current_reference(const OperatingPoint& op, double t);

/// Instantaneous rectified input voltage at t.
double instantaneous_input_voltage(const OperatingPoint& op, double t);

/// Boundary-mode cycle with optional quasi-resonant idle. The peak is scaled
/// by (t_on+t_off+t_idle)/(t_on+t_off), fixed-point iterated, so the cycle
/// still delivers the referenced average current once idle time is inserted.
SwitchingCycle synth_cycle_crcm_qr(const OperatingPoint& op, double inductance_h,
                                   const ControllerConfig& cfg, double t);

/// Fixed-frequency CCM cycle in periodic steady state. Throws ModeError when
/// the valley current would be negative (caller should have selected DCM).
SwitchingCycle synth_cycle_ccm(const OperatingPoint& op, double inductance_h,
                               const ControllerConfig& cfg, double t);

/// Peak-to-peak CCM ripple v_in*D/(L*f_sw) at time t.
double ccm_ripple(const OperatingPoint& op, double inductance_h, const ControllerConfig& cfg,
                  double t);

enum class BoundaryChoice { UseCcm, UseDcmQr };

/// Mixed-mode dispatch: CCM iff i_ref(t) > (1+hysteresis)*ripple/2 (strict;
/// ties fall to DCM/QR).
BoundaryChoice mixed_boundary(const OperatingPoint& op, double inductance_h,
                              const ControllerConfig& cfg, double t);

/// Tiles [0, 1/(2*f_line)] with cycles, freezing v_in and i_ref at each
/// cycle's start time.
HalfLineProfile synthesize_half_cycle(const OperatingPoint& op, double inductance_h,
                                      const ControllerConfig& cfg);

/// Piecewise-analytic RMS over the tiled span: ramps integrate in closed
/// form, idle segments contribute zero.
double rms_current(const HalfLineProfile& profile);

/// Mean of v_in(t_start) * per-cycle average current; equals pout/efficiency
/// for an ideally regulated profile.
double average_input_power(const HalfLineProfile& profile);

/// (t_start, 1/period) per cycle.
std::vector<std::pair<double, double>> switching_frequency_profile(const HalfLineProfile& profile);

/// Inductor current at absolute time t within the profile span.
double current_at(const HalfLineProfile& profile, double t);

/// Fills each cycle's delta_b = L*(i_peak - i_start)/(N*Ae).
HalfLineProfile annotate_flux_swing(HalfLineProfile profile, const WindingSpec& winding,
                                    const CoreGeometry& core);

} // namespace pfc
