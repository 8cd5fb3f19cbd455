#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pfcsim/controller.hpp"
#include "pfcsim/magnetics.hpp"

namespace pfc {

/// One-sided spectrum of the inductor current over the half-line window.
/// Amplitudes are RMS per bin.
struct HarmonicSpectrum {
    double dc = 0.0; // A
    std::vector<std::pair<double, double>> bins; // (Hz, A rms), frequency ascending

    /// dc^2 + sum of squared bin amplitudes; equals the waveform RMS^2 when
    /// no energy was truncated away.
    double total_power() const;
};

/// Parametric surrogate for the winding loss induced by the gap fringing
/// field.
struct FringingModel {
    double coupling_coefficient = 0.0; // W/(m^2 * Wb^2/s)
    double decay_length = 0.0;         // m, axial decay away from the gap plane
};

/// Default coupling, calibrated so the gapped boundary-mode bundled scenario
/// dissipates ~30% of its winding loss in the fringing band.
double default_fringing_coupling();

/// decay of 5 gap lengths, capped at half the winding length.
double default_fringing_decay(double gap_length, double winding_axial_length);

struct LossBreakdown {
    double p_dc = 0.0;
    double p_ac_skin_prox = 0.0;
    double p_fringing = 0.0;
    double p_core = 0.0;
    double p_total = 0.0;
    std::vector<double> axial_density; // W per winding section, core loss excluded
};

/// P = R_dc * I_rms^2.
double dc_copper_loss(double r_dc, double i_rms);

/// Copper resistivity at T, Ohm*m (1.724e-8 at 20 C, 0.393%/K).
double copper_resistivity(double temperature_c);

/// Skin depth sqrt(rho(T)/(pi*f*mu0)), m.
double skin_depth(double frequency, double temperature_c);

/// Dowell AC/DC resistance ratio of an m-layer winding at normalized
/// conductor thickness phi. F_R(0) = 1; monotone nondecreasing in phi and m.
double dowell_factor(double phi, double layers_m);

/// Normalized conductor thickness (pi/4)^(3/4) * d / skin_depth(f, T).
double dowell_phi(double conductor_diameter, double frequency, double temperature_c);

/// Uniform resampling of the profile current followed by a discrete Fourier
/// decomposition; returns the DC term plus the K strongest bins by
/// amplitude, sorted by frequency. n_samples must be at least
/// 2*K*(f_sw_max/f_line) and is rounded up to a power of two internally.
HarmonicSpectrum harmonic_spectrum(const HalfLineProfile& profile, std::size_t n_samples,
                                   std::size_t harmonics);

/// Excess copper loss over DC: sum_k (F_R(phi(f_k), m) - 1) * R_dc * I_k^2.
/// Litz windings use the strand diameter and an effective layer count
/// m*sqrt(n) (bundle model).
double ac_copper_loss(const HarmonicSpectrum& spectrum, const WindingSpec& winding,
                      double temperature_c);

/// Gap-fringing winding loss with axial localization.
///
/// Per cycle the gap flux swings by dPhi = L*(i_peak-i_start)/N; the loss
/// surrogate is k_fr * g^2 * sum(dPhi^2)/span, i.e. the time mean of
/// f*dPhi^2 (per-cycle eddy energy proportional to the squared swing, times
/// the cycle rate). Axial density decays as exp(-z/decay_length) from the
/// gap plane and is normalized to the total. Distributed or ungapped cores
/// return zero.
std::pair<double, std::vector<double>> fringing_loss(const HalfLineProfile& profile,
                                                     const FringingModel& fringing,
                                                     const CoreGeometry& core,
                                                     const WindingSpec& winding,
                                                     std::size_t sections);

/// Steinmetz core loss evaluated cycle by cycle with each cycle's own f and
/// flux swing (from annotate_flux_swing), time-weighted over the half line.
/// Throws SaturationError when any cycle's swing reaches the material Bsat.
double core_loss(const HalfLineProfile& profile, const MaterialParams& material,
                 const CoreGeometry& core, double temperature_c);

struct SpectrumOptions {
    std::size_t n_samples = 0; // 0: smallest power of two satisfying the guard
    std::size_t harmonics = 100;
};

/// Full stack: DC + AC copper, fringing, core. axial_density spreads the
/// copper losses uniformly and adds the fringing density; core loss is
/// reported separately (it heats the core node, not the winding).
LossBreakdown loss_breakdown(const HalfLineProfile& profile, const CoreGeometry& core,
                             const MaterialParams& material, const WindingSpec& winding,
                             const FringingModel& fringing, double temperature_c,
                             std::size_t sections, const SpectrumOptions& spectrum_options = {});

} // namespace pfc
