#include "pfcsim/losses.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>
#include <vector>

#include <fftw3.h>

#include "pfcsim/numerics.hpp"

namespace pfc {

namespace {

constexpr double kRho20 = 1.724e-8;          // Ohm*m, copper at 20 C
constexpr double kRhoTempCoeff = 3.93e-3;    // 1/K
constexpr double kActiveCycleCurrent = 1e-3; // A, cycles below this are idle

// Calibrated against the bundled gapped boundary-mode scenario so that the
// fringing band carries ~30% of the winding loss there. Only the ordering
// between conduction modes and the axial localization are contract-bearing;
// the wattage itself is a calibration placeholder.
constexpr double kDefaultFringingCoupling = 2.93e9; // W/(m^2 * Wb^2/s)

double litz_effective_layers(const WindingSpec& winding) {
    if (const auto* litz = std::get_if<LitzWire>(&winding.wire))
        return winding.layers * std::sqrt(static_cast<double>(litz->strand_count));
    return winding.layers;
}

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex g_fftw_mutex;

} // namespace

double HarmonicSpectrum::total_power() const {
    KahanSum sum;
    sum.add(dc * dc);
    for (const auto& [f, amp] : bins)
        sum.add(amp * amp);
    return sum.value();
}

double default_fringing_coupling() {
    return kDefaultFringingCoupling;
}

double default_fringing_decay(double gap_length, double winding_axial_length) {
    if (gap_length <= 0.0)
        return 0.25 * winding_axial_length; // unused when there is no gap
    return std::min(5.0 * gap_length, 0.5 * winding_axial_length);
}

double dc_copper_loss(double r_dc, double i_rms) {
    if (r_dc <= 0.0)
        throw ValidationError("DC resistance must be positive");
    if (i_rms < 0.0)
        throw ValidationError("RMS current must be >= 0");
    return r_dc * i_rms * i_rms;
}

double copper_resistivity(double temperature_c) {
    return kRho20 * (1.0 + kRhoTempCoeff * (temperature_c - 20.0));
}

double skin_depth(double frequency, double temperature_c) {
    if (frequency <= 0.0)
        throw ValidationError("skin depth needs a positive frequency");
    return std::sqrt(copper_resistivity(temperature_c) / (std::numbers::pi * frequency * kMu0));
}

double dowell_factor(double phi, double layers_m) {
    if (phi < 0.0)
        throw ValidationError("dowell factor needs phi >= 0");
    if (layers_m < 1.0)
        throw ValidationError("dowell factor needs at least one layer");
    if (phi < 1e-6)
        return 1.0; // DC limit
    const double m2 = layers_m * layers_m;
    double skin_term, prox_term;
    if (phi > 20.0) {
        // sinh/cosh ratios saturate at 1 well before overflow territory
        skin_term = 1.0;
        prox_term = 1.0;
    } else {
        skin_term = (std::sinh(2.0 * phi) + std::sin(2.0 * phi)) /
                    (std::cosh(2.0 * phi) - std::cos(2.0 * phi));
        prox_term = (std::sinh(phi) - std::sin(phi)) / (std::cosh(phi) + std::cos(phi));
    }
    return phi * (skin_term + (2.0 * (m2 - 1.0) / 3.0) * prox_term);
}

double dowell_phi(double conductor_diameter, double frequency, double temperature_c) {
    const double effective_thickness =
        std::pow(std::numbers::pi / 4.0, 0.75) * conductor_diameter;
    return effective_thickness / skin_depth(frequency, temperature_c);
}

HarmonicSpectrum harmonic_spectrum(const HalfLineProfile& profile, std::size_t n_samples,
                                   std::size_t harmonics) {
    if (profile.cycles.empty())
        throw ValidationError("spectrum of an empty profile");

    double f_sw_max = 0.0;
    for (const SwitchingCycle& c : profile.cycles)
        if (c.i_peak > kActiveCycleCurrent)
            f_sw_max = std::max(f_sw_max, 1.0 / c.period());
    const double f_line = profile.operating_point.line_frequency;
    const double required = 2.0 * static_cast<double>(harmonics) * f_sw_max / f_line;
    if (static_cast<double>(n_samples) < required)
        throw ValidationError("spectrum undersampled: need at least " +
                              std::to_string(static_cast<std::size_t>(std::ceil(required))) +
                              " samples");

    const std::size_t n = next_power_of_two(n_samples);
    const double span = profile.span();
    const double t0 = profile.cycles.front().t_start;

    std::vector<double> samples(n);
    for (std::size_t k = 0; k < n; ++k)
        samples[k] =
            current_at(profile, t0 + static_cast<double>(k) * span / static_cast<double>(n));

    std::vector<std::complex<double>> out(n / 2 + 1);
    {
        fftw_plan plan;
        {
            std::scoped_lock lock(g_fftw_mutex);
            plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), samples.data(),
                                        reinterpret_cast<fftw_complex*>(out.data()),
                                        FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
        }
        fftw_execute(plan);
        {
            std::scoped_lock lock(g_fftw_mutex);
            fftw_destroy_plan(plan);
        }
    }

    HarmonicSpectrum spectrum;
    spectrum.dc = std::abs(out[0]) / static_cast<double>(n);

    std::vector<std::pair<double, double>> bins; // (f, rms amplitude)
    bins.reserve(n / 2);
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double mag = std::abs(out[k]) / static_cast<double>(n);
        const double rms = (k == n / 2) ? mag : mag * std::numbers::sqrt2;
        bins.emplace_back(static_cast<double>(k) / span, rms);
    }
    if (bins.size() > harmonics) {
        std::nth_element(bins.begin(), bins.begin() + harmonics, bins.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        bins.resize(harmonics);
    }
    std::sort(bins.begin(), bins.end());
    spectrum.bins = std::move(bins);
    return spectrum;
}

double ac_copper_loss(const HarmonicSpectrum& spectrum, const WindingSpec& winding,
                      double temperature_c) {
    const double d = conductor_diameter(winding.wire);
    const double m_eff = litz_effective_layers(winding);
    KahanSum sum;
    for (const auto& [f, amp] : spectrum.bins) {
        const double fr = dowell_factor(dowell_phi(d, f, temperature_c), m_eff);
        sum.add((fr - 1.0) * winding.dc_resistance * amp * amp);
    }
    return sum.value();
}

std::pair<double, std::vector<double>> fringing_loss(const HalfLineProfile& profile,
                                                     const FringingModel& fringing,
                                                     const CoreGeometry& core,
                                                     const WindingSpec& winding,
                                                     std::size_t sections) {
    if (sections < 3)
        throw ValidationError("fringing loss needs at least 3 winding sections");
    if (fringing.coupling_coefficient < 0.0)
        throw ValidationError("fringing coupling must be >= 0");

    std::vector<double> density(sections, 0.0);
    if (core.gap_style == GapStyle::Distributed || core.gap_length <= 0.0 ||
        profile.cycles.empty())
        return {0.0, density};

    // Time mean of f * dPhi_gap^2: per-cycle eddy energy scales with the
    // squared gap-flux swing, taken at the cycle rate.
    KahanSum swing_sum;
    for (const SwitchingCycle& c : profile.cycles) {
        const double d_phi = profile.inductance * (c.i_peak - c.i_start) / winding.turns;
        swing_sum.add(d_phi * d_phi);
    }
    const double total = fringing.coupling_coefficient * core.gap_length * core.gap_length *
                         swing_sum.value() / profile.span();

    const double decay = fringing.decay_length > 0.0
                             ? fringing.decay_length
                             : default_fringing_decay(core.gap_length, winding.axial_length);
    const double pitch = winding.axial_length / static_cast<double>(sections);
    const double gap_plane = 0.5 * winding.axial_length;
    KahanSum weight_sum;
    for (std::size_t i = 0; i < sections; ++i) {
        const double z = std::abs((static_cast<double>(i) + 0.5) * pitch - gap_plane);
        density[i] = std::exp(-z / decay);
        weight_sum.add(density[i]);
    }
    for (double& w : density)
        w *= total / weight_sum.value();
    return {total, density};
}

double core_loss(const HalfLineProfile& profile, const MaterialParams& material,
                 const CoreGeometry& core, double temperature_c) {
    if (temperature_c < 0.0 || temperature_c > 150.0)
        throw ValidationError("core loss temperature outside the polynomial validity range");
    if (profile.cycles.empty())
        return 0.0;

    const double poly = material.ct - material.ct1 * temperature_c +
                        material.ct2 * temperature_c * temperature_c;
    KahanSum sum; // integral of P_v dt, kW/m^3 * s
    for (const SwitchingCycle& c : profile.cycles) {
        if (c.delta_b > material.saturation_flux)
            throw SaturationError("flux density swing reaches saturation");
        if (c.delta_b <= 0.0)
            continue;
        const double f = 1.0 / c.period();
        const double p_v = material.steinmetz_kf * std::pow(f, material.steinmetz_x) *
                           std::pow(c.delta_b, material.steinmetz_y) * poly;
        sum.add(p_v * c.period());
    }
    // P_v is kW/m^3
    return core.effective_volume * (sum.value() / profile.span()) * 1e3;
}

LossBreakdown loss_breakdown(const HalfLineProfile& profile, const CoreGeometry& core,
                             const MaterialParams& material, const WindingSpec& winding,
                             const FringingModel& fringing, double temperature_c,
                             std::size_t sections, const SpectrumOptions& spectrum_options) {
    LossBreakdown out;
    out.axial_density.assign(sections, 0.0);

    const double i_rms = rms_current(profile);
    out.p_dc = dc_copper_loss(winding.dc_resistance, i_rms);

    if (i_rms > 0.0) {
        double f_sw_max = 0.0;
        for (const SwitchingCycle& c : profile.cycles)
            if (c.i_peak > kActiveCycleCurrent)
                f_sw_max = std::max(f_sw_max, 1.0 / c.period());
        std::size_t n = spectrum_options.n_samples;
        if (n == 0) {
            const double guard = 2.0 * static_cast<double>(spectrum_options.harmonics) *
                                 f_sw_max / profile.operating_point.line_frequency;
            n = next_power_of_two(static_cast<std::size_t>(std::ceil(guard)) + 1);
        }
        const HarmonicSpectrum spectrum =
            harmonic_spectrum(profile, n, spectrum_options.harmonics);
        out.p_ac_skin_prox = ac_copper_loss(spectrum, winding, temperature_c);
    }

    auto [p_fr, fr_density] = fringing_loss(profile, fringing, core, winding, sections);
    out.p_fringing = p_fr;
    out.p_core = core_loss(profile, material, core, temperature_c);

    const double uniform = (out.p_dc + out.p_ac_skin_prox) / static_cast<double>(sections);
    for (std::size_t i = 0; i < sections; ++i)
        out.axial_density[i] = uniform + fr_density[i];

    KahanSum total;
    total.add(out.p_dc);
    total.add(out.p_ac_skin_prox);
    total.add(out.p_fringing);
    total.add(out.p_core);
    out.p_total = total.value();
    return out;
}

} // namespace pfc
