#include "pfcsim/thermal.hpp"

#include <algorithm>
#include <cmath>

#include "pfcsim/numerics.hpp"

namespace pfc {

void validate(const ThermalNetwork& net) {
    const std::size_t n = net.size();
    if (n < 3)
        throw ValidationError("thermal network needs at least 3 sections");
    if (net.axial_conductance.size() != n - 1)
        throw ValidationError("thermal network: axial conductance vector must have n-1 entries");
    for (double g : net.axial_conductance)
        if (g <= 0.0)
            throw ValidationError("thermal network: zero or negative axial conductance (singular)");
    for (double g : net.ambient_conductance)
        if (g <= 0.0)
            throw ValidationError(
                "thermal network: zero or negative ambient conductance (singular)");
}

TemperatureProfile make_profile(std::vector<double> temperatures) {
    TemperatureProfile p;
    p.temperatures = std::move(temperatures);
    const auto [lo, hi] =
        std::minmax_element(p.temperatures.begin(), p.temperatures.end());
    p.t_min = *lo;
    p.t_max = *hi;
    p.range = p.t_max - p.t_min;
    return p;
}

TemperatureProfile solve_steady_state(const ThermalNetwork& net,
                                      const std::vector<double>& injections) {
    validate(net);
    const std::size_t n = net.size();
    if (injections.size() != n)
        throw ValidationError("injection vector length must match the section count");
    for (double q : injections)
        if (q < 0.0)
            throw ValidationError("injections must be >= 0");

    // G*T = q + G_amb*T_amb, tridiagonal. Thomas algorithm.
    std::vector<double> diag(n), rhs(n), upper(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = net.ambient_conductance[i];
        if (i > 0)
            diag[i] += net.axial_conductance[i - 1];
        if (i + 1 < n)
            diag[i] += net.axial_conductance[i];
        rhs[i] = injections[i] + net.ambient_conductance[i] * net.ambient_temperature;
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        upper[i] = -net.axial_conductance[i];
    // lower diagonal equals the upper one (symmetric chain)

    std::vector<double> c_star(n - 1), d_star(n);
    c_star[0] = upper[0] / diag[0];
    d_star[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag[i] + net.axial_conductance[i - 1] * c_star[i - 1];
        d_star[i] = (rhs[i] + net.axial_conductance[i - 1] * d_star[i - 1]) / m;
        if (i + 1 < n)
            c_star[i] = upper[i] / m;
    }
    std::vector<double> t(n);
    t[n - 1] = d_star[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        t[i] = d_star[i] - c_star[i] * t[i + 1];

    // Verify the solve: residual against the assembled system ...
    double q_norm = 0.0, res_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = diag[i] * t[i] - rhs[i];
        if (i > 0)
            r -= net.axial_conductance[i - 1] * t[i - 1];
        if (i + 1 < n)
            r -= net.axial_conductance[i] * t[i + 1];
        res_norm += r * r;
        q_norm += rhs[i] * rhs[i];
    }
    if (std::sqrt(res_norm) > 1e-9 * std::max(std::sqrt(q_norm), 1e-30))
        throw std::runtime_error("thermal solve residual above tolerance");

    // ... and global energy balance: injected power = convected power.
    KahanSum injected, convected;
    for (std::size_t i = 0; i < n; ++i) {
        injected.add(injections[i]);
        convected.add(net.ambient_conductance[i] * (t[i] - net.ambient_temperature));
    }
    if (injected.value() > 0.0 &&
        std::abs(injected.value() - convected.value()) > 1e-6 * injected.value())
        throw std::runtime_error("thermal solve energy balance violated");

    return make_profile(std::move(t));
}

ProfileStatistics profile_statistics(const TemperatureProfile& profile) {
    ProfileStatistics s;
    const auto hi = std::max_element(profile.temperatures.begin(), profile.temperatures.end());
    s.t_min = profile.t_min;
    s.t_max = profile.t_max;
    s.range = profile.range;
    s.argmax_section = static_cast<std::size_t>(hi - profile.temperatures.begin());
    return s;
}

double compare_ranges(const TemperatureProfile& a, const TemperatureProfile& b) {
    return a.range - b.range;
}

ThermalNetwork build_coil_network(const CoilNetworkConfig& cfg, const WindingSpec& winding) {
    if (cfg.sections < 3)
        throw ValidationError("coil network needs at least 3 sections");

    const std::size_t n = cfg.sections + (cfg.include_core_node ? 1 : 0);
    ThermalNetwork net;
    net.ambient_temperature = cfg.ambient_c;
    net.ambient_conductance.resize(n);
    net.axial_conductance.resize(n - 1);

    const double pitch = winding.axial_length / static_cast<double>(cfg.sections);
    const double stack_thickness = winding.layers * overall_diameter(winding.wire);
    // Heat crossing a section boundary flows through the turn stack, not
    // along the copper (turns run circumferentially).
    const double g_axial =
        cfg.transverse_conductivity * stack_thickness * cfg.mean_turn_length / pitch;
    const double g_ambient = cfg.h_convection * cfg.mean_turn_length * pitch;

    for (std::size_t i = 0; i < cfg.sections; ++i)
        net.ambient_conductance[i] = g_ambient;
    for (std::size_t i = 0; i + 1 < cfg.sections; ++i)
        net.axial_conductance[i] = g_axial;

    if (cfg.include_core_node) {
        net.axial_conductance[cfg.sections - 1] = cfg.core_link_conductance;
        net.ambient_conductance[cfg.sections] = cfg.core_ambient_conductance;
    }
    return net;
}

} // namespace pfc
