#pragma once

#include <cstddef>
#include <vector>

#include "pfcsim/errors.hpp"
#include "pfcsim/magnetics.hpp"

namespace pfc {

/// 1-D chain of nodes along the coil axis: conduction links between
/// neighbours plus a convection link from every node to ambient.
struct ThermalNetwork {
    std::vector<double> axial_conductance;   // W/K, length n-1
    std::vector<double> ambient_conductance; // W/K, length n
    double ambient_temperature = 27.0;       // C

    std::size_t size() const { return ambient_conductance.size(); }
};

void validate(const ThermalNetwork& net);

struct TemperatureProfile {
    std::vector<double> temperatures; // C
    double t_min = 0.0;
    double t_max = 0.0;
    double range = 0.0;
};

TemperatureProfile make_profile(std::vector<double> temperatures);

struct ProfileStatistics {
    double t_min = 0.0;
    double t_max = 0.0;
    double range = 0.0;
    std::size_t argmax_section = 0;
};

/// Steady-state solve of G*T = q + G_amb*T_amb (tridiagonal, Thomas
/// algorithm). The result is verified: residual below 1e-9*|q| and injected
/// power balancing the convected power to 1e-6 relative.
TemperatureProfile solve_steady_state(const ThermalNetwork& net,
                                      const std::vector<double>& injections);

ProfileStatistics profile_statistics(const TemperatureProfile& profile);

/// range(a) - range(b), K.
double compare_ranges(const TemperatureProfile& a, const TemperatureProfile& b);

/// Defaults for building the coil network from construction data. The
/// absolute temperatures these produce are calibration-dependent; the
/// profile shape is the contract.
struct CoilNetworkConfig {
    std::size_t sections = 33;
    double ambient_c = 27.0;
    double h_convection = 12.0;           // W/m^2K on the outer surface
    double transverse_conductivity = 0.75; // W/mK through the turn stack
    double mean_turn_length = 77e-3;       // m
    bool include_core_node = true;
    double core_link_conductance = 5e-4;    // W/K, end section to core node
    double core_ambient_conductance = 4.8e-2; // W/K, core node to ambient
};

/// Chain of `sections` winding nodes plus, when configured, one core node
/// appended after the last section (injection index sections).
ThermalNetwork build_coil_network(const CoilNetworkConfig& cfg, const WindingSpec& winding);

} // namespace pfc
