#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "pfcsim/controller.hpp"
#include "pfcsim/library.hpp"
#include "pfcsim/losses.hpp"
#include "pfcsim/thermal.hpp"

namespace pfc {

struct LossOptions {
    double temperature_c = 60.0;
    std::size_t spectrum_samples = 0; // 0 = auto (guard-satisfying power of two)
    std::size_t spectrum_harmonics = 100;
    int electrothermal_iterations = 0;
};

struct OutputOptions {
    int waveform_points_per_ramp = 8;
    int waveform_points_per_ring = 16;
};

/// Fully resolved simulation input: operating point, controller setup,
/// magnetics (with the gap already solved when the file gives a target
/// inductance) and model options.
struct Scenario {
    std::string name;
    OperatingPoint operating_point;
    ControllerConfig controller;
    std::string core_name;
    std::string material_name;
    CoreGeometry core; // gap_length reflects the resolved gap
    MaterialParams material;
    WindingSpec winding;
    double inductance = 0.0; // H, as used by the simulation
    FringingModel fringing;
    CoilNetworkConfig thermal;
    LossOptions loss;
    OutputOptions output;
};

/// Loads and validates a scenario file against the documented schema.
/// Unknown keys anywhere in the document are errors. Core and material are
/// resolved by name from the part library under data_dir.
Scenario load_scenario(const std::string& path, const std::string& data_dir);

} // namespace pfc
