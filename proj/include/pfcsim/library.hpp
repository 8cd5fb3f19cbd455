#pragma once

#include <map>
#include <string>
#include <vector>

#include "pfcsim/magnetics.hpp"

namespace pfc {

/// Core and material entries loaded from the part library JSON: a map from
/// part name to either core geometry or material constants, SI units.
struct PartLibrary {
    std::map<std::string, CoreGeometry> cores;
    std::map<std::string, MaterialParams> materials;

    const CoreGeometry& core(const std::string& name) const;
    const MaterialParams& material(const std::string& name) const;
};

PartLibrary load_part_library(const std::string& path);

/// Available strand diameters in meters, ascending.
std::vector<double> load_strand_catalog(const std::string& path);

} // namespace pfc
