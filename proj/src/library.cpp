#include "pfcsim/library.hpp"

#include <algorithm>

#include "json_util.hpp"

namespace pfc {

namespace {

CoreGeometry parse_core(StrictObject& obj) {
    CoreGeometry core;
    core.effective_area = obj.required<double>("effective_area_m2");
    core.effective_length = obj.required<double>("effective_length_m");
    core.effective_volume = obj.required<double>("effective_volume_m3");
    core.center_leg_width = obj.required<double>("center_leg_width_m");
    core.window_breadth = obj.required<double>("window_breadth_m");
    core.window_height = obj.required<double>("window_height_m");
    core.gap_length = obj.optional<double>("gap_length_m", 0.0);
    const std::string style = obj.required<std::string>("gap_style");
    if (style == "discrete_center")
        core.gap_style = GapStyle::DiscreteCenterGap;
    else if (style == "distributed")
        core.gap_style = GapStyle::Distributed;
    else
        throw ValidationError(obj.path() + ".gap_style: unknown value '" + style + "'");
    obj.optional<std::string>("source", "");
    obj.finish();
    validate(core);
    return core;
}

MaterialParams parse_material(StrictObject& obj) {
    MaterialParams m;
    m.relative_permeability = obj.required<double>("relative_permeability");
    m.saturation_flux = obj.required<double>("saturation_flux_T");
    m.steinmetz_kf = obj.required<double>("steinmetz_kf");
    m.steinmetz_x = obj.required<double>("steinmetz_x");
    m.steinmetz_y = obj.required<double>("steinmetz_y");
    m.ct = obj.required<double>("ct");
    m.ct1 = obj.required<double>("ct1");
    m.ct2 = obj.required<double>("ct2");
    obj.optional<std::string>("source", "");
    obj.optional<std::string>("fit_range", "");
    obj.finish();
    validate(m);
    return m;
}

} // namespace

const CoreGeometry& PartLibrary::core(const std::string& name) const {
    auto it = cores.find(name);
    if (it == cores.end())
        throw ValidationError("unknown core '" + name + "' in part library");
    return it->second;
}

const MaterialParams& PartLibrary::material(const std::string& name) const {
    auto it = materials.find(name);
    if (it == materials.end())
        throw ValidationError("unknown material '" + name + "' in part library");
    return it->second;
}

PartLibrary load_part_library(const std::string& path) {
    const nlohmann::json doc = load_json_file(path);
    if (!doc.is_object())
        throw ValidationError(path + ": part library must be a JSON object");

    PartLibrary lib;
    for (const auto& item : doc.items()) {
        StrictObject entry(item.value(), path + ":" + item.key());
        const std::string kind = entry.required<std::string>("kind");
        if (kind == "core")
            lib.cores.emplace(item.key(), parse_core(entry));
        else if (kind == "material")
            lib.materials.emplace(item.key(), parse_material(entry));
        else
            throw ValidationError(path + ":" + item.key() + ": unknown kind '" + kind + "'");
    }
    return lib;
}

std::vector<double> load_strand_catalog(const std::string& path) {
    const nlohmann::json doc = load_json_file(path);
    if (!doc.is_array())
        throw ValidationError(path + ": strand catalog must be a JSON array of diameters");
    std::vector<double> catalog;
    for (const auto& v : doc) {
        if (!v.is_number())
            throw ValidationError(path + ": strand catalog entries must be numbers");
        const double d = v.get<double>();
        if (d <= 0.0)
            throw ValidationError(path + ": strand diameters must be positive");
        catalog.push_back(d);
    }
    std::sort(catalog.begin(), catalog.end());
    return catalog;
}

} // namespace pfc
