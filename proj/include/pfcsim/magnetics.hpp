#pragma once

#include <variant>

#include "pfcsim/errors.hpp"

namespace pfc {

enum class GapStyle {
    DiscreteCenterGap, // single gap in the center leg
    Distributed,       // powder material, gap dispersed in the bulk
};

/// Effective (datasheet) geometry of an E-type core set.
struct CoreGeometry {
    double effective_area = 0.0;   // Ae, m^2
    double effective_length = 0.0; // le, m
    double effective_volume = 0.0; // Ve, m^3
    double center_leg_width = 0.0; // m
    double window_breadth = 0.0;   // radial depth of the winding window, m
    double window_height = 0.0;    // window dimension along the gapped leg, m
    double gap_length = 0.0;       // m, 0 for ungapped
    GapStyle gap_style = GapStyle::DiscreteCenterGap;
};

/// Core material constants. Loss density follows
///   P_v = kf * f^x * dB^y * (ct - ct1*T + ct2*T^2)   [kW/m^3, f in Hz, dB in T]
struct MaterialParams {
    double relative_permeability = 0.0;
    double saturation_flux = 0.0; // T
    double steinmetz_kf = 0.0;
    double steinmetz_x = 0.0;
    double steinmetz_y = 0.0;
    double ct = 1.0;
    double ct1 = 0.0;
    double ct2 = 0.0;
};

struct SolidWire {
    double diameter = 0.0; // m
};

struct LitzWire {
    int strand_count = 0;
    double strand_diameter = 0.0; // m
};

using WireSpec = std::variant<SolidWire, LitzWire>;

struct WindingSpec {
    int turns = 0;
    int layers = 0;
    WireSpec wire;
    double dc_resistance = 0.0; // Ohm
    double axial_length = 0.0;  // m, winding breadth on the former
};

void validate(const CoreGeometry& core);
void validate(const MaterialParams& material);
void validate(const WindingSpec& winding);

/// Total copper cross-section of the wire (all strands), m^2.
double copper_area(const WireSpec& wire);

/// Elementary conductor diameter: the solid diameter, or one strand.
double conductor_diameter(const WireSpec& wire);

/// Overall outside diameter of the conductor as wound (bundle diameter for
/// litz, assuming ~45% strand packing).
double overall_diameter(const WireSpec& wire);

/// McLyman-style single-gap fringing correction,
/// F_f = 1 + (g/sqrt(Ae)) * ln(2*window_height/g). Always >= 1.
double fringing_factor(const CoreGeometry& core);

/// Center-gap reluctance g/(mu0*Ae*F_f), 1/H. Requires a discrete gap with
/// 0 < g < window_height.
double gap_reluctance(const CoreGeometry& core, bool include_fringing = true);

/// Reluctance of the magnetic path in the core material, 1/H.
double core_reluctance(const CoreGeometry& core, const MaterialParams& material);

/// Inductance of the wound component.
///   discrete gap: N^2 / (R_gap + R_core)
///   distributed:  mu0 * mur * N^2 * Ae / le
double inductance(const CoreGeometry& core, const MaterialParams& material,
                  const WindingSpec& winding, bool include_fringing = true);

/// Inverse design: center-gap length reproducing L_target through
/// inductance(), to 1e-4 relative. Throws InfeasibleError when L_target is
/// not reachable with a gap in (0, window_height).
double solve_gap_for_inductance(const CoreGeometry& core, const MaterialParams& material,
                                const WindingSpec& winding, double target_inductance);

/// Peak flux density B = L*i/(N*Ae), T.
double flux_density(double inductance_h, const WindingSpec& winding, const CoreGeometry& core,
                    double current_a);

inline bool is_saturated(double flux_t, const MaterialParams& material) {
    return flux_t >= material.saturation_flux;
}

} // namespace pfc
