#pragma once

#include <optional>
#include <string_view>

#include "couette/geometry.hpp"

namespace couette {

/// The six explicit steady solution families on the annulus.
///
/// The first four satisfy Dirichlet wall data (one wall rotating with
/// azimuthal speed alpha, the other at rest); the spiral variants add the
/// pressure-driven axial Poiseuille profile scaled by beta. The last two
/// satisfy impermeability plus prescribed tangential curl on the moving wall
/// and no-slip on the resting wall; their axial part combines a
/// pressure-driven term (gamma) with a logarithmic sliding term (beta).
enum class FlowFamily {
    couette_inner_rotating,
    couette_outer_rotating,
    spiral_poiseuille_inner_rotating,
    spiral_poiseuille_outer_rotating,
    spiral_pc_vorticity_on_inner,
    spiral_pc_vorticity_on_outer,
};

bool is_couette(FlowFamily f);
bool is_dirichlet(FlowFamily f);
bool is_vorticity(FlowFamily f);
/// True when the moving (data-carrying) wall is the inner cylinder.
bool moving_wall_is_inner(FlowFamily f);

std::string_view to_string(FlowFamily f);
std::optional<FlowFamily> family_from_string(std::string_view name);

/// A family tag plus its parameters. Construction validates the parameter
/// combination: Couette families take alpha only, the Dirichlet spiral
/// families take (alpha, beta), and the vorticity families take all three.
/// A parameter that a family does not admit must be zero.
struct FlowSpec {
    FlowSpec(FlowFamily family, double alpha, double beta = 0.0, double gamma = 0.0);

    FlowFamily family;
    double alpha;
    double beta;
    double gamma;

    /// d p / d z: beta for the Dirichlet spiral families, gamma for the
    /// vorticity families, zero for the Couette flows.
    double axial_pressure_slope() const;
};

enum class CouetteVariant { inner_rotating, outer_rotating };

/// Azimuthal Couette profile with unit wall speed on the rotating wall and
/// zero on the other. rho must lie in [R1, R2].
double couette_profile(const Annulus& a, CouetteVariant variant, double rho);
double couette_profile_d1(const Annulus& a, CouetteVariant variant, double rho);
double couette_profile_d2(const Annulus& a, CouetteVariant variant, double rho);

/// Annular Poiseuille profile
///   (rho^2 - R1^2 - (R2^2 - R1^2) log(rho/R1)/log(R2/R1)) / 4.
/// Vanishes at both walls; its stationary point is peak_radius(a).
double poiseuille_profile(const Annulus& a, double rho);
double poiseuille_profile_d1(const Annulus& a, double rho);
double poiseuille_profile_d2(const Annulus& a, double rho);

/// All radial data of a family at one radius: the azimuthal and axial
/// velocity profiles with first and second derivatives, the radial pressure
/// profile with its derivative, and the constant axial pressure slope.
struct RadialState {
    double u_theta = 0.0;
    double du_theta = 0.0;
    double d2u_theta = 0.0;
    double u_z = 0.0;
    double du_z = 0.0;
    double d2u_z = 0.0;
    double p_radial = 0.0;
    double dp_radial = 0.0;
    double p_axial_slope = 0.0;
};

RadialState radial_state(const FlowSpec& spec, const Annulus& a, double rho);

/// Velocity at a point; the radial component is identically zero for every
/// family. rho must lie in [R1, R2].
CylVector velocity(const FlowSpec& spec, const Annulus& a, const CylPoint& p);

/// Pressure with the additive constant fixed to zero.
double pressure(const FlowSpec& spec, const Annulus& a, const CylPoint& p);

/// Curl of the velocity in closed form.
CylVector vorticity(const FlowSpec& spec, const Annulus& a, const CylPoint& p);

} // namespace couette
