#pragma once

#include <numbers>
#include <string>
#include <vector>

namespace casimir {

// CODATA 2018 reduced Planck constant and the exact speed of light.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double c_light = 2.99792458e8;     // m / s
inline constexpr double pi2_hbar_c = std::numbers::pi * std::numbers::pi * hbar * c_light;
} // namespace constants

/// SI description of the spring + moving-plate device.
struct PhysicalParams {
    double k = 0.0;     ///< spring stiffness, N/m
    double area = 0.0;  ///< plate area, m^2
    double x0 = 0.0;    ///< free spring length (initial gap), m
    double rho_s = 0.0; ///< surface mass density of the moving plate, kg/m^2

    /// Throws DomainError unless every field is strictly positive and finite.
    void validate() const;

    /// Non-fatal remarks about the validity of the ideal-plate Casimir law.
    /// Currently flags area < 100 x0^2.
    std::vector<std::string> validity_warnings() const;
};

/// Natural-unit description: lengths in l* = x0, times in t* = b^(-1/2).
struct DimensionlessParams {
    double b = 0.0;      ///< k / (A rho_s), 1/s^2
    double c_cas = 0.0;  ///< pi^2 hbar c / (240 rho_s), m^5/s^2
    double l_star = 0.0; ///< m
    double t_star = 0.0; ///< s
    double c_hat = 0.0;  ///< c_cas / (b x0^5), the only group left in the scaled dynamics

    /// Builds the scaled description from raw equation-of-motion coefficients.
    static DimensionlessParams from_coefficients(double b, double c_cas, double x0);
};

/// A device together with its natural-unit description. For derived devices
/// `scaled` is nondimensionalize(physical); the `paper` preset pins `scaled` to
/// the published coefficients instead.
struct Device {
    PhysicalParams physical;
    DimensionlessParams scaled;
    std::string label;
};

double surface_density(double rho_volume, double thickness);

/// Ideal Casimir pressure between parallel plates at separation x (negative: attractive).
double casimir_pressure(double x);

/// Casimir interaction energy per unit area, -pi^2 hbar c / (720 x^3).
double casimir_energy_per_area(double x);

/// Spring plus Casimir potential per unit plate area, J/m^2.
double total_potential(double x, const PhysicalParams& p);

DimensionlessParams nondimensionalize(const PhysicalParams& p);

/// Total potential in natural units, V(chi) = (chi - 1)^2 / 2 - c_hat / (3 chi^3),
/// with chi = x / x0 and energies in units of (k / A) x0^2.
double scaled_potential(double chi, double c_hat);

/// Device whose natural-unit description is derived from its SI parameters.
Device make_device(const PhysicalParams& p);

namespace preset {

inline constexpr double paper_b = 1.121e14;      // 1/s^2
inline constexpr double paper_c = 1.459e-25;     // m^5/s^2
inline constexpr double paper_x0 = 1.0e-6;       // m
inline constexpr double paper_k = 1.0;           // N/m
inline constexpr double paper_area = 1.0e-12;    // m^2, the area that reproduces paper_b
inline constexpr double copper_density = 8920.0; // kg/m^3
inline constexpr double plate_thickness = 1.0e-6;

/// Copper plate, k = 1 N/m, x0 = 1 um, with the published b and c taken
/// literally. The stored physical parameters are the ones implied by b.
Device paper();

} // namespace preset

} // namespace casimir
