#include "casimir/physics_model.hpp"

#include <cmath>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os << name << " must be positive and finite (got " << value << ")";
        throw DomainError(os.str());
    }
}

void require_separation(double x) {
    if (!(x > 0.0)) {
        std::ostringstream os;
        os << "plate separation must be positive (got " << x << ")";
        throw SingularityError(os.str());
    }
}

} // namespace

void PhysicalParams::validate() const {
    require_positive(k, "k");
    require_positive(area, "area");
    require_positive(x0, "x0");
    require_positive(rho_s, "rho_s");
}

std::vector<std::string> PhysicalParams::validity_warnings() const {
    std::vector<std::string> out;
    if (area < 100.0 * x0 * x0) {
        std::ostringstream os;
        os << "area " << area << " m^2 is below 100*x0^2 = " << 100.0 * x0 * x0
           << " m^2; the ideal parallel-plate Casimir law assumes A >> x0^2";
        out.push_back(os.str());
    }
    return out;
}

DimensionlessParams DimensionlessParams::from_coefficients(double b, double c_cas, double x0) {
    require_positive(b, "b");
    require_positive(x0, "x0");
    if (!(c_cas >= 0.0) || !std::isfinite(c_cas))
        throw DomainError("Casimir coefficient must be non-negative and finite");
    DimensionlessParams d;
    d.b = b;
    d.c_cas = c_cas;
    d.l_star = x0;
    d.t_star = 1.0 / std::sqrt(b);
    const double x0_2 = x0 * x0;
    d.c_hat = c_cas / (b * x0_2 * x0_2 * x0);
    return d;
}

double surface_density(double rho_volume, double thickness) {
    require_positive(rho_volume, "volume density");
    require_positive(thickness, "thickness");
    return rho_volume * thickness;
}

double casimir_pressure(double x) {
    require_separation(x);
    const double x2 = x * x;
    return -constants::pi2_hbar_c / (240.0 * x2 * x2);
}

double casimir_energy_per_area(double x) {
    require_separation(x);
    return -constants::pi2_hbar_c / (720.0 * x * x * x);
}

double total_potential(double x, const PhysicalParams& p) {
    require_separation(x);
    const double d = x - p.x0;
    return 0.5 * p.k / p.area * d * d + casimir_energy_per_area(x);
}

DimensionlessParams nondimensionalize(const PhysicalParams& p) {
    p.validate();
    const double b = p.k / (p.area * p.rho_s);
    const double c_cas = constants::pi2_hbar_c / (240.0 * p.rho_s);
    return DimensionlessParams::from_coefficients(b, c_cas, p.x0);
}

double scaled_potential(double chi, double c_hat) {
    require_separation(chi);
    const double d = chi - 1.0;
    return 0.5 * d * d - c_hat / (3.0 * chi * chi * chi);
}

Device make_device(const PhysicalParams& p) {
    return Device{p, nondimensionalize(p), "custom"};
}

namespace preset {

Device paper() {
    PhysicalParams p;
    p.k = paper_k;
    p.area = paper_area;
    p.x0 = paper_x0;
    p.rho_s = paper_k / (paper_area * paper_b);
    return Device{p, DimensionlessParams::from_coefficients(paper_b, paper_c, paper_x0), "paper"};
}

} // namespace preset

} // namespace casimir
