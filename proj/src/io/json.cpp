#include "casimir/io.hpp"

namespace casimir::io {

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& value) {
    return value ? nlohmann::ordered_json(*value) : nlohmann::ordered_json(nullptr);
}

} // namespace

nlohmann::ordered_json to_json(const EquilibriumReport& report) {
    nlohmann::ordered_json j;
    j["x_eq_stable"] = optional_number(report.x_eq_stable);
    j["x_eq_unstable"] = optional_number(report.x_eq_unstable);
    j["omega_eff"] = optional_number(report.omega_eff);
    j["stable"] = report.stable;
    j["k_crit"] = report.k_crit;
    j["displacement_stable"] = optional_number(report.displacement_stable);
    j["v2_at_min"] = optional_number(report.v2_at_min);
    j["c_hat"] = report.c_hat;
    j["x0"] = report.x0;
    return j;
}

nlohmann::ordered_json to_json(const FitResult& fit) {
    nlohmann::ordered_json j;
    j["amp"] = fit.amp;
    j["omega"] = fit.omega;
    j["r2"] = fit.r2;
    j["residual_rms"] = fit.residual_rms;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    return j;
}

nlohmann::ordered_json to_json(const Device& device) {
    nlohmann::ordered_json j;
    j["label"] = device.label;
    j["physical"] = {{"k", device.physical.k},
                     {"area", device.physical.area},
                     {"x0", device.physical.x0},
                     {"rho_s", device.physical.rho_s}};
    j["dimensionless"] = {{"b", device.scaled.b},
                          {"c_cas", device.scaled.c_cas},
                          {"l_star", device.scaled.l_star},
                          {"t_star", device.scaled.t_star},
                          {"c_hat", device.scaled.c_hat}};
    return j;
}

} // namespace casimir::io
