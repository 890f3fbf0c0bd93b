#include "qtiming/quantum_state.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "qtiming/constants.hpp"

namespace qtiming {

void QuadratureState::validate() const {
    if (!(var_q > 0.0) || !(var_p > 0.0)) {
        throw std::invalid_argument("QuadratureState: variances must be > 0");
    }
    if (var_q * var_p < 1.0 - 1e-9) {
        throw std::invalid_argument("QuadratureState: var_q * var_p < 1 violates the "
                                    "uncertainty relation (vacuum variance = 1)");
    }
}

const QuadratureState& FieldState::mode(std::string_view label) const {
    if (label == "v0") return v0;
    if (label == "v1") return v1;
    throw std::invalid_argument("FieldState: unknown mode label (tracked: v0, v1)");
}

double photons_from_power(double power_w, double detection_time_s, double omega0) {
    if (!(power_w > 0.0) || !(detection_time_s > 0.0) || !(omega0 > 0.0)) {
        throw std::invalid_argument("photons_from_power: all inputs must be > 0");
    }
    return power_w * detection_time_s / (hbar * omega0);
}

FieldState coherent_state(std::shared_ptr<const ModeBasis> basis, double photon_number,
                          double theta) {
    if (!basis) throw std::invalid_argument("coherent_state: null basis");
    if (!(photon_number > 0.0)) {
        throw std::invalid_argument("coherent_state: photon_number must be > 0");
    }
    FieldState s;
    s.basis = std::move(basis);
    s.photon_number = photon_number;
    s.theta = theta;
    const double amp = 2.0 * std::sqrt(photon_number);
    s.v0.mean_q = amp * std::cos(theta);
    s.v0.mean_p = amp * std::sin(theta);
    return s;
}

FieldState apply_squeezing(const FieldState& state, const SqueezingSpec& spec) {
    if (spec.r_phase_v0 < 0.0 || spec.r_amp_v1 < 0.0) {
        throw std::invalid_argument("apply_squeezing: r must be >= 0");
    }
    FieldState out = state;
    out.v0.var_p *= std::exp(-2.0 * spec.r_phase_v0);
    out.v0.var_q *= std::exp(+2.0 * spec.r_phase_v0);
    out.v1.var_q *= std::exp(-2.0 * spec.r_amp_v1);
    out.v1.var_p *= std::exp(+2.0 * spec.r_amp_v1);
    return out;
}

FieldState apply_inverse_squeezing(const FieldState& state, const SqueezingSpec& spec) {
    if (spec.r_phase_v0 < 0.0 || spec.r_amp_v1 < 0.0) {
        throw std::invalid_argument("apply_inverse_squeezing: r must be >= 0");
    }
    FieldState out = state;
    out.v0.var_p *= std::exp(+2.0 * spec.r_phase_v0);
    out.v0.var_q *= std::exp(-2.0 * spec.r_phase_v0);
    out.v1.var_q *= std::exp(+2.0 * spec.r_amp_v1);
    out.v1.var_p *= std::exp(-2.0 * spec.r_amp_v1);
    return out;
}

std::string state_json(const FieldState& state) {
    nlohmann::json modes = nlohmann::json::array();
    const char* labels[] = {"v0", "v1"};
    for (const char* label : labels) {
        const QuadratureState& q = state.mode(label);
        modes.push_back({{"mode", label},
                         {"mean_q", q.mean_q},
                         {"mean_p", q.mean_p},
                         {"var_q", q.var_q},
                         {"var_p", q.var_p}});
    }
    nlohmann::json j{{"photon_number", state.photon_number},
                     {"theta_rad", state.theta},
                     {"modes", modes}};
    return j.dump(2);
}

}  // namespace qtiming
