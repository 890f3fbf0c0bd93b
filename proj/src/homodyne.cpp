#include "qtiming/homodyne.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "qtiming/constants.hpp"

namespace qtiming {

namespace {

using cplx = std::complex<double>;

void check_pair(const FieldState& signal, const HomodyneConfig& cfg) {
    if (!signal.basis || !cfg.basis) throw std::invalid_argument("null mode basis");
    if (signal.basis != cfg.basis) {
        const ModeBasis& a = *signal.basis;
        const ModeBasis& b = *cfg.basis;
        if (a.spec.omega0 != b.spec.omega0 || a.delta_omega != b.delta_omega ||
            !(a.grid == b.grid)) {
            throw std::invalid_argument(
                "signal state and homodyne config use different mode bases");
        }
    }
}

void require_strong_lo(const HomodyneConfig& cfg) {
    if (!cfg.strong_lo) {
        throw std::invalid_argument(
            "weak-LO statistics are not modeled; set strong_lo = true");
    }
}

// d mean / d delta_u, divided by 2 |E|^2 sqrt(N N_LO), at relative phase phi.
double slope_unit(const FieldState& signal, const HomodyneConfig& cfg, double phi) {
    const ModeBasis& basis = *signal.basis;
    const cplx d = cplx(0.0, -basis.spec.omega0) * cfg.l0 + basis.delta_omega * cfg.l1;
    return (std::polar(1.0, -phi) * d).real();
}

// variance / (|E|^4 N_LO): LO-weighted combination of signal quadrature variances
double variance_unit(const FieldState& signal, const HomodyneConfig& cfg) {
    double acc = 0.0;
    const QuadratureState* qs[] = {&signal.v0, &signal.v1};
    const cplx ls[] = {cfg.l0, cfg.l1};
    for (int n = 0; n < 2; ++n) {
        // |l_n|^2 (cos^2 var_q + sin^2 var_p) with the angle of l_n folds to
        // Re(l_n)^2 var_q + Im(l_n)^2 var_p
        const double c = ls[n].real(), s = ls[n].imag();
        acc += c * c * qs[n]->var_q + s * s * qs[n]->var_p;
    }
    return acc;
}

}  // namespace

LoMode lo_mode_from_string(const std::string& name, double* mix_angle_rad) {
    if (mix_angle_rad) *mix_angle_rad = 0.0;
    if (name == "w1") return LoMode::timing_w1;
    if (name == "iv0") return LoMode::phase_iv0;
    if (name == "v1") return LoMode::tof_v1;
    if (name.rfind("mix:", 0) == 0) {
        std::size_t used = 0;
        double angle = 0.0;
        const std::string arg = name.substr(4);
        try {
            angle = std::stod(arg, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != arg.size() || !(angle >= 0.0) || !(angle <= pi / 2.0)) {
            throw std::invalid_argument("lo mode 'mix:<angle_rad>' needs an angle in "
                                        "[0, pi/2], got '" + name + "'");
        }
        if (mix_angle_rad) *mix_angle_rad = angle;
        return LoMode::mix;
    }
    throw std::invalid_argument("unknown lo mode '" + name +
                                "' (expected w1, iv0, v1 or mix:<angle_rad>)");
}

std::string to_string(LoMode kind, double mix_angle_rad) {
    switch (kind) {
        case LoMode::timing_w1: return "w1";
        case LoMode::phase_iv0: return "iv0";
        case LoMode::tof_v1: return "v1";
        case LoMode::mix: return "mix:" + std::to_string(mix_angle_rad);
    }
    return "?";
}

HomodyneConfig make_lo(std::shared_ptr<const ModeBasis> basis, LoMode kind,
                       double mix_angle_rad, double theta_lo, double n_lo,
                       bool strong_lo, double scale) {
    if (!basis) throw std::invalid_argument("make_lo: null basis");
    if (!(n_lo > 0.0)) throw std::invalid_argument("make_lo: n_lo must be > 0");
    if (!(scale > 0.0)) throw std::invalid_argument("make_lo: scale must be > 0");

    HomodyneConfig cfg;
    cfg.basis = std::move(basis);
    cfg.kind = kind;
    cfg.theta_lo = theta_lo;
    cfg.n_lo = n_lo;
    cfg.strong_lo = strong_lo;
    cfg.scale = scale;

    const ModeBasis& b = *cfg.basis;
    double c0 = 0.0, c1 = 0.0;  // lo = c0 * (i v0) + c1 * v1
    switch (kind) {
        case LoMode::timing_w1: {
            const double denom = std::sqrt(b.alpha * b.alpha + 1.0);
            c0 = b.alpha / denom;
            c1 = 1.0 / denom;
            cfg.mix_angle = std::atan2(1.0, b.alpha);
            break;
        }
        case LoMode::phase_iv0:
            c0 = 1.0;
            cfg.mix_angle = 0.0;
            break;
        case LoMode::tof_v1:
            c1 = 1.0;
            cfg.mix_angle = pi / 2.0;
            break;
        case LoMode::mix:
            if (!(mix_angle_rad >= 0.0) || !(mix_angle_rad <= pi / 2.0)) {
                throw std::invalid_argument("make_lo: mix angle must lie in [0, pi/2]");
            }
            c0 = std::cos(mix_angle_rad);
            c1 = std::sin(mix_angle_rad);
            cfg.mix_angle = mix_angle_rad;
            break;
    }
    cfg.l0 = cplx(0.0, c0);
    cfg.l1 = cplx(c1, 0.0);

    cfg.lo_mode.grid = b.grid;
    cfg.lo_mode.label = to_string(kind, cfg.mix_angle);
    cfg.lo_mode.amplitude.resize(b.grid.n_points);
    for (std::size_t k = 0; k < b.grid.n_points; ++k) {
        cfg.lo_mode.amplitude[k] =
            cfg.l0 * b.v0.amplitude[k] + cfg.l1 * b.v1.amplitude[k];
    }
    return cfg;
}

HomodyneConfig make_custom_lo(std::shared_ptr<const ModeBasis> basis, SampledMode lo,
                              double theta_lo, double n_lo, bool strong_lo,
                              double scale) {
    if (!basis) throw std::invalid_argument("make_custom_lo: null basis");
    if (!(n_lo > 0.0)) throw std::invalid_argument("make_custom_lo: n_lo must be > 0");
    if (!(scale > 0.0)) throw std::invalid_argument("make_custom_lo: scale must be > 0");
    if (!(basis->grid == lo.grid)) {
        throw std::invalid_argument("make_custom_lo: LO grid differs from the basis grid");
    }
    if (std::fabs(grid_norm(lo) - 1.0) > 1e-10) {
        throw std::invalid_argument("make_custom_lo: LO mode must be unit norm");
    }

    HomodyneConfig cfg;
    cfg.basis = std::move(basis);
    cfg.kind = LoMode::mix;
    cfg.theta_lo = theta_lo;
    cfg.n_lo = n_lo;
    cfg.strong_lo = strong_lo;
    cfg.scale = scale;
    cfg.l0 = inner_product(cfg.basis->v0, lo);
    cfg.l1 = inner_product(cfg.basis->v1, lo);
    const double inside = std::norm(cfg.l0) + std::norm(cfg.l1);
    if (1.0 - inside > 1e-6) {
        throw std::invalid_argument(
            "make_custom_lo: LO carries > 1e-6 of its norm outside span{v0, v1}; "
            "such light couples to untracked modes");
    }
    cfg.mix_angle = std::atan2(std::abs(cfg.l1), std::abs(cfg.l0));
    cfg.lo_mode = std::move(lo);
    return cfg;
}

double mean_signal(const FieldState& signal, const HomodyneConfig& cfg, double delta_u) {
    check_pair(signal, cfg);
    const ModeBasis& basis = *signal.basis;
    const double phi = signal.theta - cfg.theta_lo;
    const cplx d = cplx(0.0, -basis.spec.omega0) * cfg.l0 + basis.delta_omega * cfg.l1;
    const cplx z = cfg.l0 + delta_u * d;
    const double amp =
        2.0 * cfg.scale * std::sqrt(signal.photon_number * cfg.n_lo);
    return amp * (std::polar(1.0, -phi) * z).real();
}

double mean_signal_numeric(const FieldState& signal, const HomodyneConfig& cfg,
                           double delta_u) {
    check_pair(signal, cfg);
    const ModeBasis& basis = *signal.basis;
    const SampledMode shifted = shift_mode(basis.v0, delta_u);
    const cplx overlap = inner_product(cfg.lo_mode, shifted);
    const double phi = signal.theta - cfg.theta_lo;
    const double amp =
        2.0 * cfg.scale * std::sqrt(signal.photon_number * cfg.n_lo);
    return amp * (std::polar(1.0, -phi) * std::conj(overlap)).real();
}

double variance_signal(const FieldState& signal, const HomodyneConfig& cfg) {
    check_pair(signal, cfg);
    require_strong_lo(cfg);
    return cfg.scale * cfg.scale * cfg.n_lo * variance_unit(signal, cfg);
}

double signal_slope(const FieldState& signal, const HomodyneConfig& cfg) {
    check_pair(signal, cfg);
    const double phi = signal.theta - cfg.theta_lo;
    return 2.0 * cfg.scale * std::sqrt(signal.photon_number * cfg.n_lo) *
           slope_unit(signal, cfg, phi);
}

double snr_at(const FieldState& signal, const HomodyneConfig& cfg, double delta_u) {
    check_pair(signal, cfg);
    require_strong_lo(cfg);
    const double phi = signal.theta - cfg.theta_lo;
    const double s = slope_unit(signal, cfg, phi);
    const double v = variance_unit(signal, cfg);
    return 2.0 * std::sqrt(signal.photon_number) * std::fabs(s * delta_u) /
           std::sqrt(v);
}

HomodyneStats stats_at(const FieldState& signal, const HomodyneConfig& cfg,
                       double delta_u) {
    HomodyneStats st;
    st.mean = mean_signal(signal, cfg, delta_u);
    st.variance = variance_signal(signal, cfg);
    st.snr = std::fabs(st.mean) / std::sqrt(st.variance);
    return st;
}

double min_resolvable_delay(const FieldState& signal, const HomodyneConfig& cfg) {
    check_pair(signal, cfg);
    require_strong_lo(cfg);
    const double s = slope_unit(signal, cfg, 0.0);  // optimal phase theta = theta_LO
    if (!(s > 0.0)) {
        throw std::invalid_argument(
            "min_resolvable_delay: LO mode carries no timing signal (zero slope)");
    }
    const double v = variance_unit(signal, cfg);
    return std::sqrt(v) / (2.0 * std::sqrt(signal.photon_number) * s);
}

double sql_tof(double photon_number, double delta_omega) {
    if (!(photon_number > 0.0) || !(delta_omega > 0.0)) {
        throw std::invalid_argument("sql_tof: inputs must be > 0");
    }
    return 1.0 / (2.0 * delta_omega * std::sqrt(photon_number));
}

double sql_phase(double photon_number, double omega0) {
    if (!(photon_number > 0.0) || !(omega0 > 0.0)) {
        throw std::invalid_argument("sql_phase: inputs must be > 0");
    }
    return 1.0 / (2.0 * omega0 * std::sqrt(photon_number));
}

double timing_limit(double photon_number, double omega0, double delta_omega,
                    double var_p0, double var_q1) {
    if (!(photon_number > 0.0) || !(omega0 > 0.0) || !(delta_omega > 0.0) ||
        !(var_p0 > 0.0) || !(var_q1 > 0.0)) {
        throw std::invalid_argument("timing_limit: inputs must be > 0");
    }
    const double w2 = omega0 * omega0 + delta_omega * delta_omega;
    return std::sqrt((omega0 * omega0 * var_p0 + delta_omega * delta_omega * var_q1) /
                     w2) /
           (2.0 * std::sqrt(photon_number) * std::sqrt(w2));
}

std::string delay_sweep_csv(const std::string& param, const std::vector<double>& values,
                            const std::vector<double>& delays) {
    if (values.size() != delays.size()) {
        throw std::invalid_argument("delay_sweep_csv: size mismatch");
    }
    std::ostringstream out;
    out << "param,value,delta_u_min_seconds\n";
    char line[128];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(line, sizeof(line), ",%.16e,%.16e\n", values[i], delays[i]);
        out << param << line;
    }
    return out.str();
}

std::string stats_json(const FieldState& signal, const HomodyneConfig& cfg,
                       double delta_u) {
    const HomodyneStats st = stats_at(signal, cfg, delta_u);
    nlohmann::json j{{"delta_u_s", delta_u},
                     {"mean", st.mean},
                     {"variance", st.variance},
                     {"snr", st.snr},
                     {"snr_signal", snr_at(signal, cfg, delta_u)},
                     {"min_resolvable_delay_s", min_resolvable_delay(signal, cfg)}};
    return j.dump(2);
}

}  // namespace qtiming
