#include "qtiming/estimation.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "qtiming/constants.hpp"

namespace qtiming {

namespace {

constexpr std::size_t kBlockTrials = 65536;
constexpr const char* kGeneratorId = "mt19937_64/box-muller/blocked-65536";

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct NormalGen {
    std::mt19937_64 eng;
    double spare = 0.0;
    bool have_spare = false;

    explicit NormalGen(std::uint64_t seed) : eng(seed) {}

    double next() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        const double u2 = static_cast<double>(eng() >> 11) * 0x1.0p-53;          // [0,1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * pi * u2;
        spare = r * std::sin(a);
        have_spare = true;
        return r * std::cos(a);
    }
};

}  // namespace

unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("QTIMING_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return hw;
}

FisherResult fisher_info(const FieldState& signal, const HomodyneConfig& cfg,
                         double delta_u) {
    (void)delta_u;  // variance is delta_u-independent in the strong-LO model
    if (!cfg.strong_lo) {
        throw std::invalid_argument("fisher_info: strong_lo required");
    }
    const double slope = signal_slope(signal, cfg);
    const double var = variance_signal(signal, cfg);
    FisherResult r;
    r.fisher_info = slope * slope / var;
    r.crb = 1.0 / std::sqrt(r.fisher_info);
    r.lo.mix_angle_rad = cfg.mix_angle;
    r.lo.theta_lo_rad = cfg.theta_lo;
    return r;
}

std::vector<FisherResult> lo_optimality_scan(const FieldState& signal,
                                             std::size_t n_angles) {
    if (n_angles < 32) {
        throw std::invalid_argument("lo_optimality_scan: n_angles must be >= 32");
    }
    std::vector<FisherResult> out;
    out.reserve(n_angles);
    const double step = (pi / 2.0) / static_cast<double>(n_angles - 1);
    for (std::size_t i = 0; i < n_angles; ++i) {
        const double chi = step * static_cast<double>(i);
        const HomodyneConfig cfg =
            make_lo(signal.basis, LoMode::mix, chi, signal.theta, 1.0, true, 1.0);
        out.push_back(fisher_info(signal, cfg, 0.0));
    }
    return out;
}

std::vector<double> simulate_shots(const FieldState& signal, const HomodyneConfig& cfg,
                                   double delta_u, std::size_t n_trials,
                                   std::uint64_t seed) {
    if (n_trials < 1) throw std::invalid_argument("simulate_shots: n_trials must be >= 1");
    const double mu = mean_signal(signal, cfg, delta_u);
    const double sigma = std::sqrt(variance_signal(signal, cfg));

    const std::size_t n_blocks = (n_trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<std::uint64_t> block_seeds(n_blocks);
    std::uint64_t stream = seed;
    for (std::size_t b = 0; b < n_blocks; ++b) block_seeds[b] = splitmix64_next(stream);

    std::vector<double> outcomes(n_trials);
    auto run_block = [&](std::size_t b) {
        NormalGen gen(block_seeds[b]);
        const std::size_t begin = b * kBlockTrials;
        const std::size_t end = std::min(begin + kBlockTrials, n_trials);
        for (std::size_t i = begin; i < end; ++i) outcomes[i] = mu + sigma * gen.next();
    };

    const unsigned workers =
        std::min<unsigned>(worker_count(), static_cast<unsigned>(n_blocks));
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t b = next.fetch_add(1); b < n_blocks;
                     b = next.fetch_add(1)) {
                    run_block(b);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    return outcomes;
}

MonteCarloReport estimate_delay(std::span<const double> outcomes,
                                const FieldState& signal, const HomodyneConfig& cfg,
                                double true_delta_u, std::uint64_t seed) {
    if (outcomes.size() < 2) {
        throw std::invalid_argument("estimate_delay: need at least 2 outcomes");
    }
    const double phi = signal.theta - cfg.theta_lo;
    if (std::fabs(std::cos(phi)) < 1e-6) {
        throw std::invalid_argument(
            "estimate_delay: |cos(theta - theta_LO)| < 1e-6, estimator singular");
    }
    const double slope = signal_slope(signal, cfg);
    if (slope == 0.0) {
        throw std::invalid_argument("estimate_delay: zero signal slope");
    }
    const double offset = mean_signal(signal, cfg, 0.0);

    double mean = 0.0;
    for (const double d : outcomes) mean += (d - offset) / slope;
    mean /= static_cast<double>(outcomes.size());

    double ss = 0.0;
    for (const double d : outcomes) {
        const double e = (d - offset) / slope - mean;
        ss += e * e;
    }
    const double var = ss / static_cast<double>(outcomes.size() - 1);

    MonteCarloReport r;
    r.n_trials = outcomes.size();
    r.true_delta_u = true_delta_u;
    r.estimator_mean = mean;
    r.estimator_std = std::sqrt(var);
    r.analytic_bound = min_resolvable_delay(signal, cfg);
    r.seed = seed;
    r.generator = kGeneratorId;
    return r;
}

MonteCarloReport run_monte_carlo(const FieldState& signal, const HomodyneConfig& cfg,
                                 double delta_u, std::size_t n_trials,
                                 std::uint64_t seed) {
    const std::vector<double> outcomes =
        simulate_shots(signal, cfg, delta_u, n_trials, seed);
    return estimate_delay(outcomes, signal, cfg, delta_u, seed);
}

std::string report_json(const MonteCarloReport& report) {
    nlohmann::json j{{"n_trials", report.n_trials},
                     {"true_delta_u_s", report.true_delta_u},
                     {"estimator_mean_s", report.estimator_mean},
                     {"estimator_std_s", report.estimator_std},
                     {"analytic_bound_s", report.analytic_bound},
                     {"seed", report.seed},
                     {"generator", report.generator}};
    return j.dump(2);
}

void write_outcomes_le64(std::span<const double> outcomes, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (double v : outcomes) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof(bits));
        if constexpr (std::endian::native == std::endian::big) {
            bits = __builtin_bswap64(bits);
        }
        char buf[8];
        std::memcpy(buf, &bits, sizeof(buf));
        out.write(buf, sizeof(buf));
    }
    if (!out) throw std::runtime_error("short write to '" + path + "'");
}

}  // namespace qtiming
