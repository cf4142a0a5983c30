#include "curvjc/observables.hpp"

#include "curvjc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace curvjc {

double population_inversion(const JointState& state) {
    double total = 0.0;
    for (std::size_t i = 0; i < state.excited.size(); ++i) {
        total += std::norm(state.excited[i]) - std::norm(state.ground[i]);
    }
    return total;
}

std::vector<double> photon_distribution(const JointState& state) {
    std::vector<double> prob(state.excited.size() + 1, 0.0);
    for (std::size_t i = 0; i < state.excited.size(); ++i) {
        prob[i] += std::norm(state.excited[i]);
        prob[i + 1] += std::norm(state.ground[i]);
    }
    for (auto& v : prob) {
        if (v < 0.0 && v >= -1e-15) v = 0.0;
    }
    return prob;
}

PhotonMoments photon_moments(const std::vector<double>& distribution) {
    PhotonMoments m;
    for (std::size_t k = 0; k < distribution.size(); ++k) {
        const double n = static_cast<double>(k);
        m.mean += n * distribution[k];
        m.second += n * n * distribution[k];
    }
    return m;
}

double mandel_parameter(const JointState& state) {
    const auto m = photon_moments(photon_distribution(state));
    if (m.mean <= 0.0) {
        throw UndefinedStatistic("Mandel parameter undefined for <n> = 0");
    }
    return (m.second - m.mean * m.mean) / m.mean - 1.0;
}

double revival_time(const SystemParams& p, double n_bar, int m) {
    if (n_bar < 0.0) throw DomainError("mean photon number must be >= 0");
    if (m < 1) throw DomainError("revival index m must be >= 1");
    const double upper = rabi_frequency(n_bar + 1.0, p);
    const double lower = rabi_frequency(n_bar, p);
    const double denom = upper * upper - lower * lower;
    if (denom == 0.0) {
        throw InvariantError("distinct adjacent Rabi frequencies",
                             "Phi(n+1) == Phi(n) at n = " + std::to_string(n_bar));
    }
    return 2.0 * std::numbers::pi * m * (upper + lower) / denom;
}

std::vector<double> sliding_envelope(std::span<const double> signal, int half_width) {
    const auto n = static_cast<std::ptrdiff_t>(signal.size());
    std::vector<double> env(signal.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto lo = std::max<std::ptrdiff_t>(0, i - half_width);
        const auto hi = std::min<std::ptrdiff_t>(n - 1, i + half_width);
        const auto [mn, mx] = std::minmax_element(signal.begin() + lo, signal.begin() + hi + 1);
        env[i] = 0.5 * (*mx - *mn);
    }
    return env;
}

std::optional<RevivalDetection> first_revival(std::span<const double> signal, double t0,
                                              double dt, const RevivalDetector& detector) {
    if (signal.size() < 3 || !(dt > 0.0)) return std::nullopt;
    const int hw = std::max(1, static_cast<int>(std::lround(detector.window_half_width / dt)));
    const auto env = sliding_envelope(signal, hw);
    const std::size_t n = env.size();

    const std::size_t head = std::min<std::size_t>(n, 2 * static_cast<std::size_t>(hw) + 1);
    const double initial = *std::max_element(env.begin(), env.begin() + head);
    if (initial <= 0.0) return std::nullopt;
    const double collapse_level = detector.collapse_fraction * initial;
    const double revival_level = detector.revival_fraction * initial;

    std::size_t i = 0;
    while (i < n && env[i] >= collapse_level) ++i;
    if (i == n) return std::nullopt;
    const std::size_t collapse = i;

    while (i < n) {
        while (i < n && env[i] < collapse_level) ++i;
        if (i == n) break;
        const std::size_t begin = i;
        while (i < n && env[i] >= collapse_level) ++i;
        const auto peak = std::max_element(env.begin() + begin, env.begin() + i);
        if (*peak >= revival_level) {
            RevivalDetection out;
            out.collapse_time = t0 + dt * collapse;
            out.revival_center = t0 + dt * static_cast<double>(peak - env.begin());
            out.revival_peak = *peak;
            out.initial_envelope = initial;
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace curvjc
