// observables.hpp: atomic inversion, photon statistics and revival estimates

#pragma once

#include "curvjc/jc_dynamics.hpp"

#include <optional>
#include <span>
#include <vector>

namespace curvjc {

/// ⟨σ_z⟩ = Σ_n |c_e,n|² − |c_g,n+1|².
double population_inversion(const JointState& state);

/// Field marginal P(m), m = 0 .. n_max+1.
std::vector<double> photon_distribution(const JointState& state);

struct PhotonMoments {
    double mean = 0.0;
    double second = 0.0;
};
PhotonMoments photon_moments(const std::vector<double>& distribution);

/// M = (⟨n²⟩ − ⟨n⟩²)/⟨n⟩ − 1. Throws UndefinedStatistic for the vacuum field.
double mandel_parameter(const JointState& state);

/// Revival-time estimate 2πm(Φ_{n̄+1} + Φ_{n̄}) / (Φ²_{n̄+1} − Φ²_{n̄}), with Φ
/// evaluated at real-valued n̄. Throws InvariantError when the two Rabi
/// frequencies coincide.
double revival_time(const SystemParams& p, double n_bar, int m = 1);

// Collapse–revival analysis of a uniformly sampled signal.

/// Half peak-to-peak of `signal` over a sliding window of ±half_width samples.
std::vector<double> sliding_envelope(std::span<const double> signal, int half_width);

struct RevivalDetection {
    double collapse_time = 0.0;
    double revival_center = 0.0;
    double revival_peak = 0.0;
    double initial_envelope = 0.0;
};

struct RevivalDetector {
    double window_half_width = 1.0;  // in time units
    double collapse_fraction = 0.25;
    double revival_fraction = 0.5;
};

/// Locates the first revival after the first collapse: the collapse is the
/// first time the envelope falls below collapse_fraction of its initial value;
/// the revival is the first later segment above that level whose peak reaches
/// revival_fraction of the initial value. Empty if none is found.
std::optional<RevivalDetection> first_revival(std::span<const double> signal, double t0,
                                              double dt, const RevivalDetector& detector = {});

}  // namespace curvjc
