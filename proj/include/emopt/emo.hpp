#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emopt/core.hpp"

namespace emopt {

enum class LambdaScope { per_coordinate, per_particle };

struct EmoParams {
    std::size_t population_size = 50;
    std::size_t local_search_iters = 4;
    double local_search_delta = 0.001;
    std::size_t max_iterations = 2000;
    double stagnation_tolerance = 1e-4;
    /// Iterations over which the best value must move by at least the
    /// stagnation tolerance for the run to continue.
    std::size_t stagnation_window = 10;
    std::optional<double> target_value;
    LambdaScope lambda_scope = LambdaScope::per_particle;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct ForceVector {
    Vector components;
    Vector normalized;  // unit Euclidean norm, or all zeros
};

enum class Termination { max_iterations, stagnation, target_reached };

std::string to_string(Termination t);

struct RunRecord {
    /// Best fitness after each completed iteration; size() == iterations.
    Vector best_trace;
    double initial_best = 0.0;
    Particle best;
    std::size_t iterations = 0;
    std::uint64_t evaluations = 0;
    Termination termination = Termination::max_iterations;
};

/// m particles drawn uniformly in the box, each evaluated.
Population initialize(const SearchSpace& space, std::size_t m, UniformSource& rng,
                      Objective& objective);

/// Coordinate-wise stochastic neighbourhood search applied to every particle.
/// Step length is delta * max_d(u_d - l_d). For each (particle, coordinate) a
/// single draw fixes the direction (> 0.5 means +) and up to ITER-1 attempts
/// redraw the magnitude; the first strict improvement is kept and ends the
/// attempts for that coordinate. Fitness never increases.
void local_search(Population& pop, const EmoParams& params, UniformSource& rng,
                  Objective& objective);

/// q_p = exp(-n (f_p - f_best) / sum_h (f_h - f_best)). When every particle
/// shares the best fitness all charges are 1.
void compute_charges(Population& pop, std::size_t dims);

/// Coulomb-style superposition: particle h attracts p when f_h < f_p and
/// repels it otherwise, with magnitude q_p q_h / |g_h - g_p|^2. Coincident
/// pairs contribute nothing. Requires charges.
std::vector<ForceVector> compute_forces(const Population& pop);

/// Moves every particle except the best along its normalized force by a
/// random fraction of the distance to the bound it heads for, then
/// re-evaluates moved particles and refreshes best_index.
void move(Population& pop, const std::vector<ForceVector>& forces, const EmoParams& params,
          UniformSource& rng, Objective& objective);

/// Tracks the best-so-far history and decides when a run stops.
class TerminationMonitor {
public:
    TerminationMonitor(const EmoParams& params, double initial_best);

    /// True when the run must stop before executing another iteration.
    bool should_stop_before_iteration(std::size_t completed) const;

    /// Records the best value after an iteration; returns the reason to stop,
    /// if any.
    std::optional<Termination> record(double best);

    const Vector& history() const { return history_; }

private:
    const EmoParams& params_;
    Vector history_;  // history_[0] is the initial best
};

/// Runs EMO from a random population until a termination rule fires.
RunRecord run_emo(Objective& objective, const EmoParams& params, UniformSource& rng);

}  // namespace emopt
