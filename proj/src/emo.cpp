#include "emopt/emo.hpp"

#include <algorithm>
#include <cassert>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "emopt/kernels.hpp"

namespace emopt {

void EmoParams::validate() const {
    if (population_size < 2) throw std::invalid_argument("population_size must be >= 2");
    if (local_search_iters < 1) throw std::invalid_argument("local_search_iters must be >= 1");
    if (!(local_search_delta > 0.0 && local_search_delta < 1.0))
        throw std::invalid_argument("local_search_delta must lie in (0, 1)");
    if (!(stagnation_tolerance > 0.0))
        throw std::invalid_argument("stagnation_tolerance must be positive");
    if (stagnation_window < 1) throw std::invalid_argument("stagnation_window must be >= 1");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::max_iterations: return "max_iterations";
        case Termination::stagnation: return "stagnation";
        case Termination::target_reached: return "target_reached";
    }
    return "unknown";
}

Population initialize(const SearchSpace& space, std::size_t m, UniformSource& rng,
                      Objective& objective) {
    if (m < 2) throw std::invalid_argument("initialize: population needs at least 2 particles");
    Population pop;
    pop.members.resize(m);
    for (auto& p : pop.members) {
        p.position.resize(space.dims());
        for (std::size_t d = 0; d < space.dims(); ++d) {
            p.position[d] = space.lower(d) + rng.uniform() * space.width(d);
            // lower + u*width can round up to upper + ulp
            p.position[d] = std::min(p.position[d], space.upper(d));
        }
        p.fitness = objective.evaluate(p.position);
    }
    pop.update_best();
    return pop;
}

void local_search(Population& pop, const EmoParams& params, UniformSource& rng,
                  Objective& objective) {
    const SearchSpace& space = objective.space();
    const double length = params.local_search_delta * space.max_width();
    const std::size_t n = space.dims();
    Vector trial;

    for (auto& particle : pop.members) {
        trial = particle.position;
        for (std::size_t d = 0; d < n; ++d) {
            const bool positive = rng.uniform() > 0.5;
            std::size_t counter = 1;
            while (counter < params.local_search_iters) {
                const double step = rng.uniform() * length;
                const double moved = positive ? particle.position[d] + step
                                              : particle.position[d] - step;
                trial[d] = std::clamp(moved, space.lower(d), space.upper(d));
                const double f = objective.evaluate(trial);
                if (f < particle.fitness) {
                    particle.position[d] = trial[d];
                    particle.fitness = f;
                    counter = params.local_search_iters - 1;
                }
                trial[d] = particle.position[d];
                ++counter;
            }
        }
    }
    pop.update_best();
}

void compute_charges(Population& pop, std::size_t dims) {
    const double best = pop.best().fitness;
    double denominator = 0.0;
    for (const auto& p : pop.members) {
        if (!std::isfinite(p.fitness))
            throw std::invalid_argument("compute_charges: non-finite fitness");
        denominator += p.fitness - best;
    }
    for (auto& p : pop.members) {
        p.charge = denominator > 0.0
                       ? std::exp(-static_cast<double>(dims) * (p.fitness - best) / denominator)
                       : 1.0;
    }
}

std::vector<ForceVector> compute_forces(const Population& pop) {
    const std::size_t m = pop.size();
    const std::size_t n = m ? pop.members[0].position.size() : 0;
    std::vector<ForceVector> forces(m);

    for (std::size_t p = 0; p < m; ++p) {
        const Particle& self = pop.members[p];
        ForceVector& f = forces[p];
        f.components.assign(n, 0.0);
        for (std::size_t h = 0; h < m; ++h) {
            if (h == p) continue;
            const Particle& other = pop.members[h];
            const double dist2 = kernels::squared_distance(other.position, self.position);
            if (dist2 < DBL_MIN) continue;  // coincident pair
            const double w = self.charge * other.charge / dist2;
            if (other.fitness < self.fitness)
                kernels::accumulate_difference(f.components, other.position, self.position, w);
            else
                kernels::accumulate_difference(f.components, self.position, other.position, w);
        }

        f.normalized = f.components;
        const double peak = kernels::max_abs(f.normalized);
        if (peak > 0.0 && std::isfinite(peak)) {
            // Pre-scaling by the largest component keeps the norm away from
            // overflow and underflow.
            kernels::scale(f.normalized, 1.0 / peak);
            kernels::scale(f.normalized, 1.0 / std::sqrt(kernels::squared_norm(f.normalized)));
        } else {
            std::fill(f.normalized.begin(), f.normalized.end(), 0.0);
        }
    }
    return forces;
}

void move(Population& pop, const std::vector<ForceVector>& forces, const EmoParams& params,
          UniformSource& rng, Objective& objective) {
    if (forces.size() != pop.size()) throw std::invalid_argument("move: one force per particle");
    const SearchSpace& space = objective.space();
    const std::size_t n = space.dims();

    for (std::size_t p = 0; p < pop.size(); ++p) {
        if (p == pop.best_index) continue;
        Particle& particle = pop.members[p];
        const Vector& dir = forces[p].normalized;
        double lambda = params.lambda_scope == LambdaScope::per_particle ? rng.uniform() : 0.0;
        for (std::size_t d = 0; d < n; ++d) {
            if (params.lambda_scope == LambdaScope::per_coordinate) lambda = rng.uniform();
            double& g = particle.position[d];
            if (dir[d] > 0.0)
                g += lambda * dir[d] * (space.upper(d) - g);
            else
                g += lambda * dir[d] * (g - space.lower(d));
        }
        clamp_in_place(space, particle.position);
        particle.fitness = objective.evaluate(particle.position);
    }
    pop.update_best();
}

TerminationMonitor::TerminationMonitor(const EmoParams& params, double initial_best)
    : params_(params) {
    history_.reserve(std::min<std::size_t>(params.max_iterations, 4096) + 1);
    history_.push_back(initial_best);
}

bool TerminationMonitor::should_stop_before_iteration(std::size_t completed) const {
    return completed >= params_.max_iterations;
}

std::optional<Termination> TerminationMonitor::record(double best) {
    history_.push_back(best);
    const std::size_t completed = history_.size() - 1;
    const double tol = params_.stagnation_tolerance;
    // best - target rather than |best - target|: beating the target also stops.
    if (params_.target_value && best - *params_.target_value < tol)
        return Termination::target_reached;
    const std::size_t w = params_.stagnation_window;
    if (completed >= w && history_[completed - w] - best < tol) return Termination::stagnation;
    if (completed >= params_.max_iterations) return Termination::max_iterations;
    return std::nullopt;
}

RunRecord run_emo(Objective& objective, const EmoParams& params, UniformSource& rng) {
    params.validate();
    objective.reset_evaluations();
    Population pop = initialize(objective.space(), params.population_size, rng, objective);

    RunRecord record;
    record.initial_best = pop.best().fitness;
    TerminationMonitor monitor(params, record.initial_best);

    std::size_t iteration = 0;
    while (!monitor.should_stop_before_iteration(iteration)) {
        local_search(pop, params, rng, objective);
        compute_charges(pop, objective.dims());
        const auto forces = compute_forces(pop);
        move(pop, forces, params, rng, objective);
        ++iteration;
        record.best_trace.push_back(pop.best().fitness);
        if (auto reason = monitor.record(pop.best().fitness)) {
            record.termination = *reason;
            break;
        }
    }
    record.best = pop.best();
    record.iterations = iteration;
    record.evaluations = objective.evaluations();
    return record;
}

}  // namespace emopt
