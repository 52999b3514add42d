#include "emopt/opposition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "emopt/kernels.hpp"

namespace emopt {

namespace {

// Reflection may land one ulp outside the box when lower + upper rounds.
void reflect_into(const SearchSpace& space, std::span<const double> x, std::span<double> out) {
    kernels::reflect(out, space.lower(), space.upper(), x);
    clamp_in_place(space, out);
}

}  // namespace

Vector opposite_point(const SearchSpace& space, std::span<const double> x) {
    if (x.size() != space.dims()) throw std::invalid_argument("opposite_point: dimension mismatch");
    if (!space.contains(x)) throw std::invalid_argument("opposite_point: point outside the box");
    Vector out(x.size());
    reflect_into(space, x, out);
    return out;
}

Population opposed_population(const SearchSpace& space, const Population& pop,
                              Objective& objective) {
    Population out;
    out.members.resize(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        Particle& p = out.members[i];
        p.position.resize(space.dims());
        reflect_into(space, pop.members[i].position, p.position);
        p.fitness = objective.evaluate(p.position);
    }
    out.update_best();
    return out;
}

Population obl_select(const Population& pop, const Population& opposed, std::size_t keep) {
    const std::size_t total = pop.size() + opposed.size();
    if (keep < 1) throw std::invalid_argument("obl_select: keep must be >= 1");
    if (keep > total) throw std::invalid_argument("obl_select: keep exceeds the union size");

    auto member = [&](std::size_t i) -> const Particle& {
        return i < pop.size() ? pop.members[i] : opposed.members[i - pop.size()];
    };

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    // Stable on union order, which is exactly the tie-break rule.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return member(a).fitness < member(b).fitness;
    });
    order.resize(keep);
    std::sort(order.begin(), order.end());

    Population out;
    out.members.reserve(keep);
    for (std::size_t i : order) out.members.push_back(member(i));
    out.update_best();
    return out;
}

Population opposition_init(const SearchSpace& space, std::size_t m, UniformSource& rng,
                           Objective& objective) {
    Population random = initialize(space, m, rng, objective);
    Population opposite = opposed_population(space, random, objective);
    return obl_select(random, opposite, m);
}

Population generation_jump(const Population& pop, Objective& objective) {
    Population opposite = opposed_population(objective.space(), pop, objective);
    return obl_select(pop, opposite, pop.size());
}

RunRecord run_obemo(Objective& objective, const EmoParams& params, const OppositionConfig& opp,
                    UniformSource& rng) {
    params.validate();
    if (!(opp.jump_probability >= 0.0 && opp.jump_probability <= 1.0))
        throw std::invalid_argument("jump_probability must lie in [0, 1]");
    objective.reset_evaluations();

    const SearchSpace& space = objective.space();
    Population pop = opp.use_opposed_init
                         ? opposition_init(space, params.population_size, rng, objective)
                         : initialize(space, params.population_size, rng, objective);

    RunRecord record;
    record.initial_best = pop.best().fitness;
    TerminationMonitor monitor(params, record.initial_best);

    std::size_t iteration = 0;
    while (!monitor.should_stop_before_iteration(iteration)) {
        local_search(pop, params, rng, objective);
        compute_charges(pop, objective.dims());
        const auto forces = compute_forces(pop);
        move(pop, forces, params, rng, objective);
        if (opp.use_generation_jump) {
            const bool jump = opp.jump_probability >= 1.0 || rng.uniform() < opp.jump_probability;
            if (jump) pop = generation_jump(pop, objective);
        }
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
