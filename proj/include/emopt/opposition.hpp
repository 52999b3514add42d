#pragma once

#include "emopt/core.hpp"
#include "emopt/emo.hpp"

namespace emopt {

struct OppositionConfig {
    bool use_opposed_init = true;
    bool use_generation_jump = true;
    /// Probability of applying the generation jump in an iteration. At 1.0 no
    /// draw is consumed, so the random schedule matches plain EMO.
    double jump_probability = 1.0;
};

/// Reflection through the box centre: lower + upper - x. Throws when x lies
/// outside the box.
Vector opposite_point(const SearchSpace& space, std::span<const double> x);

/// Opposite of every member, each evaluated once.
Population opposed_population(const SearchSpace& space, const Population& pop,
                              Objective& objective);

/// Keeps the `keep` fittest particles of pop ∪ opposed. Ties prefer members of
/// `pop`, then lower indices. Survivors keep their union order (all of `pop`
/// first, then `opposed`).
Population obl_select(const Population& pop, const Population& opposed, std::size_t keep);

/// Random population, its opposite, and the m fittest of the 2m. Costs 2m
/// evaluations.
Population opposition_init(const SearchSpace& space, std::size_t m, UniformSource& rng,
                           Objective& objective);

/// Opposes the population and keeps the original size worth of the fittest.
Population generation_jump(const Population& pop, Objective& objective);

/// EMO with opposition-based initialization and per-iteration generation
/// jumping after the movement phase.
RunRecord run_obemo(Objective& objective, const EmoParams& params, const OppositionConfig& opp,
                    UniformSource& rng);

}  // namespace emopt
