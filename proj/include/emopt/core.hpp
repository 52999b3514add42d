#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace emopt {

using Vector = std::vector<double>;

/// Axis-aligned feasible box [lower, upper]. Every dimension must have
/// strictly positive width.
class SearchSpace {
public:
    SearchSpace(Vector lower, Vector upper);

    /// Same interval [lo, hi] repeated on every dimension.
    static SearchSpace uniform(std::size_t dims, double lo, double hi);

    std::size_t dims() const { return lower_.size(); }
    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }
    double lower(std::size_t d) const { return lower_[d]; }
    double upper(std::size_t d) const { return upper_[d]; }
    double width(std::size_t d) const { return upper_[d] - lower_[d]; }
    double max_width() const;
    Vector midpoint() const;

    bool contains(std::span<const double> x) const;

private:
    Vector lower_;
    Vector upper_;
};

/// Projects each coordinate of x onto [lower[d], upper[d]].
Vector clamp_to_box(const SearchSpace& space, std::span<const double> x);
void clamp_in_place(const SearchSpace& space, std::span<double> x);

struct Particle {
    Vector position;
    double fitness = 0.0;
    double charge = 0.0;  // meaningful only after compute_charges
};

struct Population {
    std::vector<Particle> members;
    std::size_t best_index = 0;

    std::size_t size() const { return members.size(); }
    const Particle& best() const { return members[best_index]; }

    /// Recomputes best_index; ties keep the lowest index.
    void update_best();
};

using Evaluator = std::function<double(std::span<const double>)>;

/// A named objective over a box. Copies share the (pure) evaluator but each
/// copy owns its own evaluation counter, so one copy per run keeps the
/// accounting per-run.
class Objective {
public:
    Objective(std::string name, SearchSpace space, Evaluator evaluator, double known_minimum);

    const std::string& name() const { return name_; }
    const SearchSpace& space() const { return *space_; }
    std::size_t dims() const { return space_->dims(); }
    double known_minimum() const { return known_minimum_; }

    /// Evaluates f(x). Throws std::invalid_argument on a dimension mismatch or
    /// when x lies outside the box.
    double evaluate(std::span<const double> x);

    /// Evaluator call with no checks and no counting; for oracles and tests.
    double peek(std::span<const double> x) const { return (*evaluator_)(x); }

    std::uint64_t evaluations() const { return evaluations_; }
    void reset_evaluations() { evaluations_ = 0; }

private:
    std::string name_;
    std::shared_ptr<const SearchSpace> space_;
    std::shared_ptr<const Evaluator> evaluator_;
    double known_minimum_;
    std::uint64_t evaluations_ = 0;
};

/// Source of uniform draws on [0, 1). The engines only ever consume draws
/// through this interface so tests can script exact sequences.
class UniformSource {
public:
    virtual ~UniformSource() = default;
    virtual double uniform() = 0;
};

/// Seeded 64-bit Mersenne Twister. The double conversion uses the top 53
/// bits so draws are bit-identical across standard libraries.
class RngStream final : public UniformSource {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    double uniform() override;
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Replays a fixed list of draws, cycling when exhausted.
class ScriptedDraws final : public UniformSource {
public:
    explicit ScriptedDraws(Vector draws);
    double uniform() override;
    std::size_t consumed() const { return consumed_; }

private:
    Vector draws_;
    std::size_t consumed_ = 0;
};

}  // namespace emopt
