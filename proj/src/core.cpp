#include "emopt/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace emopt {

SearchSpace::SearchSpace(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty())
        throw std::invalid_argument("search space needs at least one dimension");
    if (lower_.size() != upper_.size())
        throw std::invalid_argument("lower/upper bound length mismatch");
    for (std::size_t d = 0; d < lower_.size(); ++d) {
        if (!(lower_[d] < upper_[d]))
            throw std::invalid_argument("bounds must satisfy lower < upper on dimension " +
                                        std::to_string(d));
    }
}

SearchSpace SearchSpace::uniform(std::size_t dims, double lo, double hi) {
    return SearchSpace(Vector(dims, lo), Vector(dims, hi));
}

double SearchSpace::max_width() const {
    double w = 0.0;
    for (std::size_t d = 0; d < dims(); ++d) w = std::max(w, width(d));
    return w;
}

Vector SearchSpace::midpoint() const {
    Vector mid(dims());
    for (std::size_t d = 0; d < dims(); ++d) mid[d] = 0.5 * (lower_[d] + upper_[d]);
    return mid;
}

bool SearchSpace::contains(std::span<const double> x) const {
    if (x.size() != dims()) return false;
    for (std::size_t d = 0; d < dims(); ++d) {
        if (!(x[d] >= lower_[d] && x[d] <= upper_[d])) return false;
    }
    return true;
}

void clamp_in_place(const SearchSpace& space, std::span<double> x) {
    if (x.size() != space.dims())
        throw std::invalid_argument("clamp_to_box: dimension mismatch");
    for (std::size_t d = 0; d < x.size(); ++d)
        x[d] = std::clamp(x[d], space.lower(d), space.upper(d));
}

Vector clamp_to_box(const SearchSpace& space, std::span<const double> x) {
    Vector out(x.begin(), x.end());
    clamp_in_place(space, out);
    return out;
}

void Population::update_best() {
    best_index = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (members[i].fitness < members[best_index].fitness) best_index = i;
    }
}

Objective::Objective(std::string name, SearchSpace space, Evaluator evaluator, double known_minimum)
    : name_(std::move(name)),
      space_(std::make_shared<const SearchSpace>(std::move(space))),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      known_minimum_(known_minimum) {
    if (!*evaluator_) throw std::invalid_argument("objective needs an evaluator");
}

double Objective::evaluate(std::span<const double> x) {
    if (x.size() != dims())
        throw std::invalid_argument("evaluate: expected " + std::to_string(dims()) +
                                    " coordinates, got " + std::to_string(x.size()));
    if (!space_->contains(x))
        throw std::invalid_argument("evaluate: point outside the search box of " + name_);
    ++evaluations_;
    return (*evaluator_)(x);
}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

ScriptedDraws::ScriptedDraws(Vector draws) : draws_(std::move(draws)) {
    if (draws_.empty()) throw std::invalid_argument("ScriptedDraws needs at least one value");
}

double ScriptedDraws::uniform() {
    return draws_[consumed_++ % draws_.size()];
}

}  // namespace emopt
