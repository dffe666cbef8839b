#include "salp/core.hpp"

#include <algorithm>
#include <string>

namespace salp {

Bounds::Bounds(Position lower, Position upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty()) throw DimensionError("bounds must have dimension >= 1");
    if (lower_.size() != upper_.size())
        throw DimensionError("lower has " + std::to_string(lower_.size()) + " coordinates, upper has " +
                             std::to_string(upper_.size()));
    for (std::size_t j = 0; j < lower_.size(); ++j) {
        if (!(lower_[j] < upper_[j]))
            throw ConfigError("bounds: lower[" + std::to_string(j) + "] must be < upper[" + std::to_string(j) + "]");
    }
}

Bounds Bounds::uniform(std::size_t dimension, double lower, double upper) {
    return Bounds(Position(dimension, lower), Position(dimension, upper));
}

bool Bounds::contains(std::span<const double> x) const {
    if (x.size() != dimension()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] < lower_[j] || x[j] > upper_[j]) return false;
    return true;
}

bool Bounds::symmetric() const {
    for (std::size_t j = 0; j < dimension(); ++j)
        if (lower_[j] != -upper_[j]) return false;
    return true;
}

Bounds Bounds::translated(std::span<const double> shift) const {
    if (shift.size() != dimension())
        throw DimensionError("shift has " + std::to_string(shift.size()) + " coordinates, bounds have " +
                             std::to_string(dimension()));
    Position lo = lower_, hi = upper_;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        lo[j] += shift[j];
        hi[j] += shift[j];
    }
    return Bounds(std::move(lo), std::move(hi));
}

Snapshot SalpChain::positions() const {
    Snapshot out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.position);
    return out;
}

void SalpChain::update_food() {
    for (const auto& m : members) {
        if (!m.evaluated()) continue;
        if (!food || *m.fitness < *food->fitness) food = m;
    }
}

void clip_in_place(std::span<double> position, const Bounds& bounds) {
    if (position.size() != bounds.dimension())
        throw DimensionError("clip: position has " + std::to_string(position.size()) + " coordinates, bounds have " +
                             std::to_string(bounds.dimension()));
    for (std::size_t j = 0; j < position.size(); ++j)
        position[j] = std::min(bounds.upper(j), std::max(bounds.lower(j), position[j]));
}

Position clip(std::span<const double> position, const Bounds& bounds) {
    Position out(position.begin(), position.end());
    clip_in_place(out, bounds);
    return out;
}

Position uniform_point(const Bounds& bounds, RngStream& rng) {
    Position p(bounds.dimension());
    for (std::size_t j = 0; j < p.size(); ++j)
        // min() guards against lower + width rounding past upper
        p[j] = std::min(bounds.upper(j), bounds.lower(j) + rng.uniform() * bounds.width(j));
    return p;
}

SalpChain uniform_init(const Bounds& bounds, std::size_t n, RngStream& rng) {
    if (n < 2) throw ConfigError("population size must be >= 2, got " + std::to_string(n));
    SalpChain chain;
    chain.members.resize(n);
    for (auto& m : chain.members) m.position = uniform_point(bounds, rng);
    return chain;
}

} // namespace salp
