#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "salp/error.hpp"
#include "salp/rng.hpp"

namespace salp {

using Position = std::vector<double>;
using Snapshot = std::vector<Position>;

/// Axis-aligned box [lower, upper]^D with lower[j] < upper[j].
class Bounds {
public:
    Bounds(Position lower, Position upper);

    /// Same interval on every coordinate.
    static Bounds uniform(std::size_t dimension, double lower, double upper);

    std::size_t dimension() const noexcept { return lower_.size(); }
    const Position& lower() const noexcept { return lower_; }
    const Position& upper() const noexcept { return upper_; }
    double lower(std::size_t j) const { return lower_[j]; }
    double upper(std::size_t j) const { return upper_[j]; }
    double width(std::size_t j) const { return upper_[j] - lower_[j]; }

    bool contains(std::span<const double> x) const;
    /// lower == -upper on every coordinate.
    bool symmetric() const;

    Bounds translated(std::span<const double> shift) const;

    friend bool operator==(const Bounds&, const Bounds&) = default;

private:
    Position lower_;
    Position upper_;
};

struct Candidate {
    Position position;
    std::optional<double> fitness;  // empty means "not evaluated"

    bool evaluated() const noexcept { return fitness.has_value(); }
};

/// Ordered population; member order is the leader/follower chain.
struct SalpChain {
    std::vector<Candidate> members;
    std::optional<Candidate> food;

    std::size_t size() const noexcept { return members.size(); }
    Snapshot positions() const;

    /// Replace food with the first member strictly better than it.
    void update_food();
};

/// Best-so-far record of one repetition.
struct RunTrace {
    std::string algorithm_id;
    std::string objective_id;
    std::uint64_t seed = 0;
    std::vector<double> best_per_iteration;  // iterations 1..L
    Candidate final_best;
    std::optional<Snapshot> initial;          // post-init, pre-step positions
    std::optional<std::vector<Snapshot>> snapshots;  // one per iteration 1..L
};

/// Coordinate-wise projection onto the box.
Position clip(std::span<const double> position, const Bounds& bounds);

/// In-place variant of clip.
void clip_in_place(std::span<double> position, const Bounds& bounds);

/// One point drawn uniformly in the box, D draws in coordinate order.
Position uniform_point(const Bounds& bounds, RngStream& rng);

/// n members drawn uniformly in the box, member-major and dimension-minor,
/// consuming exactly n * D draws. All members are left unevaluated.
SalpChain uniform_init(const Bounds& bounds, std::size_t n, RngStream& rng);

} // namespace salp
