#include "salp/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace salp::objectives {

bool ObjectiveSpec::is_shifted() const {
    return std::any_of(shift.begin(), shift.end(), [](double s) { return s != 0.0; });
}

double ObjectiveSpec::operator()(std::span<const double> x) const {
    if (x.size() != dimension)
        throw DimensionError(name + ": expected " + std::to_string(dimension) + " coordinates, got " +
                             std::to_string(x.size()));
    if (!is_shifted()) return base(x);
    Position local(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) local[j] = x[j] - shift[j];
    return base(local);
}

double sphere(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return sum;
}

double rosenbrock(std::span<const double> x) {
    if (x.size() < 2) throw DimensionError("rosenbrock requires D >= 2");
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        const double a = x[j + 1] - x[j] * x[j];
        const double b = 1.0 - x[j];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double ackley(std::span<const double> x) {
    if (x.empty()) return 0.0;
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * std::numbers::pi * v);
    }
    const double value = -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
    // exp(1) - e leaves a few ulps at the optimum
    return std::max(0.0, value);
}

double alpine(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += std::abs(v * std::sin(v) + 0.1 * v);
    return sum;
}

double rastrigin(std::span<const double> x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (double v : x) sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return std::max(0.0, sum);
}

double random_fitness(std::span<const double>, RngStream& rng) { return rng.uniform(); }

namespace {

std::string shift_tag(std::span<const double> s) {
    std::ostringstream os;
    os.precision(6);
    const bool uniform = std::all_of(s.begin(), s.end(), [&](double v) { return v == s.front(); });
    if (uniform) {
        os << s.front();
    } else {
        os << "[";
        for (std::size_t j = 0; j < s.size(); ++j) os << (j ? "," : "") << s[j];
        os << "]";
    }
    return os.str();
}

ObjectiveSpec make_deterministic(std::string name, std::size_t dimension, double lo, double hi,
                                 double (*fn)(std::span<const double>)) {
    ObjectiveSpec spec{std::move(name), dimension, Bounds::uniform(dimension, lo, hi), Position(dimension, 0.0), fn};
    return spec;
}

struct Registry {
    std::mutex mutex;
    std::map<std::string, Factory> factories;

    Registry() {
        factories["sphere"] = [](std::size_t d, std::uint64_t) { return make_deterministic("sphere", d, -100, 100, sphere); };
        factories["rosenbrock"] = [](std::size_t d, std::uint64_t) {
            if (d < 2) throw DimensionError("rosenbrock requires D >= 2");
            return make_deterministic("rosenbrock", d, -30, 30, rosenbrock);
        };
        factories["ackley"] = [](std::size_t d, std::uint64_t) { return make_deterministic("ackley", d, -100, 100, ackley); };
        factories["alpine"] = [](std::size_t d, std::uint64_t) { return make_deterministic("alpine", d, -10, 10, alpine); };
        factories["rastrigin"] = [](std::size_t d, std::uint64_t) {
            return make_deterministic("rastrigin", d, -100, 100, rastrigin);
        };
        factories["random"] = [](std::size_t d, std::uint64_t seed) {
            auto rng = std::make_shared<RngStream>(seed);
            return ObjectiveSpec{"random", d, Bounds::uniform(d, -100, 100), Position(d, 0.0),
                                 [rng](std::span<const double> x) { return random_fitness(x, *rng); }};
        };
    }
};

Registry& registry() {
    static Registry r;
    return r;
}

} // namespace

ObjectiveSpec shifted(const ObjectiveSpec& spec, std::span<const double> s) {
    if (s.size() != spec.dimension)
        throw DimensionError("shift has " + std::to_string(s.size()) + " coordinates, " + spec.name + " has " +
                             std::to_string(spec.dimension));
    ObjectiveSpec out = spec;
    for (std::size_t j = 0; j < s.size(); ++j) out.shift[j] += s[j];
    out.name = spec.name + "+shift(" + shift_tag(s) + ")";
    return out;
}

ObjectiveSpec shifted(const ObjectiveSpec& spec, double s) {
    const Position v(spec.dimension, s);
    return shifted(spec, v);
}

ObjectiveSpec counted(const ObjectiveSpec& spec, std::shared_ptr<std::atomic<std::size_t>> counter) {
    ObjectiveSpec out = spec;
    out.base = [inner = spec.base, counter = std::move(counter)](std::span<const double> x) {
        counter->fetch_add(1, std::memory_order_relaxed);
        return inner(x);
    };
    return out;
}

ObjectiveSpec make_objective(const std::string& name, std::size_t dimension, std::uint64_t seed) {
    if (dimension < 1) throw DimensionError("objective dimension must be >= 1");
    Factory factory;
    {
        auto& r = registry();
        std::lock_guard lock(r.mutex);
        auto it = r.factories.find(name);
        if (it == r.factories.end()) throw ConfigError("unknown objective '" + name + "'");
        factory = it->second;
    }
    return factory(dimension, seed);
}

bool is_registered(const std::string& name) {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    return r.factories.count(name) != 0;
}

std::vector<std::string> registered_names() {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    std::vector<std::string> names;
    for (const auto& [k, _] : r.factories) names.push_back(k);
    return names;
}

void register_objective(const std::string& name, Factory factory) {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    r.factories[name] = std::move(factory);
}

} // namespace salp::objectives
