#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "delaysnn/model.hpp"

namespace delaysnn {

/// Seeded generator with portable bounded draws (the standard distributions
/// differ between library implementations).
class Rng {
public:
    explicit Rng(std::uint64_t seed)
            : engine_(seed)
    {
    }

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);
    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

enum class PruneMode { none, per_synapse, per_axon };

std::string_view to_string(PruneMode mode);
PruneMode parse_prune_mode(std::string_view text);

/// Parses "700-48-48-20" into population widths (at least two, all positive).
std::vector<std::size_t> parse_shape(std::string_view shape);

struct NetworkRecipe {
    std::vector<std::size_t> widths;
    std::size_t delay_levels = 1;
    bool delay_first_projection = true; // false gives the first projection L = 1
    std::size_t stride = 1;
    PruneMode prune = PruneMode::none;
    std::size_t keep_k = 1; // clamped to the surviving level count
    double weight_density = 1.0;
    int weight_min = -64;
    int weight_max = 64;
    LifParams lif{};
    NumericPolicy numeric{};
};

/// Random weights in [weight_min, weight_max], thinned by weight_density,
/// then strided and pruned per the recipe.
DelayNetwork generate_network(const NetworkRecipe &recipe, Rng &rng);

/// Each (t, neuron) fires independently with probability density.
SpikeTrain generate_spikes(std::size_t width, Timestep duration, double density, Rng &rng);

/// Exactly `per_step` distinct neurons fire in every timestep.
SpikeTrain generate_steady_spikes(std::size_t width, Timestep duration, std::size_t per_step, Rng &rng);

struct CorpusCase {
    DelayNetwork network;
    SpikeTrain spikes;
};

/// Small random networks (I, J <= max_width, L <= max_levels,
/// T <= max_duration) with random pruning, LIF settings and input density.
CorpusCase random_case(Rng &rng, std::size_t max_width = 16, std::size_t max_levels = 8,
        Timestep max_duration = 32);

} // namespace delaysnn
