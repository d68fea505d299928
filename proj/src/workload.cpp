#include "delaysnn/workload.hpp"

#include <algorithm>
#include <limits>
#include <charconv>
#include <numeric>
#include <stdexcept>
#include <string>

namespace delaysnn {

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("Rng::below(0)");
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
            std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do
    {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi)
{
    if (hi < lo)
        throw std::invalid_argument("Rng::between with empty range");
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::string_view to_string(PruneMode mode)
{
    switch (mode)
    {
    case PruneMode::none:
        return "none";
    case PruneMode::per_synapse:
        return "synapse";
    case PruneMode::per_axon:
        return "axon";
    }
    return "?";
}

PruneMode parse_prune_mode(std::string_view text)
{
    if (text == "none")
        return PruneMode::none;
    if (text == "synapse" || text == "per-synapse")
        return PruneMode::per_synapse;
    if (text == "axon" || text == "per-axon")
        return PruneMode::per_axon;
    throw std::invalid_argument("unknown prune mode '" + std::string(text) + "'");
}

std::vector<std::size_t> parse_shape(std::string_view shape)
{
    std::vector<std::size_t> widths;
    std::size_t pos = 0;
    while (pos <= shape.size())
    {
        const std::size_t dash = std::min(shape.find('-', pos), shape.size());
        const std::string_view token = shape.substr(pos, dash - pos);
        std::size_t value = 0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || end != token.data() + token.size() || value == 0)
            throw std::invalid_argument("invalid shape '" + std::string(shape) +
                    "': expected positive widths joined by '-'");
        widths.push_back(value);
        pos = dash + 1;
    }
    if (widths.size() < 2)
        throw std::invalid_argument("shape '" + std::string(shape) + "' needs at least two layers");
    return widths;
}

DelayNetwork generate_network(const NetworkRecipe &recipe, Rng &rng)
{
    if (recipe.widths.size() < 2)
        throw std::invalid_argument("recipe needs at least two populations");
    if (recipe.delay_levels < 1 || recipe.stride < 1)
        throw std::invalid_argument("delay levels and stride must be positive");
    if (recipe.weight_min > recipe.weight_max)
        throw std::invalid_argument("weight range is empty");

    DelayNetwork network;
    network.numeric = recipe.numeric;
    for (std::size_t k = 0; k + 1 < recipe.widths.size(); ++k)
    {
        const std::size_t levels = (k == 0 && !recipe.delay_first_projection) ? 1 : recipe.delay_levels;
        WeightTensor weights(levels, recipe.widths[k], recipe.widths[k + 1]);
        for (Weight &w : weights.values())
        {
            const auto v = rng.between(recipe.weight_min, recipe.weight_max);
            w = rng.chance(recipe.weight_density) ? static_cast<Weight>(v) : Weight{0};
        }
        if (levels > 1)
        {
            weights = apply_delay_stride(weights, recipe.stride);
            const std::size_t surviving = (levels + recipe.stride - 1) / recipe.stride;
            const std::size_t keep = std::clamp<std::size_t>(recipe.keep_k, 1, levels);
            if (recipe.prune == PruneMode::per_synapse && keep < surviving)
                weights = prune_per_synapse(weights, keep);
            else if (recipe.prune == PruneMode::per_axon && keep < surviving)
                weights = prune_per_axon(weights, keep);
        }
        network.layers.push_back(LayerSpec{std::move(weights), recipe.lif});
    }
    network.validate();
    return network;
}

SpikeTrain generate_spikes(std::size_t width, Timestep duration, double density, Rng &rng)
{
    if (!(density >= 0.0 && density <= 1.0))
        throw std::invalid_argument("density must lie in [0, 1]");
    SpikeTrain train{duration, width, {}};
    for (Timestep t = 0; t < duration; ++t)
        for (std::size_t n = 0; n < width; ++n)
            if (rng.chance(density))
                train.events.push_back(SpikeEvent{t, static_cast<Address>(n)});
    return train;
}

SpikeTrain generate_steady_spikes(std::size_t width, Timestep duration, std::size_t per_step, Rng &rng)
{
    if (per_step > width)
        throw std::invalid_argument("cannot fire more neurons than the layer has");
    SpikeTrain train{duration, width, {}};
    std::vector<Address> order(width);
    for (Timestep t = 0; t < duration; ++t)
    {
        std::iota(order.begin(), order.end(), Address{0});
        // Partial Fisher-Yates: the first per_step entries are a random subset.
        for (std::size_t k = 0; k < per_step; ++k)
            std::swap(order[k], order[k + rng.below(width - k)]);
        std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(per_step));
        for (std::size_t k = 0; k < per_step; ++k)
            train.events.push_back(SpikeEvent{t, order[k]});
    }
    return train;
}

CorpusCase random_case(Rng &rng, std::size_t max_width, std::size_t max_levels, Timestep max_duration)
{
    NetworkRecipe recipe;
    const std::size_t projections = static_cast<std::size_t>(rng.between(1, 3));
    for (std::size_t k = 0; k <= projections; ++k)
        recipe.widths.push_back(static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_width))));
    recipe.delay_levels = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_levels)));
    recipe.delay_first_projection = rng.chance(0.7);
    recipe.stride = rng.chance(0.7) ? 1 : static_cast<std::size_t>(rng.between(2, 3));
    recipe.prune = static_cast<PruneMode>(rng.below(3));
    recipe.keep_k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(recipe.delay_levels)));
    recipe.weight_density = 0.3 + 0.7 * rng.unit();
    recipe.weight_max = static_cast<int>(rng.between(8, 127));
    recipe.weight_min = -static_cast<int>(rng.between(0, recipe.weight_max));
    recipe.lif.decay_q16 = rng.chance(0.2) ? LifParams::decay_one
                                           : static_cast<std::uint32_t>(rng.between(0, LifParams::decay_one));
    recipe.lif.threshold = static_cast<Potential>(rng.between(1, 4 * recipe.weight_max));
    recipe.lif.reset = rng.chance(0.5) ? ResetMode::to_zero : ResetMode::subtract_threshold;

    CorpusCase c{generate_network(recipe, rng), {}};
    const auto duration = static_cast<Timestep>(rng.between(1, max_duration));
    c.spikes = generate_spikes(recipe.widths.front(), duration, 0.05 + 0.55 * rng.unit(), rng);
    return c;
}

} // namespace delaysnn
