#include "delaysnn/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace delaysnn {

void NumericPolicy::validate() const
{
    if (weight_bits < 2 || weight_bits > 16)
        throw std::invalid_argument("weight_bits must be in [2, 16]");
    if (accumulator_bits < weight_bits || accumulator_bits > 32)
        throw std::invalid_argument("accumulator_bits must be in [weight_bits, 32]");
    if (frac_bits >= accumulator_bits)
        throw std::invalid_argument("frac_bits must be below accumulator_bits");
}

std::string_view to_string(ResetMode mode)
{
    return mode == ResetMode::to_zero ? "to-zero" : "subtract-threshold";
}

ResetMode parse_reset_mode(std::string_view text)
{
    if (text == "to-zero")
        return ResetMode::to_zero;
    if (text == "subtract-threshold")
        return ResetMode::subtract_threshold;
    throw std::invalid_argument("unknown reset mode '" + std::string(text) + "'");
}

void LifParams::validate() const
{
    if (decay_q16 > decay_one)
        throw std::invalid_argument("decay must lie in [0, 1]");
    if (threshold <= 0)
        throw std::invalid_argument("threshold must be positive");
}

WeightTensor::WeightTensor(std::size_t delay_levels, std::size_t presyn, std::size_t postsyn)
        : levels_(delay_levels)
        , presyn_(presyn)
        , postsyn_(postsyn)
        , values_(delay_levels * presyn * postsyn, 0)
{
}

WeightTensor::WeightTensor(std::size_t delay_levels, std::size_t presyn, std::size_t postsyn,
        std::vector<Weight> values)
        : levels_(delay_levels)
        , presyn_(presyn)
        , postsyn_(postsyn)
        , values_(std::move(values))
{
    if (values_.size() != levels_ * presyn_ * postsyn_)
        throw std::invalid_argument("weight payload has " + std::to_string(values_.size()) +
                " values, shape requires " + std::to_string(levels_ * presyn_ * postsyn_));
}

void DelayNetwork::validate() const
{
    numeric.validate();
    if (layers.empty())
        throw std::invalid_argument("network has no layers");
    for (std::size_t k = 0; k < layers.size(); ++k)
    {
        const LayerSpec &layer = layers[k];
        const std::string where = "layer " + std::to_string(k) + ": ";
        if (layer.delay_levels() < 1 || layer.presyn_count() < 1 || layer.postsyn_count() < 1)
            throw std::invalid_argument(where + "dimensions must be at least 1");
        if (k > 0 && layers[k - 1].postsyn_count() != layer.presyn_count())
            throw std::invalid_argument(where + "presyn count " +
                    std::to_string(layer.presyn_count()) + " does not match previous postsyn count " +
                    std::to_string(layers[k - 1].postsyn_count()));
        for (const Weight w : layer.weights.values())
        {
            if (w < numeric.weight_min() || w > numeric.weight_max())
                throw std::invalid_argument(where + "weight " + std::to_string(w) +
                        " exceeds " + std::to_string(numeric.weight_bits) + "-bit range");
        }
        try
        {
            layer.lif.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw std::invalid_argument(where + e.what());
        }
        if (layer.lif.threshold > numeric.accumulator_max())
            throw std::invalid_argument(where + "threshold exceeds accumulator range");
    }
}

void SpikeTrain::validate() const
{
    std::vector<Timestep> last_seen(width, duration);
    Timestep previous = 0;
    for (std::size_t k = 0; k < events.size(); ++k)
    {
        const SpikeEvent &e = events[k];
        const std::string where = "event " + std::to_string(k) + ": ";
        if (e.t >= duration)
            throw std::invalid_argument(where + "timestep " + std::to_string(e.t) +
                    " outside duration " + std::to_string(duration));
        if (e.neuron >= width)
            throw std::invalid_argument(where + "neuron " + std::to_string(e.neuron) +
                    " outside width " + std::to_string(width));
        if (e.t < previous)
            throw std::invalid_argument(where + "events not sorted by timestep");
        if (last_seen[e.neuron] == e.t)
            throw std::invalid_argument(where + "neuron " + std::to_string(e.neuron) +
                    " spikes twice in timestep " + std::to_string(e.t));
        last_seen[e.neuron] = e.t;
        previous = e.t;
    }
}

std::vector<std::vector<Address>> SpikeTrain::by_timestep() const
{
    std::vector<std::vector<Address>> grouped(duration);
    for (const SpikeEvent &e : events)
        grouped.at(e.t).push_back(e.neuron);
    return grouped;
}

WvuMatrix::WvuMatrix(std::size_t presyn, std::size_t delay_levels)
        : presyn_(presyn)
        , levels_(delay_levels)
        , bits_(presyn * delay_levels, 0)
{
}

std::size_t WvuMatrix::row_popcount(std::size_t i) const
{
    const auto row = bits_.begin() + static_cast<std::ptrdiff_t>(i * levels_);
    return static_cast<std::size_t>(
            std::count(row, row + static_cast<std::ptrdiff_t>(levels_), std::uint8_t{1}));
}

WvuMatrix derive_wvu(const WeightTensor &weights)
{
    WvuMatrix wvu(weights.presyn(), weights.delay_levels());
    for (std::size_t d = 0; d < weights.delay_levels(); ++d)
    {
        for (std::size_t i = 0; i < weights.presyn(); ++i)
        {
            const auto slice = weights.slice(d, i);
            wvu.set(i, d, std::any_of(slice.begin(), slice.end(), [](Weight w) { return w != 0; }));
        }
    }
    return wvu;
}

namespace {

void check_keep(const WeightTensor &weights, std::size_t keep_k)
{
    if (keep_k < 1 || keep_k > weights.delay_levels())
        throw std::invalid_argument("keep_k " + std::to_string(keep_k) + " outside [1, " +
                std::to_string(weights.delay_levels()) + "]");
}

// Indices 0..L-1 ordered by descending score, ties to the smaller index.
template <typename Score>
std::vector<std::size_t> rank_levels(std::size_t levels, Score score)
{
    std::vector<std::size_t> order(levels);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return score(a) > score(b); });
    return order;
}

} // namespace

WeightTensor prune_per_synapse(const WeightTensor &weights, std::size_t keep_k)
{
    check_keep(weights, keep_k);
    WeightTensor pruned = weights;
    const std::size_t levels = weights.delay_levels();
    for (std::size_t i = 0; i < weights.presyn(); ++i)
    {
        for (std::size_t j = 0; j < weights.postsyn(); ++j)
        {
            const auto order = rank_levels(levels,
                    [&](std::size_t d) { return std::abs(int{weights.at(d, i, j)}); });
            for (std::size_t r = keep_k; r < levels; ++r)
                pruned.at(order[r], i, j) = 0;
        }
    }
    return pruned;
}

WeightTensor prune_per_axon(const WeightTensor &weights, std::size_t keep_k)
{
    check_keep(weights, keep_k);
    WeightTensor pruned = weights;
    const std::size_t levels = weights.delay_levels();
    for (std::size_t i = 0; i < weights.presyn(); ++i)
    {
        std::vector<std::int64_t> scores(levels, 0);
        for (std::size_t d = 0; d < levels; ++d)
        {
            for (const Weight w : weights.slice(d, i))
                scores[d] += std::abs(int{w});
        }
        const auto order = rank_levels(levels, [&](std::size_t d) { return scores[d]; });
        for (std::size_t r = keep_k; r < levels; ++r)
        {
            for (std::size_t j = 0; j < weights.postsyn(); ++j)
                pruned.at(order[r], i, j) = 0;
        }
    }
    return pruned;
}

WeightTensor apply_delay_stride(const WeightTensor &weights, std::size_t stride)
{
    if (stride < 1)
        throw std::invalid_argument("stride must be at least 1");
    WeightTensor strided = weights;
    for (std::size_t d = 0; d < weights.delay_levels(); ++d)
    {
        if (d % stride == 0)
            continue;
        for (std::size_t i = 0; i < weights.presyn(); ++i)
            for (std::size_t j = 0; j < weights.postsyn(); ++j)
                strided.at(d, i, j) = 0;
    }
    return strided;
}

} // namespace delaysnn
