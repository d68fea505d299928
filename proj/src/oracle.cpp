#include "delaysnn/oracle.hpp"

#include <stdexcept>
#include <string>

#include "delaysnn/errors.hpp"

namespace delaysnn {

namespace {

void check_range(std::int64_t value, const NumericPolicy &numeric, std::size_t layer, std::size_t j)
{
    if (value < numeric.accumulator_min() || value > numeric.accumulator_max())
        throw AccumulatorOverflow("oracle: layer " + std::to_string(layer) + " neuron " +
                std::to_string(j) + " overflowed " + std::to_string(numeric.accumulator_bits) + " bits");
}

} // namespace

std::vector<std::vector<std::int64_t>> oracle_layer_input(const WeightTensor &weights,
        const std::vector<std::vector<std::uint8_t>> &raster)
{
    const std::size_t duration = raster.size();
    const std::size_t levels = weights.delay_levels();
    const std::size_t presyn = weights.presyn();
    const std::size_t postsyn = weights.postsyn();
    std::vector<std::vector<std::int64_t>> input(duration, std::vector<std::int64_t>(postsyn, 0));
    for (std::size_t t = 0; t < duration; ++t)
    {
        for (std::size_t d = 0; d < levels && d <= t; ++d)
        {
            const auto &fired = raster[t - d];
            for (std::size_t i = 0; i < presyn; ++i)
            {
                if (!fired.at(i))
                    continue;
                for (std::size_t j = 0; j < postsyn; ++j)
                    input[t][j] += weights.at(d, i, j);
            }
        }
    }
    return input;
}

OracleResult oracle_run(const DelayNetwork &network, const SpikeTrain &spikes)
{
    network.validate();
    spikes.validate();
    if (spikes.width != network.input_width())
        throw std::invalid_argument("spike train width " + std::to_string(spikes.width) +
                " does not match input layer width " + std::to_string(network.input_width()));

    const NumericPolicy &numeric = network.numeric;
    const std::size_t duration = spikes.duration;

    // raster[t][i] of the population feeding the current projection
    std::vector<std::vector<std::uint8_t>> raster(duration, std::vector<std::uint8_t>(spikes.width, 0));
    for (const SpikeEvent &e : spikes.events)
        raster[e.t][e.neuron] = 1;

    OracleResult result;
    result.duration = static_cast<Timestep>(duration);
    for (std::size_t k = 0; k < network.layers.size(); ++k)
    {
        const LayerSpec &layer = network.layers[k];
        const std::size_t postsyn = layer.postsyn_count();
        const auto input = oracle_layer_input(layer.weights, raster);

        LayerActivity activity;
        std::vector<std::vector<std::uint8_t>> next(duration, std::vector<std::uint8_t>(postsyn, 0));
        std::vector<std::int64_t> v(postsyn, 0);
        for (std::size_t t = 0; t < duration; ++t)
        {
            std::vector<Address> fired;
            std::vector<Potential> trace(postsyn);
            for (std::size_t j = 0; j < postsyn; ++j)
            {
                const std::int64_t charged = v[j] + input[t][j];
                check_range(charged, numeric, k, j);
                std::int64_t leaked = charged * layer.lif.decay_q16;
                // floor division by 2^16
                leaked = leaked >= 0 ? leaked / LifParams::decay_one
                                     : -((-leaked + LifParams::decay_one - 1) / LifParams::decay_one);
                if (leaked >= layer.lif.threshold)
                {
                    fired.push_back(static_cast<Address>(j));
                    next[t][j] = 1;
                    leaked = layer.lif.reset == ResetMode::to_zero ? 0 : leaked - layer.lif.threshold;
                }
                v[j] = leaked;
                trace[j] = static_cast<Potential>(leaked);
            }
            activity.raster.push_back(std::move(fired));
            activity.membranes.push_back(std::move(trace));
        }
        result.layers.push_back(std::move(activity));
        raster = std::move(next);
    }
    finalize_readout(result, network.output_width());
    return result;
}

} // namespace delaysnn
