#pragma once

// Brute-force reference computations used by the tests. Deliberately written
// without any library helper beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "delaysnn/delay_structure.hpp"
#include "delaysnn/model.hpp"
#include "delaysnn/ring_buffer.hpp"
#include "delaysnn/workload.hpp"

namespace testsupport {

using namespace delaysnn;

using Raster = std::vector<std::vector<Address>>;              // [t] -> fired neurons
using DeliverySets = std::vector<std::vector<DeliveryRecord>>; // [t] -> sorted deliveries
using Inputs = std::vector<std::vector<std::int64_t>>;         // [t][j]

inline bool brute_useful(const WeightTensor &w, std::size_t i, std::size_t d)
{
    for (std::size_t j = 0; j < w.postsyn(); ++j)
        if (w.at(d, i, j) != 0)
            return true;
    return false;
}

inline std::size_t brute_clz(const WeightTensor &w, std::size_t i)
{
    std::size_t zeros = 0;
    for (std::size_t d = w.delay_levels(); d-- > 0;)
    {
        if (brute_useful(w, i, d))
            break;
        ++zeros;
    }
    return zeros;
}

inline Raster raster_of(const SpikeTrain &spikes)
{
    Raster r(spikes.duration);
    for (const SpikeEvent &e : spikes.events)
        r[e.t].push_back(e.neuron);
    return r;
}

/// Every (i, d) with a useful weight, delivered d steps after i fired.
inline DeliverySets brute_deliveries(const WeightTensor &w, const Raster &raster)
{
    DeliverySets out(raster.size());
    for (std::size_t t = 0; t < raster.size(); ++t)
        for (const Address i : raster[t])
            for (std::size_t d = 0; d < w.delay_levels(); ++d)
                if (t + d < raster.size() && brute_useful(w, i, d))
                    out[t + d].push_back(DeliveryRecord{i, static_cast<std::uint32_t>(d)});
    for (auto &v : out)
        std::sort(v.begin(), v.end());
    return out;
}

inline Inputs brute_inputs(const WeightTensor &w, const Raster &raster)
{
    Inputs in(raster.size(), std::vector<std::int64_t>(w.postsyn(), 0));
    for (std::size_t t = 0; t < raster.size(); ++t)
        for (std::size_t d = 0; d <= t && d < w.delay_levels(); ++d)
            for (const Address i : raster[t - d])
                for (std::size_t j = 0; j < w.postsyn(); ++j)
                    in[t][j] += w.at(d, i, j);
    return in;
}

inline Inputs inputs_from_deliveries(const WeightTensor &w, const DeliverySets &deliveries)
{
    Inputs in(deliveries.size(), std::vector<std::int64_t>(w.postsyn(), 0));
    for (std::size_t t = 0; t < deliveries.size(); ++t)
        for (const DeliveryRecord &r : deliveries[t])
            for (std::size_t j = 0; j < w.postsyn(); ++j)
                in[t][j] += w.at(r.delay, r.source, j);
    return in;
}

struct BruteLayer {
    Raster raster;
    std::vector<std::vector<std::int64_t>> membranes;
};

/// Full dense simulation: v = floor(decay * (v + input)), fire on v >= threshold.
inline std::vector<BruteLayer> brute_network(const DelayNetwork &net, const SpikeTrain &spikes)
{
    std::vector<BruteLayer> layers;
    Raster input = raster_of(spikes);
    for (const LayerSpec &layer : net.layers)
    {
        const Inputs in = brute_inputs(layer.weights, input);
        BruteLayer out;
        std::vector<std::int64_t> v(layer.postsyn_count(), 0);
        for (std::size_t t = 0; t < input.size(); ++t)
        {
            std::vector<Address> fired;
            for (std::size_t j = 0; j < v.size(); ++j)
            {
                const std::int64_t x = (v[j] + in[t][j]) * std::int64_t{layer.lif.decay_q16};
                // floor division by 2^16 for either sign
                std::int64_t q = x / 65536;
                if (x % 65536 != 0 && x < 0)
                    --q;
                v[j] = q;
                if (v[j] >= layer.lif.threshold)
                {
                    fired.push_back(static_cast<Address>(j));
                    v[j] = layer.lif.reset == ResetMode::to_zero ? 0 : v[j] - layer.lif.threshold;
                }
            }
            out.raster.push_back(fired);
            out.membranes.push_back(v);
        }
        input = out.raster;
        layers.push_back(std::move(out));
    }
    return layers;
}

struct DrivenStructure {
    DeliverySets deliveries;
    QueueStats stats;
    std::size_t max_spikes = 0;
};

/// Feeds a raster through one structure: push, drain, EOT per timestep.
inline DrivenStructure drive(StructureKind kind, const WeightTensor &w, const Raster &raster,
        std::size_t capacity = 1u << 20, QueueTraceSink trace = {})
{
    WvuMatrix wvu(w.presyn(), w.delay_levels());
    for (std::size_t i = 0; i < w.presyn(); ++i)
        for (std::size_t d = 0; d < w.delay_levels(); ++d)
            wvu.set(i, d, brute_useful(w, i, d));
    auto s = make_delay_structure(kind, WvuFilter(wvu), capacity, EventLayout::fit(w.presyn(), w.delay_levels()));
    if (trace)
        s->set_trace(std::move(trace));
    DrivenStructure out;
    out.deliveries.resize(raster.size());
    for (std::size_t t = 0; t < raster.size(); ++t)
    {
        out.max_spikes = std::max(out.max_spikes, raster[t].size());
        for (const Address i : raster[t])
            s->push_spike(i);
        s->drain([&](const DeliveryRecord &r) { out.deliveries[t].push_back(r); });
        s->end_of_timestep();
        std::sort(out.deliveries[t].begin(), out.deliveries[t].end());
    }
    out.stats = s->stats();
    return out;
}

inline Inputs drive_ring_buffer(const WeightTensor &w, const Raster &raster)
{
    RingBuffer rb(std::make_shared<const WeightTensor>(w));
    Inputs in;
    for (const auto &step : raster)
    {
        for (const Address i : step)
            rb.push_spike(i);
        const auto v = rb.end_of_timestep();
        in.emplace_back(v.begin(), v.end());
    }
    return in;
}

inline Raster random_raster(Rng &rng, std::size_t width, std::size_t duration, double density)
{
    Raster r(duration);
    for (auto &step : r)
        for (std::size_t i = 0; i < width; ++i)
            if (rng.chance(density))
                step.push_back(static_cast<Address>(i));
    return r;
}

inline WeightTensor random_tensor(Rng &rng, std::size_t levels, std::size_t presyn, std::size_t postsyn,
        double density = 0.5, int lo = -20, int hi = 20)
{
    WeightTensor w(levels, presyn, postsyn);
    for (Weight &x : w.values())
        x = rng.chance(density) ? static_cast<Weight>(rng.between(lo, hi)) : Weight{0};
    return w;
}

} // namespace testsupport
