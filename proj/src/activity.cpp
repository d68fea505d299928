#include "delaysnn/activity.hpp"

#include <algorithm>
#include <iterator>

namespace delaysnn {

std::size_t classify(const std::vector<std::uint64_t> &counts)
{
    // max_element returns the first maximum, which gives the lowest index on ties.
    const auto best = std::max_element(counts.begin(), counts.end());
    return best == counts.end() ? 0 : static_cast<std::size_t>(best - counts.begin());
}

void finalize_readout(NetworkActivity &activity, std::size_t output_width)
{
    activity.output_counts.assign(output_width, 0);
    if (!activity.layers.empty())
    {
        for (const auto &fired : activity.layers.back().raster)
            for (const Address n : fired)
                ++activity.output_counts.at(n);
    }
    activity.classification = classify(activity.output_counts);
}

std::optional<Divergence> first_divergence(const NetworkActivity &a, const NetworkActivity &b)
{
    if (a.layers.size() != b.layers.size())
        return Divergence{0, 0, 0, "layer count differs"};
    if (a.duration != b.duration)
        return Divergence{0, 0, 0, "duration differs"};
    for (Timestep t = 0; t < a.duration; ++t)
    {
        for (std::size_t k = 0; k < a.layers.size(); ++k)
        {
            const LayerActivity &la = a.layers[k];
            const LayerActivity &lb = b.layers[k];
            const auto &fa = la.raster.at(t);
            const auto &fb = lb.raster.at(t);
            if (fa != fb)
            {
                // Smallest neuron present in exactly one of the two spike sets.
                std::vector<Address> diff;
                std::set_symmetric_difference(fa.begin(), fa.end(), fb.begin(), fb.end(),
                        std::back_inserter(diff));
                return Divergence{t, k + 1, diff.empty() ? 0 : diff.front(), "spike"};
            }
            if (t < la.membranes.size() && t < lb.membranes.size())
            {
                const auto &va = la.membranes[t];
                const auto &vb = lb.membranes[t];
                const std::size_t n = std::min(va.size(), vb.size());
                for (std::size_t j = 0; j < n; ++j)
                {
                    if (va[j] != vb[j])
                        return Divergence{t, k + 1, j, "membrane"};
                }
                if (va.size() != vb.size())
                    return Divergence{t, k + 1, n, "membrane width"};
            }
        }
    }
    return std::nullopt;
}

} // namespace delaysnn
