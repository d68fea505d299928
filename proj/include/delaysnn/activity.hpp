#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delaysnn/model.hpp"

namespace delaysnn {

/// Observable behavior of one postsynaptic population over a run.
struct LayerActivity {
    std::vector<std::vector<Address>> raster;      // fired neurons per timestep, ascending
    std::vector<std::vector<Potential>> membranes; // potentials after each EOT update

    bool operator==(const LayerActivity &) const = default;
};

/// Rasters and traces of every non-input population (index 0 is the output
/// of the first projection) plus the output-layer readout.
struct NetworkActivity {
    Timestep duration = 0;
    std::vector<LayerActivity> layers;
    std::vector<std::uint64_t> output_counts;
    std::size_t classification = 0;

    bool operator==(const NetworkActivity &) const = default;
};

/// argmax over counts, ties to the lowest index; 0 for empty input.
std::size_t classify(const std::vector<std::uint64_t> &counts);

/// Fills output_counts and classification from the last layer's raster.
void finalize_readout(NetworkActivity &activity, std::size_t output_width);

struct Divergence {
    Timestep timestep = 0;
    std::size_t layer = 0; // population index, 1 = output of the first projection
    std::size_t neuron = 0;
    std::string what;
};

/// First point, in (timestep, layer, neuron) order, where spikes or
/// membranes differ. Membranes are compared only where both sides have them.
std::optional<Divergence> first_divergence(const NetworkActivity &a, const NetworkActivity &b);

} // namespace delaysnn
