#pragma once

#include "delaysnn/activity.hpp"
#include "delaysnn/model.hpp"

namespace delaysnn {

using OracleResult = NetworkActivity;

/// Dense, time-unrolled evaluation without queues or events:
///   input_j(t) = sum_d sum_i W[d][i][j] * spike_i(t - d)
/// followed by v = decay * (v + input), fire on v >= threshold, reset.
OracleResult oracle_run(const DelayNetwork &network, const SpikeTrain &spikes);

/// Pre-threshold input currents of one projection for a binary raster
/// (raster[t][i] != 0 means presyn i fired at t). Exposed for the input-stage
/// properties (linearity, time-shift).
std::vector<std::vector<std::int64_t>> oracle_layer_input(const WeightTensor &weights,
        const std::vector<std::vector<std::uint8_t>> &raster);

} // namespace delaysnn
