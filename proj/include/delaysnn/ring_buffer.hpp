#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "delaysnn/model.hpp"

namespace delaysnn {

/// Per-postsynaptic-neuron dendritic accumulators, one slot per future
/// timestep (Loihi / SpiNNaker style). Stores weight sums, not events, so
/// its memory is J x L slots whatever the activity.
class RingBuffer {
public:
    RingBuffer(std::shared_ptr<const WeightTensor> weights, NumericPolicy numeric = {});

    /// Adds W[d][i][j] into the slot d timesteps ahead, for every d and j.
    void push_spike(Address source);

    /// Returns the current slot as the per-j input, clears it, and makes it
    /// the slot for the maximum delay.
    std::vector<Potential> end_of_timestep();

    std::size_t slot_count() const { return slots_.size(); }
    std::uint64_t adds_performed() const { return adds_performed_; }
    std::uint64_t adds_skipped() const { return adds_skipped_; }
    std::size_t cursor() const { return cursor_; }
    Timestep timestep() const { return timestep_; }

private:
    std::shared_ptr<const WeightTensor> weights_;
    NumericPolicy numeric_;
    std::size_t levels_;
    std::size_t postsyn_;
    std::vector<Potential> slots_; // slot-major: slots_[slot * J + j]
    std::size_t cursor_ = 0;
    Timestep timestep_ = 0;
    std::uint64_t adds_performed_ = 0;
    std::uint64_t adds_skipped_ = 0;
};

} // namespace delaysnn
