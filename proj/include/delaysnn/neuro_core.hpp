#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "delaysnn/delay_structure.hpp"
#include "delaysnn/event_word.hpp"
#include "delaysnn/model.hpp"
#include "delaysnn/ring_buffer.hpp"

namespace delaysnn {

struct CoreOptions {
    StructureKind kind = StructureKind::scdq;
    std::size_t capacity = default_queue_capacity;
    std::optional<EventLayout> layout; // fitted to the layer when unset
    bool record_membranes = true;
    bool record_deliveries = false;
    bool record_queue_trace = false;
};

/// Per-core counters collected during a run.
struct CoreMetrics {
    std::size_t layer = 0;
    StructureKind kind = StructureKind::scdq;
    std::size_t presyn = 0;
    std::size_t postsyn = 0;
    std::size_t delay_levels = 0;
    std::size_t capacity = 0;
    QueueStats queue;
    std::size_t peak_prq = 0; // scdq only
    std::size_t peak_poq = 0; // scdq only
    std::size_t ring_buffer_slots = 0;
    std::vector<std::uint32_t> presyn_spikes; // per timestep
    std::uint32_t max_presyn_spikes = 0;
    std::uint64_t deliveries = 0;
    std::uint64_t macs_performed = 0;
    std::uint64_t macs_skipped = 0;

    double max_activation_density() const
    {
        return presyn ? static_cast<double>(max_presyn_spikes) / static_cast<double>(presyn) : 0.0;
    }
};

/// What one core observed, in timestep order.
struct CoreRecord {
    std::vector<std::vector<Address>> raster;       // fired postsyn neurons per timestep
    std::vector<std::vector<Potential>> membranes;  // potentials after the EOT update
    std::vector<std::vector<DeliveryRecord>> deliveries; // when recorded
    std::vector<QueueTraceRecord> queue_trace;
    CoreMetrics metrics;
};

/// Applies the end-of-timestep LIF update to one membrane: decay, threshold
/// with >=, then reset. Returns true when the neuron fires.
bool lif_update(Potential &v, const LifParams &lif, const NumericPolicy &numeric);

/// Time-multiplexed neuron core for one projection. Receives spike and EOT
/// words from upstream, runs them through its delay mechanism, accumulates
/// weights into the postsynaptic membranes, and thresholds at EOT.
class NeuroCore {
public:
    NeuroCore(const LayerSpec &layer, std::size_t layer_index, const NumericPolicy &numeric,
            const CoreOptions &options);
    NeuroCore(const NeuroCore &) = delete;
    NeuroCore &operator=(const NeuroCore &) = delete;

    /// Handles one upstream word. Output words (spikes in ascending neuron
    /// order, then one EOT) are appended to `out` after each EOT.
    void on_word(const EventWord &word, std::vector<EventWord> &out);

    /// Accumulates W[d][i][.] into the membranes, skipping zero weights.
    void receive(const DeliveryRecord &delivery);

    /// Applies the LIF update to every membrane; returns the fired neurons.
    std::vector<Address> end_of_timestep();

    const std::vector<Potential> &membranes() const { return membranes_; }
    Timestep timestep() const { return timestep_; }
    const CoreRecord &record() const { return record_; }
    CoreRecord take_record();

private:
    void close_timestep(std::vector<EventWord> &out);

    std::size_t layer_index_;
    std::shared_ptr<const WeightTensor> weights_;
    LifParams lif_;
    NumericPolicy numeric_;
    CoreOptions options_;
    std::unique_ptr<DelayStructure> structure_;
    std::unique_ptr<RingBuffer> ring_buffer_;
    std::vector<Potential> membranes_;
    Timestep timestep_ = 0;
    std::uint32_t spikes_this_step_ = 0;
    std::vector<DeliveryRecord> step_deliveries_;
    CoreRecord record_;
};

} // namespace delaysnn
