#pragma once

#include <deque>

#include "delaysnn/delay_structure.hpp"

namespace delaysnn {

/// Shared Circular Delay Queue: two FIFOs in a loop.
///
/// New spikes enter the pre-processing queue (PRQ) with the counter set to
/// L - 1. Draining pops every PRQ word, forwards it when the filter allows
/// its delay tag, and writes it with a decremented counter to the
/// post-processing queue (POQ) while the filter says it is still needed. An
/// EOT word reaching the PRQ output swaps the two queues.
///
/// The memory footprint is the sum of both queues' peaks, since each FIFO
/// must be sized for its own worst case.
class Scdq final : public DelayStructure {
public:
    Scdq(WvuFilter filter, std::size_t capacity = default_queue_capacity, EventLayout layout = {});

    StructureKind kind() const override { return StructureKind::scdq; }
    void push_spike(Address source) override;
    void drain(const DeliverySink &sink) override;
    void end_of_timestep() override;
    std::size_t stored() const override { return prq_.size() + poq_.size(); }

    const std::deque<EventWord> &prq() const { return prq_; }
    const std::deque<EventWord> &poq() const { return poq_; }
    std::size_t peak_prq() const { return peak_prq_; }
    std::size_t peak_poq() const { return peak_poq_; }

private:
    // Returns false when the popped word was EOT.
    bool process_front(const DeliverySink &sink);
    void update_peaks();

    std::deque<EventWord> prq_;
    std::deque<EventWord> poq_;
    std::size_t peak_prq_ = 0;
    std::size_t peak_poq_ = 0;
};

} // namespace delaysnn
