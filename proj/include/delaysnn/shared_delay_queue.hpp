#pragma once

#include <deque>
#include <vector>

#include "delaysnn/delay_structure.hpp"

namespace delaysnn {

/// Cascade of L FIFOs, one per relative delivery timestep (TrueNorth style).
///
/// A spike stores one copy in the FIFO of every useful delay level d >= 1;
/// level 0 is delivered in the timestep of the spike without being stored.
/// Shifting the cascade at EOT is modeled as rotating the FIFO labels.
class SharedDelayQueue final : public DelayStructure {
public:
    SharedDelayQueue(WvuFilter filter, std::size_t capacity = default_queue_capacity,
            EventLayout layout = {});

    StructureKind kind() const override { return StructureKind::shared_delay_queue; }
    void push_spike(Address source) override;
    void drain(const DeliverySink &sink) override;
    void end_of_timestep() override;
    std::size_t stored() const override { return stored_; }

    /// Copies waiting in the FIFO that delivers `relative` timesteps from now.
    std::size_t fifo_size(std::size_t relative) const;

private:
    std::vector<std::deque<DeliveryRecord>> fifos_;
    std::vector<DeliveryRecord> immediate_;
    std::size_t head_ = 0;
    std::size_t stored_ = 0;
};

} // namespace delaysnn
