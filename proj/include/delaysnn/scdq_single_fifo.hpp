#pragma once

#include <cstdint>
#include <vector>

#include "delaysnn/delay_structure.hpp"

namespace delaysnn {

/// Single-FIFO variant of the shared circular delay queue.
///
/// Each live event is stored once, tagged with the cohort (spawn timestep
/// modulo L) it belongs to instead of its own counter. L shared cohort
/// counters hold the elapsed delay of every cohort and are the only state
/// advanced at EOT. A read pass per timestep visits every stored event;
/// events whose delay tag is not useful are skipped, and events that have
/// reached their last useful delay are retired, their slots reclaimed by
/// moving the read/write pointers at EOT.
class ScdqSingleFifo final : public DelayStructure {
public:
    ScdqSingleFifo(WvuFilter filter, std::size_t capacity = default_queue_capacity,
            EventLayout layout = {});

    StructureKind kind() const override { return StructureKind::scdq_single_fifo; }
    void push_spike(Address source) override;
    void drain(const DeliverySink &sink) override;
    void end_of_timestep() override;
    std::size_t stored() const override { return fifo_.size(); }

    const std::vector<std::uint32_t> &cohort_counters() const { return cohort_elapsed_; }

private:
    struct Entry {
        Address source;
        std::uint32_t cohort;
        bool retired;
    };

    std::vector<Entry> fifo_;
    std::size_t read_pos_ = 0;
    std::vector<std::uint32_t> cohort_elapsed_;
};

} // namespace delaysnn
