#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "delaysnn/errors.hpp"
#include "delaysnn/event_word.hpp"
#include "delaysnn/model.hpp"
#include "delaysnn/pruning_filter.hpp"

namespace delaysnn {

/// Delay mechanisms that can sit in front of a neuron core. `oracle` is not
/// a structure; it selects the dense reference evaluation in the fabric.
enum class StructureKind { scdq, scdq_single_fifo, shared_delay_queue, ring_buffer, oracle };

std::string_view to_string(StructureKind kind);
StructureKind parse_structure_kind(std::string_view text);

inline constexpr std::size_t default_queue_capacity = 2048;

/// A spike of `source` reaching the postsynaptic core `delay` timesteps after it fired.
struct DeliveryRecord {
    Address source = 0;
    std::uint32_t delay = 0;

    bool operator==(const DeliveryRecord &) const = default;
    auto operator<=>(const DeliveryRecord &) const = default;
};

using DeliverySink = std::function<void(const DeliveryRecord &)>;

enum class QueueAction { enter, exit, requeue, retire };

std::string_view to_string(QueueAction action);

struct QueueTraceRecord {
    Timestep timestep = 0;
    Address source = 0;
    std::uint32_t counter = 0;   // remaining count, (L - 1) - delay_tag
    std::uint32_t delay_tag = 0; // timesteps since the spike
    QueueAction action = QueueAction::enter;

    bool operator==(const QueueTraceRecord &) const = default;
};

using QueueTraceSink = std::function<void(const QueueTraceRecord &)>;

struct QueueStats {
    std::size_t peak_stored = 0;    // max simultaneous events in the structure
    std::size_t peak_footprint = 0; // memory the structure had to provide
    std::uint64_t entered = 0;
    std::uint64_t dropped_at_entry = 0; // spikes of all-zero WVU rows
    std::uint64_t delivered = 0;
    std::uint64_t suppressed = 0; // exits blocked by the filter
    std::uint64_t retired = 0;
};

/// Event-carrying delay structure. Per timestep the owner calls push_spike
/// for every presynaptic spike, drain to collect the deliveries due now, and
/// end_of_timestep to advance. A spike of i pushed at timestep t yields
/// exactly one DeliveryRecord (i, d) at timestep t + d for each d with
/// WVU[i][d] = 1.
class DelayStructure {
public:
    virtual ~DelayStructure() = default;

    virtual StructureKind kind() const = 0;
    virtual void push_spike(Address source) = 0;
    virtual void drain(const DeliverySink &sink) = 0;
    /// Requires a preceding drain; throws std::logic_error otherwise.
    virtual void end_of_timestep() = 0;
    virtual std::size_t stored() const = 0;

    const QueueStats &stats() const { return stats_; }
    Timestep timestep() const { return timestep_; }
    std::size_t capacity() const { return capacity_; }
    const WvuFilter &filter() const { return filter_; }
    void set_trace(QueueTraceSink sink) { trace_ = std::move(sink); }

protected:
    DelayStructure(WvuFilter filter, std::size_t capacity, EventLayout layout);

    void check_source(Address source) const;
    void trace(Address source, std::uint32_t counter, QueueAction action) const;
    void note_occupancy(std::size_t footprint);

    WvuFilter filter_;
    std::size_t capacity_;
    EventLayout layout_;
    std::size_t levels_;
    Timestep timestep_ = 0;
    QueueStats stats_;
    QueueTraceSink trace_;
};

std::unique_ptr<DelayStructure> make_delay_structure(StructureKind kind, WvuFilter filter,
        std::size_t capacity = default_queue_capacity, EventLayout layout = {});

} // namespace delaysnn
