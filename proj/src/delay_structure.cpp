#include "delaysnn/delay_structure.hpp"

#include <algorithm>
#include <stdexcept>

#include "delaysnn/scdq.hpp"
#include "delaysnn/scdq_single_fifo.hpp"
#include "delaysnn/shared_delay_queue.hpp"

namespace delaysnn {

std::string_view to_string(StructureKind kind)
{
    switch (kind)
    {
    case StructureKind::scdq:
        return "scdq";
    case StructureKind::scdq_single_fifo:
        return "scdq-1fifo";
    case StructureKind::shared_delay_queue:
        return "shared-delay-queue";
    case StructureKind::ring_buffer:
        return "ring-buffer";
    case StructureKind::oracle:
        return "oracle";
    }
    return "?";
}

StructureKind parse_structure_kind(std::string_view text)
{
    for (const StructureKind kind : {StructureKind::scdq, StructureKind::scdq_single_fifo,
                 StructureKind::shared_delay_queue, StructureKind::ring_buffer, StructureKind::oracle})
    {
        if (text == to_string(kind))
            return kind;
    }
    if (text == "sdq")
        return StructureKind::shared_delay_queue;
    throw std::invalid_argument("unknown structure kind '" + std::string(text) + "'");
}

std::string_view to_string(QueueAction action)
{
    switch (action)
    {
    case QueueAction::enter:
        return "enter";
    case QueueAction::exit:
        return "exit";
    case QueueAction::requeue:
        return "requeue";
    case QueueAction::retire:
        return "retire";
    }
    return "?";
}

DelayStructure::DelayStructure(WvuFilter filter, std::size_t capacity, EventLayout layout)
        : filter_(std::move(filter))
        , capacity_(capacity)
        , layout_(layout)
        , levels_(filter_.delay_levels())
{
    if (levels_ < 1 || filter_.presyn() < 1)
        throw std::invalid_argument("delay structure needs at least one neuron and one delay level");
    layout_.require_fits(filter_.presyn(), levels_);
}

void DelayStructure::check_source(Address source) const
{
    if (source >= filter_.presyn())
        throw std::out_of_range("spike source " + std::to_string(source) + " outside " +
                std::to_string(filter_.presyn()) + " presyn neurons");
}

void DelayStructure::trace(Address source, std::uint32_t counter, QueueAction action) const
{
    if (trace_)
        trace_(QueueTraceRecord{timestep_, source, counter,
                static_cast<std::uint32_t>(levels_ - 1 - counter), action});
}

void DelayStructure::note_occupancy(std::size_t footprint)
{
    stats_.peak_footprint = std::max(stats_.peak_footprint, footprint);
}

std::unique_ptr<DelayStructure> make_delay_structure(StructureKind kind, WvuFilter filter,
        std::size_t capacity, EventLayout layout)
{
    switch (kind)
    {
    case StructureKind::scdq:
        return std::make_unique<Scdq>(std::move(filter), capacity, layout);
    case StructureKind::scdq_single_fifo:
        return std::make_unique<ScdqSingleFifo>(std::move(filter), capacity, layout);
    case StructureKind::shared_delay_queue:
        return std::make_unique<SharedDelayQueue>(std::move(filter), capacity, layout);
    case StructureKind::ring_buffer:
    case StructureKind::oracle:
        break;
    }
    throw std::invalid_argument(std::string(to_string(kind)) + " is not an event delay structure");
}

} // namespace delaysnn
