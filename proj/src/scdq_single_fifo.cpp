#include "delaysnn/scdq_single_fifo.hpp"

#include <algorithm>
#include <stdexcept>

namespace delaysnn {

ScdqSingleFifo::ScdqSingleFifo(WvuFilter filter, std::size_t capacity, EventLayout layout)
        : DelayStructure(std::move(filter), capacity, layout)
        , cohort_elapsed_(levels_, 0)
{
}

void ScdqSingleFifo::push_spike(Address source)
{
    check_source(source);
    if (filter_.row_empty(source))
    {
        ++stats_.dropped_at_entry;
        return;
    }
    if (fifo_.size() + 1 > capacity_)
        throw QueueOverflow("scdq-1fifo", capacity_);
    fifo_.push_back(Entry{source, static_cast<std::uint32_t>(timestep_ % levels_), false});
    ++stats_.entered;
    trace(source, static_cast<std::uint32_t>(levels_ - 1), QueueAction::enter);
    stats_.peak_stored = std::max(stats_.peak_stored, fifo_.size());
    note_occupancy(fifo_.size());
}

void ScdqSingleFifo::drain(const DeliverySink &sink)
{
    for (; read_pos_ < fifo_.size(); ++read_pos_)
    {
        Entry &entry = fifo_[read_pos_];
        const std::uint32_t delay = cohort_elapsed_[entry.cohort];
        const auto counter = static_cast<std::uint32_t>(levels_ - 1 - delay);
        if (filter_.forward(entry.source, delay))
        {
            ++stats_.delivered;
            trace(entry.source, counter, QueueAction::exit);
            sink(DeliveryRecord{entry.source, delay});
        }
        else
        {
            ++stats_.suppressed;
        }
        if (delay >= filter_.last_useful_delay(entry.source))
        {
            entry.retired = true;
            ++stats_.retired;
            trace(entry.source, counter, QueueAction::retire);
        }
        else
        {
            trace(entry.source, counter - 1, QueueAction::requeue);
        }
    }
}

void ScdqSingleFifo::end_of_timestep()
{
    if (read_pos_ != fifo_.size())
        throw std::logic_error("scdq-1fifo: end_of_timestep before the FIFO was read");
    std::erase_if(fifo_, [](const Entry &e) { return e.retired; });
    read_pos_ = 0;
    for (std::uint32_t &elapsed : cohort_elapsed_)
        ++elapsed;
    ++timestep_;
    // The cohort slot being reused belonged to spikes of timestep t - L,
    // which reached delay L - 1 and retired in the pass just finished.
    cohort_elapsed_[timestep_ % levels_] = 0;
}

} // namespace delaysnn
