#include "delaysnn/scdq.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace delaysnn {

Scdq::Scdq(WvuFilter filter, std::size_t capacity, EventLayout layout)
        : DelayStructure(std::move(filter), capacity, layout)
{
}

void Scdq::push_spike(Address source)
{
    check_source(source);
    if (filter_.row_empty(source))
    {
        ++stats_.dropped_at_entry;
        return;
    }
    if (stored() + 1 > capacity_)
        throw QueueOverflow("scdq", capacity_);
    const auto counter = static_cast<std::uint32_t>(levels_ - 1);
    prq_.push_back(EventWord::spike(source, counter));
    ++stats_.entered;
    trace(source, counter, QueueAction::enter);
    update_peaks();
}

bool Scdq::process_front(const DeliverySink &sink)
{
    const EventWord word = prq_.front();
    prq_.pop_front();
    if (word.eot)
        return false;

    const auto delay = static_cast<std::uint32_t>(levels_ - 1 - word.counter);
    if (filter_.forward(word.source, delay))
    {
        ++stats_.delivered;
        trace(word.source, word.counter, QueueAction::exit);
        sink(DeliveryRecord{word.source, delay});
    }
    else
    {
        ++stats_.suppressed;
    }

    if (filter_.retain(word.source, word.counter))
    {
        poq_.push_back(EventWord::spike(word.source, word.counter - 1));
        trace(word.source, word.counter - 1, QueueAction::requeue);
        update_peaks();
    }
    else
    {
        ++stats_.retired;
        trace(word.source, word.counter, QueueAction::retire);
    }
    return true;
}

void Scdq::drain(const DeliverySink &sink)
{
    while (!prq_.empty())
        process_front(sink);
}

void Scdq::end_of_timestep()
{
    if (!prq_.empty())
        throw std::logic_error("scdq: end_of_timestep before the PRQ was drained");
    // The EOT word travels through the PRQ; intercepting it at the output
    // triggers the buffer swap.
    prq_.push_back(EventWord::end_of_timestep());
    const bool was_spike = process_front([](const DeliveryRecord &) {});
    if (was_spike)
        throw std::logic_error("scdq: EOT word lost in PRQ");
    std::swap(prq_, poq_);
    ++timestep_;
    update_peaks();
}

void Scdq::update_peaks()
{
    peak_prq_ = std::max(peak_prq_, prq_.size());
    peak_poq_ = std::max(peak_poq_, poq_.size());
    stats_.peak_stored = std::max(stats_.peak_stored, stored());
    note_occupancy(peak_prq_ + peak_poq_);
}

} // namespace delaysnn
