#include "delaysnn/shared_delay_queue.hpp"

#include <algorithm>
#include <stdexcept>

namespace delaysnn {

SharedDelayQueue::SharedDelayQueue(WvuFilter filter, std::size_t capacity, EventLayout layout)
        : DelayStructure(std::move(filter), capacity, layout)
        , fifos_(levels_)
{
}

std::size_t SharedDelayQueue::fifo_size(std::size_t relative) const
{
    return fifos_.at((head_ + relative) % levels_).size();
}

void SharedDelayQueue::push_spike(Address source)
{
    check_source(source);
    if (filter_.row_empty(source))
    {
        ++stats_.dropped_at_entry;
        return;
    }
    const std::size_t copies = filter_.wvu().row_popcount(source) - (filter_.forward(source, 0) ? 1 : 0);
    if (stored_ + copies > capacity_)
        throw QueueOverflow("shared-delay-queue", capacity_);

    ++stats_.entered;
    trace(source, static_cast<std::uint32_t>(levels_ - 1), QueueAction::enter);
    if (filter_.forward(source, 0))
        immediate_.push_back(DeliveryRecord{source, 0});
    for (std::size_t d = 1; d < levels_; ++d)
    {
        if (filter_.forward(source, d))
            fifos_[(head_ + d) % levels_].push_back(DeliveryRecord{source, static_cast<std::uint32_t>(d)});
    }
    stored_ += copies;
    stats_.peak_stored = std::max(stats_.peak_stored, stored_);
    note_occupancy(stored_);
}

void SharedDelayQueue::drain(const DeliverySink &sink)
{
    auto &due = fifos_[head_];
    const auto emit = [&](const DeliveryRecord &record) {
        ++stats_.delivered;
        const auto counter = static_cast<std::uint32_t>(levels_ - 1 - record.delay);
        trace(record.source, counter, QueueAction::exit);
        if (record.delay == filter_.last_useful_delay(record.source))
        {
            ++stats_.retired;
            trace(record.source, counter, QueueAction::retire);
        }
        sink(record);
    };
    while (!due.empty())
    {
        const DeliveryRecord record = due.front();
        due.pop_front();
        --stored_;
        emit(record);
    }
    for (const DeliveryRecord &record : immediate_)
        emit(record);
    immediate_.clear();
}

void SharedDelayQueue::end_of_timestep()
{
    if (!fifos_[head_].empty() || !immediate_.empty())
        throw std::logic_error("shared-delay-queue: end_of_timestep before the due FIFO was drained");
    head_ = (head_ + 1) % levels_;
    ++timestep_;
}

} // namespace delaysnn
