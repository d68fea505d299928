#include "delaysnn/neuro_core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "delaysnn/errors.hpp"
#include "delaysnn/scdq.hpp"

namespace delaysnn {

bool lif_update(Potential &v, const LifParams &lif, const NumericPolicy &numeric)
{
    // Arithmetic shift floors, also for negative potentials.
    const std::int64_t decayed = (std::int64_t{v} * lif.decay_q16) >> LifParams::decay_shift;
    if (decayed < numeric.accumulator_min() || decayed > numeric.accumulator_max())
        throw AccumulatorOverflow("membrane decay left accumulator range");
    v = static_cast<Potential>(decayed);
    if (v < lif.threshold)
        return false;
    v = lif.reset == ResetMode::to_zero ? 0 : v - lif.threshold;
    return true;
}

NeuroCore::NeuroCore(const LayerSpec &layer, std::size_t layer_index, const NumericPolicy &numeric,
        const CoreOptions &options)
        : layer_index_(layer_index)
        , weights_(std::make_shared<const WeightTensor>(layer.weights))
        , lif_(layer.lif)
        , numeric_(numeric)
        , options_(options)
        , membranes_(layer.postsyn_count(), 0)
{
    CoreMetrics &m = record_.metrics;
    m.layer = layer_index;
    m.kind = options.kind;
    m.presyn = layer.presyn_count();
    m.postsyn = layer.postsyn_count();
    m.delay_levels = layer.delay_levels();
    m.capacity = options.capacity;

    if (options.kind == StructureKind::ring_buffer)
    {
        ring_buffer_ = std::make_unique<RingBuffer>(weights_, numeric_);
        m.ring_buffer_slots = ring_buffer_->slot_count();
        return;
    }
    const EventLayout layout = options.layout.value_or(
            EventLayout::fit(layer.presyn_count(), layer.delay_levels()));
    structure_ = make_delay_structure(options.kind, build_filter(layer.weights), options.capacity, layout);
    if (options.record_queue_trace)
    {
        structure_->set_trace([this](const QueueTraceRecord &r) { record_.queue_trace.push_back(r); });
    }
}

void NeuroCore::receive(const DeliveryRecord &delivery)
{
    if (delivery.source >= weights_->presyn() || delivery.delay >= weights_->delay_levels())
        throw std::out_of_range("delivery outside layer " + std::to_string(layer_index_));
    CoreMetrics &m = record_.metrics;
    ++m.deliveries;
    const auto slice = weights_->slice(delivery.delay, delivery.source);
    for (std::size_t j = 0; j < slice.size(); ++j)
    {
        if (slice[j] == 0)
        {
            ++m.macs_skipped;
            continue;
        }
        const std::int64_t sum = std::int64_t{membranes_[j]} + slice[j];
        if (sum < numeric_.accumulator_min() || sum > numeric_.accumulator_max())
            throw AccumulatorOverflow("layer " + std::to_string(layer_index_) + " neuron " +
                    std::to_string(j) + ": membrane overflowed " +
                    std::to_string(numeric_.accumulator_bits) + " bits");
        membranes_[j] = static_cast<Potential>(sum);
        ++m.macs_performed;
    }
    if (options_.record_deliveries)
        step_deliveries_.push_back(delivery);
}

std::vector<Address> NeuroCore::end_of_timestep()
{
    std::vector<Address> fired;
    for (std::size_t j = 0; j < membranes_.size(); ++j)
    {
        if (lif_update(membranes_[j], lif_, numeric_))
            fired.push_back(static_cast<Address>(j));
    }
    ++timestep_;
    return fired;
}

void NeuroCore::on_word(const EventWord &word, std::vector<EventWord> &out)
{
    if (!word.eot)
    {
        ++spikes_this_step_;
        if (ring_buffer_)
            ring_buffer_->push_spike(word.source);
        else
            structure_->push_spike(word.source);
        return;
    }
    close_timestep(out);
}

void NeuroCore::close_timestep(std::vector<EventWord> &out)
{
    CoreMetrics &m = record_.metrics;
    if (ring_buffer_)
    {
        const std::vector<Potential> input = ring_buffer_->end_of_timestep();
        for (std::size_t j = 0; j < input.size(); ++j)
        {
            const std::int64_t sum = std::int64_t{membranes_[j]} + input[j];
            if (sum < numeric_.accumulator_min() || sum > numeric_.accumulator_max())
                throw AccumulatorOverflow("layer " + std::to_string(layer_index_) + " neuron " +
                        std::to_string(j) + ": membrane overflowed");
            membranes_[j] = static_cast<Potential>(sum);
        }
        m.macs_performed = ring_buffer_->adds_performed();
        m.macs_skipped = ring_buffer_->adds_skipped();
    }
    else
    {
        structure_->drain([this](const DeliveryRecord &r) { receive(r); });
        structure_->end_of_timestep();
        m.queue = structure_->stats();
        if (const auto *scdq = dynamic_cast<const Scdq *>(structure_.get()))
        {
            m.peak_prq = scdq->peak_prq();
            m.peak_poq = scdq->peak_poq();
        }
    }

    m.presyn_spikes.push_back(spikes_this_step_);
    m.max_presyn_spikes = std::max(m.max_presyn_spikes, spikes_this_step_);
    spikes_this_step_ = 0;

    std::vector<Address> fired = end_of_timestep();
    for (const Address j : fired)
        out.push_back(EventWord::spike(j));
    out.push_back(EventWord::end_of_timestep());

    if (options_.record_membranes)
        record_.membranes.push_back(membranes_);
    if (options_.record_deliveries)
    {
        record_.deliveries.push_back(std::move(step_deliveries_));
        step_deliveries_.clear();
    }
    record_.raster.push_back(std::move(fired));
}

CoreRecord NeuroCore::take_record()
{
    CoreRecord taken = std::move(record_);
    record_ = CoreRecord{};
    record_.metrics = taken.metrics;
    return taken;
}

} // namespace delaysnn
