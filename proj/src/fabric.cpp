#include "delaysnn/fabric.hpp"

#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "delaysnn/oracle.hpp"

namespace delaysnn {

namespace {

/// Unbounded FIFO link between two cores. Pop blocks until a word arrives or
/// the producer closed the link.
class Link {
public:
    void push(const EventWord &word)
    {
        {
            std::lock_guard lock(mutex_);
            words_.push_back(word);
        }
        ready_.notify_one();
    }

    void close()
    {
        {
            std::lock_guard lock(mutex_);
            closed_ = true;
        }
        ready_.notify_all();
    }

    std::optional<EventWord> pop()
    {
        std::unique_lock lock(mutex_);
        ready_.wait(lock, [&] { return closed_ || !words_.empty(); });
        if (words_.empty())
            return std::nullopt;
        const EventWord word = words_.front();
        words_.pop_front();
        return word;
    }

private:
    std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<EventWord> words_;
    bool closed_ = false;
};

std::vector<EventWord> injector_words(const std::vector<Address> &spikes)
{
    std::vector<EventWord> words;
    words.reserve(spikes.size() + 1);
    for (const Address n : spikes)
        words.push_back(EventWord::spike(n));
    words.push_back(EventWord::end_of_timestep());
    return words;
}

} // namespace

std::string_view to_string(Scheduler scheduler)
{
    return scheduler == Scheduler::sequential ? "sequential" : "threaded";
}

Scheduler parse_scheduler(std::string_view text)
{
    if (text == "sequential")
        return Scheduler::sequential;
    if (text == "threaded")
        return Scheduler::threaded;
    throw std::invalid_argument("unknown scheduler '" + std::string(text) + "'");
}

Pipeline::Pipeline(const DelayNetwork &network, const RunOptions &options)
        : input_width_(network.input_width())
        , output_width_(network.output_width())
        , options_(options)
{
    if (options.kind == StructureKind::oracle)
        throw std::invalid_argument("the oracle is not an event pipeline; use run_inference");
    network.validate();
    CoreOptions core_options;
    core_options.kind = options.kind;
    core_options.capacity = options.capacity;
    core_options.record_membranes = options.record_membranes;
    core_options.record_deliveries = options.record_deliveries;
    core_options.record_queue_trace = options.record_queue_trace;
    for (std::size_t k = 0; k < network.layers.size(); ++k)
    {
        const LayerSpec &layer = network.layers[k];
        core_options.layout = options.layout;
        if (options.layout)
            options.layout->require_fits(layer.presyn_count(), layer.delay_levels());
        cores_.push_back(std::make_unique<NeuroCore>(layer, k, network.numeric, core_options));
    }
}

void Pipeline::run_sequential(const std::vector<std::vector<Address>> &input, Timestep duration)
{
    std::vector<EventWord> words;
    std::vector<EventWord> next;
    for (Timestep t = 0; t < duration; ++t)
    {
        words = injector_words(input[t]);
        for (auto &core : cores_)
        {
            next.clear();
            for (const EventWord &word : words)
                core->on_word(word, next);
            std::swap(words, next);
        }
    }
}

void Pipeline::run_threaded(const std::vector<std::vector<Address>> &input, Timestep duration)
{
    const std::size_t count = cores_.size();
    std::vector<Link> links(count);
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> workers;
    workers.reserve(count);

    for (std::size_t k = 0; k < count; ++k)
    {
        workers.emplace_back([&, k] {
            Link *downstream = k + 1 < count ? &links[k + 1] : nullptr;
            try
            {
                std::vector<EventWord> out;
                Timestep closed = 0;
                while (closed < duration)
                {
                    const auto word = links[k].pop();
                    if (!word)
                        break;
                    out.clear();
                    cores_[k]->on_word(*word, out);
                    if (word->eot)
                        ++closed;
                    if (downstream)
                        for (const EventWord &w : out)
                            downstream->push(w);
                }
            }
            catch (...)
            {
                errors[k] = std::current_exception();
            }
            if (downstream)
                downstream->close();
        });
    }

    for (Timestep t = 0; t < duration; ++t)
        for (const EventWord &word : injector_words(input[t]))
            links[0].push(word);
    links[0].close();

    for (auto &worker : workers)
        worker.join();
    for (const auto &error : errors)
        if (error)
            std::rethrow_exception(error);
}

InferenceResult Pipeline::run(const SpikeTrain &spikes)
{
    spikes.validate();
    if (spikes.width != input_width_)
        throw std::invalid_argument("spike train width " + std::to_string(spikes.width) +
                " does not match input layer width " + std::to_string(input_width_));
    if (cores_.front()->timestep() != 0)
        throw std::logic_error("pipeline already ran");

    const auto input = spikes.by_timestep();
    if (options_.scheduler == Scheduler::threaded)
        run_threaded(input, spikes.duration);
    else
        run_sequential(input, spikes.duration);

    InferenceResult result;
    result.kind = options_.kind;
    result.activity.duration = spikes.duration;
    for (auto &core : cores_)
    {
        CoreRecord record = core->take_record();
        result.activity.layers.push_back(LayerActivity{std::move(record.raster), std::move(record.membranes)});
        result.metrics.cores.push_back(std::move(record.metrics));
        if (options_.record_deliveries)
            result.deliveries.push_back(std::move(record.deliveries));
        if (options_.record_queue_trace)
            result.queue_traces.push_back(std::move(record.queue_trace));
    }
    finalize_readout(result.activity, output_width_);
    return result;
}

InferenceResult run_inference(const DelayNetwork &network, const SpikeTrain &spikes, const RunOptions &options)
{
    if (options.kind == StructureKind::oracle)
    {
        InferenceResult result;
        result.kind = StructureKind::oracle;
        result.activity = oracle_run(network, spikes);
        if (!options.record_membranes)
            for (auto &layer : result.activity.layers)
                layer.membranes.clear();
        return result;
    }
    Pipeline pipeline(network, options);
    return pipeline.run(spikes);
}

} // namespace delaysnn
