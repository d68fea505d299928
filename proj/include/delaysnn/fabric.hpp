#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "delaysnn/activity.hpp"
#include "delaysnn/model.hpp"
#include "delaysnn/neuro_core.hpp"

namespace delaysnn {

enum class Scheduler { sequential, threaded };

std::string_view to_string(Scheduler scheduler);
Scheduler parse_scheduler(std::string_view text);

struct RunOptions {
    StructureKind kind = StructureKind::scdq;
    std::size_t capacity = default_queue_capacity;
    std::optional<EventLayout> layout;
    Scheduler scheduler = Scheduler::sequential;
    bool record_membranes = true;
    bool record_deliveries = false;
    bool record_queue_trace = false;
};

struct RunMetrics {
    std::vector<CoreMetrics> cores;
};

struct InferenceResult {
    StructureKind kind = StructureKind::scdq;
    NetworkActivity activity;
    RunMetrics metrics;
    std::vector<std::vector<std::vector<DeliveryRecord>>> deliveries; // [core][t]
    std::vector<std::vector<QueueTraceRecord>> queue_traces;          // [core]
};

/// One core per projection, connected in a line. The input injector sends
/// the spikes of timestep t followed by one EOT word; each core forwards its
/// own spikes and a regenerated EOT after thresholding.
class Pipeline {
public:
    Pipeline(const DelayNetwork &network, const RunOptions &options);

    InferenceResult run(const SpikeTrain &spikes);

    std::size_t core_count() const { return cores_.size(); }

private:
    void run_sequential(const std::vector<std::vector<Address>> &input, Timestep duration);
    void run_threaded(const std::vector<std::vector<Address>> &input, Timestep duration);

    std::size_t input_width_;
    std::size_t output_width_;
    RunOptions options_;
    std::vector<std::unique_ptr<NeuroCore>> cores_;
};

/// Event-driven run with the chosen structure; StructureKind::oracle routes
/// to the dense reference and returns no metrics.
InferenceResult run_inference(const DelayNetwork &network, const SpikeTrain &spikes,
        const RunOptions &options = {});

} // namespace delaysnn
