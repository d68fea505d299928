#include "delaysnn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "delaysnn/neuro_core.hpp"

namespace delaysnn {

namespace {

// Events per unit of alpha * I.
std::uint64_t per_active_neuron(StructureKind kind, std::uint64_t levels)
{
    switch (kind)
    {
    case StructureKind::shared_delay_queue:
        return levels * (levels + 1) / 2;
    case StructureKind::scdq:
        return levels == 0 ? 0 : 2 * levels - 1;
    case StructureKind::scdq_single_fifo:
        return levels;
    default:
        throw std::invalid_argument(std::string(to_string(kind)) + " has no per-event memory model");
    }
}

std::uint64_t ceil_events(double value)
{
    // Absorbs representation error of products such as 0.1 * 30.
    const double slack = 1e-9 * std::max(1.0, value);
    return static_cast<std::uint64_t>(std::ceil(value - slack));
}

std::string format_alpha(double alpha)
{
    std::ostringstream out;
    out << std::setprecision(6) << alpha;
    return out.str();
}

} // namespace

void MemoryParams::validate() const
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1]");
}

bool alpha_dependent(StructureKind kind)
{
    switch (kind)
    {
    case StructureKind::shared_delay_queue:
    case StructureKind::scdq:
    case StructureKind::scdq_single_fifo:
        return true;
    case StructureKind::ring_buffer:
        return false;
    case StructureKind::oracle:
        break;
    }
    throw std::invalid_argument("oracle has no memory model");
}

std::uint64_t memory_events(StructureKind kind, const MemoryParams &params)
{
    params.validate();
    if (!alpha_dependent(kind))
        return params.postsyn * params.delay_levels;
    const double active = params.alpha * static_cast<double>(params.presyn);
    return ceil_events(active * static_cast<double>(per_active_neuron(kind, params.delay_levels)));
}

std::uint64_t memory_bits(StructureKind kind, const MemoryParams &params)
{
    const std::uint64_t events = memory_events(kind, params);
    return events * (alpha_dependent(kind) ? params.event_bits : params.weight_bits);
}

double crossover_alpha(StructureKind kind_a, StructureKind kind_b, const MemoryParams &params)
{
    const bool a_dep = alpha_dependent(kind_a);
    const bool b_dep = alpha_dependent(kind_b);
    if (a_dep == b_dep)
        throw std::invalid_argument("crossover needs exactly one alpha-dependent kind");
    const StructureKind dependent = a_dep ? kind_a : kind_b;
    const StructureKind fixed = a_dep ? kind_b : kind_a;

    MemoryParams p = params;
    p.alpha = 0.0;
    const std::uint64_t budget = memory_bits(fixed, p);
    // Bits grow monotonically in alpha, so the answer is the last grid point that fits.
    int best = 0;
    for (int step = 0; step <= 1000; ++step)
    {
        p.alpha = step / 1000.0;
        if (memory_bits(dependent, p) > budget)
            break;
        best = step;
    }
    return best / 1000.0;
}

std::vector<ScalingRow> scaling_sweep(std::uint64_t l_first, std::uint64_t l_last, std::uint64_t l_step,
        std::uint64_t n_first, std::uint64_t n_last, std::uint64_t n_step)
{
    if (l_step == 0 || n_step == 0 || l_first > l_last || n_first > n_last)
        throw std::invalid_argument("scaling sweep needs non-empty ranges with positive steps");
    std::vector<ScalingRow> rows;
    for (std::uint64_t n = n_first; n <= n_last; n += n_step)
    {
        for (std::uint64_t l = l_first; l <= l_last; l += l_step)
        {
            const MemoryParams p{n, n, l, 1.0};
            rows.push_back(ScalingRow{n, l, memory_events(StructureKind::shared_delay_queue, p),
                    memory_events(StructureKind::scdq, p),
                    memory_events(StructureKind::scdq_single_fifo, p),
                    memory_events(StructureKind::ring_buffer, p)});
        }
    }
    return rows;
}

void write_scaling_csv(std::ostream &out, const std::vector<ScalingRow> &rows)
{
    out << "neurons,L,sdq_events,scdq_events,scdq_1fifo_events,ring_buffer_slots,sdq_over_scdq\n";
    for (const ScalingRow &row : rows)
    {
        out << row.neurons << ',' << row.delay_levels << ',' << row.sdq_events << ','
            << row.scdq_events << ',' << row.scdq_1fifo_events << ',' << row.ring_buffer_slots << ',';
        if (row.scdq_events)
            out << std::fixed << std::setprecision(6)
                << static_cast<double>(row.sdq_events) / static_cast<double>(row.scdq_events)
                << std::defaultfloat;
        out << '\n';
    }
}

MemoryRow memory_row(StructureKind kind, const MemoryParams &params)
{
    return MemoryRow{kind, params, memory_events(kind, params), memory_bits(kind, params)};
}

void write_memory_csv(std::ostream &out, const std::vector<MemoryRow> &rows)
{
    out << "kind,I,J,L,alpha,events,bits\n";
    for (const MemoryRow &row : rows)
    {
        out << to_string(row.kind) << ',' << row.params.presyn << ',' << row.params.postsyn << ','
            << row.params.delay_levels << ',' << format_alpha(row.params.alpha) << ',' << row.events
            << ',' << row.bits << '\n';
    }
}

void write_memory_table(std::ostream &out, const std::vector<MemoryRow> &rows)
{
    out << std::left << std::setw(20) << "kind" << std::right << std::setw(7) << "I" << std::setw(7)
        << "J" << std::setw(6) << "L" << std::setw(8) << "alpha" << std::setw(12) << "events"
        << std::setw(12) << "bits" << '\n';
    for (const MemoryRow &row : rows)
    {
        out << std::left << std::setw(20) << to_string(row.kind) << std::right << std::setw(7)
            << row.params.presyn << std::setw(7) << row.params.postsyn << std::setw(6)
            << row.params.delay_levels << std::setw(8) << format_alpha(row.params.alpha)
            << std::setw(12) << row.events << std::setw(12) << row.bits << '\n';
    }
}

std::uint64_t predicted_events(const CoreMetrics &metrics)
{
    if (metrics.kind == StructureKind::ring_buffer)
        return metrics.postsyn * metrics.delay_levels;
    // alpha_measured * I is exactly the largest per-timestep spike count.
    return std::uint64_t{metrics.max_presyn_spikes} * per_active_neuron(metrics.kind, metrics.delay_levels);
}

} // namespace delaysnn
