#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "delaysnn/delay_structure.hpp"

namespace delaysnn {

struct CoreMetrics;

/// Parameters of the closed-form memory models. alpha is the maximum
/// per-timestep activation density of the presynaptic layer (1 = every
/// presynaptic neuron fires).
struct MemoryParams {
    std::uint64_t presyn = 0;       // I
    std::uint64_t postsyn = 0;      // J
    std::uint64_t delay_levels = 0; // L
    double alpha = 1.0;
    unsigned event_bits = 16;
    unsigned weight_bits = 16;

    void validate() const;
};

/// True for the event-carrying structures whose memory scales with alpha.
bool alpha_dependent(StructureKind kind);

/// Worst-case stored events (slots for the ring buffer), rounded up:
///   shared delay queue  alpha * I * (L^2 + L) / 2
///   scdq                alpha * I * (2L - 1)
///   scdq-1fifo          alpha * I * L
///   ring buffer         J * L
std::uint64_t memory_events(StructureKind kind, const MemoryParams &params);

/// memory_events times event_bits, or times weight_bits for the ring buffer.
std::uint64_t memory_bits(StructureKind kind, const MemoryParams &params);

/// Largest alpha on a 0.001 grid for which the alpha-dependent kind needs no
/// more bits than the other. Exactly one of the two kinds must depend on alpha.
double crossover_alpha(StructureKind kind_a, StructureKind kind_b, const MemoryParams &params);

struct ScalingRow {
    std::uint64_t neurons = 0; // I = J
    std::uint64_t delay_levels = 0;
    std::uint64_t sdq_events = 0;
    std::uint64_t scdq_events = 0;
    std::uint64_t scdq_1fifo_events = 0;
    std::uint64_t ring_buffer_slots = 0;
};

/// Worst case (alpha = 1, no pruning) for two fully connected layers of
/// `neurons` neurons each, every combination of the two integer ranges.
std::vector<ScalingRow> scaling_sweep(std::uint64_t l_first, std::uint64_t l_last, std::uint64_t l_step,
        std::uint64_t n_first, std::uint64_t n_last, std::uint64_t n_step);

void write_scaling_csv(std::ostream &out, const std::vector<ScalingRow> &rows);

struct MemoryRow {
    StructureKind kind;
    MemoryParams params;
    std::uint64_t events;
    std::uint64_t bits;
};

MemoryRow memory_row(StructureKind kind, const MemoryParams &params);
void write_memory_csv(std::ostream &out, const std::vector<MemoryRow> &rows);
void write_memory_table(std::ostream &out, const std::vector<MemoryRow> &rows);

/// Formula prediction for a simulated core, using its measured alpha.
std::uint64_t predicted_events(const CoreMetrics &metrics);

} // namespace delaysnn
