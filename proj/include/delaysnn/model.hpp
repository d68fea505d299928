#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace delaysnn {

using Weight = std::int16_t;
using Potential = std::int32_t;
using Address = std::uint32_t;
using Timestep = std::uint32_t;

/// Fixed-point widths shared by a whole network. Weights are stored in 16 bits
/// at most and membrane accumulators in 32 bits at most; frac_bits only records
/// the scale a user should apply to interpret raw integers as real values.
struct NumericPolicy {
    unsigned weight_bits = 16;
    unsigned accumulator_bits = 32;
    unsigned frac_bits = 8;

    std::int64_t weight_min() const { return -(std::int64_t{1} << (weight_bits - 1)); }
    std::int64_t weight_max() const { return (std::int64_t{1} << (weight_bits - 1)) - 1; }
    std::int64_t accumulator_min() const { return -(std::int64_t{1} << (accumulator_bits - 1)); }
    std::int64_t accumulator_max() const { return (std::int64_t{1} << (accumulator_bits - 1)) - 1; }

    void validate() const;
    bool operator==(const NumericPolicy &) const = default;
};

enum class ResetMode { to_zero, subtract_threshold };

std::string_view to_string(ResetMode mode);
ResetMode parse_reset_mode(std::string_view text);

/// Decay is a Q16 factor: 0 means full leak, 65536 means no leak.
struct LifParams {
    static constexpr unsigned decay_shift = 16;
    static constexpr std::uint32_t decay_one = 1u << decay_shift;

    std::uint32_t decay_q16 = decay_one;
    Potential threshold = 1;
    ResetMode reset = ResetMode::to_zero;

    void validate() const;
    bool operator==(const LifParams &) const = default;
};

/// Dense L x I x J weight volume, d-major then i then j.
class WeightTensor {
public:
    WeightTensor() = default;
    WeightTensor(std::size_t delay_levels, std::size_t presyn, std::size_t postsyn);
    WeightTensor(std::size_t delay_levels, std::size_t presyn, std::size_t postsyn,
            std::vector<Weight> values);

    std::size_t delay_levels() const { return levels_; }
    std::size_t presyn() const { return presyn_; }
    std::size_t postsyn() const { return postsyn_; }

    Weight at(std::size_t d, std::size_t i, std::size_t j) const
    {
        return values_[index(d, i, j)];
    }
    Weight &at(std::size_t d, std::size_t i, std::size_t j)
    {
        return values_[index(d, i, j)];
    }

    /// Weights from presyn i at delay d onto every postsyn neuron.
    std::span<const Weight> slice(std::size_t d, std::size_t i) const
    {
        return {values_.data() + index(d, i, 0), postsyn_};
    }

    std::span<const Weight> values() const { return values_; }
    std::span<Weight> values() { return values_; }

    bool operator==(const WeightTensor &) const = default;

private:
    std::size_t index(std::size_t d, std::size_t i, std::size_t j) const
    {
        return (d * presyn_ + i) * postsyn_ + j;
    }

    std::size_t levels_ = 0;
    std::size_t presyn_ = 0;
    std::size_t postsyn_ = 0;
    std::vector<Weight> values_;
};

/// One projection: presyn population -> postsyn population through L delay levels.
struct LayerSpec {
    WeightTensor weights;
    LifParams lif;

    std::size_t presyn_count() const { return weights.presyn(); }
    std::size_t postsyn_count() const { return weights.postsyn(); }
    std::size_t delay_levels() const { return weights.delay_levels(); }

    bool operator==(const LayerSpec &) const = default;
};

struct DelayNetwork {
    std::vector<LayerSpec> layers;
    NumericPolicy numeric;

    std::size_t input_width() const { return layers.empty() ? 0 : layers.front().presyn_count(); }
    std::size_t output_width() const { return layers.empty() ? 0 : layers.back().postsyn_count(); }

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;

    bool operator==(const DelayNetwork &) const = default;
};

struct SpikeEvent {
    Timestep t = 0;
    Address neuron = 0;
    bool operator==(const SpikeEvent &) const = default;
};

struct SpikeTrain {
    Timestep duration = 0;
    std::size_t width = 0;
    std::vector<SpikeEvent> events;

    /// Sorted by t, in range, no neuron twice within one timestep.
    void validate() const;

    /// Events grouped per timestep, preserving order within a timestep.
    std::vector<std::vector<Address>> by_timestep() const;

    bool operator==(const SpikeTrain &) const = default;
};

/// Binary I x L matrix; entry (i, d) is set iff presyn i has a nonzero weight
/// at delay d towards some postsyn neuron.
class WvuMatrix {
public:
    WvuMatrix() = default;
    WvuMatrix(std::size_t presyn, std::size_t delay_levels);

    std::size_t presyn() const { return presyn_; }
    std::size_t delay_levels() const { return levels_; }

    bool at(std::size_t i, std::size_t d) const { return bits_[i * levels_ + d] != 0; }
    void set(std::size_t i, std::size_t d, bool useful) { bits_[i * levels_ + d] = useful ? 1 : 0; }

    std::size_t row_popcount(std::size_t i) const;

    bool operator==(const WvuMatrix &) const = default;

private:
    std::size_t presyn_ = 0;
    std::size_t levels_ = 0;
    std::vector<std::uint8_t> bits_;
};

WvuMatrix derive_wvu(const WeightTensor &weights);

/// Keeps, for every (i, j) pair, the keep_k largest-magnitude levels.
/// Equal magnitudes keep the smaller d.
WeightTensor prune_per_synapse(const WeightTensor &weights, std::size_t keep_k);

/// Keeps, for every presyn i, the keep_k delay levels with the largest L1 mass
/// over j and zeroes the rest. Equal scores keep the smaller d.
WeightTensor prune_per_axon(const WeightTensor &weights, std::size_t keep_k);

/// Zeroes every delay level d with d % stride != 0.
WeightTensor apply_delay_stride(const WeightTensor &weights, std::size_t stride);

} // namespace delaysnn
