#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "delaysnn/model.hpp"

namespace delaysnn {

/// AER packet extended with an end-of-timestep flag and a delay counter.
struct EventWord {
    bool eot = false;
    Address source = 0;
    std::uint32_t counter = 0;

    static EventWord spike(Address source, std::uint32_t counter = 0) { return {false, source, counter}; }
    static EventWord end_of_timestep() { return {true, 0, 0}; }

    bool operator==(const EventWord &) const = default;
};

/// Bit layout of an EventWord: EOT flag in the top bit, then the source
/// address, then the counter in the low bits. The default is the 16-bit
/// layout (bit 15 EOT, bits 14..6 source, bits 5..0 counter).
struct EventLayout {
    unsigned addr_bits = 9;
    unsigned counter_bits = 6;

    unsigned total_bits() const { return 1 + addr_bits + counter_bits; }
    std::size_t byte_width() const { return (total_bits() + 7) / 8; }

    std::uint64_t max_addresses() const { return std::uint64_t{1} << addr_bits; }
    std::uint64_t max_delay_levels() const { return std::uint64_t{1} << counter_bits; }

    bool fits(std::size_t presyn, std::size_t delay_levels) const
    {
        return presyn <= max_addresses() && delay_levels <= max_delay_levels();
    }

    /// Throws std::invalid_argument if the widths are unusable or too narrow
    /// for the given population and delay range.
    void require_fits(std::size_t presyn, std::size_t delay_levels) const;

    /// The default 16-bit layout when it suffices, otherwise the narrowest
    /// fields that hold the given dimensions.
    static EventLayout fit(std::size_t presyn, std::size_t delay_levels);

    std::uint32_t encode(const EventWord &word) const;
    EventWord decode(std::uint32_t bits) const;

    bool operator==(const EventLayout &) const = default;
};

/// Little-endian serialization of words packed with layout.byte_width() bytes each.
std::vector<std::uint8_t> serialize_words(const EventLayout &layout, const std::vector<EventWord> &words);
std::vector<EventWord> deserialize_words(const EventLayout &layout, const std::vector<std::uint8_t> &bytes);

} // namespace delaysnn
