#include "delaysnn/event_word.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace delaysnn {

namespace {

unsigned bits_for(std::size_t count)
{
    // Smallest width whose value range covers [0, count).
    return count <= 1 ? 1 : static_cast<unsigned>(std::bit_width(count - 1));
}

} // namespace

void EventLayout::require_fits(std::size_t presyn, std::size_t delay_levels) const
{
    if (addr_bits == 0 || counter_bits == 0 || total_bits() > 32)
        throw std::invalid_argument("event layout must have nonzero fields and at most 32 bits");
    if (presyn > max_addresses())
        throw std::invalid_argument(std::to_string(presyn) + " presyn neurons do not fit " +
                std::to_string(addr_bits) + " address bits");
    if (delay_levels > max_delay_levels())
        throw std::invalid_argument(std::to_string(delay_levels) + " delay levels do not fit " +
                std::to_string(counter_bits) + " counter bits");
}

EventLayout EventLayout::fit(std::size_t presyn, std::size_t delay_levels)
{
    EventLayout layout;
    if (layout.fits(presyn, delay_levels))
        return layout;
    layout.addr_bits = std::max(layout.addr_bits, bits_for(presyn));
    layout.counter_bits = std::max(layout.counter_bits, bits_for(delay_levels));
    layout.require_fits(presyn, delay_levels);
    return layout;
}

std::uint32_t EventLayout::encode(const EventWord &word) const
{
    if (word.source >= max_addresses() || word.counter >= max_delay_levels())
        throw std::out_of_range("event word field exceeds layout");
    return (static_cast<std::uint32_t>(word.eot) << (addr_bits + counter_bits)) |
            (word.source << counter_bits) | word.counter;
}

EventWord EventLayout::decode(std::uint32_t bits) const
{
    EventWord word;
    word.eot = ((bits >> (addr_bits + counter_bits)) & 1u) != 0;
    word.source = (bits >> counter_bits) & static_cast<std::uint32_t>(max_addresses() - 1);
    word.counter = bits & static_cast<std::uint32_t>(max_delay_levels() - 1);
    return word;
}

std::vector<std::uint8_t> serialize_words(const EventLayout &layout, const std::vector<EventWord> &words)
{
    const std::size_t width = layout.byte_width();
    std::vector<std::uint8_t> bytes;
    bytes.reserve(words.size() * width);
    for (const EventWord &word : words)
    {
        const std::uint32_t bits = layout.encode(word);
        for (std::size_t b = 0; b < width; ++b)
            bytes.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
    }
    return bytes;
}

std::vector<EventWord> deserialize_words(const EventLayout &layout, const std::vector<std::uint8_t> &bytes)
{
    const std::size_t width = layout.byte_width();
    if (bytes.size() % width != 0)
        throw std::invalid_argument("byte stream is not a whole number of event words");
    std::vector<EventWord> words;
    words.reserve(bytes.size() / width);
    for (std::size_t offset = 0; offset < bytes.size(); offset += width)
    {
        std::uint32_t bits = 0;
        for (std::size_t b = 0; b < width; ++b)
            bits |= static_cast<std::uint32_t>(bytes[offset + b]) << (8 * b);
        words.push_back(layout.decode(bits));
    }
    return words;
}

} // namespace delaysnn
