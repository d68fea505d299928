#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "delaysnn/model.hpp"

namespace delaysnn {

/// Zero-skipping delay-forwarding filter placed at the queue output.
///
/// Holds the WVU lookup table and a second table with the leading-zero count
/// of every row, where a row is read as a binary number whose most
/// significant bit is the largest delay level. An all-zero row has clz = L.
///
/// Counters count down: a word with remaining counter c carries delay tag
/// d = (L - 1) - c. A word is removed from the queue once its counter
/// reaches clz(row), i.e. right after its last useful delivery.
class WvuFilter {
public:
    WvuFilter() = default;
    explicit WvuFilter(WvuMatrix wvu);

    std::size_t presyn() const { return wvu_.presyn(); }
    std::size_t delay_levels() const { return wvu_.delay_levels(); }
    const WvuMatrix &wvu() const { return wvu_; }

    std::size_t clz(std::size_t i) const;
    const std::vector<std::uint16_t> &clz_table() const { return clz_; }

    bool row_empty(std::size_t i) const { return clz(i) == delay_levels(); }

    /// Largest delay level that still has a recipient. Requires !row_empty(i).
    std::size_t last_useful_delay(std::size_t i) const { return delay_levels() - 1 - clz(i); }

    /// True iff wvu[i][d] is set. Throws std::out_of_range on bad indices.
    bool forward(std::size_t i, std::size_t d) const;

    /// True iff a word with remaining counter c must be written back to the
    /// queue for a later timestep (c > clz(i)).
    bool retain(std::size_t i, std::size_t counter) const;

private:
    WvuMatrix wvu_;
    std::vector<std::uint16_t> clz_;
};

/// Convenience: derive_wvu followed by filter construction.
WvuFilter build_filter(const WeightTensor &weights);

} // namespace delaysnn
