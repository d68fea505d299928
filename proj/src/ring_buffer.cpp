#include "delaysnn/ring_buffer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "delaysnn/errors.hpp"

namespace delaysnn {

RingBuffer::RingBuffer(std::shared_ptr<const WeightTensor> weights, NumericPolicy numeric)
        : weights_(std::move(weights))
        , numeric_(numeric)
        , levels_(weights_ ? weights_->delay_levels() : 0)
        , postsyn_(weights_ ? weights_->postsyn() : 0)
        , slots_(levels_ * postsyn_, 0)
{
    if (levels_ < 1 || postsyn_ < 1)
        throw std::invalid_argument("ring buffer needs weights with L, J >= 1");
}

void RingBuffer::push_spike(Address source)
{
    if (source >= weights_->presyn())
        throw std::out_of_range("spike source " + std::to_string(source) + " outside ring buffer weights");
    for (std::size_t d = 0; d < levels_; ++d)
    {
        const auto slice = weights_->slice(d, source);
        Potential *slot = slots_.data() + ((cursor_ + d) % levels_) * postsyn_;
        for (std::size_t j = 0; j < postsyn_; ++j)
        {
            if (slice[j] == 0)
            {
                ++adds_skipped_;
                continue;
            }
            const std::int64_t sum = std::int64_t{slot[j]} + slice[j];
            if (sum < numeric_.accumulator_min() || sum > numeric_.accumulator_max())
                throw AccumulatorOverflow("ring buffer slot for neuron " + std::to_string(j) +
                        " overflowed " + std::to_string(numeric_.accumulator_bits) + " bits");
            slot[j] = static_cast<Potential>(sum);
            ++adds_performed_;
        }
    }
}

std::vector<Potential> RingBuffer::end_of_timestep()
{
    const auto first = slots_.begin() + static_cast<std::ptrdiff_t>(cursor_ * postsyn_);
    const auto last = first + static_cast<std::ptrdiff_t>(postsyn_);
    std::vector<Potential> input(first, last);
    std::fill(first, last, 0);
    cursor_ = (cursor_ + 1) % levels_;
    ++timestep_;
    return input;
}

} // namespace delaysnn
