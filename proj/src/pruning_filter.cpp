#include "delaysnn/pruning_filter.hpp"

#include <stdexcept>
#include <string>

namespace delaysnn {

WvuFilter::WvuFilter(WvuMatrix wvu)
        : wvu_(std::move(wvu))
        , clz_(wvu_.presyn(), 0)
{
    const std::size_t levels = wvu_.delay_levels();
    for (std::size_t i = 0; i < wvu_.presyn(); ++i)
    {
        std::size_t zeros = 0;
        while (zeros < levels && !wvu_.at(i, levels - 1 - zeros))
            ++zeros;
        clz_[i] = static_cast<std::uint16_t>(zeros);
    }
}

std::size_t WvuFilter::clz(std::size_t i) const
{
    if (i >= clz_.size())
        throw std::out_of_range("presyn address " + std::to_string(i) + " outside filter");
    return clz_[i];
}

bool WvuFilter::forward(std::size_t i, std::size_t d) const
{
    if (i >= wvu_.presyn() || d >= wvu_.delay_levels())
        throw std::out_of_range("WVU lookup (" + std::to_string(i) + ", " + std::to_string(d) +
                ") outside " + std::to_string(wvu_.presyn()) + "x" +
                std::to_string(wvu_.delay_levels()));
    return wvu_.at(i, d);
}

bool WvuFilter::retain(std::size_t i, std::size_t counter) const
{
    return counter > clz(i);
}

WvuFilter build_filter(const WeightTensor &weights)
{
    return WvuFilter(derive_wvu(weights));
}

} // namespace delaysnn
