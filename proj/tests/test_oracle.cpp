#include <doctest.h>

#include "delaysnn/oracle.hpp"
#include "support.hpp"

using namespace delaysnn;
using namespace testsupport;

namespace {

std::vector<std::vector<std::uint8_t>> dense(const Raster &r, std::size_t width)
{
    std::vector<std::vector<std::uint8_t>> out(r.size(), std::vector<std::uint8_t>(width, 0));
    for (std::size_t t = 0; t < r.size(); ++t)
        for (const Address i : r[t])
            out[t][i] = 1;
    return out;
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("oracle agrees with the brute-force simulation")
{
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial)
    {
        const CorpusCase c = random_case(rng);
        const OracleResult got = oracle_run(c.network, c.spikes);
        const auto expected = brute_network(c.network, c.spikes);
        REQUIRE(got.layers.size() == expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k)
        {
            CHECK(got.layers[k].raster == expected[k].raster);
            for (std::size_t t = 0; t < expected[k].membranes.size(); ++t)
                for (std::size_t j = 0; j < expected[k].membranes[t].size(); ++j)
                    CHECK(got.layers[k].membranes[t][j] == expected[k].membranes[t][j]);
        }
    }
}

TEST_CASE("layer input is linear in disjoint rasters")
{
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial)
    {
        const WeightTensor w = random_tensor(rng, 5, 7, 4, 0.6);
        const Raster all = random_raster(rng, 7, 20, 0.5);
        Raster a(all.size());
        Raster b(all.size());
        for (std::size_t t = 0; t < all.size(); ++t)
            for (const Address i : all[t])
                (rng.chance(0.5) ? a : b)[t].push_back(i);
        const auto ia = oracle_layer_input(w, dense(a, 7));
        const auto ib = oracle_layer_input(w, dense(b, 7));
        const auto iall = oracle_layer_input(w, dense(all, 7));
        for (std::size_t t = 0; t < all.size(); ++t)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(iall[t][j] == ia[t][j] + ib[t][j]);
        CHECK(iall == brute_inputs(w, all));
    }
}

TEST_CASE("layer input is time-shift equivariant")
{
    Rng rng(47);
    for (int trial = 0; trial < 50; ++trial)
    {
        const WeightTensor w = random_tensor(rng, 4, 5, 3, 0.6);
        const Raster r = random_raster(rng, 5, 15, 0.4);
        const std::size_t shift = static_cast<std::size_t>(rng.between(1, 5));
        Raster shifted(r.size() + shift);
        for (std::size_t t = 0; t < r.size(); ++t)
            shifted[t + shift] = r[t];
        const auto base = oracle_layer_input(w, dense(r, 5));
        const auto moved = oracle_layer_input(w, dense(shifted, 5));
        for (std::size_t t = 0; t < shift; ++t)
            CHECK(moved[t] == std::vector<std::int64_t>(3, 0));
        for (std::size_t t = 0; t < r.size(); ++t)
            CHECK(moved[t + shift] == base[t]);
    }
}

TEST_CASE("oracle rejects mismatched inputs")
{
    DelayNetwork net;
    net.layers.push_back(LayerSpec{WeightTensor(2, 3, 2), LifParams{}});
    SpikeTrain wrong_width{4, 4, {}};
    CHECK_THROWS_AS(oracle_run(net, wrong_width), std::invalid_argument);
    SpikeTrain ok{4, 3, {{1, 2}}};
    const OracleResult r = oracle_run(net, ok);
    CHECK(r.duration == 4);
    CHECK(r.layers.size() == 1);
    CHECK(r.output_counts == std::vector<std::uint64_t>{0, 0});
}

TEST_CASE("readout counts output spikes and breaks ties low")
{
    CHECK(classify({3, 5, 5, 1}) == 1);
    CHECK(classify({0, 0}) == 0);
    CHECK(classify({}) == 0);

    DelayNetwork net;
    WeightTensor w(1, 1, 3);
    w.at(0, 0, 2) = 10;
    w.at(0, 0, 1) = 10;
    net.layers.push_back(LayerSpec{w, LifParams{LifParams::decay_one, 5, ResetMode::to_zero}});
    SpikeTrain s{3, 1, {{0, 0}, {2, 0}}};
    const OracleResult r = oracle_run(net, s);
    CHECK(r.output_counts == std::vector<std::uint64_t>{0, 2, 2});
    CHECK(r.classification == 1);
}

}
