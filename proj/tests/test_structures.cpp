#include <doctest.h>

#include "delaysnn/ring_buffer.hpp"
#include "delaysnn/scdq.hpp"
#include "delaysnn/scdq_single_fifo.hpp"
#include "delaysnn/shared_delay_queue.hpp"
#include "support.hpp"

using namespace delaysnn;
using namespace testsupport;

namespace {

constexpr Address A = 0;
constexpr Address B = 1;

const std::vector<StructureKind> queue_kinds{
        StructureKind::scdq, StructureKind::scdq_single_fifo, StructureKind::shared_delay_queue};

WvuFilter dense_filter(std::size_t presyn, std::size_t levels)
{
    WvuMatrix wvu(presyn, levels);
    for (std::size_t i = 0; i < presyn; ++i)
        for (std::size_t d = 0; d < levels; ++d)
            wvu.set(i, d, true);
    return WvuFilter(wvu);
}

std::vector<DeliveryRecord> drain_sorted(DelayStructure &s)
{
    std::vector<DeliveryRecord> out;
    s.drain([&](const DeliveryRecord &r) { out.push_back(r); });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_SUITE("structures") {

TEST_CASE("two-neuron walkthrough on the two-FIFO queue")
{
    // Neurons A and B fire at t = 0, B again at t = 1, nobody at t = 2.
    Scdq q(dense_filter(2, 3));
    q.push_spike(A);
    q.push_spike(B);
    REQUIRE(q.prq().size() == 2);
    CHECK(q.prq()[0] == EventWord::spike(A, 2));
    CHECK(q.prq()[1] == EventWord::spike(B, 2));
    CHECK(drain_sorted(q) == std::vector<DeliveryRecord>{{A, 0}, {B, 0}});
    q.end_of_timestep();

    q.push_spike(B);
    REQUIRE(q.prq().size() == 3);
    CHECK(drain_sorted(q) == std::vector<DeliveryRecord>{{A, 1}, {B, 0}, {B, 1}});
    REQUIRE(q.poq().size() == 3);
    CHECK(q.poq()[0] == EventWord::spike(A, 0));
    CHECK(q.poq()[1] == EventWord::spike(B, 0));
    CHECK(q.poq()[2] == EventWord::spike(B, 1));
    q.end_of_timestep();

    CHECK(drain_sorted(q) == std::vector<DeliveryRecord>{{A, 2}, {B, 1}, {B, 2}});
    // B's second event still owes its d = 2 delivery.
    REQUIRE(q.poq().size() == 1);
    CHECK(q.poq()[0] == EventWord::spike(B, 0));
    q.end_of_timestep();

    CHECK(drain_sorted(q) == std::vector<DeliveryRecord>{{B, 2}});
    q.end_of_timestep();
    CHECK(q.stored() == 0);
    CHECK(q.timestep() == 4);
}

TEST_CASE("two-neuron walkthrough gives the same deliveries on every queue")
{
    for (const StructureKind kind : queue_kinds)
    {
        CAPTURE(to_string(kind));
        auto s = make_delay_structure(kind, dense_filter(2, 3));
        s->push_spike(A);
        s->push_spike(B);
        CHECK(drain_sorted(*s) == std::vector<DeliveryRecord>{{A, 0}, {B, 0}});
        s->end_of_timestep();
        s->push_spike(B);
        CHECK(drain_sorted(*s) == std::vector<DeliveryRecord>{{A, 1}, {B, 0}, {B, 1}});
        s->end_of_timestep();
        CHECK(drain_sorted(*s) == std::vector<DeliveryRecord>{{A, 2}, {B, 1}, {B, 2}});
        s->end_of_timestep();
        CHECK(drain_sorted(*s) == std::vector<DeliveryRecord>{{B, 2}});
        s->end_of_timestep();
        CHECK(s->stored() == 0);
    }
}

TEST_CASE("delivery contract against brute force on random filters")
{
    Rng rng(101);
    for (int trial = 0; trial < 300; ++trial)
    {
        const auto L = static_cast<std::size_t>(rng.between(1, 9));
        const auto I = static_cast<std::size_t>(rng.between(1, 12));
        const WeightTensor w = random_tensor(rng, L, I, 2, 0.15 + 0.5 * rng.unit());
        const Raster raster = random_raster(rng, I, static_cast<std::size_t>(rng.between(1, 30)), rng.unit());
        const DeliverySets expected = brute_deliveries(w, raster);
        for (const StructureKind kind : queue_kinds)
        {
            CAPTURE(to_string(kind));
            const DrivenStructure got = drive(kind, w, raster);
            CHECK(got.deliveries == expected);
        }
    }
}

TEST_CASE("spikes of all-zero rows never occupy memory")
{
    WvuMatrix wvu(3, 4);
    wvu.set(1, 2, true);
    for (const StructureKind kind : queue_kinds)
    {
        CAPTURE(to_string(kind));
        auto s = make_delay_structure(kind, WvuFilter(wvu));
        s->push_spike(0);
        s->push_spike(2);
        CHECK(s->stored() == 0);
        CHECK(s->stats().dropped_at_entry == 2);
        CHECK(s->stats().peak_stored == 0);
        CHECK(drain_sorted(*s).empty());
        s->end_of_timestep();
    }
}

TEST_CASE("capacity overflow is an error")
{
    for (const StructureKind kind : queue_kinds)
    {
        CAPTURE(to_string(kind));
        auto s = make_delay_structure(kind, dense_filter(4, 3), 3);
        s->push_spike(0);
        // the shared delay queue stores L - 1 = 2 copies per spike
        if (kind == StructureKind::shared_delay_queue)
        {
            CHECK_THROWS_AS(s->push_spike(1), QueueOverflow);
            continue;
        }
        s->push_spike(1);
        s->push_spike(2);
        CHECK_THROWS_AS(s->push_spike(3), QueueOverflow);
    }
}

TEST_CASE("EOT before draining is rejected")
{
    for (const StructureKind kind : queue_kinds)
    {
        CAPTURE(to_string(kind));
        auto s = make_delay_structure(kind, dense_filter(2, 3));
        s->push_spike(0);
        CHECK_THROWS_AS(s->end_of_timestep(), std::logic_error);
        drain_sorted(*s);
        CHECK_NOTHROW(s->end_of_timestep());
        // nothing new arrived: an empty timestep needs no drain
        s->drain([](const DeliveryRecord &) {});
        CHECK_NOTHROW(s->end_of_timestep());
    }
}

TEST_CASE("unknown source address is rejected")
{
    for (const StructureKind kind : queue_kinds)
    {
        auto s = make_delay_structure(kind, dense_filter(2, 3));
        CHECK_THROWS_AS(s->push_spike(2), std::out_of_range);
    }
}

TEST_CASE("two-FIFO queue never holds a word below its clz")
{
    Rng rng(202);
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto L = static_cast<std::size_t>(rng.between(2, 10));
        const auto I = static_cast<std::size_t>(rng.between(1, 10));
        const WeightTensor w = random_tensor(rng, L, I, 2, 0.2);
        const WvuFilter f = build_filter(w);
        Scdq q(f);
        const Raster raster = random_raster(rng, I, 20, 0.4);
        for (const auto &step : raster)
        {
            for (const Address i : step)
                q.push_spike(i);
            q.drain([](const DeliveryRecord &) {});
            for (const EventWord &word : q.poq())
                CHECK(word.counter >= f.clz(word.source));
            q.end_of_timestep();
            CHECK(q.poq().empty());
        }
    }
}

TEST_CASE("EOT swaps the queues")
{
    Scdq q(dense_filter(3, 4));
    q.push_spike(0);
    q.push_spike(2);
    drain_sorted(q);
    CHECK(q.prq().empty());
    CHECK(q.poq().size() == 2);
    q.end_of_timestep();
    CHECK(q.prq().size() == 2);
    CHECK(q.poq().empty());

    Scdq empty(dense_filter(1, 2));
    empty.drain([](const DeliveryRecord &) {});
    empty.end_of_timestep();
    CHECK(empty.stored() == 0);
    CHECK(empty.timestep() == 1);
}

TEST_CASE("two-FIFO footprint is the sum of both queue peaks")
{
    // k spikes every step, dense L: PRQ peaks at kL, POQ at k(L - 1).
    const std::size_t I = 5;
    const std::size_t L = 4;
    Scdq q(dense_filter(I, L));
    for (int t = 0; t < 12; ++t)
    {
        q.push_spike(0);
        q.push_spike(3);
        q.drain([](const DeliveryRecord &) {});
        q.end_of_timestep();
    }
    CHECK(q.peak_prq() == 2 * L);
    CHECK(q.peak_poq() == 2 * (L - 1));
    CHECK(q.stats().peak_footprint == 2 * (2 * L - 1));
}

TEST_CASE("single FIFO stores each event once")
{
    const std::size_t L = 5;
    ScdqSingleFifo q(dense_filter(3, L));
    for (int t = 0; t < 15; ++t)
    {
        q.push_spike(1);
        q.drain([](const DeliveryRecord &) {});
        q.end_of_timestep();
    }
    CHECK(q.stats().peak_stored == L);
    CHECK(q.stats().peak_footprint == L);
    CHECK(q.stored() == L - 1);
    for (const std::uint32_t c : q.cohort_counters())
        CHECK(c < L);
}

TEST_CASE("single FIFO retires early on pruned rows")
{
    // Row 0 is useful only at d = 1, so the event retires after one step.
    WvuMatrix wvu(1, 6);
    wvu.set(0, 1, true);
    ScdqSingleFifo q{WvuFilter(wvu)};
    std::vector<QueueTraceRecord> trace;
    q.set_trace([&](const QueueTraceRecord &r) { trace.push_back(r); });
    q.push_spike(0);
    CHECK(drain_sorted(q).empty());
    q.end_of_timestep();
    CHECK(drain_sorted(q) == std::vector<DeliveryRecord>{{0, 1}});
    q.end_of_timestep();
    CHECK(q.stored() == 0);
    REQUIRE_FALSE(trace.empty());
    CHECK(trace.back().action == QueueAction::retire);
    CHECK(trace.back().delay_tag == 1);
    CHECK(trace.back().counter == 4);
}

TEST_CASE("shared delay queue stores one copy per future useful level")
{
    WvuMatrix wvu(2, 5);
    for (std::size_t d : {0, 2, 4})
        wvu.set(0, d, true);
    wvu.set(1, 0, true);
    SharedDelayQueue q{WvuFilter(wvu)};
    q.push_spike(0);
    q.push_spike(1);
    // level 0 is delivered now, copies wait for d = 2 and d = 4
    CHECK(q.stored() == 2);
    CHECK(q.fifo_size(2) == 1);
    CHECK(q.fifo_size(4) == 1);
    CHECK(drain_sorted(q) == std::vector<DeliveryRecord>{{0, 0}, {1, 0}});
    q.end_of_timestep();
    CHECK(q.fifo_size(1) == 1);
    CHECK(q.fifo_size(3) == 1);
}

TEST_CASE("dense shared delay queue reaches the triangular worst case")
{
    const std::size_t L = 6;
    const std::size_t I = 3;
    SharedDelayQueue q(dense_filter(I, L));
    for (int t = 0; t < 20; ++t)
    {
        for (Address i = 0; i < I; ++i)
            q.push_spike(i);
        q.drain([](const DeliveryRecord &) {});
        q.end_of_timestep();
    }
    // Right after a push: L - 1 copies of the newest cohort, L - k of the
    // cohort k steps back (its d = k copy is due but not yet drained).
    CHECK(q.stats().peak_stored <= I * (L * L + L) / 2);
    CHECK(q.stats().peak_stored == I * ((L - 1) * (L + 2) / 2));
}

TEST_CASE("ring buffer impulse response reproduces the weight column")
{
    Rng rng(303);
    const std::size_t L = 6;
    const WeightTensor w = random_tensor(rng, L, 4, 3, 0.7);
    RingBuffer rb(std::make_shared<const WeightTensor>(w));
    CHECK(rb.slot_count() == 3 * L);
    rb.push_spike(2);
    for (std::size_t t = 0; t < 2 * L; ++t)
    {
        const auto v = rb.end_of_timestep();
        REQUIRE(v.size() == 3);
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(v[j] == (t < L ? w.at(t, 2, j) : 0));
        CHECK(rb.slot_count() == 3 * L);
    }
}

TEST_CASE("ring buffer sums equal brute-force inputs")
{
    Rng rng(404);
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto L = static_cast<std::size_t>(rng.between(1, 8));
        const auto I = static_cast<std::size_t>(rng.between(1, 10));
        const auto J = static_cast<std::size_t>(rng.between(1, 10));
        const WeightTensor w = random_tensor(rng, L, I, J, rng.unit());
        const Raster raster = random_raster(rng, I, 25, rng.unit());
        CHECK(drive_ring_buffer(w, raster) == brute_inputs(w, raster));
    }
}

TEST_CASE("ring buffer overflow is an error")
{
    WeightTensor w(2, 2, 1);
    w.at(0, 0, 0) = 100;
    w.at(0, 1, 0) = 100;
    NumericPolicy narrow;
    narrow.accumulator_bits = 8;
    RingBuffer rb(std::make_shared<const WeightTensor>(w), narrow);
    rb.push_spike(0);
    CHECK_THROWS_AS(rb.push_spike(1), AccumulatorOverflow);
}

TEST_CASE("event word layout")
{
    const EventLayout layout;
    CHECK(layout.total_bits() == 16);
    CHECK(layout.byte_width() == 2);
    const EventWord w = EventWord::spike(300, 45);
    CHECK(layout.decode(layout.encode(w)) == w);
    CHECK(layout.encode(EventWord::end_of_timestep()) == 0x8000u);
    CHECK(layout.decode(0x8000u).eot);
    CHECK(layout.fits(512, 64));
    CHECK_FALSE(layout.fits(700, 60));
    CHECK_THROWS_AS(layout.require_fits(700, 60), std::invalid_argument);

    const EventLayout wide = EventLayout::fit(700, 60);
    CHECK(wide.fits(700, 60));
    CHECK(wide.addr_bits == 10);
    CHECK(EventLayout::fit(48, 60) == EventLayout{});

    const std::vector<EventWord> words{EventWord::spike(0, 0), EventWord::spike(511, 63), EventWord::end_of_timestep()};
    const auto bytes = serialize_words(layout, words);
    CHECK(bytes.size() == 6);
    CHECK(bytes[0] == 0);
    CHECK(deserialize_words(layout, bytes) == words);
    CHECK_THROWS(deserialize_words(layout, std::vector<std::uint8_t>{1, 2, 3}));
}

TEST_CASE("structure construction rejects a too-narrow layout")
{
    CHECK_THROWS_AS(Scdq(dense_filter(600, 4)), std::invalid_argument);
    CHECK_NOTHROW(Scdq(dense_filter(600, 4), 16, EventLayout::fit(600, 4)));
}

}
