#include <doctest.h>

#include <sstream>

#include "delaysnn/cli.hpp"
#include "delaysnn/io.hpp"
#include "delaysnn/pruning_filter.hpp"

using namespace delaysnn;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "delaysnn");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / ("delaysnn_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::string> csv_rows(const std::string &text)
{
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        rows.push_back(line);
    return rows;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("gen is deterministic and honours the topology")
{
    const fs::path a = scratch("gen_a");
    const fs::path b = scratch("gen_b");
    const std::vector<std::string> args{"gen", "--seed", "42", "--shape", "20-8-4", "-L", "6", "--stride", "2",
            "--prune", "synapse", "--keep", "2", "--density", "0.2", "-T", "15", "--blob"};
    auto with_dir = [&](const fs::path &dir) {
        auto v = args;
        v.push_back("--out-dir");
        v.push_back(dir.string());
        return v;
    };
    REQUIRE(cli(with_dir(a)).code == exit_ok);
    REQUIRE(cli(with_dir(b)).code == exit_ok);
    for (const char *f : {"model.json", "model.bin", "spikes.jsonl", "manifest.json"})
        CHECK(read_text_file(a / f) == read_text_file(b / f));

    const DelayNetwork net = read_model(a / "model.json");
    REQUIRE(net.layers.size() == 2);
    CHECK(net.input_width() == 20);
    for (const LayerSpec &layer : net.layers)
    {
        CHECK(layer.delay_levels() == 6);
        for (std::size_t d = 1; d < 6; d += 2)
            for (std::size_t i = 0; i < layer.presyn_count(); ++i)
                for (std::size_t j = 0; j < layer.postsyn_count(); ++j)
                    CHECK(layer.weights.at(d, i, j) == 0);
    }
    CHECK(read_spikes(a / "spikes.jsonl").duration == 15);
}

TEST_CASE("run, compare and trace on a generated model")
{
    const fs::path dir = scratch("run");
    REQUIRE(cli({"gen", "--seed", "7", "--shape", "24-12-6", "-L", "8", "--prune", "axon", "--keep", "3",
                    "--density", "0.3", "-T", "40", "--threshold", "60", "--out-dir", dir.string()})
                    .code == exit_ok);
    const std::string manifest = (dir / "manifest.json").string();

    REQUIRE(cli({"run", manifest}).code == exit_ok);
    const std::string first = read_text_file(dir / "out" / "result.json");
    REQUIRE(cli({"run", manifest, "--scheduler", "threaded"}).code == exit_ok);
    CHECK(read_text_file(dir / "out" / "result.json") == first);

    const Outcome cmp = cli({"compare", manifest, "--kinds", "scdq,oracle,scdq-1fifo,sdq,ring-buffer"});
    CHECK(cmp.code == exit_ok);
    CHECK(cmp.out.find("scdq vs oracle: identical") != std::string::npos);
    CHECK(cmp.out.find("diverged") == std::string::npos);

    const Outcome tr = cli({"trace", manifest});
    REQUIRE(tr.code == exit_ok);
    const auto rows = csv_rows(tr.out);
    REQUIRE(rows.size() > 1);
    CHECK(rows[0] == "timestep,source,delay_tag,action");

    // Axon-pruned rows with clz > 0 retire before the maximum delay.
    const DelayNetwork net = read_model(dir / "model.json");
    const WvuFilter f = build_filter(net.layers[0].weights);
    std::size_t early = 0;
    for (std::size_t k = 1; k < rows.size(); ++k)
    {
        unsigned t = 0, src = 0, tag = 0;
        char action[16] = {};
        REQUIRE(std::sscanf(rows[k].c_str(), "%u,%u,%u,%15s", &t, &src, &tag, action) == 4);
        if (std::string(action) != "retire")
            continue;
        CHECK(tag == f.last_useful_delay(src));
        if (f.clz(src) > 0)
        {
            CHECK(tag < 7);
            ++early;
        }
    }
    CHECK(early > 0);

    const fs::path csv = dir / "trace.csv";
    CHECK(cli({"trace", manifest, "--layer", "1", "-o", csv.string()}).code == exit_ok);
    CHECK(fs::exists(csv));
    CHECK(cli({"trace", manifest, "--layer", "5"}).code == exit_usage);
    CHECK(cli({"trace", manifest, "--structure", "ring-buffer"}).code == exit_usage);
}

TEST_CASE("memory subcommand")
{
    const Outcome refs = cli({"memory", "--reference-configs"});
    CHECK(refs.code == exit_ok);
    for (const char *n : {"34816", "7936", "126976", "97536", "24576", "65536"})
        CHECK(refs.out.find(n) != std::string::npos);
    CHECK(refs.out.find("alpha* = 0.251") != std::string::npos);
    CHECK(refs.out.find("alpha* = 0.516") != std::string::npos);

    const Outcome csv = cli({"memory", "--csv", "--kinds", "scdq", "-I", "48", "-L", "64"});
    CHECK(csv.out == "kind,I,J,L,alpha,events,bits\nscdq,48,256,64,1,6096,97536\n");

    const Outcome sweep = cli({"memory", "--sweep-L", "1:4", "--sweep-neurons", "10:20:10"});
    CHECK(sweep.code == exit_ok);
    CHECK(csv_rows(sweep.out).size() == 9);

    const Outcome cross = cli({"memory", "--crossover", "ring-buffer", "--kinds", "scdq", "-I", "256", "-J", "256",
            "-L", "16"});
    CHECK(cross.out == "scdq vs ring-buffer: alpha* = 0.516\n");

    CHECK(cli({"memory", "--sweep-L", "4:1"}).code == exit_usage);
    CHECK(cli({"memory", "--kinds", "heap"}).code == exit_usage);
}

TEST_CASE("wvu subcommand")
{
    const fs::path dir = scratch("wvu");
    REQUIRE(cli({"gen", "--seed", "3", "--shape", "4-3", "-L", "5", "--out-dir", dir.string()}).code == exit_ok);
    const Outcome w = cli({"wvu", (dir / "model.json").string()});
    CHECK(w.code == exit_ok);
    CHECK(csv_rows(w.out).size() == 5);
    CHECK(csv_rows(w.out)[0] == "i,d0,d1,d2,d3,d4");
    const Outcome c = cli({"wvu", (dir / "model.json").string(), "--clz"});
    CHECK(csv_rows(c.out)[0] == "i,clz");
}

TEST_CASE("exit codes")
{
    CHECK(cli({}).code == exit_usage);
    CHECK(cli({"frobnicate"}).code == exit_usage);
    CHECK(cli({"--help"}).code == exit_ok);
    CHECK(cli({"gen", "--shape", "3"}).code == exit_usage);
    CHECK(cli({"run", "/nonexistent/manifest.json"}).code == exit_io);

    const fs::path dir = scratch("codes");
    write_text_file(dir / "bad.json", "{\n\"model\": \n");
    const Outcome parse = cli({"run", (dir / "bad.json").string()});
    CHECK(parse.code == exit_io);
    CHECK(parse.err.find(":3") != std::string::npos);

    REQUIRE(cli({"gen", "--seed", "1", "--shape", "30-10", "-L", "6", "--density", "0.9", "-T", "10", "--out-dir",
                    dir.string()})
                    .code == exit_ok);
    write_text_file(dir / "tiny.json", R"({"model":"model.json","spikes":"spikes.jsonl","capacity":4})");
    CHECK(cli({"run", (dir / "tiny.json").string()}).code == exit_simulation);
    DelayNetwork heavy;
    heavy.layers.push_back(LayerSpec{WeightTensor(1, 2, 1, {30000, 30000}), LifParams{LifParams::decay_one, 32767,
                                                                               ResetMode::to_zero}});
    write_model(heavy, dir / "heavy.json");
    write_spikes(dir / "heavy.jsonl", SpikeTrain{2, 2, {{0, 0}, {0, 1}}});
    write_text_file(dir / "wide.json", R"({"model":"heavy.json","spikes":"heavy.jsonl"})");
    CHECK(cli({"run", (dir / "wide.json").string()}).code == exit_ok);
    write_text_file(dir / "narrow.json", R"({"model":"heavy.json","spikes":"heavy.jsonl","numeric":{"accumulator_bits":16}})");
    for (const char *kind : {"scdq", "ring-buffer", "oracle"})
        CHECK(cli({"run", (dir / "narrow.json").string(), "--structure", kind}).code == exit_simulation);
}

}
