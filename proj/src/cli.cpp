#include "delaysnn/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "delaysnn/errors.hpp"
#include "delaysnn/io.hpp"
#include "delaysnn/metrics.hpp"
#include "delaysnn/pruning_filter.hpp"
#include "delaysnn/workload.hpp"

namespace delaysnn {

namespace {

int verbosity()
{
    const char *env = std::getenv("DELAYSNN_VERBOSE");
    if (!env || !*env)
        return 1;
    return std::atoi(env);
}

std::vector<StructureKind> parse_kind_list(const std::vector<std::string> &names)
{
    std::vector<StructureKind> kinds;
    for (const std::string &name : names)
        kinds.push_back(parse_structure_kind(name));
    return kinds;
}

struct Range {
    std::uint64_t first = 0;
    std::uint64_t last = 0;
    std::uint64_t step = 1;
};

// "a:b" or "a:b:s"
Range parse_range(const std::string &text)
{
    Range r;
    char colon1 = 0;
    char colon2 = 0;
    std::istringstream in(text);
    in >> r.first >> colon1 >> r.last;
    if (!in || colon1 != ':')
        throw std::invalid_argument("range must look like first:last[:step], got '" + text + "'");
    if (in >> colon2)
    {
        if (colon2 != ':' || !(in >> r.step))
            throw std::invalid_argument("range must look like first:last[:step], got '" + text + "'");
    }
    if (!in.eof() && in.peek() != EOF)
        throw std::invalid_argument("trailing characters in range '" + text + "'");
    return r;
}

std::size_t pick_trace_layer(const DelayNetwork &network, std::optional<std::size_t> requested)
{
    if (requested)
    {
        if (*requested >= network.layers.size())
            throw std::invalid_argument("layer " + std::to_string(*requested) + " out of range (model has " +
                    std::to_string(network.layers.size()) + " projections)");
        return *requested;
    }
    for (std::size_t k = 0; k < network.layers.size(); ++k)
        if (network.layers[k].delay_levels() > 1)
            return k;
    return 0;
}

std::ostream &open_output(const std::string &path, std::ofstream &file, std::ostream &fallback)
{
    if (path.empty() || path == "-")
        return fallback;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw IoError("cannot write " + path);
    return file;
}

void print_reference_configs(std::ostream &out)
{
    using K = StructureKind;
    std::vector<MemoryRow> rows;
    rows.push_back(memory_row(K::shared_delay_queue, {256, 256, 16, 1.0, 16, 16}));
    rows.push_back(memory_row(K::scdq, {256, 256, 16, 1.0, 16, 16}));
    rows.push_back(memory_row(K::ring_buffer, {256, 256, 16, 1.0, 16, 16}));
    rows.push_back(memory_row(K::scdq, {48, 48, 64, 1.0, 16, 8}));
    rows.push_back(memory_row(K::ring_buffer, {48, 48, 64, 1.0, 16, 8}));
    write_memory_table(out, rows);
    out << "crossover scdq/ring-buffer (I=J=48, L=64, 16-bit events, 8-bit weights): alpha* = "
        << crossover_alpha(K::scdq, K::ring_buffer, {48, 48, 64, 1.0, 16, 8}) << '\n';
    out << "crossover scdq/ring-buffer (I=J=256, L=16, 16-bit events, 16-bit weights): alpha* = "
        << crossover_alpha(K::scdq, K::ring_buffer, {256, 256, 16, 1.0, 16, 16}) << '\n';
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    const int verbose = verbosity();
    CLI::App app{"Event-driven delay SNN simulator with shared circular delay queues"};
    app.require_subcommand(1);

    // gen
    std::uint64_t gen_seed = 1;
    std::string gen_shape = "700-48-48-20";
    std::size_t gen_levels = 60;
    std::size_t gen_stride = 1;
    std::string gen_prune = "none";
    std::size_t gen_keep = 0;
    double gen_density = 0.05;
    double gen_weight_density = 1.0;
    Timestep gen_steps = 100;
    bool gen_undelayed_first = false;
    Potential gen_threshold = 256;
    std::uint32_t gen_decay = 61440;
    std::string gen_reset = "to-zero";
    std::string gen_dir = ".";
    bool gen_blob = false;
    std::string gen_structure = "scdq";
    auto *gen = app.add_subcommand("gen", "Generate a random network, spike train and manifest");
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_option("--shape", gen_shape, "Population widths, e.g. 700-48-48-20")->capture_default_str();
    gen->add_option("-L,--delay-levels", gen_levels, "Delay levels per projection")->capture_default_str();
    gen->add_option("--stride", gen_stride, "Keep only delay levels divisible by the stride")->capture_default_str();
    gen->add_option("--prune", gen_prune, "none, synapse or axon")->capture_default_str();
    gen->add_option("--keep", gen_keep, "Delay levels kept per synapse/axon (0 = all)");
    gen->add_option("--density", gen_density, "Input spike probability per neuron and timestep")->capture_default_str();
    gen->add_option("--weight-density", gen_weight_density, "Fraction of nonzero weights")->capture_default_str();
    gen->add_option("-T,--timesteps", gen_steps, "Spike train length")->capture_default_str();
    gen->add_flag("--undelayed-first", gen_undelayed_first, "First projection has a single delay level");
    gen->add_option("--threshold", gen_threshold, "LIF threshold")->capture_default_str();
    gen->add_option("--decay-q16", gen_decay, "LIF decay factor, Q16")->capture_default_str();
    gen->add_option("--reset", gen_reset, "to-zero or subtract-threshold")->capture_default_str();
    gen->add_option("--structure", gen_structure, "Structure written into the manifest")->capture_default_str();
    gen->add_option("-o,--out-dir", gen_dir, "Destination directory")->capture_default_str();
    gen->add_flag("--blob", gen_blob, "Store weights in a binary blob next to the model");

    // run
    std::string run_manifest;
    std::string run_structure;
    std::string run_scheduler;
    std::string run_out_dir;
    auto *run = app.add_subcommand("run", "Run a manifest and write result files");
    run->add_option("manifest", run_manifest, "Run manifest (JSON)")->required();
    run->add_option("--structure", run_structure, "Override the manifest structure");
    run->add_option("--scheduler", run_scheduler, "sequential or threaded");
    run->add_option("--output-dir", run_out_dir, "Override the manifest output directory");

    // compare
    std::string cmp_manifest;
    std::vector<std::string> cmp_kinds{"scdq", "oracle"};
    auto *compare = app.add_subcommand("compare", "Run several structures and report the first divergence");
    compare->add_option("manifest", cmp_manifest, "Run manifest (JSON)")->required();
    compare->add_option("--kinds", cmp_kinds, "Structures to compare, first is the baseline")
            ->delimiter(',')
            ->capture_default_str();

    // memory
    std::vector<std::string> mem_kinds{"shared-delay-queue", "scdq", "scdq-1fifo", "ring-buffer"};
    MemoryParams mem_params{256, 256, 16, 1.0, 16, 16};
    bool mem_csv = false;
    bool mem_reference = false;
    std::string mem_sweep_l;
    std::string mem_sweep_n = "256:256";
    std::string mem_crossover;
    auto *memory = app.add_subcommand("memory", "Closed-form memory requirements");
    memory->add_option("--kinds", mem_kinds, "Structures to tabulate")->delimiter(',')->capture_default_str();
    memory->add_option("-I,--presyn", mem_params.presyn, "Presynaptic neurons")->capture_default_str();
    memory->add_option("-J,--postsyn", mem_params.postsyn, "Postsynaptic neurons")->capture_default_str();
    memory->add_option("-L,--delay-levels", mem_params.delay_levels, "Delay levels")->capture_default_str();
    memory->add_option("--alpha", mem_params.alpha, "Maximum activation density")->capture_default_str();
    memory->add_option("--event-bits", mem_params.event_bits, "Bits per queued event")->capture_default_str();
    memory->add_option("--weight-bits", mem_params.weight_bits, "Bits per ring-buffer slot")->capture_default_str();
    memory->add_flag("--csv", mem_csv, "CSV instead of a table");
    memory->add_flag("--reference-configs", mem_reference, "Print the reference configurations");
    memory->add_option("--sweep-L", mem_sweep_l, "Scaling sweep over L, first:last[:step]");
    memory->add_option("--sweep-neurons", mem_sweep_n, "Scaling sweep over I = J, first:last[:step]")
            ->capture_default_str();
    memory->add_option("--crossover", mem_crossover, "Print alpha* of scdq-family kind vs this kind");

    // trace
    std::string trace_manifest;
    std::optional<std::size_t> trace_layer;
    std::string trace_output;
    std::string trace_structure;
    auto *trace = app.add_subcommand("trace", "Queue lifespan trace (timestep,source,delay_tag,action)");
    trace->add_option("manifest", trace_manifest, "Run manifest (JSON)")->required();
    trace->add_option("--layer", trace_layer, "Projection index (default: first with L > 1)");
    trace->add_option("--structure", trace_structure, "Queue structure (default: manifest, or scdq)");
    trace->add_option("-o,--output", trace_output, "CSV path ('-' for stdout)");

    // wvu
    std::string wvu_model;
    std::size_t wvu_layer = 0;
    bool wvu_clz = false;
    auto *wvu = app.add_subcommand("wvu", "Dump the WVU matrix or clz table of a projection");
    wvu->add_option("model", wvu_model, "Model file")->required();
    wvu->add_option("--layer", wvu_layer, "Projection index")->capture_default_str();
    wvu->add_flag("--clz", wvu_clz, "Print the clz table instead");

    std::vector<const char *> argv;
    for (const std::string &a : args)
        argv.push_back(a.c_str());
    if (argv.empty())
        argv.push_back("delaysnn");
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    auto note = [&](int level, const std::string &msg) {
        if (verbose >= level)
            err << msg << '\n';
    };

    try
    {
        if (*gen)
        {
            NetworkRecipe recipe;
            recipe.widths = parse_shape(gen_shape);
            recipe.delay_levels = gen_levels;
            recipe.delay_first_projection = !gen_undelayed_first;
            recipe.stride = gen_stride;
            recipe.prune = parse_prune_mode(gen_prune);
            recipe.keep_k = gen_keep ? gen_keep : gen_levels;
            recipe.weight_density = gen_weight_density;
            recipe.lif.decay_q16 = gen_decay;
            recipe.lif.threshold = gen_threshold;
            recipe.lif.reset = parse_reset_mode(gen_reset);
            if (gen_density < 0.0 || gen_density > 1.0)
                throw std::invalid_argument("--density must lie in [0, 1]");

            Rng rng(gen_seed);
            const DelayNetwork network = generate_network(recipe, rng);
            const SpikeTrain spikes = generate_spikes(recipe.widths.front(), gen_steps, gen_density, rng);

            const std::filesystem::path dir = gen_dir;
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec)
                throw IoError("cannot create " + dir.string() + ": " + ec.message());
            write_model(network, dir / "model.json",
                    gen_blob ? WeightEncoding::binary_blob : WeightEncoding::inline_json);
            write_spikes(dir / "spikes.jsonl", spikes);

            RunManifest manifest;
            manifest.model = "model.json";
            manifest.spikes = "spikes.jsonl";
            manifest.structure = parse_structure_kind(gen_structure);
            manifest.seed = gen_seed;
            manifest.output_dir = "out";
            write_text_file(dir / "manifest.json", manifest_json(manifest));
            note(1, "wrote " + (dir / "model.json").string() + ", " + (dir / "spikes.jsonl").string() + ", " +
                    (dir / "manifest.json").string());
            return exit_ok;
        }

        if (*run)
        {
            RunManifest manifest = read_manifest(run_manifest);
            if (!run_out_dir.empty())
                manifest.output_dir = run_out_dir;
            std::optional<StructureKind> kind;
            std::optional<Scheduler> scheduler;
            if (!run_structure.empty())
                kind = parse_structure_kind(run_structure);
            if (!run_scheduler.empty())
                scheduler = parse_scheduler(run_scheduler);
            if (kind)
                manifest.structure = *kind;
            const ManifestRun result = execute_manifest(manifest, kind, scheduler);
            for (const auto &path : write_run_outputs(manifest, result))
                note(1, "wrote " + path.string());
            note(1, "classification " + std::to_string(result.result.activity.classification));
            if (verbose >= 2)
            {
                for (const CoreMetrics &m : result.result.metrics.cores)
                    err << "core " << m.layer << ": peak_stored=" << m.queue.peak_stored
                        << " peak_footprint=" << m.queue.peak_footprint << " predicted=" << predicted_events(m)
                        << " macs=" << m.macs_performed << '\n';
            }
            return exit_ok;
        }

        if (*compare)
        {
            const RunManifest manifest = read_manifest(cmp_manifest);
            const std::vector<StructureKind> kinds = parse_kind_list(cmp_kinds);
            if (kinds.size() < 2)
                throw std::invalid_argument("--kinds needs at least two structures");
            const ManifestRun baseline = execute_manifest(manifest, kinds.front());
            bool diverged = false;
            for (std::size_t k = 1; k < kinds.size(); ++k)
            {
                const ManifestRun other = execute_manifest(manifest, kinds[k]);
                const auto diff = first_divergence(baseline.result.activity, other.result.activity);
                out << to_string(kinds.front()) << " vs " << to_string(kinds[k]) << ": ";
                if (!diff)
                {
                    out << "identical\n";
                    continue;
                }
                diverged = true;
                out << "diverged at timestep " << diff->timestep << ", layer " << diff->layer << ", neuron "
                    << diff->neuron << " (" << diff->what << ")\n";
            }
            return diverged ? exit_divergence : exit_ok;
        }

        if (*memory)
        {
            if (mem_reference)
            {
                print_reference_configs(out);
                return exit_ok;
            }
            if (!mem_sweep_l.empty())
            {
                const Range l = parse_range(mem_sweep_l);
                const Range n = parse_range(mem_sweep_n);
                write_scaling_csv(out, scaling_sweep(l.first, l.last, l.step, n.first, n.last, n.step));
                return exit_ok;
            }
            const std::vector<StructureKind> kinds = parse_kind_list(mem_kinds);
            if (!mem_crossover.empty())
            {
                const StructureKind other = parse_structure_kind(mem_crossover);
                for (const StructureKind kind : kinds)
                {
                    if (kind == other || alpha_dependent(kind) == alpha_dependent(other))
                        continue;
                    out << to_string(kind) << " vs " << to_string(other)
                        << ": alpha* = " << crossover_alpha(kind, other, mem_params) << '\n';
                }
                return exit_ok;
            }
            std::vector<MemoryRow> rows;
            for (const StructureKind kind : kinds)
                rows.push_back(memory_row(kind, mem_params));
            if (mem_csv)
                write_memory_csv(out, rows);
            else
                write_memory_table(out, rows);
            return exit_ok;
        }

        if (*trace)
        {
            RunManifest manifest = read_manifest(trace_manifest);
            StructureKind kind = trace_structure.empty() ? manifest.structure : parse_structure_kind(trace_structure);
            if (kind == StructureKind::ring_buffer || kind == StructureKind::oracle)
            {
                if (!trace_structure.empty())
                    throw std::invalid_argument(std::string(to_string(kind)) + " has no event queue to trace");
                kind = StructureKind::scdq;
            }
            manifest.structure = kind;
            manifest.traces.queue = true;
            const ManifestRun result = execute_manifest(manifest, kind);
            const std::size_t layer = pick_trace_layer(result.network, trace_layer);
            std::ofstream file;
            std::ostream &dest = open_output(trace_output, file, out);
            write_lifespan_csv(dest, result.result.queue_traces.at(layer));
            if (!trace_output.empty() && trace_output != "-")
                note(1, "wrote " + trace_output + " (projection " + std::to_string(layer) + ")");
            return exit_ok;
        }

        if (*wvu)
        {
            const DelayNetwork network = read_model(wvu_model);
            if (wvu_layer >= network.layers.size())
                throw std::invalid_argument("layer " + std::to_string(wvu_layer) + " out of range");
            const WvuFilter filter = build_filter(network.layers[wvu_layer].weights);
            if (wvu_clz)
                write_clz_csv(out, filter.clz_table());
            else
                write_wvu_csv(out, filter.wvu());
            return exit_ok;
        }
    }
    catch (const FormatError &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const IoError &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const SimulationError &e)
    {
        err << "simulation error: " << e.what() << '\n';
        return exit_simulation;
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        err << "simulation error: " << e.what() << '\n';
        return exit_simulation;
    }
    return exit_usage;
}

} // namespace delaysnn
