#include "delaysnn/io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "delaysnn/errors.hpp"
#include "delaysnn/metrics.hpp"

namespace delaysnn {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::string_view model_format = "delaysnn-model";
constexpr int model_version = 1;
constexpr char blob_magic[4] = {'D', 'S', 'N', 'W'};
constexpr std::size_t blob_header_bytes = 12;

std::size_t line_of_offset(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

json parse_json(std::string_view text, const std::string &source, std::size_t line_base = 0)
{
    try
    {
        return json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error &e)
    {
        const std::size_t line = line_base ? line_base : line_of_offset(text, e.byte ? e.byte - 1 : 0);
        throw FormatError(source, line, e.what());
    }
}

/// Reads JSON fields with a path prefix in every error message.
class Fields {
public:
    Fields(const json &object, std::string source, std::string where, std::size_t line = 0)
            : object_(object)
            , source_(std::move(source))
            , where_(std::move(where))
            , line_(line)
    {
        if (!object_.is_object())
            fail("expected a JSON object");
    }

    bool has(const char *key) const { return object_.contains(key); }

    [[noreturn]] void fail(const std::string &what) const
    {
        throw FormatError(source_, line_, (where_.empty() ? "" : where_ + ": ") + what);
    }

    const json &at(const char *key) const
    {
        const auto it = object_.find(key);
        if (it == object_.end())
            fail(std::string("missing field '") + key + "'");
        return *it;
    }

    std::int64_t integer(const char *key, std::int64_t lo, std::int64_t hi) const
    {
        const json &value = at(key);
        if (!value.is_number_integer())
            fail(std::string("field '") + key + "' must be an integer");
        const auto v = value.get<std::int64_t>();
        if (v < lo || v > hi)
            fail(std::string("field '") + key + "' = " + std::to_string(v) + " outside [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return v;
    }

    std::int64_t integer_or(const char *key, std::int64_t lo, std::int64_t hi, std::int64_t fallback) const
    {
        return has(key) ? integer(key, lo, hi) : fallback;
    }

    std::string string(const char *key) const
    {
        const json &value = at(key);
        if (!value.is_string())
            fail(std::string("field '") + key + "' must be a string");
        return value.get<std::string>();
    }

    bool boolean_or(const char *key, bool fallback) const
    {
        if (!has(key))
            return fallback;
        const json &value = at(key);
        if (!value.is_boolean())
            fail(std::string("field '") + key + "' must be a boolean");
        return value.get<bool>();
    }

    Fields object(const char *key) const { return Fields(at(key), source_, join(key), line_); }

    std::string join(const std::string &key) const { return where_.empty() ? key : where_ + "." + key; }
    const std::string &source() const { return source_; }

private:
    const json &object_;
    std::string source_;
    std::string where_;
    std::size_t line_;
};

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_binary_file(const std::filesystem::path &path, const std::vector<std::uint8_t> &bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("failed writing " + path.string());
}

NumericPolicy parse_numeric(const Fields &f)
{
    NumericPolicy numeric;
    numeric.weight_bits = static_cast<unsigned>(f.integer_or("weight_bits", 2, 16, numeric.weight_bits));
    numeric.accumulator_bits =
            static_cast<unsigned>(f.integer_or("accumulator_bits", 2, 32, numeric.accumulator_bits));
    numeric.frac_bits = static_cast<unsigned>(f.integer_or("frac_bits", 0, 31, numeric.frac_bits));
    try
    {
        numeric.validate();
    }
    catch (const std::invalid_argument &e)
    {
        f.fail(e.what());
    }
    return numeric;
}

} // namespace

std::string read_text_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw IoError("failed writing " + path.string());
}

std::vector<std::uint8_t> encode_weight_blob(const DelayNetwork &network)
{
    std::size_t words = 0;
    for (const LayerSpec &layer : network.layers)
        words += layer.weights.values().size();
    if (words > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("weight payload too large for blob format");

    std::vector<std::uint8_t> bytes(blob_magic, blob_magic + 4);
    bytes.push_back(model_blob_version);
    bytes.insert(bytes.end(), 3, 0);
    for (int b = 0; b < 4; ++b)
        bytes.push_back(static_cast<std::uint8_t>(words >> (8 * b)));
    bytes.reserve(blob_header_bytes + 2 * words);
    for (const LayerSpec &layer : network.layers)
    {
        for (const Weight w : layer.weights.values())
        {
            const auto u = static_cast<std::uint16_t>(w);
            bytes.push_back(static_cast<std::uint8_t>(u & 0xff));
            bytes.push_back(static_cast<std::uint8_t>(u >> 8));
        }
    }
    return bytes;
}

std::vector<Weight> decode_weight_blob(const std::vector<std::uint8_t> &bytes, const std::string &source_name)
{
    if (bytes.size() < blob_header_bytes || !std::equal(blob_magic, blob_magic + 4, bytes.begin()))
        throw FormatError(source_name, 0, "not a weight blob (bad magic)");
    if (bytes[4] != model_blob_version)
        throw FormatError(source_name, 0, "unsupported weight blob version " + std::to_string(bytes[4]));
    std::uint32_t words = 0;
    for (int b = 0; b < 4; ++b)
        words |= static_cast<std::uint32_t>(bytes[8 + static_cast<std::size_t>(b)]) << (8 * b);
    if (bytes.size() != blob_header_bytes + 2 * std::size_t{words})
        throw FormatError(source_name, 0, "weight blob declares " + std::to_string(words) +
                " words but holds " + std::to_string((bytes.size() - blob_header_bytes) / 2));
    std::vector<Weight> values(words);
    for (std::size_t k = 0; k < words; ++k)
    {
        const auto lo = bytes[blob_header_bytes + 2 * k];
        const auto hi = bytes[blob_header_bytes + 2 * k + 1];
        values[k] = static_cast<Weight>(static_cast<std::uint16_t>(lo | (hi << 8)));
    }
    return values;
}

DelayNetwork parse_model(std::string_view json_text, const std::filesystem::path &base_dir,
        const std::string &source_name)
{
    const json doc = parse_json(json_text, source_name);
    const Fields root(doc, source_name, "");
    if (root.string("format") != model_format)
        root.fail("format must be '" + std::string(model_format) + "'");
    if (root.integer("version", 0, 1000) != model_version)
        root.fail("unsupported model version");

    DelayNetwork network;
    if (root.has("numeric"))
        network.numeric = parse_numeric(root.object("numeric"));

    std::optional<std::vector<Weight>> blob;
    if (root.has("weights_blob"))
    {
        const std::filesystem::path blob_path = base_dir / root.string("weights_blob");
        blob = decode_weight_blob(read_binary_file(blob_path), blob_path.string());
    }

    const json &layers = root.at("layers");
    if (!layers.is_array() || layers.empty())
        root.fail("'layers' must be a non-empty array");
    for (std::size_t k = 0; k < layers.size(); ++k)
    {
        const Fields f(layers[k], source_name, "layers[" + std::to_string(k) + "]");
        const auto presyn = static_cast<std::size_t>(f.integer("presyn", 1, 1 << 24));
        const auto postsyn = static_cast<std::size_t>(f.integer("postsyn", 1, 1 << 24));
        const auto levels = static_cast<std::size_t>(f.integer("delay_levels", 1, 1 << 16));
        const std::size_t count = levels * presyn * postsyn;

        LifParams lif;
        const Fields lf = f.object("lif");
        lif.decay_q16 = static_cast<std::uint32_t>(lf.integer("decay_q16", 0, LifParams::decay_one));
        lif.threshold = static_cast<Potential>(lf.integer("threshold", 1, std::numeric_limits<Potential>::max()));
        try
        {
            lif.reset = parse_reset_mode(lf.string("reset"));
        }
        catch (const std::invalid_argument &e)
        {
            lf.fail(e.what());
        }

        std::vector<Weight> values;
        if (f.has("weights"))
        {
            const json &w = f.at("weights");
            if (!w.is_array() || w.size() != count)
                f.fail("'weights' must be an array of " + std::to_string(count) + " integers");
            values.reserve(count);
            for (const json &v : w)
            {
                if (!v.is_number_integer())
                    f.fail("weights must be integers");
                const auto x = v.get<std::int64_t>();
                if (x < network.numeric.weight_min() || x > network.numeric.weight_max())
                    f.fail("weight " + std::to_string(x) + " exceeds " +
                            std::to_string(network.numeric.weight_bits) + "-bit range");
                values.push_back(static_cast<Weight>(x));
            }
        }
        else if (f.has("blob_offset"))
        {
            if (!blob)
                f.fail("'blob_offset' given but the model has no 'weights_blob'");
            const auto offset = static_cast<std::size_t>(f.integer("blob_offset", 0, std::numeric_limits<std::uint32_t>::max()));
            if (offset + count > blob->size())
                f.fail("blob range exceeds the weight blob");
            values.assign(blob->begin() + static_cast<std::ptrdiff_t>(offset),
                    blob->begin() + static_cast<std::ptrdiff_t>(offset + count));
        }
        else
        {
            f.fail("layer needs 'weights' or 'blob_offset'");
        }
        network.layers.push_back(LayerSpec{WeightTensor(levels, presyn, postsyn, std::move(values)), lif});
    }

    try
    {
        network.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw FormatError(source_name, 0, e.what());
    }
    return network;
}

DelayNetwork read_model(const std::filesystem::path &path)
{
    return parse_model(read_text_file(path), path.parent_path(), path.string());
}

void write_model(const DelayNetwork &network, const std::filesystem::path &path, WeightEncoding encoding)
{
    network.validate();
    ordered_json doc;
    doc["format"] = model_format;
    doc["version"] = model_version;
    doc["numeric"] = {{"weight_bits", network.numeric.weight_bits},
            {"accumulator_bits", network.numeric.accumulator_bits}, {"frac_bits", network.numeric.frac_bits}};
    std::filesystem::path blob_path = path;
    blob_path.replace_extension(".bin");
    if (encoding == WeightEncoding::binary_blob)
        doc["weights_blob"] = blob_path.filename().string();

    ordered_json layers = ordered_json::array();
    std::size_t offset = 0;
    for (const LayerSpec &layer : network.layers)
    {
        ordered_json l;
        l["presyn"] = layer.presyn_count();
        l["postsyn"] = layer.postsyn_count();
        l["delay_levels"] = layer.delay_levels();
        l["lif"] = {{"decay_q16", layer.lif.decay_q16}, {"threshold", layer.lif.threshold},
                {"reset", std::string(to_string(layer.lif.reset))}};
        if (encoding == WeightEncoding::binary_blob)
            l["blob_offset"] = offset;
        else
            l["weights"] = std::vector<int>(layer.weights.values().begin(), layer.weights.values().end());
        offset += layer.weights.values().size();
        layers.push_back(std::move(l));
    }
    doc["layers"] = std::move(layers);

    if (encoding == WeightEncoding::binary_blob)
        write_binary_file(blob_path, encode_weight_blob(network));
    write_text_file(path, doc.dump() + "\n");
}

SpikeTrain parse_spikes(std::istream &in, const std::string &source_name)
{
    SpikeTrain train;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const json doc = parse_json(line, source_name, line_no);
        const Fields f(doc, source_name, "", line_no);
        if (!have_header)
        {
            train.duration = static_cast<Timestep>(f.integer("T", 0, std::numeric_limits<Timestep>::max()));
            train.width = static_cast<std::size_t>(f.integer("width", 1, 1 << 24));
            have_header = true;
            continue;
        }
        const auto t = f.integer("t", 0, static_cast<std::int64_t>(train.duration) - 1);
        const auto n = f.integer("n", 0, static_cast<std::int64_t>(train.width) - 1);
        const SpikeEvent e{static_cast<Timestep>(t), static_cast<Address>(n)};
        if (!train.events.empty() && e.t < train.events.back().t)
            f.fail("events must be sorted by t");
        train.events.push_back(e);
    }
    if (!have_header)
        throw FormatError(source_name, 0, "missing {\"T\", \"width\"} header line");
    try
    {
        train.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw FormatError(source_name, 0, e.what());
    }
    return train;
}

SpikeTrain read_spikes(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    return parse_spikes(in, path.string());
}

void write_spikes(std::ostream &out, const SpikeTrain &spikes)
{
    out << "{\"T\":" << spikes.duration << ",\"width\":" << spikes.width << "}\n";
    for (const SpikeEvent &e : spikes.events)
        out << "{\"t\":" << e.t << ",\"n\":" << e.neuron << "}\n";
}

void write_spikes(const std::filesystem::path &path, const SpikeTrain &spikes)
{
    std::ostringstream text;
    write_spikes(text, spikes);
    write_text_file(path, text.str());
}

RunManifest parse_manifest(std::string_view json_text, const std::filesystem::path &base_dir,
        const std::string &source_name)
{
    const json doc = parse_json(json_text, source_name);
    const Fields f(doc, source_name, "");
    RunManifest m;
    m.model = base_dir / f.string("model");
    m.spikes = base_dir / f.string("spikes");
    try
    {
        if (f.has("structure"))
            m.structure = parse_structure_kind(f.string("structure"));
        if (f.has("scheduler"))
            m.scheduler = parse_scheduler(f.string("scheduler"));
    }
    catch (const std::invalid_argument &e)
    {
        f.fail(e.what());
    }
    m.capacity = static_cast<std::size_t>(f.integer_or("capacity", 1, std::int64_t{1} << 40, m.capacity));
    if (f.has("numeric"))
    {
        const Fields n = f.object("numeric");
        if (n.has("accumulator_bits"))
            m.accumulator_bits = static_cast<unsigned>(n.integer("accumulator_bits", 2, 32));
    }
    if (f.has("event_layout"))
    {
        const Fields l = f.object("event_layout");
        EventLayout layout;
        layout.addr_bits = static_cast<unsigned>(l.integer("addr_bits", 1, 30));
        layout.counter_bits = static_cast<unsigned>(l.integer("counter_bits", 1, 30));
        if (layout.total_bits() > 32)
            l.fail("event layout exceeds 32 bits");
        m.event_layout = layout;
    }
    if (f.has("traces"))
    {
        const Fields t = f.object("traces");
        m.traces.membranes = t.boolean_or("membranes", false);
        m.traces.queue = t.boolean_or("queue", false);
        m.traces.deliveries = t.boolean_or("deliveries", false);
    }
    m.output_dir = base_dir / (f.has("output_dir") ? f.string("output_dir") : std::string("out"));
    if (f.has("seed"))
    {
        const json &seed = f.at("seed");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
            f.fail("field 'seed' must be a non-negative integer");
        m.seed = seed.get<std::uint64_t>();
    }
    return m;
}

RunManifest read_manifest(const std::filesystem::path &path)
{
    return parse_manifest(read_text_file(path), path.parent_path(), path.string());
}

std::string manifest_json(const RunManifest &m)
{
    ordered_json doc;
    doc["model"] = m.model.string();
    doc["spikes"] = m.spikes.string();
    doc["structure"] = std::string(to_string(m.structure));
    doc["capacity"] = m.capacity;
    if (m.accumulator_bits)
        doc["numeric"] = {{"accumulator_bits", *m.accumulator_bits}};
    if (m.event_layout)
        doc["event_layout"] = {{"addr_bits", m.event_layout->addr_bits}, {"counter_bits", m.event_layout->counter_bits}};
    doc["scheduler"] = std::string(to_string(m.scheduler));
    doc["traces"] = {{"membranes", m.traces.membranes}, {"queue", m.traces.queue}, {"deliveries", m.traces.deliveries}};
    doc["output_dir"] = m.output_dir.string();
    doc["seed"] = m.seed;
    return doc.dump(2) + "\n";
}

RunOptions run_options(const RunManifest &m)
{
    RunOptions options;
    options.kind = m.structure;
    options.capacity = m.capacity;
    options.layout = m.event_layout;
    options.scheduler = m.scheduler;
    options.record_membranes = true;
    options.record_deliveries = m.traces.deliveries;
    options.record_queue_trace = m.traces.queue;
    return options;
}

std::string result_json(const InferenceResult &result, std::uint64_t seed)
{
    const NetworkActivity &a = result.activity;
    ordered_json doc;
    doc["structure"] = std::string(to_string(result.kind));
    doc["seed"] = seed;
    doc["timesteps"] = a.duration;
    doc["classification"] = a.classification;
    doc["output_spike_counts"] = a.output_counts;

    ordered_json layers = ordered_json::array();
    for (std::size_t k = 0; k < a.layers.size(); ++k)
    {
        ordered_json spikes = ordered_json::array();
        std::size_t total = 0;
        for (std::size_t t = 0; t < a.layers[k].raster.size(); ++t)
        {
            for (const Address n : a.layers[k].raster[t])
            {
                spikes.push_back({t, n});
                ++total;
            }
        }
        layers.push_back({{"layer", k + 1}, {"spike_count", total}, {"spikes", std::move(spikes)}});
    }
    doc["layers"] = std::move(layers);

    ordered_json cores = ordered_json::array();
    for (const CoreMetrics &m : result.metrics.cores)
    {
        ordered_json c;
        c["layer"] = m.layer;
        c["structure"] = std::string(to_string(m.kind));
        c["presyn"] = m.presyn;
        c["postsyn"] = m.postsyn;
        c["delay_levels"] = m.delay_levels;
        c["max_presyn_spikes"] = m.max_presyn_spikes;
        c["max_activation_density"] = m.max_activation_density();
        c["activation_per_timestep"] = m.presyn_spikes;
        c["deliveries"] = m.deliveries;
        c["macs_performed"] = m.macs_performed;
        c["macs_skipped"] = m.macs_skipped;
        if (m.kind == StructureKind::ring_buffer)
        {
            c["ring_buffer_slots"] = m.ring_buffer_slots;
        }
        else
        {
            c["capacity"] = m.capacity;
            c["peak_stored"] = m.queue.peak_stored;
            c["peak_footprint"] = m.queue.peak_footprint;
            if (m.kind == StructureKind::scdq)
            {
                c["peak_prq"] = m.peak_prq;
                c["peak_poq"] = m.peak_poq;
            }
            c["entered"] = m.queue.entered;
            c["dropped_at_entry"] = m.queue.dropped_at_entry;
            c["delivered"] = m.queue.delivered;
            c["suppressed"] = m.queue.suppressed;
            c["retired"] = m.queue.retired;
        }
        c["predicted_events"] = predicted_events(m);
        cores.push_back(std::move(c));
    }
    doc["metrics"] = {{"cores", std::move(cores)}};
    return doc.dump(2) + "\n";
}

void write_membrane_csv(std::ostream &out, const NetworkActivity &activity)
{
    out << "timestep,layer,neuron,potential\n";
    for (Timestep t = 0; t < activity.duration; ++t)
    {
        for (std::size_t k = 0; k < activity.layers.size(); ++k)
        {
            const auto &membranes = activity.layers[k].membranes;
            if (t >= membranes.size())
                continue;
            for (std::size_t j = 0; j < membranes[t].size(); ++j)
                out << t << ',' << k + 1 << ',' << j << ',' << membranes[t][j] << '\n';
        }
    }
}

void write_queue_trace_csv(std::ostream &out, const std::vector<QueueTraceRecord> &trace)
{
    out << "timestep,source,counter,action\n";
    for (const QueueTraceRecord &r : trace)
        out << r.timestep << ',' << r.source << ',' << r.counter << ',' << to_string(r.action) << '\n';
}

void write_lifespan_csv(std::ostream &out, const std::vector<QueueTraceRecord> &trace)
{
    out << "timestep,source,delay_tag,action\n";
    for (const QueueTraceRecord &r : trace)
        out << r.timestep << ',' << r.source << ',' << r.delay_tag << ',' << to_string(r.action) << '\n';
}

void write_wvu_csv(std::ostream &out, const WvuMatrix &wvu)
{
    out << 'i';
    for (std::size_t d = 0; d < wvu.delay_levels(); ++d)
        out << ",d" << d;
    out << '\n';
    for (std::size_t i = 0; i < wvu.presyn(); ++i)
    {
        out << i;
        for (std::size_t d = 0; d < wvu.delay_levels(); ++d)
            out << ',' << (wvu.at(i, d) ? 1 : 0);
        out << '\n';
    }
}

void write_clz_csv(std::ostream &out, const std::vector<std::uint16_t> &clz)
{
    out << "i,clz\n";
    for (std::size_t i = 0; i < clz.size(); ++i)
        out << i << ',' << clz[i] << '\n';
}

ManifestRun execute_manifest(const RunManifest &manifest, std::optional<StructureKind> kind,
        std::optional<Scheduler> scheduler)
{
    ManifestRun run{read_model(manifest.model), read_spikes(manifest.spikes), {}};
    if (manifest.accumulator_bits)
    {
        run.network.numeric.accumulator_bits = *manifest.accumulator_bits;
        try
        {
            run.network.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw FormatError(manifest.model.string(), 0, std::string("with manifest numeric policy: ") + e.what());
        }
    }
    RunOptions options = run_options(manifest);
    if (kind)
        options.kind = *kind;
    if (scheduler)
        options.scheduler = *scheduler;
    if (options.kind == StructureKind::ring_buffer || options.kind == StructureKind::oracle)
        options.record_queue_trace = false;
    run.result = run_inference(run.network, run.spikes, options);
    return run;
}

std::vector<std::filesystem::path> write_run_outputs(const RunManifest &manifest, const ManifestRun &run)
{
    std::error_code ec;
    std::filesystem::create_directories(manifest.output_dir, ec);
    if (ec)
        throw IoError("cannot create " + manifest.output_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    const auto result_path = manifest.output_dir / "result.json";
    write_text_file(result_path, result_json(run.result, manifest.seed));
    written.push_back(result_path);

    if (manifest.traces.membranes)
    {
        std::ostringstream csv;
        write_membrane_csv(csv, run.result.activity);
        const auto path = manifest.output_dir / "membranes.csv";
        write_text_file(path, csv.str());
        written.push_back(path);
    }
    for (std::size_t k = 0; k < run.result.queue_traces.size(); ++k)
    {
        std::ostringstream csv;
        write_queue_trace_csv(csv, run.result.queue_traces[k]);
        const auto path = manifest.output_dir / ("queue_trace_layer" + std::to_string(k) + ".csv");
        write_text_file(path, csv.str());
        written.push_back(path);
    }
    if (!run.result.deliveries.empty())
    {
        std::ostringstream csv;
        csv << "timestep,layer,source,delay_tag\n";
        for (std::size_t k = 0; k < run.result.deliveries.size(); ++k)
            for (std::size_t t = 0; t < run.result.deliveries[k].size(); ++t)
                for (const DeliveryRecord &d : run.result.deliveries[k][t])
                    csv << t << ',' << k << ',' << d.source << ',' << d.delay << '\n';
        const auto path = manifest.output_dir / "deliveries.csv";
        write_text_file(path, csv.str());
        written.push_back(path);
    }
    return written;
}

} // namespace delaysnn
