#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "delaysnn/fabric.hpp"
#include "delaysnn/model.hpp"

namespace delaysnn {

// ---------------------------------------------------------------------------
// Model files
//
// JSON header with numeric policy and per-layer dims and LIF parameters. The
// weights of a layer are either an inline "weights" array (d-major, then i,
// then j) or a "blob_offset" into the binary file named by "weights_blob":
//
//   bytes 0..3  "DSNW"
//   byte  4     format version (1)
//   bytes 5..7  zero
//   bytes 8..11 word count, uint32 little-endian
//   then        int16 little-endian words, all layers back to back
// ---------------------------------------------------------------------------

enum class WeightEncoding { inline_json, binary_blob };

inline constexpr std::uint8_t model_blob_version = 1;

/// base_dir resolves a relative "weights_blob" path.
DelayNetwork parse_model(std::string_view json_text, const std::filesystem::path &base_dir,
        const std::string &source_name = "model");
DelayNetwork read_model(const std::filesystem::path &path);

/// Writes the JSON header to `path`; with binary_blob the weights go to
/// `path` with extension ".bin" next to it.
void write_model(const DelayNetwork &network, const std::filesystem::path &path,
        WeightEncoding encoding = WeightEncoding::inline_json);

std::vector<std::uint8_t> encode_weight_blob(const DelayNetwork &network);
std::vector<Weight> decode_weight_blob(const std::vector<std::uint8_t> &bytes, const std::string &source_name);

// ---------------------------------------------------------------------------
// Spike files: JSON lines, header {"T": int, "width": int} then one
// {"t": int, "n": int} per event.
// ---------------------------------------------------------------------------

SpikeTrain parse_spikes(std::istream &in, const std::string &source_name = "spikes");
SpikeTrain read_spikes(const std::filesystem::path &path);
void write_spikes(std::ostream &out, const SpikeTrain &spikes);
void write_spikes(const std::filesystem::path &path, const SpikeTrain &spikes);

// ---------------------------------------------------------------------------
// Run manifests and results
// ---------------------------------------------------------------------------

struct TraceToggles {
    bool membranes = false;
    bool queue = false;
    bool deliveries = false;
};

struct RunManifest {
    std::filesystem::path model;
    std::filesystem::path spikes;
    StructureKind structure = StructureKind::scdq;
    std::size_t capacity = default_queue_capacity;
    std::optional<unsigned> accumulator_bits;
    std::optional<EventLayout> event_layout;
    Scheduler scheduler = Scheduler::sequential;
    TraceToggles traces;
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 0;
};

/// Relative paths are resolved against base_dir.
RunManifest parse_manifest(std::string_view json_text, const std::filesystem::path &base_dir,
        const std::string &source_name = "manifest");
RunManifest read_manifest(const std::filesystem::path &path);
std::string manifest_json(const RunManifest &manifest);

RunOptions run_options(const RunManifest &manifest);

/// Deterministic JSON: classification, spike counts, rasters, metrics.
std::string result_json(const InferenceResult &result, std::uint64_t seed);

/// timestep,layer,neuron,potential
void write_membrane_csv(std::ostream &out, const NetworkActivity &activity);
/// timestep,source,counter,action
void write_queue_trace_csv(std::ostream &out, const std::vector<QueueTraceRecord> &trace);
/// timestep,source,delay_tag,action
void write_lifespan_csv(std::ostream &out, const std::vector<QueueTraceRecord> &trace);
/// i,d0,d1,... rows of the WVU matrix
void write_wvu_csv(std::ostream &out, const WvuMatrix &wvu);
/// i,clz
void write_clz_csv(std::ostream &out, const std::vector<std::uint16_t> &clz);

struct ManifestRun {
    DelayNetwork network;
    SpikeTrain spikes;
    InferenceResult result;
};

/// Loads the manifest inputs and runs them (overrides apply when set).
ManifestRun execute_manifest(const RunManifest &manifest, std::optional<StructureKind> kind = std::nullopt,
        std::optional<Scheduler> scheduler = std::nullopt);

/// Writes result.json plus the enabled traces into manifest.output_dir;
/// returns the paths written.
std::vector<std::filesystem::path> write_run_outputs(const RunManifest &manifest, const ManifestRun &run);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

} // namespace delaysnn
