#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "alsel/types.hpp"

namespace alsel {

/// Pool manifest (text) next to a binary blob.
///
///   alsel-pool 1
///   dim <D>
///   blob <relative path>
///   count <N>
///   seq <frame_count> <byte offset> <id ... to end of line>     (N lines)
///
/// The blob holds little-endian IEEE-754 binary32 values, frame-major then
/// component, no padding, sequences tiled in manifest order. Its length must be
/// sum(frame_count) * D * 4 bytes.
inline constexpr int kManifestVersion = 1;

/// Throws ManifestParse, BlobSizeMismatch, Io, or a pool validation error
/// naming the offending sequence id.
EmbeddingSet load_pool(const std::filesystem::path& manifest_path);

/// Writes manifest + blob (blob path relative to the manifest's directory).
/// Values are narrowed to binary32; pools whose values are already exactly
/// representable in binary32 round-trip bitwise.
void save_pool(const EmbeddingSet& pool, const std::filesystem::path& manifest_path,
               const std::string& blob_name);

/// Fixture format: one frame per line, `id,frame_index,c0,c1,...`. Blank lines
/// and lines starting with '#' are ignored, as is a header line whose second
/// field is not an integer. Frames of a sequence must be listed in order
/// starting at 0; sequences keep their first-appearance order.
EmbeddingSet load_pool_csv(const std::filesystem::path& csv_path);

/// load_pool_csv for *.csv, load_pool otherwise.
EmbeddingSet load_pool_any(const std::filesystem::path& path);

/// Selection output, byte-deterministic:
///
///   alsel-selection 1
///   strategy <random|sal|mal|kmal>
///   budget <B>
///   seed <S>
///   interval <A>
///   frames <M>
///   metric <cosine|euclidean>
///   exhausted <0|1>
///   selected <count>
///   sel <rank> <index> <id>                                     (count lines)
///   audit <count>
///   step <step> <candidate> <min_distance|-> <accepted 0|1> <reason|->
///   end
///
/// Distances print with 17 significant digits; reasons are NEIGHBOR_SELECTED
/// or EXCEEDS_AVE_NN.
std::string format_selection(const SelectionResult& result, const SelectionConfig& config,
                             std::span<const std::string> ids);

void save_selection(const SelectionResult& result, const SelectionConfig& config,
                    std::span<const std::string> ids, const std::filesystem::path& path);

/// Writes text to path, throwing Io on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Name of the environment variable that redirects relative output paths.
inline constexpr const char* kOutputDirEnv = "ALSEL_OUTPUT_DIR";

/// Relative paths are placed under $ALSEL_OUTPUT_DIR when it is set and
/// non-empty; absolute paths are returned unchanged.
std::filesystem::path resolve_output_path(const std::filesystem::path& path);

}  // namespace alsel
