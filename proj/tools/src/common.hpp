#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphlift/graph.hpp"
#include "graphlift/stats.hpp"

namespace graphlift::cli {

using json = nlohmann::ordered_json;

/// A dataset the fetch command knows how to retrieve.
struct DatasetInfo {
  std::string_view name;
  std::string_view category;        // path segment on the repository server
  std::uint64_t vertices;           // advertised size, shown by --list
  std::uint64_t edges;
};

std::span<const DatasetInfo> dataset_registry();
const DatasetInfo* find_dataset(std::string_view name);

/// Cache directory: --cache-dir flag > GRAPHLIFT_CACHE > ~/.cache/graphlift.
std::filesystem::path cache_dir(const std::string& override_dir);

/// The extracted file for a cached dataset, if present.
std::optional<std::filesystem::path> cached_dataset_file(
    const std::filesystem::path& cache, std::string_view name);

struct LoadedGraph {
  Graph graph;
  std::string name;        // display name: file stem or dataset name
  std::string source;      // resolved path actually read
  std::uint64_t dropped_vertices = 0;
  std::uint64_t component_count = 1;
};

/// Resolve and load a graph argument: an existing file path, or the name of
/// a fetched dataset. Transparent gzip. Format "auto" picks mtx for .mtx
/// paths (before any .gz suffix), plain otherwise. Unless keep_disconnected,
/// the graph is reduced to its largest connected component (a note goes to
/// stderr when anything is dropped).
LoadedGraph load_graph_argument(const std::string& graph_arg, const std::string& format,
                                const std::string& cache_override,
                                bool keep_disconnected);

/// Inflate gzip-compressed bytes (zlib wrapper, auto header detection).
std::string gunzip(const std::string& compressed);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Rows rendered to the versioned CSV schema or its JSON mirror
/// {"schema": ..., "rows": [...]}; written to the path or stdout when empty.
void emit_results(const std::vector<ResultRow>& rows, const std::string& out_path,
                  bool as_json);
void emit_relerr(const std::vector<RelErrRow>& rows, const std::string& out_path,
                 bool as_json);

json results_to_json(const std::vector<ResultRow>& rows);

/// Write the run manifest: next to the output file when one was given,
/// otherwise a single line on stderr so stdout stays pipeable.
void emit_manifest(json manifest, const std::string& out_path);

}  // namespace graphlift::cli
