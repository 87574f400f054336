#include "common.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>
#include <zlib.h>

#include "graphlift/errors.hpp"

namespace graphlift::cli {

namespace fs = std::filesystem;

std::span<const DatasetInfo> dataset_registry() {
  static const std::array<DatasetInfo, 5> table{{
      {"bio-celegansneural", "bio", 297, 2148},
      {"ia-email-univ", "ia", 1133, 5451},
      {"misc-polblogs", "misc", 1224, 16718},
      {"misc-as-caida", "misc", 26475, 52281},
      {"misc-fullb", "misc", 199187, 5754445},
  }};
  return table;
}

const DatasetInfo* find_dataset(std::string_view name) {
  for (const DatasetInfo& d : dataset_registry()) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

fs::path cache_dir(const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("GRAPHLIFT_CACHE"); env != nullptr && *env != '\0') {
    return env;
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return fs::path(home) / ".cache" / "graphlift";
  }
  return fs::path(".graphlift-cache");
}

std::optional<fs::path> cached_dataset_file(const fs::path& cache,
                                            std::string_view name) {
  const fs::path dir = cache / name;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return std::nullopt;
  // prefer the matrix-market member, then any edge list
  static constexpr std::string_view kPreferred[] = {".mtx", ".edges", ".txt"};
  for (std::string_view ext : kPreferred) {
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      if (!entry.is_regular_file()) continue;
      const fs::path& p = entry.path();
      if (p.extension() == ext && p.filename() != "meta.json") return p;
    }
  }
  return std::nullopt;
}

std::string gunzip(const std::string& compressed) {
  z_stream zs{};
  // 15 window bits + 32: accept both zlib and gzip headers
  if (inflateInit2(&zs, 15 + 32) != Z_OK) {
    throw std::runtime_error("inflateInit2 failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  std::string out;
  std::array<char, 1 << 16> buf;
  int rc = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw DataError("corrupt gzip stream");
    }
    out.append(buf.data(), buf.size() - zs.avail_out);
  } while (rc != Z_STREAM_END);
  inflateEnd(&zs);
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

namespace {

std::string read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

std::string strip_extensions(fs::path p) {
  if (p.extension() == ".gz") p = p.stem();
  return p.stem().string();
}

}  // namespace

LoadedGraph load_graph_argument(const std::string& graph_arg, const std::string& format,
                                const std::string& cache_override,
                                bool keep_disconnected) {
  fs::path path = graph_arg;
  std::string display = strip_extensions(path);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    if (const DatasetInfo* info = find_dataset(graph_arg)) {
      const auto cached = cached_dataset_file(cache_dir(cache_override), info->name);
      if (!cached.has_value()) {
        throw DataError("dataset '" + graph_arg + "' is not in the cache; run fetch first");
      }
      path = *cached;
      display = graph_arg;
    } else {
      throw DataError("no such file or known dataset: " + graph_arg);
    }
  }

  std::string bytes = read_file_bytes(path);
  if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1F &&
      static_cast<unsigned char>(bytes[1]) == 0x8B) {
    bytes = gunzip(bytes);
  }

  EdgeListFormat fmt;
  if (format == "mtx") {
    fmt = EdgeListFormat::mtx;
  } else if (format == "plain") {
    fmt = EdgeListFormat::plain;
  } else if (format == "auto") {
    fs::path ext_probe = path;
    if (ext_probe.extension() == ".gz") ext_probe = ext_probe.stem();
    fmt = ext_probe.extension() == ".mtx" ? EdgeListFormat::mtx : EdgeListFormat::plain;
  } else {
    throw std::invalid_argument("format must be auto, plain, or mtx");
  }

  std::istringstream stream(std::move(bytes));
  Graph whole = load_edge_list(stream, fmt);

  LoadedGraph out;
  out.name = display;
  out.source = path.string();
  if (keep_disconnected) {
    out.graph = std::move(whole);
    return out;
  }
  ComponentReduction reduced = largest_component(whole);
  out.component_count = reduced.component_count;
  out.dropped_vertices = reduced.dropped_vertices;
  if (reduced.dropped_vertices > 0) {
    std::cerr << "note: " << display << " has " << reduced.component_count
              << " components; kept the largest ("
              << reduced.graph.vertex_count() << " vertices, dropped "
              << reduced.dropped_vertices << ")\n";
  }
  out.graph = std::move(reduced.graph);
  return out;
}

namespace {

json optional_json(const std::optional<double>& v) {
  if (v.has_value()) return *v;
  return nullptr;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw DataError("cannot write " + out_path);
  out << text;
}

}  // namespace

json results_to_json(const std::vector<ResultRow>& rows) {
  json doc;
  doc["schema"] = "graphlift-results v1";
  json arr = json::array();
  for (const ResultRow& r : rows) {
    json row;
    row["graph"] = r.graph;
    row["k"] = r.k;
    row["type"] = r.type;
    row["estimator"] = r.estimator;
    row["start"] = r.start;
    row["h"] = r.spacing;
    row["n"] = r.samples;
    row["queries"] = r.queries;
    row["estimate"] = r.estimate;
    row["v_ind"] = optional_json(r.v_ind);
    row["corr_lag1"] = optional_json(r.corr_lag1);
    row["bound_var"] = optional_json(r.bound_var);
    row["bound_cov"] = optional_json(r.bound_cov);
    arr.push_back(std::move(row));
  }
  doc["rows"] = std::move(arr);
  return doc;
}

void emit_results(const std::vector<ResultRow>& rows, const std::string& out_path,
                  bool as_json) {
  if (as_json) {
    write_text(out_path, results_to_json(rows).dump(2) + "\n");
    return;
  }
  std::ostringstream ss;
  write_results_csv(ss, rows);
  write_text(out_path, std::move(ss).str());
}

void emit_relerr(const std::vector<RelErrRow>& rows, const std::string& out_path,
                 bool as_json) {
  if (as_json) {
    json doc;
    doc["schema"] = "graphlift-relerr v1";
    json arr = json::array();
    for (const RelErrRow& r : rows) {
      json row;
      row["graph"] = r.graph;
      row["k"] = r.k;
      row["type"] = r.type;
      row["estimator"] = r.estimator;
      row["start"] = r.start;
      row["h"] = r.spacing;
      row["n"] = r.samples;
      row["runs"] = r.runs;
      row["exact"] = r.exact;
      row["mean_rel_error"] = r.mean_rel_error;
      arr.push_back(std::move(row));
    }
    doc["rows"] = std::move(arr);
    write_text(out_path, doc.dump(2) + "\n");
    return;
  }
  std::ostringstream ss;
  write_relerr_csv(ss, rows);
  write_text(out_path, std::move(ss).str());
}

void emit_manifest(json manifest, const std::string& out_path) {
  if (out_path.empty()) {
    std::cerr << manifest.dump() << "\n";
    return;
  }
  const std::string path = out_path + ".manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << manifest.dump(2) << "\n";
}

}  // namespace graphlift::cli
