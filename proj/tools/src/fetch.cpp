#include "fetch.hpp"

#include <cctype>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <zlib.h>

#include "common.hpp"
#include "graphlift/errors.hpp"

namespace graphlift::cli {

namespace fs = std::filesystem;

namespace {

std::uint32_t le32(const std::string& s, std::size_t at) {
  return static_cast<std::uint8_t>(s[at]) |
         (static_cast<std::uint32_t>(static_cast<std::uint8_t>(s[at + 1])) << 8) |
         (static_cast<std::uint32_t>(static_cast<std::uint8_t>(s[at + 2])) << 16) |
         (static_cast<std::uint32_t>(static_cast<std::uint8_t>(s[at + 3])) << 24);
}

std::uint16_t le16(const std::string& s, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<std::uint8_t>(s[at]) |
                                    (static_cast<std::uint8_t>(s[at + 1]) << 8));
}

std::string inflate_raw(std::string_view deflated, std::size_t expect) {
  z_stream zs{};
  if (inflateInit2(&zs, -15) != Z_OK) throw std::runtime_error("inflateInit2 failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(deflated.data()));
  zs.avail_in = static_cast<uInt>(deflated.size());
  std::string out(expect, '\0');
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || zs.total_out != expect) {
    throw DataError("archive member failed to decompress");
  }
  return out;
}

struct ZipMember {
  std::string name;
  std::string bytes;
};

int member_score(const std::string& name) {
  std::string lower = name;
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower.find("readme") != std::string::npos) return 0;
  if (lower.ends_with(".mtx")) return 3;
  if (lower.ends_with(".edges")) return 2;
  if (lower.ends_with(".txt")) return 1;
  return 0;
}

/// Extract the most plausible edge-list member of a zip archive: scan the
/// end-of-central-directory record, walk the central directory, and inflate
/// the best-scored entry.
ZipMember extract_best_member(const std::string& zip) {
  // EOCD signature 0x06054b50 within the trailing comment window
  const std::size_t tail = std::min<std::size_t>(zip.size(), 22 + 65535);
  std::size_t eocd = std::string::npos;
  for (std::size_t back = 22; back <= tail; ++back) {
    const std::size_t at = zip.size() - back;
    if (le32(zip, at) == 0x06054b50u) {
      eocd = at;
      break;
    }
  }
  if (eocd == std::string::npos) throw DataError("not a zip archive");
  const std::uint16_t entries = le16(zip, eocd + 10);
  std::size_t central = le32(zip, eocd + 16);

  std::string best_name;
  std::string best_bytes;
  int best = 0;
  for (std::uint16_t i = 0; i < entries; ++i) {
    if (central + 46 > zip.size() || le32(zip, central) != 0x02014b50u) {
      throw DataError("corrupt zip central directory");
    }
    const std::uint16_t method = le16(zip, central + 10);
    const std::uint32_t comp_size = le32(zip, central + 20);
    const std::uint32_t uncomp_size = le32(zip, central + 24);
    const std::uint16_t name_len = le16(zip, central + 28);
    const std::uint16_t extra_len = le16(zip, central + 30);
    const std::uint16_t comment_len = le16(zip, central + 32);
    const std::uint32_t local_off = le32(zip, central + 42);
    std::string name = zip.substr(central + 46, name_len);
    central += 46u + name_len + extra_len + comment_len;

    const int score = member_score(name);
    if (score <= best) continue;
    if (local_off + 30 > zip.size() || le32(zip, local_off) != 0x04034b50u) {
      throw DataError("corrupt zip local header");
    }
    const std::uint16_t lname = le16(zip, local_off + 26);
    const std::uint16_t lextra = le16(zip, local_off + 28);
    const std::size_t data_at = local_off + 30u + lname + lextra;
    if (data_at + comp_size > zip.size()) throw DataError("truncated zip data");
    const std::string_view data(zip.data() + data_at, comp_size);
    std::string bytes;
    if (method == 0) {
      bytes.assign(data);
    } else if (method == 8) {
      bytes = inflate_raw(data, uncomp_size);
    } else {
      continue;  // unsupported method; try other members
    }
    best = score;
    // keep only the basename; archives often nest a directory
    const std::size_t slash = name.find_last_of('/');
    best_name = slash == std::string::npos ? name : name.substr(slash + 1);
    best_bytes = std::move(bytes);
  }
  if (best == 0) throw DataError("archive holds no recognizable edge list");
  return {std::move(best_name), std::move(best_bytes)};
}

std::string download(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw DataError("bad url: " + url);
  const auto path_at = url.find('/', scheme_end + 3);
  const std::string base = path_at == std::string::npos ? url : url.substr(0, path_at);
  const std::string path = path_at == std::string::npos ? "/" : url.substr(path_at);

  httplib::Client client(base);
  client.set_follow_location(true);
  client.set_connection_timeout(20);
  client.set_read_timeout(120);
  auto res = client.Get(path);
  if (!res) {
    throw DataError("download failed for " + url + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw DataError("download failed for " + url + ": HTTP " + std::to_string(res->status));
  }
  return std::move(res->body);
}

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int run_fetch(const FetchArgs& args) {
  const fs::path cache = cache_dir(args.cache_override);

  if (args.list) {
    for (const DatasetInfo& d : dataset_registry()) {
      const auto cached = cached_dataset_file(cache, d.name);
      std::cout << d.name << "\t" << d.vertices << " vertices\t" << d.edges
                << " edges\t" << (cached ? cached->string() : "(not fetched)") << "\n";
    }
    return 0;
  }

  const DatasetInfo* info = find_dataset(args.name);
  if (info == nullptr) {
    throw DataError("unknown dataset '" + args.name + "'; see fetch --list");
  }

  const fs::path dir = cache / info->name;
  const fs::path meta_path = dir / "meta.json";
  const auto existing = cached_dataset_file(cache, info->name);
  if (existing.has_value() && !args.force) {
    std::cout << existing->string() << "\n";
    return 0;
  }

  const std::string url =
      args.url_override.empty()
          ? "https://nrvis.com/download/data/" + std::string(info->category) + "/" +
                std::string(info->name) + ".zip"
          : args.url_override;
  std::cerr << "fetching " << url << "\n";
  const std::string zip = download(url);
  const std::string zip_sha = sha256_hex(zip);

  // trust on first use: a recorded checksum must keep matching
  if (fs::exists(meta_path)) {
    std::ifstream meta_in(meta_path);
    json meta = json::parse(meta_in, nullptr, false);
    if (!meta.is_discarded() && meta.contains("zip_sha256") &&
        meta["zip_sha256"] != zip_sha) {
      throw DataError("checksum mismatch for " + std::string(info->name) +
                      ": recorded " + meta["zip_sha256"].get<std::string>() +
                      ", downloaded " + zip_sha +
                      " (delete " + meta_path.string() + " to trust the new file)");
    }
  }

  ZipMember member = extract_best_member(zip);
  fs::create_directories(dir);
  const fs::path target = dir / member.name;
  {
    std::ofstream out(target, std::ios::binary);
    if (!out) throw DataError("cannot write " + target.string());
    out << member.bytes;
  }
  json meta;
  meta["name"] = std::string(info->name);
  meta["url"] = url;
  meta["zip_sha256"] = zip_sha;
  meta["file"] = member.name;
  meta["file_sha256"] = sha256_hex(member.bytes);
  meta["fetched_at"] = now_iso8601();
  std::ofstream meta_out(meta_path, std::ios::binary);
  meta_out << meta.dump(2) << "\n";

  std::cout << target.string() << "\n";
  return 0;
}

}  // namespace graphlift::cli
