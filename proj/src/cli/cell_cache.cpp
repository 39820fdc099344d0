#include "koszul/cli/cell_cache.hpp"

#include <cstdio>
#include <algorithm>
#include <fstream>
#include <thread>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace koszul::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

json key_json(const CellKey& k) {
  return {{"system_hash", hex(k.system_hash)}, {"p", k.p}, {"q", k.q}, {"prime", k.prime}};
}

json cell_json(const KoszulCell& c) {
  return {{"p", c.p},
          {"q", c.q},
          {"dim_left", c.dim_left},
          {"dim_middle", c.dim_middle},
          {"dim_right", c.dim_right},
          {"rank_in", c.rank_in},
          {"rank_out", c.rank_out},
          {"dim", c.dim_k}};
}

std::string checksum(const json& key, const json& cell) {
  return hex(fnv1a(key.dump() + "|" + cell.dump()));
}

}  // namespace

DiskCellStore::DiskCellStore(fs::path dir, Warn warn) : dir_(std::move(dir)), warn_(std::move(warn)) {
  fs::create_directories(dir_);
}

std::string DiskCellStore::file_name(const CellKey& key) {
  return hex(key.system_hash) + "-" + std::to_string(key.prime) + "-p" + std::to_string(key.p) +
         "-q" + std::to_string(key.q) + ".json";
}

void DiskCellStore::warn(const std::string& message) {
  std::lock_guard<std::mutex> lock(mu_);
  ++evictions_;
  if (warn_)
    warn_(message);
  else
    std::cerr << "warning: " << message << "\n";
}

std::size_t DiskCellStore::evictions() const {
  std::lock_guard<std::mutex> lock(mu_);
  return evictions_;
}

std::optional<DiskCellStore::Entry> DiskCellStore::read(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  in.close();
  try {
    json doc = json::parse(ss.str());
    const json& k = doc.at("key");
    const json& c = doc.at("cell");
    if (doc.at("checksum").get<std::string>() != checksum(k, c))
      throw std::runtime_error("checksum mismatch");
    Entry e;
    e.key.system_hash = std::stoull(k.at("system_hash").get<std::string>(), nullptr, 16);
    e.key.p = k.at("p").get<int>();
    e.key.q = k.at("q").get<int>();
    e.key.prime = k.at("prime").get<std::uint32_t>();
    e.cell.p = c.at("p").get<int>();
    e.cell.q = c.at("q").get<int>();
    e.cell.dim_left = c.at("dim_left").get<std::uint64_t>();
    e.cell.dim_middle = c.at("dim_middle").get<std::uint64_t>();
    e.cell.dim_right = c.at("dim_right").get<std::uint64_t>();
    e.cell.rank_in = c.at("rank_in").get<std::uint64_t>();
    e.cell.rank_out = c.at("rank_out").get<std::uint64_t>();
    e.cell.dim_k = c.at("dim").get<std::uint64_t>();
    if (file.filename() != file_name(e.key)) throw std::runtime_error("key does not match file name");
    if (e.cell.rank_in + e.cell.rank_out + e.cell.dim_k != e.cell.dim_middle)
      throw std::runtime_error("inconsistent ranks");
    return e;
  } catch (const std::exception& ex) {
    std::error_code ec;
    fs::remove(file, ec);
    warn("evicted corrupt cache entry " + file.filename().string() + " (" + ex.what() + ")");
    return std::nullopt;
  }
}

std::optional<KoszulCell> DiskCellStore::load(const CellKey& key) {
  const fs::path file = dir_ / file_name(key);
  if (!fs::exists(file)) return std::nullopt;
  auto e = read(file);
  if (!e) return std::nullopt;
  return e->cell;
}

void DiskCellStore::save(const CellKey& key, const KoszulCell& cell) {
  const json k = key_json(key);
  const json c = cell_json(cell);
  const json doc{{"version", 1}, {"key", k}, {"cell", c}, {"checksum", checksum(k, c)}};
  const fs::path file = dir_ / file_name(key);
  // Write-then-rename keeps concurrent readers from seeing partial files.
  fs::path tmp = file;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << doc.dump() << "\n";
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) fs::remove(tmp, ec);
}

std::vector<DiskCellStore::Entry> DiskCellStore::list() {
  std::vector<fs::path> files;
  for (const auto& de : fs::directory_iterator(dir_))
    if (de.is_regular_file() && de.path().extension() == ".json") files.push_back(de.path());
  std::sort(files.begin(), files.end());
  std::vector<Entry> out;
  for (const auto& f : files)
    if (auto e = read(f)) out.push_back(*e);
  return out;
}

std::size_t DiskCellStore::clear() {
  std::size_t n = 0;
  for (const auto& de : fs::directory_iterator(dir_)) {
    const auto ext = de.path().extension();
    if (de.is_regular_file() && (ext == ".json" || de.path().string().find(".json.tmp") != std::string::npos)) {
      fs::remove(de.path());
      ++n;
    }
  }
  return n;
}

void DiskCellStore::evict(const CellKey& key) {
  std::error_code ec;
  fs::remove(dir_ / file_name(key), ec);
}

VerifyingStore::VerifyingStore(std::shared_ptr<DiskCellStore> inner, double fraction,
                               std::uint64_t seed)
    : inner_(std::move(inner)), fraction_(fraction), seed_(seed) {}

bool VerifyingStore::sampled(const CellKey& key) const {
  const std::string s = std::to_string(seed_) + ":" + DiskCellStore::file_name(key);
  const double u = static_cast<double>(fnv1a(s) >> 11) / static_cast<double>(1ULL << 53);
  return u < fraction_;
}

std::optional<KoszulCell> VerifyingStore::load(const CellKey& key) {
  auto stored = inner_->load(key);
  if (!stored || !sampled(key)) return stored;
  std::lock_guard<std::mutex> lock(mu_);
  pending_[key] = *stored;
  return std::nullopt;
}

void VerifyingStore::save(const CellKey& key, const KoszulCell& cell) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = pending_.find(key);
    if (it != pending_.end()) {
      ++checked_;
      if (!(it->second == cell)) mismatches_.push_back(key);
      pending_.erase(it);
    }
  }
  inner_->save(key, cell);
}

std::size_t VerifyingStore::checked() const {
  std::lock_guard<std::mutex> lock(mu_);
  return checked_;
}

std::vector<CellKey> VerifyingStore::mismatches() const {
  std::lock_guard<std::mutex> lock(mu_);
  return mismatches_;
}

}  // namespace koszul::cli
