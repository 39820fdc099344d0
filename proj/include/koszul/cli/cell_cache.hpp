#pragma once

#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "koszul/koszul.hpp"

namespace koszul::cli {

/// One JSON file per cell key, carrying a checksum of its content. Entries that
/// fail to parse or to match their checksum are evicted with a warning.
class DiskCellStore : public CellStore {
 public:
  using Warn = std::function<void(const std::string&)>;

  explicit DiskCellStore(std::filesystem::path dir, Warn warn = nullptr);

  const std::filesystem::path& directory() const { return dir_; }

  std::optional<KoszulCell> load(const CellKey& key) override;
  void save(const CellKey& key, const KoszulCell& cell) override;

  struct Entry {
    CellKey key;
    KoszulCell cell;
  };
  /// Valid entries in file-name order; corrupt files are evicted on the way.
  std::vector<Entry> list();
  /// Removes every entry; returns how many files were deleted.
  std::size_t clear();
  /// Drops a single entry.
  void evict(const CellKey& key);
  std::size_t evictions() const;

  static std::string file_name(const CellKey& key);

 private:
  std::optional<Entry> read(const std::filesystem::path& file);
  void warn(const std::string& message);

  std::filesystem::path dir_;
  Warn warn_;
  mutable std::mutex mu_;
  std::size_t evictions_ = 0;
};

/// Wraps a DiskCellStore so that a deterministic sample of the stored cells is
/// recomputed instead of loaded. Recomputed values are compared with the stored
/// ones; mismatching entries are overwritten and counted.
class VerifyingStore : public CellStore {
 public:
  VerifyingStore(std::shared_ptr<DiskCellStore> inner, double fraction, std::uint64_t seed);

  std::optional<KoszulCell> load(const CellKey& key) override;
  void save(const CellKey& key, const KoszulCell& cell) override;

  std::size_t checked() const;
  std::vector<CellKey> mismatches() const;

 private:
  bool sampled(const CellKey& key) const;

  std::shared_ptr<DiskCellStore> inner_;
  double fraction_;
  std::uint64_t seed_;
  mutable std::mutex mu_;
  std::map<CellKey, KoszulCell> pending_;
  std::size_t checked_ = 0;
  std::vector<CellKey> mismatches_;
};

}  // namespace koszul::cli
