#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "sptorsion/extremal.hpp"

namespace sptorsion::cli {

/// Memoized extremal rows stored as JSON lines in a directory. Lines written
/// by another library version are ignored.
class RecordCache {
 public:
  /// Uses SPTORSION_CACHE_DIR when set; otherwise the cache is inert.
  static RecordCache from_environment();

  explicit RecordCache(std::optional<std::filesystem::path> dir);

  bool enabled() const { return file_.has_value(); }
  std::optional<extremal::ExtremalRecord> lookup(int g) const;
  void store(const extremal::ExtremalRecord& record);

 private:
  std::optional<std::filesystem::path> file_;
  std::map<int, extremal::ExtremalRecord> rows_;
};

}  // namespace sptorsion::cli
