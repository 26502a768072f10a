#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <nlohmann/json.hpp>

namespace hallforge {

struct CountStoreStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t writes = 0;
  std::uint64_t corrupt = 0;
};

/// Persistent memo for expensive counts.  Keys are arbitrary strings; values
/// are JSON documents.
class CountStore {
 public:
  virtual ~CountStore() = default;
  virtual std::optional<nlohmann::json> load(const std::string& key) = 0;
  virtual void store(const std::string& key, const nlohmann::json& value) = 0;
  /// Called by consumers when a loaded value has the wrong structure.
  virtual void note_corrupt(const std::string& key, const std::string& reason) = 0;
  virtual CountStoreStats stats() const = 0;
};

/// Content-addressed directory of JSON files, one per key, named by the
/// SHA-256 of the key.  A file that fails to parse, or whose embedded key
/// differs, is reported through the warning sink and treated as a miss.
class FileCountStore final : public CountStore {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  /// Creates `dir` if needed.  The default sink writes to stderr.
  explicit FileCountStore(std::filesystem::path dir, WarningSink warn = {});

  std::optional<nlohmann::json> load(const std::string& key) override;
  void store(const std::string& key, const nlohmann::json& value) override;
  void note_corrupt(const std::string& key, const std::string& reason) override;
  CountStoreStats stats() const override;

  const std::filesystem::path& directory() const noexcept { return dir_; }
  std::filesystem::path path_for(const std::string& key) const;

  static std::string sha256_hex(const std::string& data);

 private:
  std::filesystem::path dir_;
  WarningSink warn_;
  mutable std::shared_mutex mu_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
  std::atomic<std::uint64_t> writes_{0};
  std::atomic<std::uint64_t> corrupt_{0};
};

}  // namespace hallforge
