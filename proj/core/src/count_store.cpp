#include "hallforge/count_store.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hallforge/errors.hpp"

namespace hallforge {

FileCountStore::FileCountStore(std::filesystem::path dir, WarningSink warn) : dir_(std::move(dir)), warn_(std::move(warn)) {
  if (!warn_) warn_ = [](const std::string& m) { std::cerr << "warning: " << m << "\n"; };
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ContractViolation("cannot create cache directory '" + dir_.string() + "': " + ec.message());
}

std::string FileCountStore::sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

std::filesystem::path FileCountStore::path_for(const std::string& key) const {
  const auto h = sha256_hex(key);
  return dir_ / h.substr(0, 2) / (h + ".json");
}

std::optional<nlohmann::json> FileCountStore::load(const std::string& key) {
  const auto path = path_for(key);
  std::string text;
  {
    std::shared_lock lock(mu_);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      ++misses_;
      return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("key") || !doc.contains("value") ||
      doc["key"] != key) {
    ++corrupt_;
    ++misses_;
    warn_("corrupt cache entry " + path.string() + "; recomputing");
    return std::nullopt;
  }
  ++hits_;
  return doc["value"];
}

void FileCountStore::store(const std::string& key, const nlohmann::json& value) {
  const auto path = path_for(key);
  const nlohmann::json doc = {{"key", key}, {"value", value}};
  const std::string text = doc.dump();
  std::unique_lock lock(mu_);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  // Write-then-rename so readers never observe a partial file.
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      warn_("cannot write cache entry " + path.string());
      return;
    }
    out << text;
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    warn_("cannot finalize cache entry " + path.string() + ": " + ec.message());
    return;
  }
  ++writes_;
}

void FileCountStore::note_corrupt(const std::string& key, const std::string& reason) {
  ++corrupt_;
  // The earlier load counted a hit; reclassify it.
  if (hits_ > 0) --hits_;
  ++misses_;
  warn_("corrupt cache entry " + path_for(key).string() + " (" + reason + "); recomputing");
}

CountStoreStats FileCountStore::stats() const {
  return CountStoreStats{hits_.load(), misses_.load(), writes_.load(), corrupt_.load()};
}

}  // namespace hallforge
