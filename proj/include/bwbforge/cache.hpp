#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "bwbforge/repcalc.hpp"

namespace bwbforge {

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view data);

/// One file per entry under `dir`; the first line stamps the engine version and the full
/// key, so hash collisions and version changes both read as misses.
class DiskCache {
public:
    explicit DiskCache(std::filesystem::path dir);

    /// BWBFORGE_CACHE if set, else ~/.cache/bwbforge.
    static std::filesystem::path default_dir();

    const std::filesystem::path& dir() const { return dir_; }
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& value) const;

    struct Stats {
        std::size_t entries = 0;
        std::size_t stale = 0;
        std::uintmax_t bytes = 0;
    };
    Stats stats() const;
    /// Removes every entry file; returns how many.
    std::size_t clear() const;

private:
    std::filesystem::path file_for(const std::string& key) const;
    std::filesystem::path dir_;
    mutable std::mutex mu_;
};

/// Plethysm tables persisted through a DiskCache.
class DiskPlethysmStore : public PlethysmStore {
public:
    explicit DiskPlethysmStore(std::shared_ptr<DiskCache> cache) : cache_(std::move(cache)) {}
    bool load(const std::string& key, IrrDecomp& out) override;
    void save(const std::string& key, const IrrDecomp& value) override;

private:
    std::shared_ptr<DiskCache> cache_;
};

}  // namespace bwbforge
