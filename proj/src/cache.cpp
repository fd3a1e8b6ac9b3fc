#include "bwbforge/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bwbforge/version.hpp"

namespace bwbforge {

namespace fs = std::filesystem;

namespace {
constexpr const char* kExtension = ".bwbc";

std::string header(const std::string& key) { return std::string("bwbforge ") + kEngineVersion + " " + key; }
}  // namespace

std::uint64_t fnv1a(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

DiskCache::DiskCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path DiskCache::default_dir()
{
    if (const char* env = std::getenv("BWBFORGE_CACHE"); env && *env)
        return env;
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".cache" / "bwbforge";
    return fs::temp_directory_path() / "bwbforge-cache";
}

fs::path DiskCache::file_for(const std::string& key) const
{
    char name[32];
    std::snprintf(name, sizeof name, "%016llx", static_cast<unsigned long long>(fnv1a(header(key))));
    return dir_ / (std::string(name) + kExtension);
}

std::optional<std::string> DiskCache::get(const std::string& key) const
{
    std::lock_guard lock(mu_);
    std::ifstream in(file_for(key), std::ios::binary);
    if (!in)
        return std::nullopt;
    std::string first;
    if (!std::getline(in, first) || first != header(key))
        return std::nullopt;
    std::ostringstream rest;
    rest << in.rdbuf();
    return rest.str();
}

void DiskCache::put(const std::string& key, const std::string& value) const
{
    std::lock_guard lock(mu_);
    std::error_code ec;
    fs::create_directories(dir_, ec);
    const fs::path target = file_for(key);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            return;  // an unwritable cache only costs speed
        out << header(key) << '\n' << value;
    }
    fs::rename(tmp, target, ec);
}

DiskCache::Stats DiskCache::stats() const
{
    std::lock_guard lock(mu_);
    Stats s;
    std::error_code ec;
    if (!fs::is_directory(dir_, ec))
        return s;
    const std::string prefix = std::string("bwbforge ") + kEngineVersion + " ";
    for (const auto& e : fs::directory_iterator(dir_, ec)) {
        if (e.path().extension() != kExtension)
            continue;
        ++s.entries;
        s.bytes += e.file_size(ec);
        std::ifstream in(e.path());
        std::string first;
        std::getline(in, first);
        if (first.rfind(prefix, 0) != 0)
            ++s.stale;
    }
    return s;
}

std::size_t DiskCache::clear() const
{
    std::lock_guard lock(mu_);
    std::size_t n = 0;
    std::error_code ec;
    if (!fs::is_directory(dir_, ec))
        return 0;
    for (const auto& e : fs::directory_iterator(dir_, ec))
        if (e.path().extension() == kExtension && fs::remove(e.path(), ec))
            ++n;
    return n;
}

bool DiskPlethysmStore::load(const std::string& key, IrrDecomp& out)
{
    auto v = cache_->get("plethysm|" + key);
    if (!v)
        return false;
    out = deserialize_irrdecomp(*v);
    return true;
}

void DiskPlethysmStore::save(const std::string& key, const IrrDecomp& value)
{
    cache_->put("plethysm|" + key, serialize(value));
}

}  // namespace bwbforge
