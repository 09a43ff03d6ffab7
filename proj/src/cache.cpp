#include "spf/resolution.hpp"

#include "spf/evaluate.hpp"
#include "spf/expr.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace spf {

namespace {

constexpr const char* kMagic = "SPFRES";
constexpr int kVersion = 1;
std::atomic<size_t> hits{0};

uint64_t fnv1a(const std::string& s)
{
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string full_key(const Module& m, const std::string& key, const ResolutionOptions& opt)
{
    std::ostringstream o;
    o << key << ";p=" << m.p() << ";d=" << m.left().degree() << "," << m.right().degree() << ";N=" << m.left().dim()
      << ";choice=" << (opt.choice == GeneratorChoice::Minimal ? "min" : "greedy");
    return o.str();
}

class FileLock {
public:
    explicit FileLock(const std::filesystem::path& p) : fd_(::open(p.c_str(), O_RDWR | O_CREAT, 0644))
    {
        if (fd_ >= 0)
            ::flock(fd_, LOCK_EX);
    }
    ~FileLock()
    {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_;
};

std::optional<Resolution> load(const std::filesystem::path& file, ModulePtr m, const std::string& key, size_t length)
{
    std::ifstream in(file);
    if (!in)
        return std::nullopt;
    std::string magic, stored_key;
    int version = 0;
    uint32_t p = 0;
    size_t stored_len = 0;
    if (!(in >> magic >> version >> p) || magic != kMagic || version != kVersion || p != m->p())
        return std::nullopt;
    in.ignore(1);
    if (!std::getline(in, stored_key) || stored_key != key || !(in >> stored_len) || stored_len < length)
        return std::nullopt;
    Resolution r;
    r.module = m;
    for (size_t s = 0; s <= length; ++s) {
        size_t n = 0;
        if (!(in >> n))
            return std::nullopt;
        std::vector<FreeModule::Gen> gens(n);
        for (auto& [i, j] : gens)
            if (!(in >> i >> j) || i >= m->nl() || j >= m->nr())
                return std::nullopt;
        const Module& T = r.target_of(s);
        std::vector<Vec> bd(n);
        for (size_t h = 0; h < n; ++h) {
            bd[h].resize(T.block_dim(gens[h].first, gens[h].second));
            for (auto& x : bd[h])
                if (!(in >> x) || x >= p)
                    return std::nullopt;
        }
        r.P.push_back(std::make_shared<FreeModule>(m->left_ptr(), m->right_ptr(), std::move(gens)));
        r.bd.push_back(std::move(bd));
    }
    return r;
}

void store(const std::filesystem::path& file, const Resolution& r, const std::string& key)
{
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << kMagic << " " << kVersion << " " << r.module->p() << "\n" << key << "\n" << r.length() << "\n";
        for (size_t s = 0; s < r.P.size(); ++s) {
            const auto& gens = r.P[s]->gens();
            out << gens.size() << "\n";
            for (auto [i, j] : gens)
                out << i << " " << j << " ";
            out << "\n";
            for (const Vec& v : r.bd[s]) {
                for (auto x : v)
                    out << x << " ";
                out << "\n";
            }
        }
        if (!out)
            return;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file, ec);
}

} // namespace

Resolution cached_resolution(ModulePtr m, const std::string& key, size_t length, const ResolutionOptions& opt, bool* cache_hit)
{
    if (cache_hit)
        *cache_hit = false;
    const char* dir = std::getenv("SPF_CACHE_DIR");
    if (!dir || !*dir)
        return projective_resolution(m, length, opt);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::string k = full_key(*m, key, opt);
    char name[32];
    std::snprintf(name, sizeof name, "%016llx", static_cast<unsigned long long>(fnv1a(k)));
    std::filesystem::path file = std::filesystem::path(dir) / (std::string(name) + ".res");
    std::filesystem::path lock = std::filesystem::path(dir) / (std::string(name) + ".lock");
    FileLock guard(lock);
    if (auto r = load(file, m, k, length)) {
        if (cache_hit)
            *cache_hit = true;
        ++hits;
        return std::move(*r);
    }
    Resolution r = projective_resolution(m, length, opt);
    store(file, r, k);
    return r;
}

size_t resolution_cache_hits()
{
    return hits;
}

std::shared_ptr<const Resolution> gamma_resolution(uint32_t p, uint32_t d, uint32_t N, size_t L, bool* cache_hit)
{
    static std::mutex mu;
    static std::map<std::tuple<uint32_t, uint32_t, uint32_t>, std::shared_ptr<const Resolution>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = memo[{p, d, N}];
    if (cache_hit)
        *cache_hit = true;
    if (!slot || (slot->length() < L && !is_complete(*slot))) {
        std::string expr = "gamma(" + std::to_string(d) + ").gl";
        auto m = std::make_shared<EvaluatedModule>(compile(parse_bifunctor(expr), p), make_side(p, d, N, SchurSide::Kind::Dominant),
                                                   make_side(p, d, N, SchurSide::Kind::Dominant));
        slot = std::make_shared<const Resolution>(cached_resolution(m, expr, L, {}, cache_hit));
    }
    if (slot->length() >= L)
        return slot;
    auto padded = std::make_shared<Resolution>(*slot);
    while (padded->length() < L) {
        padded->P.push_back(std::make_shared<FreeModule>(slot->module->left_ptr(), slot->module->right_ptr(), std::vector<FreeModule::Gen>{}));
        padded->bd.emplace_back();
    }
    return padded;
}

bool is_complete(const Resolution& r)
{
    return !r.P.empty() && r.P.back()->gens().empty();
}

} // namespace spf
