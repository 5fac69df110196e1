#include "digitprimes/primes.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <future>
#include <numeric>
#include <string>
#include <thread>

#include "digitprimes/error.hpp"

namespace digitprimes {

namespace {

// One byte per odd integer; 256 KiB keeps a segment resident in L2.
constexpr u64 kSegmentBytes = u64{1} << 18;
constexpr u64 kSegmentSpan = 2 * kSegmentBytes;

constexpr std::array<char, 5> kMagic{'D', 'G', 'P', 'R', '1'};

std::vector<u64> small_primes(u64 bound) {
    std::vector<char> comp(bound + 1, 0);
    std::vector<u64> out;
    for (u64 i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= bound; j += i) comp[j] = 1;
    }
    return out;
}

u64 isqrt(u64 n) {
    auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Odd primes in [lo, hi), lo odd.
void sieve_segment(u64 lo, u64 hi, std::span<const u64> base, std::vector<char>& buf,
                   std::vector<u64>& out) {
    const u64 count = (hi - lo + 1) / 2;
    buf.assign(count, 1);
    for (u64 p : base) {
        if (p == 2) continue;
        if (p * p >= hi) break;
        u64 start = std::max(p * p, (lo + p - 1) / p * p);
        if (start % 2 == 0) start += p;
        for (u64 m = start; m < hi; m += 2 * p) buf[(m - lo) / 2] = 0;
    }
    for (u64 i = 0; i < count; ++i) {
        if (buf[i]) out.push_back(lo + 2 * i);
    }
}

void put_varint(std::ostream& os, u64 v) {
    while (v >= 0x80) {
        os.put(static_cast<char>((v & 0x7F) | 0x80));
        v >>= 7;
    }
    os.put(static_cast<char>(v));
}

bool get_varint(std::istream& is, u64& v) {
    v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
        int c = is.get();
        if (c == std::char_traits<char>::eof()) {
            if (shift == 0) return false;
            throw PreconditionError("prime cache: truncated varint");
        }
        v |= static_cast<u64>(c & 0x7F) << shift;
        if ((c & 0x80) == 0) return true;
    }
    throw PreconditionError("prime cache: malformed varint");
}

} // namespace

PrimeTable::PrimeTable(u64 limit, std::vector<u64> primes) : limit_(limit), primes_(std::move(primes)) {
    for (u64 p : primes_) {
        if (p * p >= limit_) break;
        for (u64 n = p * p; n < limit_; n *= p) {
            higher_.push_back({n, p});
            if (n > limit_ / p) break;
        }
    }
    std::sort(higher_.begin(), higher_.end(), [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
}

bool PrimeTable::is_prime(u64 n) const {
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

double PrimeTable::mangoldt(u64 n) const {
    if (n >= limit_) throw PreconditionError("mangoldt: n = " + std::to_string(n) + " outside table");
    if (is_prime(n)) return std::log(static_cast<double>(n));
    auto it = std::lower_bound(higher_.begin(), higher_.end(), n,
                               [](const PrimePower& pp, u64 v) { return pp.n < v; });
    if (it != higher_.end() && it->n == n) return std::log(static_cast<double>(it->p));
    return 0.0;
}

u64 PrimeTable::count_below(u64 x) const {
    if (x > limit_) throw PreconditionError("count_below: x exceeds table limit");
    return static_cast<u64>(std::lower_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

double PrimeTable::psi_below(u64 x) const {
    if (x > limit_) throw PreconditionError("psi_below: x exceeds table limit");
    long double s = 0.0L;
    for_each_prime_power(x, [&](u64, double lp) { s += lp; });
    return static_cast<double>(s);
}

std::vector<double> PrimeTable::mangoldt_sequence(u64 x) const {
    if (x > limit_) throw PreconditionError("mangoldt_sequence: x exceeds table limit");
    std::vector<double> out(x, 0.0);
    for_each_prime_power(x, [&](u64 n, double lp) { out[n] = lp; });
    return out;
}

std::vector<double> PrimeTable::psi_prefix() const {
    std::vector<double> out = mangoldt_sequence(limit_);
    long double acc = 0.0L;
    for (double& v : out) {
        acc += v;
        v = static_cast<double>(acc);
    }
    return out;
}

PrimeTable sieve_primes(u64 limit, unsigned workers) {
    if (limit < 2 || limit > kMaxSieveLimit) {
        throw ResourceError("sieve_primes: limit must lie in [2, 2^34], got " + std::to_string(limit));
    }
    const u64 root = isqrt(limit);
    const std::vector<u64> base = small_primes(root + 1);

    std::vector<u64> primes;
    if (limit > 2) primes.push_back(2);
    if (limit <= 3) return {limit, std::move(primes)};

    // Segments cover odd numbers in [3, limit).
    std::vector<std::pair<u64, u64>> segments;
    for (u64 lo = 3; lo < limit; lo += kSegmentSpan) segments.emplace_back(lo, std::min(lo + kSegmentSpan, limit));

    if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, segments.size()));

    if (workers <= 1) {
        std::vector<char> buf;
        for (auto [lo, hi] : segments) sieve_segment(lo, hi, base, buf, primes);
        return {limit, std::move(primes)};
    }

    // Contiguous blocks of segments per worker; concatenated in order.
    std::vector<std::future<std::vector<u64>>> jobs;
    const std::size_t per = (segments.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t first = w * per;
        std::size_t last = std::min(segments.size(), first + per);
        if (first >= last) break;
        jobs.push_back(std::async(std::launch::async, [&, first, last] {
            std::vector<u64> local;
            std::vector<char> buf;
            for (std::size_t s = first; s < last; ++s) sieve_segment(segments[s].first, segments[s].second, base, buf, local);
            return local;
        }));
    }
    for (auto& j : jobs) {
        auto part = j.get();
        primes.insert(primes.end(), part.begin(), part.end());
    }
    return {limit, std::move(primes)};
}

void write_prime_cache(const PrimeTable& table, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ResourceError("cannot open prime cache for writing: " + path.string());
    os.write(kMagic.data(), kMagic.size());
    u64 limit = table.limit();
    for (int i = 0; i < 8; ++i) os.put(static_cast<char>((limit >> (8 * i)) & 0xFF));
    u64 prev = 0;
    for (u64 p : table.primes()) {
        put_varint(os, p - prev);
        prev = p;
    }
    if (!os) throw ResourceError("failed writing prime cache: " + path.string());
}

PrimeTable read_prime_cache(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ResourceError("cannot open prime cache: " + path.string());
    std::array<char, 5> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kMagic) throw PreconditionError("prime cache: bad magic in " + path.string());
    u64 limit = 0;
    for (int i = 0; i < 8; ++i) {
        int c = is.get();
        if (c == std::char_traits<char>::eof()) throw PreconditionError("prime cache: truncated header");
        limit |= static_cast<u64>(static_cast<unsigned char>(c)) << (8 * i);
    }
    if (limit < 2 || limit > kMaxSieveLimit) throw PreconditionError("prime cache: limit out of range");
    std::vector<u64> primes;
    u64 prev = 0, gap = 0;
    while (get_varint(is, gap)) {
        prev += gap;
        if (prev >= limit || gap == 0) throw PreconditionError("prime cache: corrupt gap sequence");
        primes.push_back(prev);
    }
    return {limit, std::move(primes)};
}

PrimeTable load_or_sieve(u64 limit, const std::filesystem::path& cache_dir, unsigned workers) {
    if (cache_dir.empty()) return sieve_primes(limit, workers);
    const auto file = cache_dir / ("primes_" + std::to_string(limit) + ".dgpr");
    if (std::filesystem::exists(file)) {
        auto t = read_prime_cache(file);
        if (t.limit() == limit) return t;
    }
    auto t = sieve_primes(limit, workers);
    std::filesystem::create_directories(cache_dir);
    write_prime_cache(t, file);
    return t;
}

} // namespace digitprimes
