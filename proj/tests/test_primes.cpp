#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "digitprimes/counting.hpp"
#include "digitprimes/error.hpp"
#include "digitprimes/primes.hpp"
#include "test_support.hpp"

using namespace digitprimes;

TEST_CASE("sieve small limits") {
    auto t = sieve_primes(10);
    REQUIRE(t.primes().size() == 4);
    CHECK(t.primes()[0] == 2);
    CHECK(t.primes()[3] == 7);
    CHECK(t.mangoldt(8) == doctest::Approx(std::log(2.0)));
    CHECK(t.mangoldt(9) == doctest::Approx(std::log(3.0)));
    CHECK(t.mangoldt(6) == 0.0);
    CHECK(t.mangoldt(1) == 0.0);

    CHECK(sieve_primes(2).primes().empty());
    CHECK(sieve_primes(3).primes().size() == 1);
    CHECK(sieve_primes(4).primes().size() == 2);
}

TEST_CASE("sieve against trial division") {
    auto t = sieve_primes(100);
    CHECK(t.primes().size() == 25);
    u64 count = 0;
    for (u64 n = 0; n < 20000; ++n) count += is_prime_trial(n);
    auto big = sieve_primes(20000);
    CHECK(big.primes().size() == count);
    for (std::size_t i = 1; i < big.primes().size(); ++i) CHECK(big.primes()[i - 1] < big.primes()[i]);
}

TEST_CASE("segment boundaries and worker split agree") {
    // spans several 512Ki-integer segments
    auto one = sieve_primes(3'000'017, 1);
    auto many = sieve_primes(3'000'017, 3);
    REQUIRE(one.primes().size() == many.primes().size());
    CHECK(std::equal(one.primes().begin(), one.primes().end(), many.primes().begin()));
    // plain unsegmented sieve as the oracle
    std::vector<char> comp(3'000'017, 0);
    std::size_t count = 0;
    for (std::size_t i = 2; i < comp.size(); ++i) {
        if (comp[i]) continue;
        ++count;
        for (std::size_t j = i * i; j < comp.size(); j += i) comp[j] = 1;
    }
    CHECK(one.primes().size() == count);
}

TEST_CASE("pi(10^7) and random completeness") {
    auto t = sieve_primes(10'000'000);
    CHECK(t.primes().size() == 664'579);
    using testing_support::rng;
    std::uniform_int_distribution<u64> dist(0, 10'000'000 - 1);
    for (int i = 0; i < 2000; ++i) {
        u64 n = dist(rng());
        CHECK(t.is_prime(n) == is_prime_trial(n));
    }
}

TEST_CASE("mangoldt entries exactly on prime powers") {
    auto t = sieve_primes(5000);
    for (u64 n = 1; n < 5000; ++n) {
        auto f = n > 1 ? factorize(n) : std::vector<PrimeFactor>{};
        double expected = f.size() == 1 ? std::log(static_cast<double>(f[0].p)) : 0.0;
        CHECK(t.mangoldt(n) == doctest::Approx(expected));
    }
    auto prefix = t.psi_prefix();
    for (std::size_t i = 1; i < prefix.size(); ++i) CHECK(prefix[i] >= prefix[i - 1]);
    CHECK(prefix[10] == doctest::Approx(t.psi_below(11)));
}

TEST_CASE("psi(x) stays within 1% of x on [10^6, 10^8]") {
    auto t = sieve_primes(100'000'000);
    using testing_support::uniform01;
    for (int i = 0; i < 25; ++i) {
        auto x = static_cast<u64>(std::pow(10.0, 6.0 + 2.0 * uniform01()));
        double psi = t.psi_below(x + 1);
        CHECK(std::abs(psi - static_cast<double>(x)) / static_cast<double>(x) < 0.01);
    }
}

TEST_CASE("sieve limit is bounded") {
    CHECK_THROWS_AS(sieve_primes(1), ResourceError);
    CHECK_THROWS_AS(sieve_primes((u64{1} << 34) + 1), ResourceError);
}

TEST_CASE("prime cache round trip and header") {
    auto dir = std::filesystem::temp_directory_path() / "digitprimes_cache_test";
    std::filesystem::remove_all(dir);
    auto t = load_or_sieve(100'000, dir);
    auto file = dir / "primes_100000.dgpr";
    REQUIRE(std::filesystem::exists(file));

    std::ifstream is(file, std::ios::binary);
    char header[13];
    is.read(header, 13);
    CHECK(std::string(header, 5) == "DGPR1");
    u64 limit = 0;
    for (int i = 0; i < 8; ++i) limit |= static_cast<u64>(static_cast<unsigned char>(header[5 + i])) << (8 * i);
    CHECK(limit == 100'000);
    // first gap is 2 (from 0), second is 1
    CHECK(is.get() == 2);
    CHECK(is.get() == 1);

    auto back = load_or_sieve(100'000, dir);
    REQUIRE(back.primes().size() == t.primes().size());
    CHECK(std::equal(back.primes().begin(), back.primes().end(), t.primes().begin()));

    std::ofstream(dir / "bad.dgpr", std::ios::binary) << "NOPE!";
    CHECK_THROWS_AS(read_prime_cache(dir / "bad.dgpr"), PreconditionError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("count_constrained_primes examples") {
    auto t = sieve_primes(1000);
    CHECK(count_constrained_primes(DigitConstraint::missing_digit(7), Base{10}, 2, false, t) == 16);
    CHECK(count_constrained_primes(DigitConstraint::digit_sum_residue(2, 0), Base{10}, 2, false, t) == 13);
    CHECK(count_constrained_primes(DigitConstraint::prescribed({{0, 1}}), Base{10}, 1, false, t) == 0);
    CHECK(count_constrained_primes(DigitConstraint::prescribed({{0, 1}}), Base{10}, 2, false, t) == 5);
    CHECK_THROWS_AS(count_constrained_primes(DigitConstraint::missing_digit(7), Base{10}, 4, false, t), ResourceError);
}

TEST_CASE("always-true constraint reproduces pi and psi") {
    auto t = sieve_primes(1u << 16);
    auto all = DigitConstraint::always_true();
    for (int k = 1; k <= 16; ++k) {
        u64 x = u64{1} << k;
        CHECK(count_constrained_primes(all, Base{2}, k, false, t) == t.count_below(x));
        CHECK(count_constrained_primes(all, Base{2}, k, true, t) == doctest::Approx(t.psi_below(x)));
    }
}
