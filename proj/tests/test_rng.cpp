#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>

#include "sisr/rng.hpp"

using namespace sisr;

TEST_SUITE_BEGIN("rng");

// Reference blocks from NumPy's Philox bit generator; its first block is
// produced at counter+1, so these counters are the NumPy inputs advanced by one.
TEST_CASE("philox4x64 known answers") {
    {
        auto out = philox4x64({1, 0, 0, 0}, {0, 0});
        CHECK(out[0] == 0x02f4ba6408e4d89bull);
        CHECK(out[1] == 0x3dd62b0b9ca8c5b2ull);
        CHECK(out[2] == 0x1c8667a55d902e79ull);
        CHECK(out[3] == 0x907d7a052fd5b4dcull);
    }
    {
        // all-ones counter advanced by one wraps to zero
        auto out = philox4x64({0, 0, 0, 0},
                              {0xffffffffffffffffull, 0xffffffffffffffffull});
        CHECK(out[0] == 0x44b7493d1acfc229ull);
        CHECK(out[1] == 0x6636af8e997921ddull);
        CHECK(out[2] == 0x3f73e132b5b3780eull);
        CHECK(out[3] == 0x605644dde03b01b1ull);
    }
    {
        auto out = philox4x64({0x243f6a8885a308d4ull, 0x13198a2e03707344ull,
                               0xa4093822299f31d0ull, 0x082efa98ec4e6c89ull},
                              {0x452821e638d01377ull, 0xbe5466cf34e90c6cull});
        CHECK(out[0] == 0x4c8e672094922aa3ull);
        CHECK(out[1] == 0x527061cd2884102aull);
        CHECK(out[2] == 0xf4c265b2d783d553ull);
        CHECK(out[3] == 0x0556e76cb0298c8dull);
    }
    {
        auto out = philox4x64({2, 2, 3, 4}, {5, 6});
        CHECK(out[0] == 0x92ab6a0e75619263ull);
        CHECK(out[1] == 0xd8ff75bdc6bf8f60ull);
        CHECK(out[2] == 0x450e124938725640ull);
        CHECK(out[3] == 0x94eb1a7cffd20cbbull);
    }
}

TEST_CASE("streams are deterministic and disjoint") {
    Stream a(42, 1, 7, 3), b(42, 1, 7, 3);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // distinct coordinates give distinct draws
    std::set<std::uint64_t> firsts;
    for (std::uint64_t lane = 0; lane < 4; ++lane)
        for (std::uint64_t unit = 0; unit < 4; ++unit)
            for (std::uint64_t stage = 0; stage < 4; ++stage)
                firsts.insert(Stream(42, lane, unit, stage).next_u64());
    CHECK(firsts.size() == 64);

    // and a different seed changes everything
    CHECK(Stream(43, 1, 7, 3).next_u64() != Stream(42, 1, 7, 3).next_u64());
}

TEST_CASE("uniform lies strictly inside (0,1), mean ~ 1/2") {
    Stream s(7, 0, 0, 0);
    const int n = 200000;
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        mean += u;
    }
    mean /= n;
    const double se = std::sqrt(1.0 / 12.0 / n);
    CHECK(std::fabs(mean - 0.5) < 3.0 * se);
}

TEST_CASE("normal pair has mean 0, variance 1") {
    Stream s(11, 0, 0, 0);
    const int n = 100000;
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
        auto [z0, z1] = s.normal_pair();
        m1 += z0 + z1;
        m2 += z0 * z0 + z1 * z1;
    }
    m1 /= 2 * n;
    m2 /= 2 * n;
    CHECK(std::fabs(m1) < 3.0 / std::sqrt(2.0 * n));
    CHECK(std::fabs(m2 - 1.0) < 3.0 * std::sqrt(2.0 / (2.0 * n)));
}

TEST_SUITE_END();
