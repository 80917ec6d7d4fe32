// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace risvlc
{
    // SplitMix64 finalizer; used to derive independent substream seeds from counters
    constexpr std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Seed for substream (master, k1, k2, ...). Order of keys matters.
    inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys)
    {
        std::uint64_t s = mix64(master);
        for (auto k : keys)
            s = mix64(s ^ mix64(k + 0x632be59bd9b4e019ULL));
        return s;
    }

    // Explicitly passed random stream. Draws are defined bit-exactly here rather
    // than through <random> distributions, whose algorithms are library-specific.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        std::uint64_t next_u64() { return engine_(); }

        // Uniform on [0, 1) with 53 random bits
        double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

        // Uniform on the open interval (0, 1)
        double uniform_open01()
        {
            double u;
            do
                u = uniform01();
            while (u == 0.0);
            return u;
        }

        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    private:
        std::mt19937_64 engine_;
    };

} // namespace risvlc
