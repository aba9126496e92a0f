#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace culab {

// splitmix64 stream. Draw sequences must be byte-stable across platforms and
// standard libraries, so no std:: engines or distributions are used anywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller; the spare is cached, so one call may
    // consume zero or two uniforms
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = u01();
        if (u <= 0.0) u = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 2.0 * kPi * u01();
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // uniform integer in [lo, hi], inclusive
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1ULL;
        return lo + static_cast<int>(next_u64() % span);
    }

private:
    static constexpr double kPi = 3.14159265358979323846;

    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Seed derivation: every stochastic draw in the lab is keyed by an explicit
// path under one master seed, e.g. derive_seed(master, {kSeedReplay, step,
// cond, sample}). Replaying the same path always reproduces the same stream.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = master;
    for (std::uint64_t x : path) {
        s ^= x + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ULL;
        s = (s ^ (s >> 27)) * 0x94d049bb133111ebULL;
        s ^= s >> 31;
    }
    return s;
}

// Stream tags used as the first path component of derive_seed.
namespace seed_tag {
inline constexpr std::uint64_t kPretrain = 1;
inline constexpr std::uint64_t kReplay = 2;
inline constexpr std::uint64_t kUnlearnBatch = 3;
inline constexpr std::uint64_t kRetainBatch = 4;
inline constexpr std::uint64_t kEval = 5;
inline constexpr std::uint64_t kInit = 6;
inline constexpr std::uint64_t kGroundTruth = 7;
}  // namespace seed_tag

}  // namespace culab
