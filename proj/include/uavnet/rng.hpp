#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace uavnet {

// splitmix64: used only to derive substream seeds and fill generator state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with counter-based substream derivation: the state is seeded
// from a hash chain over (seed, id0, id1, ...), so streams for distinct
// (replication, station, purpose) tuples are independent and reproducible
// regardless of scheduling order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) { init(seed, {}); }
    Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) { init(seed, ids); }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Exponential with given rate.
    double exponential(double rate) { return -std::log(1.0 - uniform()) / rate; }

    // Erlang / gamma with integer shape m and mean 1 (scale 1/m), the
    // Nakagami-m power-fading law for integer m.
    double nakagami_power_gain(int m) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += -std::log(1.0 - uniform());
        return acc / static_cast<double>(m);
    }

    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean > 600.0) {
            // Split to keep the Knuth product above the underflow threshold.
            const int half = poisson(mean * 0.5);
            return half + poisson(mean - mean * 0.5);
        }
        const double limit = std::exp(-mean);
        int k = 0;
        double prod = 1.0;
        do {
            prod *= uniform();
            ++k;
        } while (prod > limit);
        return k - 1;
    }

    int binomial(int n, double p) {
        int k = 0;
        for (int i = 0; i < n; ++i) k += bernoulli(p) ? 1 : 0;
        return k;
    }

    // Uniform point in a disk of given radius centered at the origin.
    void uniform_in_disk(double radius, double& x, double& y) {
        const double r = radius * std::sqrt(uniform());
        const double phi = 2.0 * M_PI * uniform();
        x = r * std::cos(phi);
        y = r * std::sin(phi);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    void init(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
        std::uint64_t h = seed ^ 0xd1b54a32d192ed03ULL;
        for (std::uint64_t id : ids) {
            h ^= splitmix64(h) + id;
            h = splitmix64(h);
        }
        for (auto& w : s_) w = splitmix64(h);
        // xoshiro must not start from the all-zero state.
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t s_[4];
};

// Halton low-discrepancy sequence, one radical-inverse stream per dimension.
class Halton {
  public:
    explicit Halton(int dimensions);
    // Fills point[0..dim) with the coordinates of sample `index` (1-based to
    // skip the origin).
    void point(std::uint64_t index, double* out) const;
    int dimensions() const { return dim_; }

  private:
    int dim_;
};

}  // namespace uavnet
