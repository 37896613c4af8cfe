#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace meanext {

// Small deterministic generator (splitmix64). Seeded checks must produce the
// same samples on every platform, so we avoid std::uniform_real_distribution,
// whose output is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    // Uniform integer in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    std::vector<double> uniform_vector(std::size_t count, double lo, double hi) {
        std::vector<double> v(count);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace meanext
