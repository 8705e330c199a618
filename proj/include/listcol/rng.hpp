#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace listcol {

// Seeded generator with self-contained sampling helpers.  The standard
// distributions are implementation-defined, so sampling goes through explicit
// arithmetic to keep fixture streams reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform integer in [lo, hi].
    int uniform(int lo, int hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

    bool chance(double p) { return uniform01() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[i], v[uniform(0, i)]);
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[uniform(0, static_cast<int>(v.size()) - 1)];
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace listcol
