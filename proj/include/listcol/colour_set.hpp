#pragma once

#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <string>

namespace listcol {

// Small set of colours drawn from {1, ..., 5}, stored as a bitmask.
struct ColourSet {
    std::uint8_t bits = 0;

    ColourSet() = default;
    ColourSet(std::initializer_list<int> cs) {
        for (int c : cs) add(c);
    }

    static ColourSet full(int k) {
        assert(k >= 0 && k <= 5);
        ColourSet s;
        s.bits = static_cast<std::uint8_t>((1u << k) - 1);
        return s;
    }

    bool contains(int c) const { return c >= 1 && c <= 5 && (bits >> (c - 1)) & 1u; }
    void add(int c) {
        assert(c >= 1 && c <= 5);
        bits |= static_cast<std::uint8_t>(1u << (c - 1));
    }
    void remove(int c) {
        if (c >= 1 && c <= 5) bits &= static_cast<std::uint8_t>(~(1u << (c - 1)));
    }

    int size() const { return __builtin_popcount(bits); }
    bool empty() const { return bits == 0; }

    // Smallest colour in the set; 0 when empty.
    int min_colour() const { return bits == 0 ? 0 : __builtin_ctz(bits) + 1; }

    // The unique colour of a singleton set; 0 otherwise.
    int only_colour() const { return size() == 1 ? min_colour() : 0; }

    ColourSet operator&(ColourSet o) const { ColourSet r; r.bits = bits & o.bits; return r; }
    ColourSet operator|(ColourSet o) const { ColourSet r; r.bits = bits | o.bits; return r; }
    ColourSet minus(ColourSet o) const { ColourSet r; r.bits = bits & static_cast<std::uint8_t>(~o.bits); return r; }

    bool subset_of(ColourSet o) const { return (bits & ~o.bits) == 0; }
    bool strict_subset_of(ColourSet o) const { return subset_of(o) && bits != o.bits; }

    bool operator==(const ColourSet&) const = default;

    // Iteration support: colours in ascending order.
    template <class F>
    void for_each(F&& f) const {
        for (int c = 1; c <= 5; ++c)
            if (contains(c)) f(c);
    }

    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (int c = 1; c <= 5; ++c)
            if (contains(c)) {
                if (!first) s += ",";
                s += std::to_string(c);
                first = false;
            }
        return s + "}";
    }
};

}  // namespace listcol
