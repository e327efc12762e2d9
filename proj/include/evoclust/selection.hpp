#pragma once

#include <stdexcept>
#include <vector>

namespace evoclust {

// Bit string over a ground set; 1-bits are the chosen centers.
struct Selection {
    std::vector<char> bits;
    int count = 0;

    static Selection zeros(int g) {
        Selection s;
        s.bits.assign(g, 0);
        return s;
    }
    static Selection of(int g, const std::vector<int>& idxs) {
        Selection s = zeros(g);
        for (int i : idxs) s.set(i, true);
        return s;
    }

    int ground() const { return static_cast<int>(bits.size()); }
    int size() const { return count; }
    bool test(int i) const { return bits[i] != 0; }
    void set(int i, bool v) {
        if (bits[i] != static_cast<char>(v)) {
            bits[i] = static_cast<char>(v);
            count += v ? 1 : -1;
        }
    }
    void flip(int i) { set(i, !test(i)); }
    std::vector<int> ones() const {
        std::vector<int> out;
        out.reserve(count);
        for (int i = 0; i < ground(); ++i)
            if (bits[i]) out.push_back(i);
        return out;
    }
    bool operator==(const Selection& other) const { return bits == other.bits; }
};

// (f1, f2) under the maximizing domination order; f1 may be ±infinity.
struct ObjectiveVector {
    double f1 = 0.0;
    int f2 = 0;
    bool operator==(const ObjectiveVector& o) const { return f1 == o.f1 && f2 == o.f2; }
};

}  // namespace evoclust
