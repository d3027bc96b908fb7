#pragma once

#include "pearl/floercx.hpp"

#include <cstdint>

namespace pearl {

struct Dataset {
    int grading_n = 8;
    int shift = 1;
    std::optional<Rational> cutoff;
    std::vector<IntersectionPoint> points;
    std::vector<TrajectoryRecord> records;
    CellComplex1D cells;
};

// Deterministic pseudo-random stream (splitmix64); identical across
// platforms, unlike the standard library distributions.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next()
    {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    int uniform(int lo, int hi)  // inclusive
    {
        return lo + (int)(next() % (uint64_t)(hi - lo + 1));
    }
    int sign() { return uniform(0, 1) ? 1 : -1; }
    Rational rational(int max_num, int max_den)
    {
        return Rational(uniform(1, max_num), uniform(1, max_den));
    }
};

// Builds a dataset on which d^2 = 0 holds exactly: index-two cells are
// assembled from all concatenable index-one pairs, disk bubbles come in
// involution pairs and fake boundaries in forgetful pairs.
Dataset generate_dataset(uint64_t seed, int min_points, int min_records);

// Single-record corruptions for the metamorphic tests; `locus` names the
// entity whose neighborhood the verification report must mention.
struct Corruptions {
    Dataset data;
    std::string locus;
    std::string what;
};
Corruptions corrupt_dataset(const Dataset& d, uint64_t seed, int variant);

// Index-one single-strip trajectory record (used by tests and the
// generator).
TrajectoryRecord make_strip_record(const std::string& x_plus, const std::string& x_minus,
                                   const Rational& energy, int sign,
                                   const std::array<int, 3>& marks);

// Index-two type of a strip with a disk bubble attached at the given
// length class on the given side, carrying the marks.
LabeledType make_bubble_type(const std::array<int, 3>& marks, int side,
                             const Length& len, const Rational& energy,
                             const std::string& x_plus, const std::string& x_minus);

}  // namespace pearl
