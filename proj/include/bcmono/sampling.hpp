// Seeded sampling helpers.  Every sampler threads through one Rng so suite
// runs replay exactly from a single seed.
#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "bcmono/sets.hpp"
#include "bcmono/types.hpp"

namespace bcmono {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double gauss() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

    Vec vec_in_box(int dim, double radius);
    Vec vec_in_ball(int dim, double radius);
    Vec unit_vec(int dim);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// A point of the set (any distribution supported on C; vertex-biased for
// polyhedral variants so support-function oracles can attain the maximum).
Vec sample_set(const ConvexSet& c, Rng& rng);

// Random graph points (x, x*) of the normal cone operator N_C: a point of
// C paired with a nonnegative combination of its normal-cone generators.
std::vector<std::pair<Vec, Vec>> sample_normal_cone_graph(const ConvexSet& c, int count,
                                                          double ray_scale, Rng& rng);

// Deterministic dense sample of gra N_[lo,hi] in R^1: cell-centered interior
// nodes paired with 0, endpoint rays up to ray_scale.  interior_count cells,
// ray_count rays per endpoint.
std::vector<std::pair<Vec, Vec>> interval_normal_cone_graph(double lo, double hi,
                                                            int interior_count, int ray_count,
                                                            double ray_scale);

}  // namespace bcmono
