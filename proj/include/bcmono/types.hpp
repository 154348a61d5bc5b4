// Shared aliases, error types and numeric defaults for the bcmono core.
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace bcmono {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Uniform tensor grid on [-R, R]^d, d implied by context.
struct GridSpec {
    double box_radius = 4.0;
    int points_per_axis = 65;

    double spacing() const { return 2.0 * box_radius / (points_per_axis - 1); }
    double node(int i) const { return -box_radius + i * spacing(); }
};

namespace config {
inline constexpr double kDefaultBoxRadius = 4.0;
inline constexpr int kDefaultGridN1d = 257;
inline constexpr int kDefaultGridN2d = 65;
inline constexpr double kDefaultTol = 1e-8;
inline constexpr int kShiftDimCap = 4096;

inline GridSpec default_grid_1d() { return {kDefaultBoxRadius, kDefaultGridN1d}; }
inline GridSpec default_grid_2d() { return {kDefaultBoxRadius, kDefaultGridN2d}; }
}  // namespace config

struct BcmonoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : BcmonoError {
    using BcmonoError::BcmonoError;
};

struct IndeterminateSum : BcmonoError {
    IndeterminateSum() : BcmonoError("(+inf) + (-inf) is indeterminate") {}
};

struct IndeterminateProduct : BcmonoError {
    IndeterminateProduct() : BcmonoError("0 * (+-inf) is indeterminate") {}
};

struct NoClosedForm : BcmonoError {
    using BcmonoError::BcmonoError;
};

struct AllInfinite : BcmonoError {
    using BcmonoError::BcmonoError;
};

// A suite precondition failed; carries the name of the failing predicate.
struct HypothesisFailed : BcmonoError {
    explicit HypothesisFailed(const std::string& predicate)
        : BcmonoError("hypothesis failed: " + predicate), predicate_name(predicate) {}
    std::string predicate_name;
};

struct NoSolution : BcmonoError {
    using BcmonoError::BcmonoError;
};

struct RankDeficientBasis : BcmonoError {
    using BcmonoError::BcmonoError;
};

struct ParseError : BcmonoError {
    using BcmonoError::BcmonoError;
};

struct ValidationError : BcmonoError {
    using BcmonoError::BcmonoError;
};

inline void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
    if (got != want) {
        throw DimensionMismatch(std::string(what) + ": expected dimension " +
                                std::to_string(want) + ", got " + std::to_string(got));
    }
}

}  // namespace bcmono
