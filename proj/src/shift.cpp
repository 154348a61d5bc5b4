#include "bcmono/shift.hpp"

#include <cmath>

#include "bcmono/numeric.hpp"

namespace bcmono {

TruncatedShift::TruncatedShift(int n) : n_(n) {
    t_ = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < k; ++i) t_(k, i) = 1.0;
        t_(k, k) = 0.5;
    }
    s_ = t_.transpose();
}

TruncatedShift TruncatedShift::build(int n) {
    if (n < 2) throw ValidationError("TruncatedShift: need n >= 2");
    if (n > config::kShiftDimCap) throw ValidationError("TruncatedShift: n exceeds the dense cap");
    return TruncatedShift(n);
}

LinearRelation TruncatedShift::relation_t() const {
    Mat ones = Mat::Ones(n_, 1);
    Mat hyperplane = numeric::orthogonal_complement(ones / std::sqrt(double(n_)), n_);
    return LinearRelation::from_matrix(t_, hyperplane);
}

LinearRelation TruncatedShift::relation_s() const { return LinearRelation::from_matrix(s_); }

LinearRelation TruncatedShift::relation_adjoint_full() const {
    Mat raw(2 * n_, n_ + 1);
    raw.topLeftCorner(n_, n_) = Mat::Identity(n_, n_);
    raw.bottomLeftCorner(n_, n_) = s_;
    raw.col(n_).head(n_).setZero();
    raw.col(n_).tail(n_).setOnes();
    return LinearRelation::from_graph(raw);
}

std::pair<double, double> TruncatedShift::pairing_identity(const Vec& x) const {
    require_dim(x.size(), n_, "pairing_identity");
    double lhs = (s_ * x).dot(x);
    double s = x.sum();
    return {lhs, 0.5 * s * s};
}

TruncatedShift::AdjointAgreement TruncatedShift::adjoint_agreement() const {
    LinearRelation numeric_adjoint = relation_t().adjoint();
    LinearRelation parametrized = relation_adjoint_full();
    AdjointAgreement out;
    out.subspace_distance =
        numeric::subspace_distance(numeric_adjoint.graph_basis(), parametrized.graph_basis());
    Vec e1 = Vec::Unit(n_, 0);
    out.selection_member = numeric_adjoint.contains(e1, s_ * e1, 1e-9);
    out.adjoint_dim = numeric_adjoint.graph_dim();
    return out;
}

}  // namespace bcmono
