// The n-dimensional truncations of the l^2 running-sum operator family:
// (Tx)_k = sum_{i<k} x_i + x_k/2 on the zero-sum hyperplane, and its
// transpose S with (Sx)_k = x_k/2 + sum_{i>k} x_i.  Every identity the
// counterexample suites rely on (skewness of T on the hyperplane, the
// pairing value s^2/2, T + S = ones * ones') is exact at finite n.
#pragma once

#include "bcmono/relations.hpp"
#include "bcmono/types.hpp"

namespace bcmono {

class TruncatedShift {
public:
    static TruncatedShift build(int n);

    int n() const { return n_; }
    const Mat& t() const { return t_; }
    const Mat& s() const { return s_; }

    // The relation {(x, Tx) : sum x_i = 0}: skew and monotone, one graph
    // dimension short of maximal (the truncation artifact).
    LinearRelation relation_t() const;

    // S on all of R^n: the canonical single-valued selection of the
    // truncated adjoint (the alpha = 0 slice), maximally monotone.
    LinearRelation relation_s() const;

    // The full computed adjoint of relation_t(): {(y, Sy + alpha * ones)},
    // graph dimension n + 1.  Built directly from its parametrization.
    LinearRelation relation_adjoint_full() const;

    // (<Sx, x>, (sum x_i)^2 / 2): the two sides of the pairing identity.
    std::pair<double, double> pairing_identity(const Vec& x) const;

    struct AdjointAgreement {
        double subspace_distance;  // numeric adjoint graph vs parametrized graph
        bool selection_member;     // (e1, S e1) lies in the computed adjoint
        int adjoint_dim;
    };
    AdjointAgreement adjoint_agreement() const;

private:
    explicit TruncatedShift(int n);
    int n_;
    Mat t_, s_;
};

}  // namespace bcmono
