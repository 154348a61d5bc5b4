#include "bcmono/grid_fn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace bcmono {

GridFunction::GridFunction(int dim, GridSpec spec, std::vector<ExtReal> values)
    : dim_(dim), spec_(spec), values_(std::move(values)) {
    if (dim_ != 1 && dim_ != 2) throw ValidationError("GridFunction: dim must be 1 or 2");
    if (spec_.points_per_axis < 3) throw ValidationError("GridFunction: need N >= 3");
    if (spec_.box_radius <= 0) throw ValidationError("GridFunction: need R > 0");
    size_t want = 1;
    for (int d = 0; d < dim_; ++d) want *= static_cast<size_t>(spec_.points_per_axis);
    if (values_.size() != want) throw ValidationError("GridFunction: value count mismatch");
    bool any_finite = false;
    for (const auto& v : values_) {
        if (v.is_neg_inf()) throw ValidationError("GridFunction: -inf sample (improper)");
        any_finite = any_finite || v.is_finite();
    }
    if (!any_finite) throw ValidationError("GridFunction: no finite sample");
}

ExtReal GridFunction::eval(const Vec& x) const {
    require_dim(x.size(), dim_, "GridFunction::eval");
    const int n = spec_.points_per_axis;
    const double h = spacing();
    const double R = spec_.box_radius;
    int idx[2] = {0, 0};
    double frac[2] = {0.0, 0.0};
    for (int d = 0; d < dim_; ++d) {
        double xd = x[d];
        if (xd < -R || xd > R) return ExtReal::pos_inf();
        double t = (xd + R) / h;
        int i = static_cast<int>(std::floor(t));
        if (i >= n - 1) i = n - 2;
        idx[d] = i;
        frac[d] = t - i;
    }
    if (dim_ == 1) {
        ExtReal f0 = at(idx[0]), f1 = at(idx[0] + 1);
        if (frac[0] == 0.0) return f0;  // exact node, no poisoning from the right corner
        if (!f0.is_finite() || !f1.is_finite()) return ExtReal::pos_inf();
        return ExtReal((1.0 - frac[0]) * f0.finite() + frac[0] * f1.finite());
    }
    const double tx = frac[0], ty = frac[1];
    // Exact-node shortcuts keep indicator boundaries sharp.
    if (tx == 0.0 && ty == 0.0) return at(idx[0], idx[1]);
    ExtReal c00 = at(idx[0], idx[1]), c01 = at(idx[0], idx[1] + 1);
    ExtReal c10 = at(idx[0] + 1, idx[1]), c11 = at(idx[0] + 1, idx[1] + 1);
    if (tx == 0.0) {
        if (!c00.is_finite() || !c01.is_finite()) return ExtReal::pos_inf();
        return ExtReal((1 - ty) * c00.finite() + ty * c01.finite());
    }
    if (ty == 0.0) {
        if (!c00.is_finite() || !c10.is_finite()) return ExtReal::pos_inf();
        return ExtReal((1 - tx) * c00.finite() + tx * c10.finite());
    }
    if (!c00.is_finite() || !c01.is_finite() || !c10.is_finite() || !c11.is_finite())
        return ExtReal::pos_inf();
    double v = (1 - tx) * (1 - ty) * c00.finite() + (1 - tx) * ty * c01.finite() +
               tx * (1 - ty) * c10.finite() + tx * ty * c11.finite();
    return ExtReal(v);
}

void GridFunction::save_csv(std::ostream& os) const {
    os << dim_ << "," << ExtReal(spec_.box_radius).str() << "," << spec_.points_per_axis << "\n";
    for (size_t i = 0; i < values_.size(); ++i) os << i << "," << values_[i].str() << "\n";
}

GridFunction GridFunction::load_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("GridFunction CSV: empty input");
    int dim = 0, n = 0;
    double R = 0;
    {
        std::istringstream hs(line);
        std::string tok;
        if (!std::getline(hs, tok, ',')) throw ParseError("GridFunction CSV: bad header");
        dim = std::stoi(tok);
        if (!std::getline(hs, tok, ',')) throw ParseError("GridFunction CSV: bad header");
        R = std::stod(tok);
        if (!std::getline(hs, tok, ',')) throw ParseError("GridFunction CSV: bad header");
        n = std::stoi(tok);
    }
    size_t count = 1;
    for (int d = 0; d < dim; ++d) count *= static_cast<size_t>(n);
    std::vector<ExtReal> vals(count, ExtReal::pos_inf());
    std::vector<bool> seen(count, false);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("GridFunction CSV: bad row '" + line + "'");
        size_t idx = std::stoul(line.substr(0, comma));
        if (idx >= count) throw ParseError("GridFunction CSV: index out of range");
        vals[idx] = ExtReal::parse(line.substr(comma + 1));
        seen[idx] = true;
    }
    for (size_t i = 0; i < count; ++i)
        if (!seen[i]) throw ParseError("GridFunction CSV: missing index " + std::to_string(i));
    return GridFunction(dim, GridSpec{R, n}, std::move(vals));
}

namespace legendre {
namespace {

struct FiniteEntries {
    std::vector<int> index;     // original grid index
    std::vector<double> x;      // node coordinate
    std::vector<double> f;      // finite sample value
};

FiniteEntries collect_finite(const std::vector<ExtReal>& f, double R) {
    const int n = static_cast<int>(f.size());
    const double h = 2.0 * R / (n - 1);
    FiniteEntries out;
    for (int i = 0; i < n; ++i) {
        if (f[i].is_neg_inf()) throw ValidationError("legendre: -inf sample");
        if (f[i].is_finite()) {
            out.index.push_back(i);
            out.x.push_back(-R + i * h);
            out.f.push_back(f[i].finite());
        }
    }
    if (out.index.empty()) throw AllInfinite("legendre: function is +inf on the whole box");
    return out;
}

// Row maximum scanned left to right with strict '>' so the smallest argmax
// wins on ties; both backends share it to stay bit-identical.
inline int scan_row(const FiniteEntries& e, double y, int lo, int hi, double& best) {
    best = e.x[lo] * y - e.f[lo];
    int arg = lo;
    for (int i = lo + 1; i <= hi; ++i) {
        double v = e.x[i] * y - e.f[i];
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    return arg;
}

void solve_rows(const FiniteEntries& e, const std::vector<double>& y, std::vector<double>& g,
                int jlo, int jhi, int ilo, int ihi) {
    if (jlo > jhi) return;
    int jm = jlo + (jhi - jlo) / 2;
    double best;
    int arg = scan_row(e, y[jm], ilo, ihi, best);
    g[jm] = best;
    solve_rows(e, y, g, jlo, jm - 1, ilo, arg);
    solve_rows(e, y, g, jm + 1, jhi, arg, ihi);
}

std::vector<double> dual_nodes(int n, double R) {
    std::vector<double> y(n);
    const double h = 2.0 * R / (n - 1);
    for (int j = 0; j < n; ++j) y[j] = -R + j * h;
    return y;
}

}  // namespace

std::vector<ExtReal> transform_1d_brute(const std::vector<ExtReal>& f, double R) {
    const int n = static_cast<int>(f.size());
    auto e = collect_finite(f, R);
    auto y = dual_nodes(n, R);
    std::vector<ExtReal> g;
    g.reserve(n);
    const int m = static_cast<int>(e.x.size());
    for (int j = 0; j < n; ++j) {
        double best;
        scan_row(e, y[j], 0, m - 1, best);
        g.push_back(ExtReal(best));
    }
    return g;
}

std::vector<ExtReal> transform_1d_fast(const std::vector<ExtReal>& f, double R) {
    const int n = static_cast<int>(f.size());
    auto e = collect_finite(f, R);
    auto y = dual_nodes(n, R);
    std::vector<double> g(n);
    solve_rows(e, y, g, 0, n - 1, 0, static_cast<int>(e.x.size()) - 1);
    std::vector<ExtReal> out;
    out.reserve(n);
    for (double v : g) out.push_back(ExtReal(v));
    return out;
}

std::vector<ExtReal> transform_2d_brute(const std::vector<ExtReal>& f, int n, double R) {
    if (static_cast<size_t>(n) * n != f.size())
        throw ValidationError("legendre 2d: value count mismatch");
    const double h = 2.0 * R / (n - 1);
    struct P {
        double x0, x1, f;
    };
    std::vector<P> finite;
    finite.reserve(f.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const ExtReal& v = f[static_cast<size_t>(i) * n + j];
            if (v.is_neg_inf()) throw ValidationError("legendre 2d: -inf sample");
            if (v.is_finite()) finite.push_back({-R + i * h, -R + j * h, v.finite()});
        }
    if (finite.empty()) throw AllInfinite("legendre 2d: function is +inf on the whole box");
    std::vector<ExtReal> g;
    g.reserve(f.size());
    for (int i = 0; i < n; ++i) {
        const double y0 = -R + i * h;
        for (int j = 0; j < n; ++j) {
            const double y1 = -R + j * h;
            double best = -std::numeric_limits<double>::infinity();
            for (const P& p : finite) {
                double v = p.x0 * y0 + p.x1 * y1 - p.f;
                if (v > best) best = v;
            }
            g.push_back(ExtReal(best));
        }
    }
    return g;
}

}  // namespace legendre
}  // namespace bcmono
