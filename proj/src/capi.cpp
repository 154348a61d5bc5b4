#include "bcmono.h"

#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <limits>
#include <string>

#include "bcmono/scenario.hpp"
#include "bcmono/shift.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

bcmono_status fail(bcmono_status code, const char* what) {
    g_last_error = what ? what : "";
    return code;
}

template <typename Fn>
bcmono_status guarded(Fn&& fn) {
    try {
        fn();
        return BCMONO_OK;
    } catch (const bcmono::DimensionMismatch& e) {
        return fail(BCMONO_ERR_DIMENSION_MISMATCH, e.what());
    } catch (const bcmono::IndeterminateSum& e) {
        return fail(BCMONO_ERR_INDETERMINATE_SUM, e.what());
    } catch (const bcmono::IndeterminateProduct& e) {
        return fail(BCMONO_ERR_INDETERMINATE_SUM, e.what());
    } catch (const bcmono::NoClosedForm& e) {
        return fail(BCMONO_ERR_NO_CLOSED_FORM, e.what());
    } catch (const bcmono::AllInfinite& e) {
        return fail(BCMONO_ERR_ALL_INFINITE, e.what());
    } catch (const bcmono::HypothesisFailed& e) {
        return fail(BCMONO_ERR_HYPOTHESIS_FAILED, e.what());
    } catch (const bcmono::NoSolution& e) {
        return fail(BCMONO_ERR_NO_SOLUTION, e.what());
    } catch (const bcmono::RankDeficientBasis& e) {
        return fail(BCMONO_ERR_RANK_DEFICIENT, e.what());
    } catch (const bcmono::ParseError& e) {
        return fail(BCMONO_ERR_PARSE, e.what());
    } catch (const bcmono::ValidationError& e) {
        return fail(BCMONO_ERR_VALIDATION, e.what());
    } catch (const std::exception& e) {
        return fail(BCMONO_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(BCMONO_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bcmono::Vec to_vec(const double* data, int n) {
    bcmono::Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = data[i];
    return v;
}

json vec_json(const bcmono::Vec& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

bcmono::SuiteOptions parse_options(const char* options_json) {
    bcmono::SuiteOptions opts;
    if (!options_json || !*options_json) return opts;
    json doc = json::parse(options_json);
    if (doc.contains("seed")) opts.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("tol")) opts.tol = doc["tol"].get<double>();
    if (doc.contains("grid_n")) {
        opts.grid_1d.points_per_axis = doc["grid_n"].get<int>();
        opts.grid_2d.points_per_axis = doc["grid_n"].get<int>();
    }
    if (doc.contains("box_radius")) {
        opts.grid_1d.box_radius = doc["box_radius"].get<double>();
        opts.grid_2d.box_radius = doc["box_radius"].get<double>();
    }
    if (doc.contains("n")) opts.truncation_n = doc["n"].get<int>();
    if (doc.contains("samples")) opts.samples = doc["samples"].get<long>();
    return opts;
}

}  // namespace

struct bcmono_set {
    bcmono::ConvexSet set;
};
struct bcmono_relation {
    bcmono::LinearRelation rel;
};
struct bcmono_bivar {
    bcmono::BivariateFunction fn;
};
struct bcmono_scenario {
    bcmono::Scenario sc;
};

extern "C" {

const char* bcmono_version(void) { return "0.1.0"; }

const char* bcmono_last_error(void) { return g_last_error.c_str(); }

void bcmono_string_free(char* s) { std::free(s); }

/* ---- sets ---------------------------------------------------------------- */

bcmono_status bcmono_set_ball(int dim, const double* center, double radius, bcmono_set** out) {
    if (!center || !out || dim <= 0) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new bcmono_set{bcmono::ConvexSet::ball(to_vec(center, dim), radius)}; });
}

bcmono_status bcmono_set_segment(int dim, const double* a, const double* b, bcmono_set** out) {
    if (!a || !b || !out || dim <= 0) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(
        [&] { *out = new bcmono_set{bcmono::ConvexSet::segment(to_vec(a, dim), to_vec(b, dim))}; });
}

bcmono_status bcmono_set_box(int dim, const double* lower, const double* upper, bcmono_set** out) {
    if (!lower || !upper || !out || dim <= 0)
        return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(
        [&] { *out = new bcmono_set{bcmono::ConvexSet::box(to_vec(lower, dim), to_vec(upper, dim))}; });
}

bcmono_status bcmono_set_subspace(int dim, int basis_cols, const double* basis, bcmono_set** out) {
    if (!basis || !out || dim <= 0 || basis_cols < 0)
        return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        bcmono::Mat m(dim, basis_cols);
        for (int c = 0; c < basis_cols; ++c)
            for (int r = 0; r < dim; ++r) m(r, c) = basis[c * dim + r];
        *out = new bcmono_set{bcmono::ConvexSet::subspace(m)};
    });
}

bcmono_status bcmono_set_singleton(int dim, const double* point, bcmono_set** out) {
    if (!point || !out || dim <= 0) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new bcmono_set{bcmono::ConvexSet::singleton(to_vec(point, dim))}; });
}

bcmono_status bcmono_set_polytope(int dim, int n_vertices, const double* vertices,
                                  bcmono_set** out) {
    if (!vertices || !out || dim <= 0 || n_vertices <= 0)
        return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<bcmono::Vec> verts;
        for (int k = 0; k < n_vertices; ++k) verts.push_back(to_vec(vertices + k * dim, dim));
        *out = new bcmono_set{bcmono::ConvexSet::polytope(std::move(verts))};
    });
}

void bcmono_set_free(bcmono_set* s) { delete s; }

bcmono_status bcmono_set_dim(const bcmono_set* s, int* out) {
    if (!s || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    *out = s->set.dim();
    return BCMONO_OK;
}

bcmono_status bcmono_set_contains(const bcmono_set* s, const double* x, double tol, int* out) {
    if (!s || !x || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = s->set.contains(to_vec(x, s->set.dim()), tol) ? 1 : 0; });
}

bcmono_status bcmono_set_support(const bcmono_set* s, const double* xstar, double* out) {
    if (!s || !xstar || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = s->set.support(to_vec(xstar, s->set.dim())).raw(); });
}

bcmono_status bcmono_set_normal_cone(const bcmono_set* s, const double* x, double tol,
                                     char** json_out) {
    if (!s || !x || !json_out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto cone = s->set.normal_cone(to_vec(x, s->set.dim()), tol);
        json j;
        j["empty"] = cone.empty;
        json gens = json::array();
        for (const auto& g : cone.generators) gens.push_back(vec_json(g));
        j["generators"] = gens;
        json lin = json::array();
        for (Eigen::Index c = 0; c < cone.lineality.cols(); ++c)
            lin.push_back(vec_json(cone.lineality.col(c)));
        j["lineality"] = lin;
        *json_out = dup_string(j.dump());
    });
}

bcmono_status bcmono_set_project(const bcmono_set* s, const double* x, double* out) {
    if (!s || !x || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        bcmono::Vec p = s->set.project(to_vec(x, s->set.dim()));
        for (Eigen::Index i = 0; i < p.size(); ++i) out[i] = p(i);
    });
}

bcmono_status bcmono_minkowski_span_subspace(const bcmono_set* d1, const bcmono_set* d2,
                                             int* out) {
    if (!d1 || !d2 || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = bcmono::minkowski_span_closed_subspace(d1->set, d2->set) ? 1 : 0; });
}

/* ---- relations ------------------------------------------------------------ */

bcmono_status bcmono_relation_from_matrix(int n, const double* matrix, const double* domain_basis,
                                          int domain_cols, bcmono_relation** out) {
    if (!matrix || !out || n <= 0) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        bcmono::Mat m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(r, c) = matrix[r * n + c];
        std::optional<bcmono::Mat> dom;
        if (domain_basis && domain_cols > 0) {
            bcmono::Mat d(n, domain_cols);
            for (int c = 0; c < domain_cols; ++c)
                for (int r = 0; r < n; ++r) d(r, c) = domain_basis[c * n + r];
            dom = d;
        }
        *out = new bcmono_relation{bcmono::LinearRelation::from_matrix(m, dom)};
    });
}

bcmono_status bcmono_relation_from_graph(int n, int k, const double* columns,
                                         bcmono_relation** out) {
    if (!columns || !out || n <= 0 || k <= 0)
        return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        bcmono::Mat m(2 * n, k);
        for (int c = 0; c < k; ++c)
            for (int r = 0; r < 2 * n; ++r) m(r, c) = columns[c * 2 * n + r];
        *out = new bcmono_relation{bcmono::LinearRelation::from_graph(m)};
    });
}

void bcmono_relation_free(bcmono_relation* r) { delete r; }

bcmono_status bcmono_relation_dim(const bcmono_relation* r, int* ambient, int* graph_dim) {
    if (!r) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    if (ambient) *ambient = r->rel.ambient_dim();
    if (graph_dim) *graph_dim = r->rel.graph_dim();
    return BCMONO_OK;
}

bcmono_status bcmono_relation_adjoint(const bcmono_relation* r, bcmono_relation** out) {
    if (!r || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new bcmono_relation{r->rel.adjoint()}; });
}

bcmono_status bcmono_relation_classify(const bcmono_relation* r, int samples, char** json_out) {
    if (!r || !json_out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto rep = r->rel.classify(samples > 0 ? samples : 64);
        *json_out = dup_string(bcmono::monotonicity_report_to_json(rep));
    });
}

bcmono_status bcmono_relation_apply(const bcmono_relation* r, const double* x, char** json_out) {
    if (!r || !x || !json_out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto res = r->rel.apply(to_vec(x, r->rel.ambient_dim()));
        json j;
        using Kind = bcmono::LinearRelation::ApplyResult::Kind;
        j["kind"] = res.kind == Kind::Empty ? "empty" : res.kind == Kind::Point ? "point" : "affine";
        if (res.kind != Kind::Empty) {
            j["point"] = vec_json(res.point);
            json lin = json::array();
            for (Eigen::Index c = 0; c < res.lineality.cols(); ++c)
                lin.push_back(vec_json(res.lineality.col(c)));
            j["lineality"] = lin;
        }
        *json_out = dup_string(j.dump());
    });
}

bcmono_status bcmono_relation_contains(const bcmono_relation* r, const double* x,
                                       const double* xstar, double tol, int* out) {
    if (!r || !x || !xstar || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        int n = r->rel.ambient_dim();
        *out = r->rel.contains(to_vec(x, n), to_vec(xstar, n), tol) ? 1 : 0;
    });
}

bcmono_status bcmono_resolvent_solve(const bcmono_relation* a, const bcmono_set* c,
                                     const double* z, double tol, double* x_out) {
    if (!a || !c || !z || !x_out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto x = bcmono::resolvent_solve(a->rel, c->set, to_vec(z, a->rel.ambient_dim()), tol);
        if (!x) throw bcmono::NoSolution("resolvent iteration did not converge");
        for (Eigen::Index i = 0; i < x->size(); ++i) x_out[i] = (*x)(i);
    });
}

/* ---- truncated shift ------------------------------------------------------ */

bcmono_status bcmono_shift_relation(int n, bcmono_shift_view view, bcmono_relation** out) {
    if (!out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto ts = bcmono::TruncatedShift::build(n);
        switch (view) {
            case BCMONO_SHIFT_T_ON_HYPERPLANE:
                *out = new bcmono_relation{ts.relation_t()};
                break;
            case BCMONO_SHIFT_S_FULL:
                *out = new bcmono_relation{ts.relation_s()};
                break;
            case BCMONO_SHIFT_ADJOINT_FULL:
                *out = new bcmono_relation{ts.relation_adjoint_full()};
                break;
            default:
                throw bcmono::ValidationError("unknown shift view");
        }
    });
}

bcmono_status bcmono_shift_pairing_identity(int n, const double* x, double* lhs, double* rhs) {
    if (!x || !lhs || !rhs) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto ts = bcmono::TruncatedShift::build(n);
        auto [l, r] = ts.pairing_identity(to_vec(x, n));
        *lhs = l;
        *rhs = r;
    });
}

bcmono_status bcmono_shift_adjoint_agreement(int n, double* subspace_distance,
                                             int* selection_member, int* adjoint_dim) {
    return guarded([&] {
        auto agree = bcmono::TruncatedShift::build(n).adjoint_agreement();
        if (subspace_distance) *subspace_distance = agree.subspace_distance;
        if (selection_member) *selection_member = agree.selection_member ? 1 : 0;
        if (adjoint_dim) *adjoint_dim = agree.adjoint_dim;
    });
}

/* ---- bivariate functions --------------------------------------------------- */

bcmono_status bcmono_bivar_fitz_normal_cone(const bcmono_set* c, bcmono_bivar** out) {
    if (!c || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(
        [&] { *out = new bcmono_bivar{bcmono::BivariateFunction::fitz_normal_cone(c->set)}; });
}

bcmono_status bcmono_bivar_fitz_linear(const bcmono_relation* a, bcmono_bivar** out) {
    if (!a || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new bcmono_bivar{bcmono::BivariateFunction::fitz_linear(a->rel)}; });
}

bcmono_status bcmono_bivar_graph_indicator(const bcmono_relation* a, bcmono_bivar** out) {
    if (!a || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new bcmono_bivar{bcmono::BivariateFunction::graph_indicator_plus_pairing(a->rel)};
    });
}

bcmono_status bcmono_bivar_fitz_from_sample(int n, int count, const double* sample,
                                            bcmono_bivar** out) {
    if (!sample || !out || n <= 0 || count <= 0)
        return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<std::pair<bcmono::Vec, bcmono::Vec>> pts;
        for (int k = 0; k < count; ++k)
            pts.emplace_back(to_vec(sample + 2 * k * n, n), to_vec(sample + (2 * k + 1) * n, n));
        *out = new bcmono_bivar{bcmono::BivariateFunction::fitz_from_sample(std::move(pts))};
    });
}

void bcmono_bivar_free(bcmono_bivar* f) { delete f; }

bcmono_status bcmono_bivar_eval(const bcmono_bivar* f, const double* x, const double* xstar,
                                double* out) {
    if (!f || !x || !xstar || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        int n = f->fn.ambient_dim();
        *out = f->fn.eval(to_vec(x, n), to_vec(xstar, n)).raw();
    });
}

bcmono_status bcmono_bivar_flipped_conjugate(const bcmono_bivar* f, const double* xstar,
                                             const double* x, double box_radius,
                                             int points_per_axis, int backend, double* out) {
    if (!f || !x || !xstar || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        int n = f->fn.ambient_dim();
        bcmono::FlippedConjugateOptions opts;
        opts.backend = backend == 1 ? bcmono::ConjugateBackend::ClosedForm
                       : backend == 2 ? bcmono::ConjugateBackend::Grid
                                      : bcmono::ConjugateBackend::Auto;
        auto val = bcmono::flipped_conjugate(f->fn, to_vec(xstar, n), to_vec(x, n),
                                             bcmono::GridSpec{box_radius, points_per_axis}, opts);
        *out = val.value.raw();
    });
}

bcmono_status bcmono_bivar_partial_inf_conv(const bcmono_bivar* f1, const bcmono_bivar* f2,
                                            const double* x, const double* xstar,
                                            double box_radius, int points_per_axis, double* out) {
    if (!f1 || !f2 || !x || !xstar || !out)
        return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        int n = f1->fn.ambient_dim();
        auto val = bcmono::partial_inf_conv(f1->fn, f2->fn, to_vec(x, n), to_vec(xstar, n),
                                            bcmono::GridSpec{box_radius, points_per_axis});
        *out = val.value.raw();
    });
}

bcmono_status bcmono_bivar_bc_check(const bcmono_bivar* f, int count, const double* sample,
                                    double box_radius, int points_per_axis, char** json_out) {
    if (!f || !sample || !json_out || count <= 0)
        return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        int n = f->fn.ambient_dim();
        std::vector<std::pair<bcmono::Vec, bcmono::Vec>> pts;
        for (int k = 0; k < count; ++k)
            pts.emplace_back(to_vec(sample + 2 * k * n, n), to_vec(sample + (2 * k + 1) * n, n));
        bcmono::GridSpec grid{box_radius, points_per_axis};
        auto rep = bcmono::bc_check(f->fn, pts, grid);
        *json_out = dup_string(bcmono::bc_report_to_json(rep, grid));
    });
}

/* ---- Legendre transform ----------------------------------------------------- */

bcmono_status bcmono_legendre_1d(int n, const double* values, double box_radius, int fast,
                                 double* out) {
    if (!values || !out || n < 3) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<bcmono::ExtReal> f;
        f.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            f.push_back(values[i] == std::numeric_limits<double>::infinity()
                            ? bcmono::ExtReal::pos_inf()
                            : bcmono::ExtReal(values[i]));
        auto g = fast ? bcmono::legendre::transform_1d_fast(f, box_radius)
                      : bcmono::legendre::transform_1d_brute(f, box_radius);
        for (int i = 0; i < n; ++i) out[i] = g[static_cast<size_t>(i)].raw();
    });
}

/* ---- scenarios ---------------------------------------------------------------- */

bcmono_status bcmono_scenario_load(const char* json_text, bcmono_scenario** out) {
    if (!json_text || !out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new bcmono_scenario{bcmono::load_scenario(json_text)}; });
}

void bcmono_scenario_free(bcmono_scenario* s) { delete s; }

bcmono_status bcmono_suite_run(const bcmono_scenario* scenario, const char* suite_name,
                               const char* options_json, char** verdict_json_out) {
    if (!suite_name || !verdict_json_out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto opts = parse_options(options_json);
        auto verdict =
            bcmono::run_suite(suite_name, scenario ? &scenario->sc : nullptr, opts);
        json j = json::parse(bcmono::verdict_to_json(verdict));
        if (!verdict.csv.empty()) {
            json csv = json::object();
            for (const auto& [name, content] : verdict.csv) csv[name] = content;
            j["csv"] = csv;
        }
        *verdict_json_out = dup_string(j.dump(2));
    });
}

bcmono_status bcmono_scenario_run(const bcmono_scenario* scenario, const char* filter_csv,
                                  const char* options_json, char** verdicts_json_out,
                                  int* exit_code) {
    if (!scenario || !verdicts_json_out) return fail(BCMONO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<std::string> filters;
        if (filter_csv && *filter_csv) {
            std::string s(filter_csv);
            size_t pos = 0;
            while (pos != std::string::npos) {
                size_t comma = s.find(',', pos);
                filters.push_back(s.substr(pos, comma == std::string::npos ? comma : comma - pos));
                pos = comma == std::string::npos ? comma : comma + 1;
            }
        }
        auto opts = parse_options(options_json);
        auto verdicts = bcmono::run_scenario(scenario->sc, filters, opts);
        json arr = json::array();
        for (const auto& v : verdicts) {
            json j = json::parse(bcmono::verdict_to_json(v));
            if (!v.csv.empty()) {
                json csv = json::object();
                for (const auto& [name, content] : v.csv) csv[name] = content;
                j["csv"] = csv;
            }
            arr.push_back(j);
        }
        *verdicts_json_out = dup_string(arr.dump(2));
        if (exit_code) *exit_code = bcmono::exit_code_for(verdicts);
    });
}

}  // extern "C"
