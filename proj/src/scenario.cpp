#include "bcmono/scenario.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bcmono/numeric.hpp"

namespace bcmono {

using nlohmann::json;

namespace {

Vec parse_vec(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        if (e.is_number()) {
            v(static_cast<Eigen::Index>(i)) = e.get<double>();
        } else if (e.is_string()) {
            v(static_cast<Eigen::Index>(i)) = ExtReal::parse(e.get<std::string>()).raw();
        } else {
            throw ParseError(std::string(what) + ": entries must be numbers or inf literals");
        }
    }
    return v;
}

Mat parse_mat(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + ": expected a matrix");
    Vec first = parse_vec(j[0], what);
    Mat m(static_cast<Eigen::Index>(j.size()), first.size());
    m.row(0) = first;
    for (size_t r = 1; r < j.size(); ++r) {
        Vec row = parse_vec(j[r], what);
        if (row.size() != first.size()) throw ParseError(std::string(what) + ": ragged rows");
        m.row(static_cast<Eigen::Index>(r)) = row;
    }
    return m;
}

ConvexSet parse_set(const json& j) {
    std::string variant = j.value("variant", "");
    if (variant == "ball") return ConvexSet::ball(parse_vec(j.at("center"), "ball"), j.at("radius").get<double>());
    if (variant == "segment")
        return ConvexSet::segment(parse_vec(j.at("a"), "segment"), parse_vec(j.at("b"), "segment"));
    if (variant == "box")
        return ConvexSet::box(parse_vec(j.at("lower"), "box"), parse_vec(j.at("upper"), "box"));
    if (variant == "subspace") {
        Mat rows = parse_mat(j.at("basis"), "subspace");  // rows are basis vectors
        return ConvexSet::subspace(rows.transpose());
    }
    if (variant == "singleton") return ConvexSet::singleton(parse_vec(j.at("point"), "singleton"));
    if (variant == "polytope") {
        std::vector<Vec> verts;
        for (const auto& row : j.at("vertices")) verts.push_back(parse_vec(row, "polytope"));
        return ConvexSet::polytope(std::move(verts));
    }
    throw ValidationError("unknown set variant '" + variant + "'");
}

json extreal_json(const ExtReal& v) {
    if (v.is_finite()) return json(v.finite());
    return json(v.str());
}

}  // namespace

const RelationDecl* Scenario::find_operator(const std::string& name) const {
    for (const auto& op : operators)
        if (op.name == name) return &op;
    return nullptr;
}

const SetDecl* Scenario::find_set(const std::string& name) const {
    for (const auto& s : sets)
        if (s.name == name) return &s;
    return nullptr;
}

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names = {
        "thm43",       "ex44",         "ex52-gap",      "ex52-implication",
        "ex52-maximality", "fact41",   "fact42",        "fact51",
        "fact33",      "probe-probcon"};
    return names;
}

Scenario load_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
    Scenario sc;
    try {
        sc.schema_version = doc.value("schema_version", 1);
        sc.name = doc.value("name", "scenario");
        if (doc.contains("operators"))
            for (const auto& op : doc["operators"]) {
                RelationDecl decl;
                decl.name = op.value("name", "operator" + std::to_string(sc.operators.size()));
                decl.matrix = parse_mat(op.at("matrix"), "operator matrix");
                if (op.contains("domain_constraints"))
                    decl.domain_constraints = parse_mat(op["domain_constraints"], "domain constraints");
                sc.operators.push_back(std::move(decl));
            }
        if (doc.contains("sets"))
            for (const auto& s : doc["sets"]) {
                SetDecl decl{s.value("name", "set" + std::to_string(sc.sets.size())), parse_set(s)};
                sc.sets.push_back(std::move(decl));
            }
        if (doc.contains("grids")) {
            sc.grids.box_radius = doc["grids"].value("box_radius", config::kDefaultBoxRadius);
            sc.grids.points_per_axis = doc["grids"].value("points_per_axis", config::kDefaultGridN2d);
        }
        if (doc.contains("j_function")) sc.j_function.lower_slope = doc["j_function"].value("slope", 1.0);
        if (doc.contains("suites"))
            for (const auto& s : doc["suites"]) {
                SuiteDecl decl;
                decl.suite = s.at("suite").get<std::string>();
                decl.json_params = s.dump();
                sc.suites.push_back(std::move(decl));
            }
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }

    // Validation: mutually consistent dimensions, known suite names.
    int dim = 0;
    for (const auto& op : sc.operators) {
        if (op.matrix.rows() != op.matrix.cols())
            throw ValidationError("operator '" + op.name + "' is not square");
        int d = static_cast<int>(op.matrix.rows());
        if (dim == 0) dim = d;
        if (d != dim)
            throw ValidationError("operator '" + op.name + "' dimension " + std::to_string(d) +
                                  " conflicts with " + std::to_string(dim));
        if (op.domain_constraints && op.domain_constraints->cols() != dim)
            throw ValidationError("operator '" + op.name + "' domain constraint width mismatch");
    }
    for (const auto& s : sc.sets) {
        if (dim == 0) dim = s.set.dim();
        if (s.set.dim() != dim)
            throw ValidationError("set '" + s.name + "' dimension " +
                                  std::to_string(s.set.dim()) + " conflicts with " +
                                  std::to_string(dim));
    }
    for (const auto& s : sc.suites) {
        bool known = false;
        for (const auto& k : known_suites()) known = known || k == s.suite;
        if (!known) throw ValidationError("unknown suite '" + s.suite + "'");
    }
    if (sc.grids.points_per_axis < 3) throw ValidationError("grids.points_per_axis must be >= 3");
    if (sc.grids.box_radius <= 0) throw ValidationError("grids.box_radius must be > 0");
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_scenario(ss.str());
}

namespace {

LinearRelation build_relation(const RelationDecl& decl) {
    std::optional<Mat> domain;
    if (decl.domain_constraints) {
        Mat rows = *decl.domain_constraints;
        domain = numeric::orthogonal_complement(
            numeric::orthonormal_basis(rows.transpose()), rows.cols());
    }
    return LinearRelation::from_matrix(decl.matrix, domain);
}

struct SuiteParams {
    json raw;
    const Scenario* scenario = nullptr;

    LinearRelation relation_or(const LinearRelation& fallback) const {
        if (scenario && raw.contains("operator")) {
            const auto* decl = scenario->find_operator(raw["operator"].get<std::string>());
            if (!decl) throw ValidationError("suite references unknown operator");
            return build_relation(*decl);
        }
        if (scenario && !scenario->operators.empty()) return build_relation(scenario->operators[0]);
        return fallback;
    }
    ConvexSet set_or(const ConvexSet& fallback) const {
        if (scenario && raw.contains("set")) {
            const auto* decl = scenario->find_set(raw["set"].get<std::string>());
            if (!decl) throw ValidationError("suite references unknown set");
            return decl->set;
        }
        if (scenario && !scenario->sets.empty()) return scenario->sets[0].set;
        return fallback;
    }
};

}  // namespace

CounterexampleVerdict run_suite(const std::string& suite, const Scenario* scenario,
                                const SuiteOptions& opts) {
    SuiteParams params;
    params.scenario = scenario;
    params.raw = json::object();
    if (scenario)
        for (const auto& decl : scenario->suites)
            if (decl.suite == suite) params.raw = json::parse(decl.json_params);

    SuiteOptions local = opts;
    if (params.raw.contains("n")) local.truncation_n = params.raw["n"].get<int>();
    if (params.raw.contains("samples")) local.samples = params.raw["samples"].get<long>();
    if (scenario) {
        local.grid_2d = scenario->grids;
        local.grid_1d.box_radius = scenario->grids.box_radius;
    }
    JFunction j = scenario ? scenario->j_function : JFunction{1.0};

    if (suite == "thm43")
        return theorem43_suite(params.relation_or(rotation_relation()),
                               params.set_or(unit_ball_2d()), j, local);
    if (suite == "ex44") {
        Vec zstar = Vec::Unit(2, 0);
        LinearRelation rel = params.relation_or(rotation_relation());
        if (params.raw.contains("zstar")) zstar = parse_vec(params.raw["zstar"], "zstar");
        else if (rel.ambient_dim() != 2) zstar = Vec::Unit(rel.ambient_dim(), 0);
        ConvexSet ball = params.set_or(unit_ball_2d());
        CounterexampleVerdict v = example44_suite(rel, ball, zstar, local);
        // The second half of the example: the alignment implication.
        CounterexampleVerdict imp = implication43_check(rel, ball, j, local);
        for (const auto& [name, ok] : imp.hypotheses) v.hypotheses.emplace_back(name, ok);
        for (const auto& [label, value] : imp.values) v.value("implication_" + label, value);
        v.pass = v.pass && imp.pass;
        return v;
    }
    if (suite == "ex52-gap") return example52_gap(local.truncation_n, local);
    if (suite == "ex52-implication") return implication52_check(local.truncation_n, local);
    if (suite == "ex52-maximality") return example52_maximality(local.truncation_n, local);
    if (suite == "fact41") return fact41_suite(local);
    if (suite == "fact42") return fact42_suite(local);
    if (suite == "fact51") return fact51_suite(local);
    if (suite == "fact33")
        return fact33_suite(params.relation_or(rotation_relation()), params.set_or(unit_ball_2d()),
                            local);
    if (suite == "probe-probcon") {
        LinearRelation rel = params.relation_or(rotation_relation());
        ConvexSet c = params.set_or(unit_ball_2d());
        auto cls = rel.classify();
        BivariateFunction f1 = cls.skew ? BivariateFunction::graph_indicator_plus_pairing(rel)
                                        : BivariateFunction::fitz_linear(rel);
        BivariateFunction f2 = BivariateFunction::fitz_normal_cone(c);
        Vec z = Vec::Zero(rel.ambient_dim());
        Vec zstar = Vec::Unit(rel.ambient_dim(), 0);
        if (params.raw.contains("z")) z = parse_vec(params.raw["z"], "z");
        if (params.raw.contains("zstar")) zstar = parse_vec(params.raw["zstar"], "zstar");
        return probe_probcon(f1, f2, z, zstar, local);
    }
    throw ValidationError("unknown suite '" + suite + "'");
}

std::vector<CounterexampleVerdict> run_scenario(const Scenario& scenario,
                                                const std::vector<std::string>& filters,
                                                const SuiteOptions& opts) {
    std::vector<CounterexampleVerdict> out;
    for (const auto& decl : scenario.suites) {
        if (!filters.empty()) {
            bool keep = false;
            for (const auto& f : filters) keep = keep || f == decl.suite;
            if (!keep) continue;
        }
        try {
            out.push_back(run_suite(decl.suite, &scenario, opts));
        } catch (const HypothesisFailed& e) {
            CounterexampleVerdict v;
            v.suite = decl.suite;
            v.name = "hypothesis failure";
            v.hypotheses.emplace_back(e.predicate_name, false);
            v.pass = false;
            v.note(std::string("hypothesis failed: ") + e.predicate_name);
            out.push_back(std::move(v));
        }
    }
    return out;
}

namespace {

json verdict_json(const CounterexampleVerdict& v) {
    json j;
    j["schema_version"] = 1;
    j["suite"] = v.suite;
    j["name"] = v.name;
    json hyp = json::array();
    for (const auto& [name, ok] : v.hypotheses) hyp.push_back({{"name", name}, {"ok", ok}});
    j["hypotheses"] = hyp;
    json vals = json::object();
    for (const auto& [label, value] : v.values) vals[label] = value.str();
    j["values"] = vals;
    j["margin"] = v.margin;
    j["slack"] = v.slack;
    j["verdict"] = v.pass ? "pass" : "fail";
    j["notes"] = v.notes;
    return j;
}

}  // namespace

std::string verdict_to_json(const CounterexampleVerdict& v) { return verdict_json(v).dump(2); }

std::string verdicts_to_json(const std::vector<CounterexampleVerdict>& vs) {
    json arr = json::array();
    for (const auto& v : vs) arr.push_back(verdict_json(v));
    return arr.dump(2);
}

std::string monotonicity_report_to_json(const MonotonicityReport& rep) {
    json j;
    j["monotone"] = rep.monotone;
    j["skew"] = rep.skew;
    j["symmetric"] = rep.symmetric;
    j["maximal"] = rep.maximal;
    if (rep.witness) {
        json w;
        w["kind"] = rep.witness->kind == MonotonicityWitness::Kind::MonotonicityViolation
                        ? "monotonicity_violation"
                        : "related_point_outside_graph";
        w["x"] = std::vector<double>(rep.witness->x.data(), rep.witness->x.data() + rep.witness->x.size());
        w["xstar"] = std::vector<double>(rep.witness->xstar.data(),
                                         rep.witness->xstar.data() + rep.witness->xstar.size());
        w["value"] = rep.witness->value;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j.dump(2);
}

std::string bc_report_to_json(const BcReport& rep, const GridSpec& grid) {
    json j;
    j["pass"] = rep.pass;
    j["worst_conjugate_margin"] = rep.worst_conjugate_margin;
    j["worst_pairing_margin"] = rep.worst_pairing_margin;
    json records = json::array();
    for (const auto& r : rep.records) {
        json rec;
        rec["x"] = std::vector<double>(r.x.data(), r.x.data() + r.x.size());
        rec["xstar"] = std::vector<double>(r.xstar.data(), r.xstar.data() + r.xstar.size());
        rec["value"] = extreal_json(r.f_value);
        rec["conjugate"] = extreal_json(r.conj_value);
        rec["backend"] = r.backend;
        rec["grid"] = {{"R", grid.box_radius}, {"N", grid.points_per_axis}};
        records.push_back(rec);
    }
    j["records"] = records;
    return j.dump(2);
}

int exit_code_for(const std::vector<CounterexampleVerdict>& vs) {
    bool any_hypothesis = false, any_fail = false;
    for (const auto& v : vs) {
        bool hyp_fail = false;
        for (const auto& [name, ok] : v.hypotheses) hyp_fail = hyp_fail || !ok;
        if (hyp_fail)
            any_hypothesis = true;
        else if (!v.pass)
            any_fail = true;
    }
    if (any_fail) return 1;
    if (any_hypothesis) return 2;
    return 0;
}

}  // namespace bcmono
