#include "qadv/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

namespace qadv::io {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw ParseError(what);
}

void reject_unknown_fields(const json& j, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw ParseError("unknown field \"" + item.key() + "\" in " + where);
        }
    }
}

double as_number(const json& j, const std::string& what) {
    require(j.is_number(), what + " must be a number");
    return j.get<double>();
}

}  // namespace

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

Complex json_to_complex(const json& j) {
    require(j.is_array() && j.size() == 2, "complex entries must be [re, im] pairs");
    return {as_number(j[0], "re"), as_number(j[1], "im")};
}

Vector json_to_vector(const json& j) {
    require(j.is_array(), "vector must be an array of [re, im] pairs");
    Vector v(static_cast<Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = json_to_complex(j[i]);
    return v;
}

Matrix json_to_matrix(const json& j) {
    require(j.is_array() && !j.empty(), "matrix must be a non-empty 2-D array");
    const size_t rows = j.size();
    require(j[0].is_array(), "matrix rows must be arrays");
    const size_t cols = j[0].size();
    Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (size_t i = 0; i < rows; ++i) {
        require(j[i].is_array() && j[i].size() == cols, "matrix rows must have equal length");
        for (size_t k = 0; k < cols; ++k) {
            m(static_cast<Index>(i), static_cast<Index>(k)) = json_to_complex(j[i][k]);
        }
    }
    return m;
}

json problem_to_json(const ConversionProblem& p) {
    json j;
    j["schema_version"] = "1";
    j["dims"] = {{"a", p.shape.dim_a}, {"b", p.shape.dim_b}, {"c", p.shape.dim_c}};
    j["L"] = matrix_to_json(p.l);
    j["idle"] = vector_to_json(p.idle);
    j["xi"] = vector_to_json(p.xi);
    j["tau"] = vector_to_json(p.tau);
    if (!p.subspaces.empty()) {
        json subs = json::array();
        for (const auto& s : p.subspaces) subs.push_back(matrix_to_json(s));
        j["subspaces"] = std::move(subs);
    }
    return j;
}

ConversionProblem json_to_problem(const json& j) {
    require(j.is_object(), "problem file must be a JSON object");
    reject_unknown_fields(
        j, {"schema_version", "dims", "L", "idle", "xi", "tau", "subspaces", "tolerances"},
        "problem file");
    require(j.contains("schema_version") && j["schema_version"] == "1",
            "problem file must declare schema_version \"1\"");
    require(j.contains("dims") && j["dims"].is_object(), "problem file needs a dims object");
    reject_unknown_fields(j["dims"], {"a", "b", "c"}, "dims");
    for (const char* key : {"a", "b", "c"}) {
        require(j["dims"].contains(key) && j["dims"][key].is_number_integer(),
                std::string("dims.") + key + " must be an integer");
    }
    SubsystemShape shape{j["dims"]["a"].get<Index>(), j["dims"]["b"].get<Index>(),
                         j["dims"]["c"].get<Index>()};
    require(shape.dim_a >= 1 && shape.dim_b >= 1 && shape.dim_c >= 1, "dims must be >= 1");

    for (const char* key : {"L", "xi", "tau"}) {
        require(j.contains(key), std::string("problem file needs field ") + key);
    }
    Matrix l = json_to_matrix(j["L"]);
    require(l.rows() == shape.dim_ab() && l.cols() == shape.dim_ab(),
            "L must be square of dimension dim_a*dim_b");
    Vector xi = json_to_vector(j["xi"]);
    Vector tau = json_to_vector(j["tau"]);
    require(xi.size() == shape.total() && tau.size() == shape.total(),
            "xi and tau must have length dim_a*dim_b*dim_c");

    Vector idle;
    if (j.contains("idle")) {
        if (j["idle"].is_number_integer()) {
            const Index k = j["idle"].get<Index>();
            require(k >= 0 && k < shape.dim_b, "idle basis index out of range");
            idle = basis_vector(shape.dim_b, k);
        } else {
            idle = json_to_vector(j["idle"]);
            require(idle.size() == shape.dim_b, "idle vector must have length dim_b");
        }
    } else {
        idle = basis_vector(shape.dim_b, 0);
    }

    std::vector<Matrix> subspaces;
    if (j.contains("subspaces")) {
        require(j["subspaces"].is_array(), "subspaces must be an array of matrices");
        for (const auto& s : j["subspaces"]) {
            Matrix m = json_to_matrix(s);
            require(m.rows() == shape.dim_a && m.cols() == shape.dim_a,
                    "subspace projectors must be dim_a x dim_a");
            subspaces.push_back(std::move(m));
        }
    }

    ConversionProblem p = make_problem(shape, std::move(l), std::move(xi), std::move(tau),
                                       std::move(idle), std::move(subspaces));

    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        require(t.is_object(), "tolerances must be an object");
        reject_unknown_fields(t,
                              {"hermitian_tol", "purify_tol", "match_tol", "connect_tol",
                               "psd_tol", "feas_tol", "gap_tol", "rank_tol", "max_iter"},
                              "tolerances");
        auto take = [&](const char* key, double& slot) {
            if (t.contains(key)) slot = as_number(t[key], key);
        };
        take("hermitian_tol", p.tol.hermitian_tol);
        take("purify_tol", p.tol.purify_tol);
        take("match_tol", p.tol.match_tol);
        take("connect_tol", p.tol.connect_tol);
        take("psd_tol", p.tol.psd_tol);
        take("feas_tol", p.tol.feas_tol);
        take("gap_tol", p.tol.gap_tol);
        take("rank_tol", p.tol.rank_tol);
        if (t.contains("max_iter")) {
            require(t["max_iter"].is_number_integer(), "max_iter must be an integer");
            p.tol.max_iter = t["max_iter"].get<int>();
        }
    }
    return p;
}

ConversionProblem load_problem(const std::string& path) {
    return json_to_problem(load_json_file(path));
}

void save_problem(const std::string& path, const ConversionProblem& p) {
    save_json_file(path, problem_to_json(p));
}

json plan_to_json(const AlgorithmPlan& plan) {
    json j;
    j["schema_version"] = "1";
    j["dims"] = {{"a", plan.shape.dim_a}, {"b", plan.shape.dim_b}, {"c", plan.shape.dim_c}};
    j["t_prime"] = plan.t_prime;
    j["adv_value"] = plan.adv_value;
    j["predicted_error"] = plan.predicted_error;
    j["l"] = matrix_to_json(plan.l_lifted.topLeftCorner(plan.shape.dim_ab(), plan.shape.dim_ab()));
    j["perturbed_input"] = vector_to_json(plan.perturbed_input);
    j["perturbed_target"] = vector_to_json(plan.perturbed_target);
    json ws = json::array();
    for (const auto& w : plan.unitaries) ws.push_back(matrix_to_json(w));
    j["unitaries"] = std::move(ws);
    j["ancilla"] = {{"dim", 2}, {"keep", 0}};
    return j;
}

namespace {

// the lifted operator stores L (x) I; recover L from the leading block
Matrix unlift_l(const Matrix& lifted, Index dab, Index dcp) {
    Matrix l(dab, dab);
    for (Index i = 0; i < dab; ++i) {
        for (Index j = 0; j < dab; ++j) l(i, j) = lifted(i * dcp, j * dcp);
    }
    return l;
}

}  // namespace

AlgorithmPlan json_to_plan(const json& j) {
    require(j.is_object(), "plan file must be a JSON object");
    reject_unknown_fields(j,
                          {"schema_version", "dims", "t_prime", "adv_value", "predicted_error",
                           "l", "perturbed_input", "perturbed_target", "unitaries", "ancilla"},
                          "plan file");
    require(j.contains("schema_version") && j["schema_version"] == "1",
            "plan file must declare schema_version \"1\"");
    for (const char* key :
         {"dims", "t_prime", "l", "perturbed_input", "perturbed_target", "unitaries"}) {
        require(j.contains(key), std::string("plan file needs field ") + key);
    }
    AlgorithmPlan plan;
    plan.shape = SubsystemShape{j["dims"]["a"].get<Index>(), j["dims"]["b"].get<Index>(),
                                j["dims"]["c"].get<Index>()};
    plan.dim_c_prime = 2 * plan.shape.dim_c;
    require(j["t_prime"].is_number_integer() && j["t_prime"].get<Index>() >= 1,
            "t_prime must be a positive integer");
    plan.t_prime = j["t_prime"].get<Index>();
    plan.adv_value = j.value("adv_value", 0.0);
    plan.predicted_error = j.value("predicted_error", 0.0);

    const Matrix l = json_to_matrix(j["l"]);
    require(l.rows() == plan.shape.dim_ab() && l.cols() == plan.shape.dim_ab(),
            "plan operator must be dim_a*dim_b square");
    plan.l_lifted = kron(l, identity(plan.dim_c_prime));

    plan.perturbed_input = json_to_vector(j["perturbed_input"]);
    plan.perturbed_target = json_to_vector(j["perturbed_target"]);
    require(plan.perturbed_input.size() == plan.full_dim() &&
                plan.perturbed_target.size() == plan.full_dim(),
            "perturbed vectors must have length dim_a*dim_b*dim_c*2");

    require(j["unitaries"].is_array() &&
                j["unitaries"].size() == static_cast<size_t>(plan.t_prime + 1),
            "plan must carry exactly t_prime+1 unitaries");
    for (const auto& w : j["unitaries"]) {
        Matrix m = json_to_matrix(w);
        require(m.rows() == plan.env_dim() && m.cols() == plan.env_dim(),
                "plan unitaries must act on B (x) C'");
        plan.unitaries.push_back(std::move(m));
    }
    plan.ancilla_projector = Matrix::Zero(2, 2);
    plan.ancilla_projector(0, 0) = 1.0;
    return plan;
}

AlgorithmPlan load_plan(const std::string& path) { return json_to_plan(load_json_file(path)); }

void save_plan(const std::string& path, const AlgorithmPlan& plan) {
    save_json_file(path, plan_to_json(plan));
}

json trace_to_json(const SimulationTrace& trace, bool include_states) {
    json j;
    j["schema_version"] = "1";
    j["t_prime"] = trace.t_prime;
    j["norms_sq"] = trace.norms_sq;
    j["idle_mass"] = trace.idle_mass;
    if (include_states) {
        json states;
        states["input"] = vector_to_json(trace.input);
        json pre = json::array();
        for (const auto& s : trace.prequery) pre.push_back(vector_to_json(s));
        states["prequery"] = std::move(pre);
        states["final"] = vector_to_json(trace.final_state);
        states["projected"] = vector_to_json(trace.final_projected);
        j["states"] = std::move(states);
    }
    return j;
}

void save_certificates(const std::string& path, const Matrix& pibar, const Matrix& gamma,
                       double value) {
    json j;
    j["schema_version"] = "1";
    j["value"] = value;
    j["pibar"] = matrix_to_json(pibar);
    j["gamma"] = matrix_to_json(gamma);
    save_json_file(path, j);
}

Matrix load_certificate_matrix(const std::string& path, const std::string& key) {
    const json j = load_json_file(path);
    require(j.is_object() && j.contains(key),
            "certificate file has no \"" + key + "\" entry");
    return json_to_matrix(j[key]);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << j.dump(1) << "\n";
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

}  // namespace qadv::io
