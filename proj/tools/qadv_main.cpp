// Command-line interface: validation, bound computation, certificate
// checking, plan synthesis and simulation for state-conversion control
// problems. Reports are JSON on stdout; diagnostics go to stderr.
// Exit codes: 0 success, 1 domain failure, 2 input/parse failure.

#include "qadv/io.hpp"
#include "qadv/problems.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

using qadv::io::json;
using qadv::io::round12;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitParse = 2;

void emit(const json& report) { std::cout << report.dump(1) << std::endl; }

json validation_to_json(const qadv::ValidationReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["residual"] = round12(c.residual);
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    json out;
    out["all_passed"] = rep.all_passed();
    out["checks"] = std::move(checks);
    return out;
}

json subspace_table(const std::vector<qadv::SubspaceStat>& stats) {
    json arr = json::array();
    for (const auto& s : stats) {
        json e;
        e["index"] = s.index;
        e["pibar_mass"] = round12(s.pibar_mass);
        e["xi_mass"] = round12(s.xi_mass);
        e["ratio"] = round12(s.ratio);
        e["included"] = s.included;
        e["violation"] = s.violation;
        arr.push_back(std::move(e));
    }
    return arr;
}

int cmd_validate(const std::string& path) {
    const qadv::ConversionProblem p = qadv::io::load_problem(path);
    const qadv::ValidationReport rep = qadv::validate(p);
    emit(validation_to_json(rep));
    return rep.all_passed() ? kExitOk : kExitDomain;
}

int cmd_bound(const std::string& path, bool refined, const std::string& certificates_out) {
    const qadv::ConversionProblem p = qadv::io::load_problem(path);
    const qadv::AdversaryResult res = qadv::adversary_bound(p);

    json out;
    out["status"] = qadv::to_string(res.status);
    if (res.status == qadv::AdversaryStatus::infeasible) {
        out["value"] = "infinity";
        out["reason"] = res.message;
        out["certified"] = res.infeasibility_certified;
        emit(out);
        return kExitOk;   // a meaningful answer, not a failure
    }
    out["value"] = round12(res.value);
    out["duality_gap"] = round12(res.duality_gap);
    out["primal_value"] = round12(res.primal_value);
    out["dual_value"] = round12(res.dual_value);
    out["eq_residual"] = round12(res.eq_residual);
    out["gamma_slack_max_eigenvalue"] = round12(res.gamma_slack);
    if (!res.message.empty()) out["message"] = res.message;
    if (refined) {
        if (!res.refined_value.has_value()) {
            std::cerr << "bound: --refined requires subspaces in the problem file\n";
            return kExitDomain;
        }
        out["refined_value"] = round12(*res.refined_value);
        out["per_subspace"] = subspace_table(*res.per_subspace);
    }
    if (!certificates_out.empty()) {
        qadv::io::save_certificates(certificates_out, res.pibar, res.gamma, res.value);
        out["certificates_out"] = certificates_out;
    }
    emit(out);
    return res.status == qadv::AdversaryStatus::optimal ? kExitOk : kExitDomain;
}

int cmd_synthesize(const std::string& path, std::optional<double> epsilon,
                   std::optional<qadv::Index> steps, const std::string& plan_out) {
    const qadv::ConversionProblem p = qadv::io::load_problem(path);
    const qadv::AdversaryResult res = qadv::adversary_bound(p);
    if (res.status == qadv::AdversaryStatus::infeasible) {
        std::cerr << "synthesize: bound is infinite; no finite plan exists\n";
        return kExitDomain;
    }
    if (res.status != qadv::AdversaryStatus::optimal) {
        std::cerr << "synthesize: bound computation failed: " << res.message << "\n";
        return kExitDomain;
    }
    const qadv::Index t_prime =
        steps ? *steps : qadv::steps_for_epsilon(res.value, epsilon.value());
    const qadv::RdmSequence seq = qadv::build_rdm_sequence(p, res.pibar, t_prime);
    const qadv::AlgorithmPlan plan = qadv::compile_plan(p, seq, res.pibar);

    json out;
    out["adv_value"] = round12(plan.adv_value);
    out["t_prime"] = plan.t_prime;
    out["predicted_error"] = round12(plan.predicted_error);
    if (!plan_out.empty()) {
        qadv::io::save_plan(plan_out, plan);
        out["plan_path"] = plan_out;
        emit(out);
    } else {
        emit(qadv::io::plan_to_json(plan));
    }
    return kExitOk;
}

int cmd_simulate(const std::string& plan_path, const std::string& problem_path,
                 const std::string& trace_out) {
    const qadv::AlgorithmPlan plan = qadv::io::load_plan(plan_path);
    const qadv::ConversionProblem p = qadv::io::load_problem(problem_path);
    if (plan.shape.dim_a != p.shape.dim_a || plan.shape.dim_b != p.shape.dim_b ||
        plan.shape.dim_c != p.shape.dim_c) {
        throw qadv::io::ParseError("simulate: plan and problem dimensions are incompatible");
    }

    qadv::Vector input = qadv::Vector::Zero(plan.full_dim());
    for (qadv::Index i = 0; i < p.xi.size(); ++i) input(2 * i) = p.xi(i);

    const qadv::SimulationTrace trace = qadv::run(plan, p, input);
    const double err = qadv::final_error(trace, p.tau);
    const double bound = plan.predicted_error;

    json out;
    out["final_error"] = round12(err);
    out["theoretical_bound"] = round12(bound);
    out["las_vegas_mass"] = round12(qadv::las_vegas_mass(trace));
    out["no_discard_error"] = round12(qadv::no_discard_error(trace, p.tau));
    if (!p.subspaces.empty()) {
        json arr = json::array();
        for (const auto& e : qadv::per_subspace_error(trace, p)) {
            json entry;
            entry["index"] = e.index;
            entry["error"] = round12(e.error);
            entry["bound"] = round12(e.bound);
            entry["skipped"] = e.skipped;
            arr.push_back(std::move(entry));
        }
        out["per_subspace_errors"] = std::move(arr);
    }
    const bool ok = err <= bound + 1e-6;
    out["bound_satisfied"] = ok;
    if (!trace_out.empty()) {
        qadv::io::save_json_file(trace_out, qadv::io::trace_to_json(trace));
        out["trace_path"] = trace_out;
    }
    emit(out);
    if (!ok) {
        std::cerr << "simulate: final error " << err << " exceeds the theoretical bound " << bound
                  << " + 1e-6\n";
        return kExitDomain;
    }
    return kExitOk;
}

int cmd_certify(const std::string& path, const std::string& pibar_file,
                const std::string& gamma_file) {
    const qadv::ConversionProblem p = qadv::io::load_problem(path);
    json out;
    bool all_ok = true;
    if (!pibar_file.empty()) {
        const qadv::Matrix pibar = qadv::io::load_certificate_matrix(pibar_file, "pibar");
        if (pibar.rows() != p.shape.dim_ab() || pibar.cols() != p.shape.dim_ab()) {
            throw qadv::io::ParseError("certify: pibar has wrong dimension");
        }
        const double res = qadv::conversion_residual(p, pibar);
        const auto psd = qadv::psd_check(pibar, p.tol.psd_tol);
        const bool ok = res <= p.tol.feas_tol && psd.is_psd;
        json rep;
        rep["eq_residual"] = round12(res);
        rep["min_eigenvalue"] = round12(psd.min_eigenvalue);
        rep["objective_value"] = round12(pibar.trace().real() / p.xi_norm_sq());
        rep["feasible"] = ok;
        out["pibar"] = std::move(rep);
        all_ok = all_ok && ok;
    }
    if (!gamma_file.empty()) {
        const qadv::Matrix gamma = qadv::io::load_certificate_matrix(gamma_file, "gamma");
        if (gamma.rows() != p.shape.dim_a || gamma.cols() != p.shape.dim_a) {
            throw qadv::io::ParseError("certify: gamma has wrong dimension");
        }
        const double slack = qadv::dual_slack_max_eigenvalue(p, gamma);
        const bool ok = slack <= p.tol.psd_tol;
        json rep;
        rep["slack_max_eigenvalue"] = round12(slack);
        rep["objective_value"] = round12(qadv::dual_objective_value(p, gamma));
        rep["feasible"] = ok;
        out["gamma"] = std::move(rep);
        all_ok = all_ok && ok;
    }
    if (pibar_file.empty() && gamma_file.empty()) {
        std::cerr << "certify: provide --pibar and/or --gamma\n";
        return kExitParse;
    }
    emit(out);
    return all_ok ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Adversary bounds, universal-algorithm synthesis and simulation for "
        "quantum state-conversion control problems"};
    app.require_subcommand(1);

    std::string path, plan_path, problem_path;
    std::string certificates_out, plan_out, trace_out, pibar_file, gamma_file;
    bool refined = false;
    double epsilon = 0.0;
    long long steps = 0;

    auto* validate_cmd = app.add_subcommand("validate", "check a problem file's invariants");
    validate_cmd->add_option("path", path, "problem file")->required();

    auto* bound_cmd = app.add_subcommand("bound", "compute the adversary bound");
    bound_cmd->add_option("path", path, "problem file")->required();
    bound_cmd->add_flag("--refined", refined, "also report the per-subspace refinement");
    bound_cmd->add_option("--certificates-out", certificates_out,
                          "write pibar and gamma certificates to this file");

    auto* synth_cmd = app.add_subcommand("synthesize", "build an algorithm plan");
    synth_cmd->add_option("path", path, "problem file")->required();
    auto* eps_opt = synth_cmd->add_option("--epsilon", epsilon, "target error in (0, 1]");
    auto* steps_opt = synth_cmd->add_option("--steps", steps, "explicit step count T'");
    eps_opt->excludes(steps_opt);
    synth_cmd->add_option("--plan-out", plan_out, "write the plan to this file");

    auto* sim_cmd = app.add_subcommand("simulate", "run a plan on a problem's initial state");
    sim_cmd->add_option("plan", plan_path, "plan file")->required();
    sim_cmd->add_option("problem", problem_path, "problem file")->required();
    sim_cmd->add_option("--trace-out", trace_out, "write the full trace to this file");

    auto* cert_cmd = app.add_subcommand("certify", "verify certificates without the solver");
    cert_cmd->add_option("path", path, "problem file")->required();
    cert_cmd->add_option("--pibar", pibar_file, "certificate file with a pibar entry");
    cert_cmd->add_option("--gamma", gamma_file, "certificate file with a gamma entry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (app.got_subcommand(validate_cmd)) return cmd_validate(path);
        if (app.got_subcommand(bound_cmd)) return cmd_bound(path, refined, certificates_out);
        if (app.got_subcommand(synth_cmd)) {
            if (eps_opt->count() == 0 && steps_opt->count() == 0) {
                std::cerr << "synthesize: provide --epsilon or --steps\n";
                return kExitParse;
            }
            std::optional<double> eps;
            std::optional<qadv::Index> st;
            if (eps_opt->count() > 0) eps = epsilon;
            if (steps_opt->count() > 0) st = static_cast<qadv::Index>(steps);
            qadv::SynthesisConfig cfg{eps, st};
            cfg.require_valid();
            return cmd_synthesize(path, eps, st, plan_out);
        }
        if (app.got_subcommand(sim_cmd)) return cmd_simulate(plan_path, problem_path, trace_out);
        if (app.got_subcommand(cert_cmd)) return cmd_certify(path, pibar_file, gamma_file);
    } catch (const qadv::io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitParse;
}
