// JSON serialization of problems, plans, traces and certificates, plus the
// report-formatting helpers shared by the CLI. All files carry
// schema_version "1"; complex numbers are [re, im] pairs; matrices are
// row-major 2-D arrays of pairs. Unknown fields are rejected.

#pragma once

#include "qadv/adversary.hpp"
#include "qadv/simulator.hpp"
#include "qadv/synthesis.hpp"

#include <nlohmann/json_fwd.hpp>

#include <stdexcept>
#include <string>

namespace qadv::io {

using json = nlohmann::json;

// Malformed input files (bad JSON, wrong dims, unknown fields); the CLI
// maps this to exit code 2.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

json complex_to_json(const Complex& z);
json vector_to_json(const Vector& v);
json matrix_to_json(const Matrix& m);
Complex json_to_complex(const json& j);
Vector json_to_vector(const json& j);
Matrix json_to_matrix(const json& j);

json problem_to_json(const ConversionProblem& p);
ConversionProblem json_to_problem(const json& j);
ConversionProblem load_problem(const std::string& path);
void save_problem(const std::string& path, const ConversionProblem& p);

json plan_to_json(const AlgorithmPlan& plan);
AlgorithmPlan json_to_plan(const json& j);
AlgorithmPlan load_plan(const std::string& path);
void save_plan(const std::string& path, const AlgorithmPlan& plan);

json trace_to_json(const SimulationTrace& trace, bool include_states = true);

void save_certificates(const std::string& path, const Matrix& pibar, const Matrix& gamma,
                       double value);
Matrix load_certificate_matrix(const std::string& path, const std::string& key);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

// x rounded to 12 significant digits; reports print numbers through this.
double round12(double x);

}  // namespace qadv::io
