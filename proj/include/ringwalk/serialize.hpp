#pragma once

#include <string>
#include <vector>

#include "ringwalk/digraph.hpp"
#include "ringwalk/markov.hpp"
#include "ringwalk/simulator.hpp"

namespace ringwalk {

// Text output helpers shared by the command-line tool and the tests.
//
// JSON is emitted with a fixed key order and floats printed to 17
// significant digits, so identical inputs produce byte-identical documents.
// CSV uses comma delimiters, LF line endings, and RFC-style quoting for
// fields containing commas (state labels always do for k >= 2).

// %.17g rendering of a double.
std::string fmt_double(double v);

std::string json_escape(const std::string& s);
std::string csv_field(const std::string& s);

// {"gaps":[...],"blocked":[...]} with blocked as 0-based worker indices.
std::string state_json(const State& st);

std::string states_json(int k, int n, const std::vector<State>& states);
std::string states_csv(const std::vector<State>& states);

std::string matrix_json(const TransitionMatrix& P);
std::string matrix_csv(const TransitionMatrix& P);

// `method` is "closed" or "power"; pass both vectors for method "both".
std::string stationary_json(int k, int n, double s, const std::string& method,
                            const std::vector<State>& states,
                            const std::vector<double>& nu_closed,
                            const std::vector<double>& nu_power);
std::string stationary_csv(const std::vector<State>& states,
                           const std::vector<double>& nu_closed,
                           const std::vector<double>& nu_power);

std::string blockage_json(int k, int n, double s, double r, double blockage);
std::string blockage_csv(int k, int n, double s, double r, double blockage);

std::string stats_json(const SimulationStats& stats);

std::string digraph_json(const RearrangementDigraph& g);

// One verification check with its measured value.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::string checks_json(int k, int n, double s, const std::vector<CheckResult>& checks);

// Writes via a temporary file in the target directory plus an atomic
// rename, so readers never observe a partial file.  Throws
// std::runtime_error on I/O failure.
void write_atomic(const std::string& path, const std::string& content);

} // namespace ringwalk
