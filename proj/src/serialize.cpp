#include "ringwalk/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

namespace ringwalk {

namespace {

void append_index_array(std::string& out, std::uint64_t mask) {
    out += '[';
    bool first = true;
    for (int i = 0; i < 64; ++i) {
        if ((mask >> i) & 1u) {
            if (!first)
                out += ',';
            out += std::to_string(i);
            first = false;
        }
    }
    out += ']';
}

void append_double_array(std::string& out, const std::vector<double>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ',';
        out += fmt_double(values[i]);
    }
    out += ']';
}

void append_count_array(std::string& out, const std::vector<std::uint64_t>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(values[i]);
    }
    out += ']';
}

void append_label_array(std::string& out, const std::vector<State>& states) {
    out += '[';
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (i)
            out += ',';
        out += '"' + json_escape(state_label(states[i])) + '"';
    }
    out += ']';
}

} // namespace

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string state_json(const State& st) {
    std::string out = "{\"gaps\":[";
    for (std::size_t i = 0; i < st.gaps.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(st.gaps[i]);
    }
    out += "],\"blocked\":";
    append_index_array(out, st.blocked);
    out += '}';
    return out;
}

std::string states_json(int k, int n, const std::vector<State>& states) {
    std::string out = "{\"k\":" + std::to_string(k) + ",\"n\":" + std::to_string(n) +
                      ",\"count\":" + std::to_string(states.size()) + ",\"states\":[";
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (i)
            out += ',';
        out += state_json(states[i]);
    }
    out += "]}\n";
    return out;
}

std::string states_csv(const std::vector<State>& states) {
    std::string out;
    for (const State& st : states)
        out += state_label(st) + '\n';
    return out;
}

std::string matrix_json(const TransitionMatrix& P) {
    std::string out = "{\"k\":" + std::to_string(P.k()) + ",\"n\":" + std::to_string(P.n()) +
                      ",\"s\":" + fmt_double(P.s()) +
                      ",\"order\":" + std::to_string(P.order()) + ",\"states\":";
    append_label_array(out, P.states());
    out += ",\"p\":[";
    for (std::size_t i = 0; i < P.order(); ++i) {
        if (i)
            out += ',';
        out += '[';
        for (std::size_t j = 0; j < P.order(); ++j) {
            if (j)
                out += ',';
            out += fmt_double(P.at(i, j));
        }
        out += ']';
    }
    out += "]}\n";
    return out;
}

std::string matrix_csv(const TransitionMatrix& P) {
    std::string out = "state";
    for (const State& st : P.states())
        out += ',' + csv_field(state_label(st));
    out += '\n';
    for (std::size_t i = 0; i < P.order(); ++i) {
        out += csv_field(state_label(P.states()[i]));
        for (std::size_t j = 0; j < P.order(); ++j)
            out += ',' + fmt_double(P.at(i, j));
        out += '\n';
    }
    return out;
}

std::string stationary_json(int k, int n, double s, const std::string& method,
                            const std::vector<State>& states,
                            const std::vector<double>& nu_closed,
                            const std::vector<double>& nu_power) {
    std::string out = "{\"k\":" + std::to_string(k) + ",\"n\":" + std::to_string(n) +
                      ",\"s\":" + fmt_double(s) + ",\"method\":\"" + json_escape(method) +
                      "\",\"states\":";
    append_label_array(out, states);
    if (!nu_closed.empty()) {
        out += ",\"nu\":";
        append_double_array(out, nu_closed);
    }
    if (!nu_power.empty()) {
        out += (nu_closed.empty() ? ",\"nu\":" : ",\"nu_power\":");
        append_double_array(out, nu_power);
    }
    out += "}\n";
    return out;
}

std::string stationary_csv(const std::vector<State>& states,
                           const std::vector<double>& nu_closed,
                           const std::vector<double>& nu_power) {
    const bool both = !nu_closed.empty() && !nu_power.empty();
    std::string out = "state,nu";
    if (both)
        out += ",nu_power";
    out += '\n';
    const std::vector<double>& primary = nu_closed.empty() ? nu_power : nu_closed;
    for (std::size_t i = 0; i < states.size(); ++i) {
        out += csv_field(state_label(states[i])) + ',' + fmt_double(primary[i]);
        if (both)
            out += ',' + fmt_double(nu_power[i]);
        out += '\n';
    }
    return out;
}

std::string blockage_json(int k, int n, double s, double r, double blockage) {
    return "{\"k\":" + std::to_string(k) + ",\"n\":" + std::to_string(n) +
           ",\"s\":" + fmt_double(s) + ",\"r\":" + fmt_double(r) +
           ",\"blockage\":" + fmt_double(blockage) + "}\n";
}

std::string blockage_csv(int k, int n, double s, double r, double blockage) {
    return "k,n,s,r,blockage\n" + std::to_string(k) + ',' + std::to_string(n) + ',' +
           fmt_double(s) + ',' + fmt_double(r) + ',' + fmt_double(blockage) + '\n';
}

std::string stats_json(const SimulationStats& stats) {
    std::string out = "{\"params\":{\"k\":" + std::to_string(stats.k) +
                      ",\"n\":" + std::to_string(stats.n) + ",\"s\":" + fmt_double(stats.s) +
                      "},\"seed\":" + std::to_string(stats.seed) +
                      ",\"steps\":" + std::to_string(stats.steps) +
                      ",\"burnin\":" + std::to_string(stats.burnin) + ",\"f_cap\":";
    out += stats.f_cap ? std::to_string(*stats.f_cap) : "null";
    out += ",\"replicas\":" + std::to_string(stats.replicas);
    out += ",\"rng\":{\"generator\":\"mt19937_64\",\"streams\":\"splitmix64(master,replica,worker)\"}";
    out += ",\"per_worker_blocked\":";
    append_count_array(out, stats.per_worker_blocked);
    out += ",\"per_worker_exhausted\":";
    append_count_array(out, stats.per_worker_exhausted);
    out += ",\"blocked_fraction\":" + fmt_double(stats.blocked_fraction);
    out += ",\"exhausted_fraction\":" + fmt_double(stats.exhausted_fraction);
    out += ",\"occupancy\":";
    append_count_array(out, stats.occupancy);
    out += "}\n";
    return out;
}

std::string digraph_json(const RearrangementDigraph& g) {
    std::string out = "{\"k\":" + std::to_string(g.k()) + ",\"n\":" + std::to_string(g.n()) +
                      ",\"vertices\":" + std::to_string(g.vertex_count()) +
                      ",\"edges\":" + std::to_string(g.edge_count()) + ",\"configs\":[";
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (v)
            out += ',';
        out += '"' + json_escape(state_label(State{g.config(v), 0})) + '"';
    }
    out += "],\"edge_list\":[";
    bool first = true;
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        for (std::uint32_t v : g.neighbors(u)) {
            if (!first)
                out += ',';
            out += '[' + std::to_string(u) + ',' + std::to_string(v) + ']';
            first = false;
        }
    }
    out += "]}\n";
    return out;
}

std::string checks_json(int k, int n, double s, const std::vector<CheckResult>& checks) {
    bool all = true;
    std::string body;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        if (i)
            body += ',';
        body += "{\"name\":\"" + json_escape(checks[i].name) + "\",\"pass\":";
        body += checks[i].pass ? "true" : "false";
        body += ",\"detail\":\"" + json_escape(checks[i].detail) + "\"}";
        all = all && checks[i].pass;
    }
    return "{\"k\":" + std::to_string(k) + ",\"n\":" + std::to_string(n) +
           ",\"s\":" + fmt_double(s) + ",\"pass\":" + (all ? "true" : "false") +
           ",\"checks\":[" + body + "]}\n";
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty())
        dir = ".";
    std::random_device rd;
    const fs::path tmp =
        dir / (target.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("failed to move output into place at '" + path +
                                 "': " + ec.message());
    }
}

} // namespace ringwalk
