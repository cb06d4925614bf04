#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qghnn/circuit.hpp"
#include "qghnn/graph.hpp"
#include "qghnn/noise.hpp"
#include "qghnn/pauli.hpp"
#include "qghnn/readout.hpp"
#include "qghnn/statevector.hpp"
#include "qghnn/trainer.hpp"

namespace qghnn {

using json = nlohmann::json;

// ---- Graph <-> {"n": int, "adj": [[number]]} ----

inline json graph_to_json(const Graph& g) {
    return json{{"n", g.n}, {"adj", g.adj}};
}

inline Graph graph_from_json(const json& j) {
    Graph g;
    g.n = j.at("n").get<int>();
    g.adj = j.at("adj").get<Matrix>();
    validate_graph(g);
    return g;
}

// ---- PauliOperator <-> {"n": int, "terms": [{"coeff", "string"}]} ----

inline json operator_to_json(const PauliOperator& op) {
    json terms = json::array();
    for (const PauliTerm& t : op.terms) {
        terms.push_back(json{{"coeff", t.coeff}, {"string", t.letters}});
    }
    return json{{"n", op.n}, {"terms", terms}};
}

inline PauliOperator operator_from_json(const json& j) {
    PauliOperator op;
    op.n = j.at("n").get<int>();
    for (const json& t : j.at("terms")) {
        op.terms.push_back({t.at("coeff").get<double>(), t.at("string").get<std::string>()});
    }
    canonicalize(op);
    return op;
}

// ---- CircuitSpec <-> {"n_qubits", "layers", "layout": "staircase"} ----
// Only staircase layouts serialize; custom layouts are in-process objects.

inline json circuit_to_json(const CircuitSpec& spec) {
    json j{{"n_qubits", spec.n_qubits}, {"layers", spec.layers}, {"layout", "staircase"}};
    if (spec.block_order != BlockOrder::Fig4) j["block_order"] = block_order_name(spec.block_order);
    return j;
}

inline CircuitSpec circuit_from_json(const json& j) {
    if (j.value("layout", "staircase") != std::string("staircase")) {
        throw std::invalid_argument("circuit: unknown layout " + j["layout"].get<std::string>());
    }
    BlockOrder order = BlockOrder::Fig4;
    if (j.contains("block_order")) {
        const std::string name = j["block_order"].get<std::string>();
        if (name == "eq12") order = BlockOrder::Eq12;
        else if (name != "fig4") throw std::invalid_argument("circuit: unknown block_order " + name);
    }
    return default_layout(j.at("n_qubits").get<int>(), j.at("layers").get<int>(), order);
}

// ---- StateVector debug dump: [{"re", "im"}, ...] ----

inline json amplitudes_to_json(const StateVector& psi) {
    json arr = json::array();
    for (const cplx& a : psi.amps) arr.push_back(json{{"re", a.real()}, {"im", a.imag()}});
    return arr;
}

// ---- MetricReport / DecodedGraph ----

inline json metrics_to_json(const MetricReport& m) {
    return json{{"mse", m.mse}, {"cosine", m.cosine}, {"frobenius", m.frobenius},
                {"correlation", m.correlation}};
}

inline json decoded_to_json(const DecodedGraph& d) {
    return json{{"n", d.n}, {"method", d.method}, {"adj_est", d.adj_est}};
}

// ---- NoiseModel <-> {"p", "kinds": ["X","Y","Z"], "seed"} ----

inline char axis_letter(PauliAxis a) {
    switch (a) {
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        case PauliAxis::Z: return 'Z';
    }
    return '?';
}

inline json noise_to_json(const NoiseModel& m) {
    json kinds = json::array();
    for (PauliAxis a : m.kinds) kinds.push_back(std::string(1, axis_letter(a)));
    return json{{"p", m.p}, {"kinds", kinds}, {"seed", m.seed}};
}

inline NoiseModel noise_from_json(const json& j) {
    NoiseModel m;
    m.p = j.at("p").get<double>();
    if (j.contains("kinds")) {
        m.kinds.clear();
        for (const json& k : j["kinds"]) {
            const std::string s = k.get<std::string>();
            if (s == "X") m.kinds.push_back(PauliAxis::X);
            else if (s == "Y") m.kinds.push_back(PauliAxis::Y);
            else if (s == "Z") m.kinds.push_back(PauliAxis::Z);
            else throw std::invalid_argument("noise: unknown pauli kind " + s);
        }
    }
    m.seed = j.value("seed", std::uint64_t{0});
    m.validate();
    return m;
}

} // namespace qghnn
