#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qghnn/common.hpp"
#include "qghnn/statevector.hpp"

namespace qghnn {

using Matrix = std::vector<std::vector<double>>;

// Undirected graph as a symmetric adjacency matrix with zero diagonal.
// Benchmark graphs use 0/1 entries; arbitrary non-negative weights are
// accepted by the type but the bundled experiments never produce them.
struct Graph {
    int n = 0;
    Matrix adj;
};

// Adjacency divided by its Frobenius norm, plus the norm itself so a decoded
// matrix can be rescaled back to adjacency magnitude.
struct NormalizedAdjacency {
    int n = 0;
    Matrix values;
    double scale = 0.0; // sqrt(sum adj^2)
};

inline void validate_graph(const Graph& g) {
    if (g.n < 2) throw std::invalid_argument("graph: need at least 2 nodes");
    if (static_cast<int>(g.adj.size()) != g.n) {
        throw std::invalid_argument("graph: adjacency row count != n");
    }
    for (int i = 0; i < g.n; ++i) {
        if (static_cast<int>(g.adj[i].size()) != g.n) {
            throw std::invalid_argument("graph: adjacency is not square");
        }
        if (g.adj[i][i] != 0.0) throw std::invalid_argument("graph: diagonal must be zero");
        for (int j = 0; j < g.n; ++j) {
            if (g.adj[i][j] < 0.0) throw std::invalid_argument("graph: negative entry");
            if (g.adj[i][j] != g.adj[j][i]) {
                throw std::invalid_argument("graph: adjacency must be symmetric");
            }
        }
    }
}

// The three target graphs used by the experiments. t1 is a 4-node cycle,
// t2 a 5-node cycle, t3 a 6-node graph (a relabeled 6-cycle).
inline Graph make_benchmark_graph(const std::string& id) {
    Graph g;
    if (id == "t1") {
        g.n = 4;
        g.adj = {{0, 1, 0, 1},
                 {1, 0, 1, 0},
                 {0, 1, 0, 1},
                 {1, 0, 1, 0}};
    } else if (id == "t2") {
        g.n = 5;
        g.adj = {{0, 1, 0, 0, 1},
                 {1, 0, 1, 0, 0},
                 {0, 1, 0, 1, 0},
                 {0, 0, 1, 0, 1},
                 {1, 0, 0, 1, 0}};
    } else if (id == "t3") {
        g.n = 6;
        g.adj = {{0, 0, 0, 1, 1, 0},
                 {0, 0, 0, 1, 0, 1},
                 {0, 0, 0, 0, 1, 1},
                 {1, 1, 0, 0, 0, 0},
                 {1, 0, 1, 0, 0, 0},
                 {0, 1, 1, 0, 0, 0}};
    } else {
        throw std::invalid_argument("unknown benchmark graph id: " + id);
    }
    return g;
}

// K_n, the initial graph of every experiment.
inline Graph make_complete_graph(int n) {
    if (n < 2) throw std::invalid_argument("complete graph: need at least 2 nodes");
    Graph g;
    g.n = n;
    g.adj.assign(n, std::vector<double>(n, 1.0));
    for (int i = 0; i < n; ++i) g.adj[i][i] = 0.0;
    return g;
}

inline NormalizedAdjacency normalize_adjacency(const Graph& g) {
    validate_graph(g);
    double sum_sq = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) sum_sq += g.adj[i][j] * g.adj[i][j];
    if (sum_sq == 0.0) {
        throw DegenerateInputError("normalize_adjacency: all-zero adjacency");
    }
    NormalizedAdjacency na;
    na.n = g.n;
    na.scale = std::sqrt(sum_sq);
    na.values.assign(g.n, std::vector<double>(g.n, 0.0));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) na.values[i][j] = g.adj[i][j] / na.scale;
    return na;
}

// Number of qubits needed to amplitude-encode an n x n matrix with the flat
// index k = i*n + j: ceil(log2(n^2)).
inline int qubits_for_nodes(int n) {
    int q = 1;
    while ((std::size_t{1} << q) < static_cast<std::size_t>(n) * n) ++q;
    return q;
}

// Amplitude encoding: amplitude at basis index i*n + j holds values[i][j],
// indices >= n^2 are zero. The entries of a NormalizedAdjacency sum-square
// to one, so the result is a unit state.
inline StateVector encode_to_amplitudes(const NormalizedAdjacency& na, int n_qubits) {
    const std::size_t need = static_cast<std::size_t>(na.n) * na.n;
    if (n_qubits < 1 || (std::size_t{1} << n_qubits) < need) {
        throw CapacityError("encode_to_amplitudes: 2^" + std::to_string(n_qubits) +
                            " < " + std::to_string(need) + " matrix entries");
    }
    StateVector psi;
    psi.n = n_qubits;
    psi.amps.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    for (int i = 0; i < na.n; ++i)
        for (int j = 0; j < na.n; ++j)
            psi.amps[static_cast<std::size_t>(i) * na.n + j] = cplx{na.values[i][j], 0.0};
    return psi;
}

} // namespace qghnn
