#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qghnn/statevector.hpp"

namespace qghnn {

using ParamVector = std::vector<double>;

// Execution order of the five-gate block. Fig4 is the circuit-diagram order
// (RY first, RX last); Eq12 is the operator-product reading of
// RY * CNOT * RZ * CNOT * RX, which applies RX first. The two differ; the
// diagram order is the default.
enum class BlockOrder { Fig4, Eq12 };

inline std::string block_order_name(BlockOrder o) {
    return o == BlockOrder::Fig4 ? "fig4" : "eq12";
}

// Layered ansatz over adjacent-qubit blocks with class-shared parameters:
// each layer owns one (theta_y, theta_z, theta_x) triple shared by all of its
// blocks, so the total parameter count is 3 * layers.
struct CircuitSpec {
    int n_qubits = 0;
    int layers = 0;
    std::vector<std::vector<std::pair<int, int>>> pair_layout; // one list per layer
    BlockOrder block_order = BlockOrder::Fig4;

    static constexpr int params_per_layer = 3;

    int param_count() const { return params_per_layer * layers; }
};

inline void validate_spec(const CircuitSpec& spec) {
    if (spec.n_qubits < 2) throw std::invalid_argument("circuit: need >= 2 qubits");
    if (spec.layers < 1) throw std::invalid_argument("circuit: need >= 1 layer");
    if (static_cast<int>(spec.pair_layout.size()) != spec.layers) {
        throw std::invalid_argument("circuit: pair_layout size != layers");
    }
    for (const auto& layer : spec.pair_layout) {
        for (const auto& [a, b] : layer) {
            if (b != a + 1 || a < 0 || b >= spec.n_qubits) {
                throw std::invalid_argument("circuit: block pair must be adjacent qubits");
            }
        }
    }
}

// The staircase of the circuit diagram: every layer runs blocks on
// (0,1), (1,2), ..., (n-2, n-1) in order.
inline CircuitSpec default_layout(int n_qubits, int layers, BlockOrder order = BlockOrder::Fig4) {
    if (n_qubits < 2) throw std::invalid_argument("default_layout: need >= 2 qubits");
    if (layers < 1) throw std::invalid_argument("default_layout: need >= 1 layer");
    CircuitSpec spec;
    spec.n_qubits = n_qubits;
    spec.layers = layers;
    spec.block_order = order;
    std::vector<std::pair<int, int>> sweep;
    for (int q = 0; q + 1 < n_qubits; ++q) sweep.emplace_back(q, q + 1);
    spec.pair_layout.assign(layers, sweep);
    return spec;
}

// One decomposed block on an adjacent pair (hbar = 1):
//   RY(theta_y) on both qubits, CNOT, RZ(2 theta_z / pi) on the target,
//   CNOT, RX(theta_x) on both qubits.
// Eq12 order runs the same gates as the operator product (RX side first).
inline std::vector<Gate> build_block(double theta_y, double theta_z, double theta_x,
                                     std::pair<int, int> pair,
                                     BlockOrder order = BlockOrder::Fig4) {
    const auto [control, target] = pair;
    if (target != control + 1 || control < 0) {
        throw std::invalid_argument("build_block: pair must be adjacent qubits");
    }
    const double rz_angle = 2.0 * theta_z / std::numbers::pi;
    std::vector<Gate> ys = {Gate::ry(control, theta_y), Gate::ry(target, theta_y)};
    std::vector<Gate> xs = {Gate::rx(control, theta_x), Gate::rx(target, theta_x)};
    std::vector<Gate> core = {Gate::cnot(control, target), Gate::rz(target, rz_angle),
                              Gate::cnot(control, target)};

    std::vector<Gate> block;
    block.reserve(7);
    const auto& first = (order == BlockOrder::Fig4) ? ys : xs;
    const auto& last = (order == BlockOrder::Fig4) ? xs : ys;
    block.insert(block.end(), first.begin(), first.end());
    block.insert(block.end(), core.begin(), core.end());
    block.insert(block.end(), last.begin(), last.end());
    return block;
}

// Full gate list of the circuit at the given parameters, layer by layer.
inline std::vector<Gate> circuit_gates(const CircuitSpec& spec, const ParamVector& params) {
    validate_spec(spec);
    if (static_cast<int>(params.size()) != spec.param_count()) {
        throw std::invalid_argument("circuit: expected " + std::to_string(spec.param_count()) +
                                    " parameters, got " + std::to_string(params.size()));
    }
    std::vector<Gate> gates;
    for (int layer = 0; layer < spec.layers; ++layer) {
        const double ty = params[3 * layer];
        const double tz = params[3 * layer + 1];
        const double tx = params[3 * layer + 2];
        for (const auto& pair : spec.pair_layout[layer]) {
            const auto block = build_block(ty, tz, tx, pair, spec.block_order);
            gates.insert(gates.end(), block.begin(), block.end());
        }
    }
    return gates;
}

// |psi_t(theta)> = U(theta) |psi0>.
inline StateVector run_circuit(const CircuitSpec& spec, const ParamVector& params,
                               const StateVector& psi0) {
    if (psi0.n != spec.n_qubits) {
        throw std::invalid_argument("run_circuit: state has " + std::to_string(psi0.n) +
                                    " qubits, circuit expects " + std::to_string(spec.n_qubits));
    }
    StateVector psi = psi0;
    for (const Gate& g : circuit_gates(spec, params)) apply_gate_inplace(psi, g);
    return psi;
}

} // namespace qghnn
