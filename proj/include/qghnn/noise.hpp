#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "qghnn/circuit.hpp"
#include "qghnn/common.hpp"
#include "qghnn/pauli.hpp"
#include "qghnn/statevector.hpp"
#include "qghnn/trainer.hpp"

namespace qghnn {

// Stochastic Pauli channel: after each gate, each qubit the gate touched
// suffers, with probability p, one Pauli drawn uniformly from `kinds`.
// A trajectory is fully determined by the seed.
struct NoiseModel {
    double p = 0.0;
    std::vector<PauliAxis> kinds = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    std::uint64_t seed = 0;

    void validate() const {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("noise: p must be in [0, 1]");
        if (p > 0.0 && kinds.empty()) {
            throw std::invalid_argument("noise: kinds must be non-empty when p > 0");
        }
    }
};

// One noisy trajectory. The p = 0 path calls run_circuit directly and is
// bit-identical to the noiseless result.
inline StateVector apply_noisy_circuit(const CircuitSpec& spec, const ParamVector& params,
                                       const StateVector& psi0, const NoiseModel& model) {
    model.validate();
    if (model.p == 0.0) return run_circuit(spec, params, psi0);

    if (psi0.n != spec.n_qubits) {
        throw std::invalid_argument("apply_noisy_circuit: state/circuit qubit counts differ");
    }
    std::mt19937_64 rng(model.seed);
    StateVector psi = psi0;
    for (const Gate& g : circuit_gates(spec, params)) {
        apply_gate_inplace(psi, g);
        const int touched[2] = {g.q0, g.q1};
        const int count = g.is_two_qubit() ? 2 : 1;
        for (int i = 0; i < count; ++i) {
            if (uniform01(rng) < model.p) {
                auto pick = static_cast<std::size_t>(uniform01(rng) * model.kinds.size());
                pick = std::min(pick, model.kinds.size() - 1);
                apply_pauli_inplace(psi, model.kinds[pick], touched[i]);
            }
        }
    }
    return psi;
}

// Mean loss over independent trajectories. Trial seeds are split
// deterministically from the model seed and the sum runs in trial order, so
// the result does not depend on scheduling.
inline double noisy_eval(const CircuitSpec& spec, const ParamVector& params,
                         const StateVector& psi0, const PauliOperator& h,
                         const NoiseModel& model, int trials) {
    if (trials < 1) throw std::invalid_argument("noisy_eval: trials must be >= 1");
    model.validate();
    if (model.p == 0.0) return loss(spec, params, psi0, h);

    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        NoiseModel trial = model;
        trial.seed = derive_seed(model.seed, static_cast<std::uint64_t>(t));
        sum += expectation(h, apply_noisy_circuit(spec, params, psi0, trial));
    }
    return sum / trials;
}

} // namespace qghnn
