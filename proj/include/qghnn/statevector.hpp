#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qghnn/common.hpp"

namespace qghnn {

using cplx = std::complex<double>;

// Dense statevector over n qubits, 2^n complex amplitudes, unit norm.
//
// Index convention (shared by every module): qubit 0 is the MOST significant
// bit of the basis index, so |q0 q1 ... q_{n-1}> has index
// sum_q bit(q) << (n-1-q). This matches circuit diagrams where the top wire
// is qubit 0.
struct StateVector {
    int n = 0;
    std::vector<cplx> amps;

    std::size_t dim() const { return amps.size(); }

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amps) s += std::norm(a);
        return s;
    }
};

enum class GateKind { RX, RY, RZ, CNOT };

// One gate instance: a rotation on a single qubit or a CNOT on a
// (control, target) pair. Angles are radians.
struct Gate {
    GateKind kind = GateKind::RX;
    double angle = 0.0;
    int q0 = 0; // rotation target, or CNOT control
    int q1 = -1; // CNOT target, unused for rotations

    static Gate rx(int q, double theta) { return Gate{GateKind::RX, theta, q, -1}; }
    static Gate ry(int q, double theta) { return Gate{GateKind::RY, theta, q, -1}; }
    static Gate rz(int q, double theta) { return Gate{GateKind::RZ, theta, q, -1}; }
    static Gate cnot(int control, int target) { return Gate{GateKind::CNOT, 0.0, control, target}; }

    bool is_two_qubit() const { return kind == GateKind::CNOT; }

    friend bool operator==(const Gate& a, const Gate& b) {
        return a.kind == b.kind && a.angle == b.angle && a.q0 == b.q0 && a.q1 == b.q1;
    }
};

inline std::string gate_name(GateKind k) {
    switch (k) {
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
    }
    return "?";
}

// |k> on n qubits.
inline StateVector basis_state(int n, std::size_t k) {
    if (n < 1) throw std::invalid_argument("basis_state: qubit count must be >= 1");
    const std::size_t dim = std::size_t{1} << n;
    if (k >= dim) {
        throw std::invalid_argument("basis_state: index " + std::to_string(k) +
                                    " out of range for " + std::to_string(n) + " qubits");
    }
    StateVector psi;
    psi.n = n;
    psi.amps.assign(dim, cplx{0.0, 0.0});
    psi.amps[k] = cplx{1.0, 0.0};
    return psi;
}

// <a|b> = sum conj(a_k) b_k.
inline cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.n != b.n || a.amps.size() != b.amps.size()) {
        throw std::invalid_argument("inner_product: qubit counts differ");
    }
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < a.amps.size(); ++k) s += std::conj(a.amps[k]) * b.amps[k];
    return s;
}

namespace detail {

inline void check_target(const StateVector& psi, int q, const char* who) {
    if (q < 0 || q >= psi.n) {
        throw std::invalid_argument(std::string(who) + ": qubit " + std::to_string(q) +
                                    " invalid for " + std::to_string(psi.n) + "-qubit state");
    }
}

// Generic single-qubit 2x2 application on qubit q (MSB convention).
inline void apply_1q(StateVector& psi, int q, cplx u00, cplx u01, cplx u10, cplx u11) {
    const std::size_t stride = std::size_t{1} << (psi.n - 1 - q);
    const std::size_t dim = psi.amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const cplx a0 = psi.amps[i0];
            const cplx a1 = psi.amps[i1];
            psi.amps[i0] = u00 * a0 + u01 * a1;
            psi.amps[i1] = u10 * a0 + u11 * a1;
        }
    }
}

} // namespace detail

// In-place gate application. Matrices:
//   RX(t) = [[cos t/2, -i sin t/2], [-i sin t/2, cos t/2]]
//   RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
//   RZ(t) = diag(e^{-it/2}, e^{+it/2})
//   CNOT  = |0><0| x I + |1><1| x X on (control, target)
inline void apply_gate_inplace(StateVector& psi, const Gate& g) {
    detail::check_target(psi, g.q0, "apply_gate");
    switch (g.kind) {
        case GateKind::RX: {
            const double c = std::cos(g.angle / 2.0);
            const double s = std::sin(g.angle / 2.0);
            detail::apply_1q(psi, g.q0, {c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0});
            return;
        }
        case GateKind::RY: {
            const double c = std::cos(g.angle / 2.0);
            const double s = std::sin(g.angle / 2.0);
            detail::apply_1q(psi, g.q0, {c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0});
            return;
        }
        case GateKind::RZ: {
            const cplx p0 = std::polar(1.0, -g.angle / 2.0);
            const cplx p1 = std::polar(1.0, +g.angle / 2.0);
            detail::apply_1q(psi, g.q0, p0, {0.0, 0.0}, {0.0, 0.0}, p1);
            return;
        }
        case GateKind::CNOT: {
            detail::check_target(psi, g.q1, "apply_gate");
            if (g.q0 == g.q1) throw std::invalid_argument("apply_gate: CNOT control == target");
            const std::size_t mc = std::size_t{1} << (psi.n - 1 - g.q0);
            const std::size_t mt = std::size_t{1} << (psi.n - 1 - g.q1);
            const std::size_t dim = psi.amps.size();
            for (std::size_t k = 0; k < dim; ++k) {
                if ((k & mc) && !(k & mt)) std::swap(psi.amps[k], psi.amps[k | mt]);
            }
            return;
        }
    }
}

inline StateVector apply_gate(const StateVector& psi, const Gate& g) {
    StateVector out = psi;
    apply_gate_inplace(out, g);
    return out;
}

// Bare Pauli application, used by the noise channel and the ZZ readout.
// X|b> = |1-b>, Y|b> = i(-1)^b |1-b>, Z|b> = (-1)^b |b>.
enum class PauliAxis { X, Y, Z };

inline void apply_pauli_inplace(StateVector& psi, PauliAxis axis, int q) {
    detail::check_target(psi, q, "apply_pauli");
    switch (axis) {
        case PauliAxis::X:
            detail::apply_1q(psi, q, {0, 0}, {1, 0}, {1, 0}, {0, 0});
            return;
        case PauliAxis::Y:
            detail::apply_1q(psi, q, {0, 0}, {0, -1}, {0, 1}, {0, 0});
            return;
        case PauliAxis::Z:
            detail::apply_1q(psi, q, {1, 0}, {0, 0}, {0, 0}, {-1, 0});
            return;
    }
}

} // namespace qghnn
