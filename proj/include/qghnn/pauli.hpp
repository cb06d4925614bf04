#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qghnn/common.hpp"
#include "qghnn/graph.hpp"
#include "qghnn/statevector.hpp"

namespace qghnn {

// One weighted Pauli string: coeff * (letter_0 x letter_1 x ... x letter_{n-1})
// with letters over {I, X, Y, Z}, letter q acting on qubit q.
struct PauliTerm {
    double coeff = 0.0;
    std::string letters;
};

// Hermitian operator as a canonical sum of Pauli strings: real coefficients,
// no duplicate strings (merged), terms sorted by string.
struct PauliOperator {
    int n = 0;
    std::vector<PauliTerm> terms;

    bool is_zero() const { return terms.empty(); }
};

struct SpectralSummary {
    double min_eig = 0.0;
    double max_eig = 0.0;
    StateVector ground_state;
};

inline void validate_letters(const std::string& letters, int n) {
    if (static_cast<int>(letters.size()) != n) {
        throw std::invalid_argument("pauli string length != qubit count");
    }
    for (char c : letters) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument(std::string("invalid pauli letter: ") + c);
        }
    }
}

// Merge duplicate strings, drop exact-zero coefficients, sort by string.
inline void canonicalize(PauliOperator& op) {
    std::map<std::string, double> merged;
    for (const PauliTerm& t : op.terms) {
        validate_letters(t.letters, op.n);
        merged[t.letters] += t.coeff;
    }
    op.terms.clear();
    for (const auto& [letters, coeff] : merged) {
        if (coeff != 0.0) op.terms.push_back({coeff, letters});
    }
}

inline PauliOperator scaled(const PauliOperator& op, double factor) {
    PauliOperator out = op;
    for (PauliTerm& t : out.terms) t.coeff *= factor;
    return out;
}

// H_m = sum_{i,j} A_ij (Jx X_i X_j + Jy Y_i Y_j + Jz Z_i Z_j), the double sum
// over ordered pairs, so each undirected edge carries coefficient 2*J per
// axis after merging. half_sum restricts to i < j (single counting).
// Qubits beyond g.n carry identity.
struct Couplings {
    double jx = 1.0;
    double jy = 1.0;
    double jz = 1.0;
};

inline PauliOperator build_mapping_hamiltonian(const Graph& g, const Couplings& j,
                                               int n_qubits, bool half_sum = false) {
    validate_graph(g);
    if (n_qubits < g.n) {
        throw CapacityError("mapping hamiltonian: " + std::to_string(n_qubits) +
                            " qubits < " + std::to_string(g.n) + " nodes");
    }
    if (!std::isfinite(j.jx) || !std::isfinite(j.jy) || !std::isfinite(j.jz)) {
        throw std::invalid_argument("mapping hamiltonian: couplings must be finite");
    }
    PauliOperator op;
    op.n = n_qubits;
    for (int a = 0; a < g.n; ++a) {
        for (int b = 0; b < g.n; ++b) {
            if (a == b || g.adj[a][b] == 0.0) continue;
            if (half_sum && a > b) continue;
            const double w = g.adj[a][b];
            for (auto [axis, coupling] :
                 {std::pair{'X', j.jx}, std::pair{'Y', j.jy}, std::pair{'Z', j.jz}}) {
                PauliTerm t;
                t.coeff = w * coupling;
                t.letters.assign(n_qubits, 'I');
                t.letters[a] = axis;
                t.letters[b] = axis;
                op.terms.push_back(std::move(t));
            }
        }
    }
    canonicalize(op);
    return op;
}

// H_c = sum_n Y_n + sum_n (1/2 I - pi/4 Z_n Z_{n+1}) + sum_n X_n.
// The pair sum runs over the open chain (no wrap-around gate appears in the
// circuit); periodic adds the (N-1, 0) closure term. Documentation and
// decomposition cross-checks only: the circuit applies its Eq-level gate
// decomposition directly.
inline PauliOperator build_circuit_hamiltonian(int n_qubits, bool periodic = false) {
    if (n_qubits < 2) throw std::invalid_argument("circuit hamiltonian: need >= 2 qubits");
    PauliOperator op;
    op.n = n_qubits;
    for (int q = 0; q < n_qubits; ++q) {
        PauliTerm y{1.0, std::string(n_qubits, 'I')};
        y.letters[q] = 'Y';
        op.terms.push_back(std::move(y));
        PauliTerm x{1.0, std::string(n_qubits, 'I')};
        x.letters[q] = 'X';
        op.terms.push_back(std::move(x));
    }
    const int pairs = periodic ? n_qubits : n_qubits - 1;
    for (int q = 0; q < pairs; ++q) {
        PauliTerm zz{-std::numbers::pi / 4.0, std::string(n_qubits, 'I')};
        zz.letters[q] = 'Z';
        zz.letters[(q + 1) % n_qubits] = 'Z';
        op.terms.push_back(std::move(zz));
        op.terms.push_back({0.5, std::string(n_qubits, 'I')});
    }
    canonicalize(op);
    return op;
}

namespace detail {

// P|k> = phase(k) |k ^ flip_mask>; phase collects i,-1 factors from Y and Z.
struct StringAction {
    std::size_t flip_mask = 0;
    // phase(k) = base_phase * (-1)^{popcount(k & sign_mask)}
    cplx base_phase{1.0, 0.0};
    std::size_t sign_mask = 0;
};

inline StringAction string_action(const std::string& letters, int n) {
    StringAction act;
    for (int q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        switch (letters[q]) {
            case 'I': break;
            case 'X': act.flip_mask |= bit; break;
            case 'Y':
                act.flip_mask |= bit;
                act.sign_mask |= bit;
                act.base_phase *= cplx{0.0, 1.0};
                break;
            case 'Z': act.sign_mask |= bit; break;
            default: throw std::invalid_argument("invalid pauli letter");
        }
    }
    return act;
}

inline int parity(std::size_t x) {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_parityll(x);
#else
    int p = 0;
    while (x) { p ^= 1; x &= x - 1; }
    return p;
#endif
}

} // namespace detail

// |phi> = op |psi>, term by term.
inline StateVector apply_operator(const PauliOperator& op, const StateVector& psi) {
    if (op.n != psi.n) throw std::invalid_argument("apply_operator: qubit counts differ");
    StateVector phi;
    phi.n = psi.n;
    phi.amps.assign(psi.amps.size(), cplx{0.0, 0.0});
    for (const PauliTerm& t : op.terms) {
        const auto act = detail::string_action(t.letters, op.n);
        for (std::size_t k = 0; k < psi.amps.size(); ++k) {
            const double sgn = detail::parity(k & act.sign_mask) ? -1.0 : 1.0;
            phi.amps[k ^ act.flip_mask] += t.coeff * sgn * act.base_phase * psi.amps[k];
        }
    }
    return phi;
}

// <psi| op |psi>. The imaginary residue must vanish up to rounding; it is
// checked and dropped.
inline double expectation(const PauliOperator& op, const StateVector& psi) {
    if (op.n != psi.n) throw std::invalid_argument("expectation: qubit counts differ");
    cplx acc{0.0, 0.0};
    for (const PauliTerm& t : op.terms) {
        const auto act = detail::string_action(t.letters, op.n);
        cplx term{0.0, 0.0};
        for (std::size_t k = 0; k < psi.amps.size(); ++k) {
            const double sgn = detail::parity(k & act.sign_mask) ? -1.0 : 1.0;
            term += std::conj(psi.amps[k ^ act.flip_mask]) * (sgn * psi.amps[k]);
        }
        acc += t.coeff * act.base_phase * term;
    }
    if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real()))) {
        throw NumericalFailureError("expectation: imaginary residue " +
                                    std::to_string(acc.imag()));
    }
    return acc.real();
}

// Dense 2^n x 2^n realization, row-major.
inline std::vector<cplx> dense_matrix(const PauliOperator& op) {
    const std::size_t dim = std::size_t{1} << op.n;
    std::vector<cplx> m(dim * dim, cplx{0.0, 0.0});
    for (const PauliTerm& t : op.terms) {
        const auto act = detail::string_action(t.letters, op.n);
        for (std::size_t k = 0; k < dim; ++k) {
            const double sgn = detail::parity(k & act.sign_mask) ? -1.0 : 1.0;
            m[(k ^ act.flip_mask) * dim + k] += t.coeff * sgn * act.base_phase;
        }
    }
    return m;
}

namespace detail {

// Cyclic complex Jacobi eigensolver for Hermitian matrices. Desk-scale oracle:
// exact full spectrum plus eigenvectors, O(dim^3) per sweep.
inline void hermitian_eig(std::vector<cplx> a, std::size_t dim,
                          std::vector<double>& eigenvalues,
                          std::vector<cplx>& eigenvectors) {
    eigenvectors.assign(dim * dim, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) eigenvectors[i * dim + i] = 1.0;

    double scale = 0.0;
    for (std::size_t i = 0; i < dim * dim; ++i) scale = std::max(scale, std::abs(a[i]));
    if (scale == 0.0) {
        eigenvalues.assign(dim, 0.0);
        return;
    }
    const double tol = 1e-15 * scale;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < dim; ++p)
            for (std::size_t q = p + 1; q < dim; ++q) off += std::norm(a[p * dim + q]);
        if (std::sqrt(off) <= tol * dim) break;

        for (std::size_t p = 0; p < dim; ++p) {
            for (std::size_t q = p + 1; q < dim; ++q) {
                const cplx apq = a[p * dim + q];
                const double mag = std::abs(apq);
                if (mag <= tol) continue;
                const cplx phase = apq / mag;
                const double app = a[p * dim + p].real();
                const double aqq = a[q * dim + q].real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;        // s e^{i phi}
                const cplx spc = std::conj(sp);   // s e^{-i phi}

                // columns: col_p' = c col_p - s e^{-i phi} col_q,
                //          col_q' = s e^{i phi} col_p + c col_q
                for (std::size_t r = 0; r < dim; ++r) {
                    const cplx arp = a[r * dim + p];
                    const cplx arq = a[r * dim + q];
                    a[r * dim + p] = c * arp - spc * arq;
                    a[r * dim + q] = sp * arp + c * arq;
                    const cplx vrp = eigenvectors[r * dim + p];
                    const cplx vrq = eigenvectors[r * dim + q];
                    eigenvectors[r * dim + p] = c * vrp - spc * vrq;
                    eigenvectors[r * dim + q] = sp * vrp + c * vrq;
                }
                // rows (conjugate transform)
                for (std::size_t col = 0; col < dim; ++col) {
                    const cplx apr = a[p * dim + col];
                    const cplx aqr = a[q * dim + col];
                    a[p * dim + col] = c * apr - sp * aqr;
                    a[q * dim + col] = spc * apr + c * aqr;
                }
                a[p * dim + q] = 0.0;
                a[q * dim + p] = 0.0;
            }
        }
    }
    eigenvalues.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) eigenvalues[i] = a[i * dim + i].real();
}

} // namespace detail

// Dense-diagonalization oracle: exact min/max eigenvalue and a ground
// eigenvector. Capped at 12 qubits (4096 x 4096 dense).
inline SpectralSummary exact_spectrum(const PauliOperator& op) {
    if (op.n < 1 || op.n > 12) {
        throw CapacityError("exact_spectrum: dense diagonalization capped at 12 qubits");
    }
    const std::size_t dim = std::size_t{1} << op.n;
    std::vector<double> evals;
    std::vector<cplx> evecs;
    detail::hermitian_eig(dense_matrix(op), dim, evals, evecs);

    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 1; i < dim; ++i) {
        if (evals[i] < evals[imin]) imin = i;
        if (evals[i] > evals[imax]) imax = i;
    }
    SpectralSummary sp;
    sp.min_eig = evals[imin];
    sp.max_eig = evals[imax];
    sp.ground_state.n = op.n;
    sp.ground_state.amps.resize(dim);
    for (std::size_t r = 0; r < dim; ++r) sp.ground_state.amps[r] = evecs[r * dim + imin];
    return sp;
}

// Rescale so the ground energy sits at -1: returns (op / |min_eig|, |min_eig|).
// Graph Hamiltonians are traceless, hence min_eig < 0 whenever nonzero.
inline std::pair<PauliOperator, double> normalize_spectral(const PauliOperator& op) {
    if (op.is_zero()) {
        throw DegenerateInputError("normalize_spectral: zero operator");
    }
    const SpectralSummary sp = exact_spectrum(op);
    const double scale = std::abs(sp.min_eig);
    if (scale == 0.0) {
        throw DegenerateInputError("normalize_spectral: ground energy is zero");
    }
    return {scaled(op, 1.0 / scale), scale};
}

} // namespace qghnn
