#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qghnn {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes:
// configuration problems (invalid_argument and subclasses) -> 2,
// NumericalFailure -> 3.

// Requested sizes do not fit (e.g. 2^n_qubits < n^2, or a Hamiltonian on
// fewer qubits than the graph has nodes).
class CapacityError : public std::invalid_argument {
public:
    explicit CapacityError(const std::string& what) : std::invalid_argument(what) {}
};

// Input is structurally valid but degenerate for the operation
// (all-zero adjacency, zero operator).
class DegenerateInputError : public std::invalid_argument {
public:
    explicit DegenerateInputError(const std::string& what) : std::invalid_argument(what) {}
};

// A metric has no defined value for the given inputs (zero-vector cosine,
// zero-variance correlation). Message names the metric.
class UndefinedMetricError : public std::runtime_error {
public:
    explicit UndefinedMetricError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite value encountered during iteration. Message names the step.
class NumericalFailureError : public std::runtime_error {
public:
    explicit NumericalFailureError(const std::string& what) : std::runtime_error(what) {}
};

// splitmix64: cheap, well-mixed 64-bit hash used to derive independent
// sub-seeds (per restart, per noise trial) from one root seed. Derived
// streams are stable across platforms and independent of scheduling order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(root + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw. Used instead
// of std::uniform_real_distribution so identical seeds give identical streams
// on every standard library.
template <typename Rng>
double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace qghnn
