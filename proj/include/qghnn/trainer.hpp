#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qghnn/circuit.hpp"
#include "qghnn/common.hpp"
#include "qghnn/pauli.hpp"
#include "qghnn/statevector.hpp"

namespace qghnn {

// Training knobs. "Batch size 10" from the experiment tables is realized as
// 10 independent random restarts with the best kept: the loss is
// deterministic, so restarts are the only batching-shaped quantity.
struct TrainConfig {
    double learning_rate = 0.1;
    int steps = 500;
    double fd_delta = 1e-3;
    int restarts = 10;
    std::uint64_t seed = 1;
    double gap_delta = 1e-3; // early stop when |loss - ground| < gap_delta
    bool normalize_hamiltonian = true;
    int threads = 1; // restart-level parallelism; results independent of it

    void validate() const {
        if (!(learning_rate > 0.0)) throw std::invalid_argument("train: learning_rate must be > 0");
        if (!(fd_delta > 0.0)) throw std::invalid_argument("train: fd_delta must be > 0");
        if (steps < 1) throw std::invalid_argument("train: steps must be >= 1");
        if (restarts < 1) throw std::invalid_argument("train: restarts must be >= 1");
    }
};

struct TrainReport {
    std::vector<double> loss_curve; // per-step losses of the best restart
    ParamVector final_params;
    double final_loss = 0.0;
    double ground_energy = 0.0; // oracle ground energy of the trained operator
    bool converged = false;
    int best_restart = 0;
    std::vector<double> restart_final_losses;
    double spectral_scale = 1.0; // 1 when normalization is off or inapplicable
};

// Observer for per-step progress; (restart index, 1-based step, loss value).
using TrainLogger = std::function<void(int, int, double)>;

// Loss(theta) = <psi_t(theta)| h |psi_t(theta)>.
inline double loss(const CircuitSpec& spec, const ParamVector& params,
                   const StateVector& psi0, const PauliOperator& h) {
    if (h.n != spec.n_qubits) {
        throw std::invalid_argument("loss: operator has " + std::to_string(h.n) +
                                    " qubits, circuit expects " + std::to_string(spec.n_qubits));
    }
    return expectation(h, run_circuit(spec, params, psi0));
}

// Central finite difference, component j = (L(theta + d e_j) - L(theta - d e_j)) / 2d.
// Costs two circuit evaluations per parameter.
inline std::vector<double> gradient_fd(const CircuitSpec& spec, const ParamVector& params,
                                       const StateVector& psi0, const PauliOperator& h,
                                       double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("gradient_fd: delta must be > 0");
    std::vector<double> grad(params.size(), 0.0);
    ParamVector probe = params;
    for (std::size_t j = 0; j < params.size(); ++j) {
        probe[j] = params[j] + delta;
        const double up = loss(spec, probe, psi0, h);
        probe[j] = params[j] - delta;
        const double down = loss(spec, probe, psi0, h);
        probe[j] = params[j];
        grad[j] = (up - down) / (2.0 * delta);
    }
    return grad;
}

namespace detail {

struct RestartResult {
    std::vector<double> curve;
    ParamVector params;
    double final_loss = 0.0;
    bool converged = false;
};

inline RestartResult run_restart(const CircuitSpec& spec, const TrainConfig& cfg,
                                 const StateVector& psi0, const PauliOperator& h,
                                 double ground, std::uint64_t restart_seed, int restart_index,
                                 const TrainLogger& logger) {
    std::mt19937_64 rng(restart_seed);
    ParamVector theta(spec.param_count());
    for (double& t : theta) t = uniform01(rng) * 2.0 * std::numbers::pi;

    RestartResult res;
    res.curve.reserve(cfg.steps);
    for (int step = 1; step <= cfg.steps; ++step) {
        const auto grad = gradient_fd(spec, theta, psi0, h, cfg.fd_delta);
        for (std::size_t j = 0; j < theta.size(); ++j) {
            theta[j] -= cfg.learning_rate * grad[j];
        }
        const double value = loss(spec, theta, psi0, h);
        if (!std::isfinite(value)) {
            throw NumericalFailureError("train: non-finite loss at restart " +
                                        std::to_string(restart_index) + ", step " +
                                        std::to_string(step));
        }
        res.curve.push_back(value);
        if (logger) logger(restart_index, step, value);
        if (std::abs(value - ground) < cfg.gap_delta) {
            res.converged = true;
            break;
        }
    }
    res.params = std::move(theta);
    res.final_loss = res.curve.back();
    return res;
}

} // namespace detail

// Gradient-descent loop, theta <- theta - R * dLoss/dtheta, over independent
// seeded restarts; the restart with the lowest final loss is reported.
// When normalize_hamiltonian is set and h is nonzero, training minimizes
// h / |min_eig| so the floor sits at -1.
inline TrainReport train(const CircuitSpec& spec, const TrainConfig& cfg,
                         const StateVector& psi0, const PauliOperator& h,
                         const TrainLogger& logger = {}) {
    cfg.validate();
    validate_spec(spec);
    if (psi0.n != spec.n_qubits || h.n != spec.n_qubits) {
        throw std::invalid_argument("train: state/operator/circuit qubit counts differ");
    }

    TrainReport report;
    PauliOperator objective = h;
    double ground = 0.0;
    if (h.is_zero()) {
        ground = 0.0;
    } else if (cfg.normalize_hamiltonian) {
        auto [scaled_op, scale] = normalize_spectral(h);
        objective = std::move(scaled_op);
        report.spectral_scale = scale;
        ground = exact_spectrum(objective).min_eig;
    } else {
        ground = exact_spectrum(h).min_eig;
    }
    report.ground_energy = ground;

    std::vector<detail::RestartResult> results(cfg.restarts);
    std::exception_ptr failure;
    auto work = [&](int r) {
        results[r] = detail::run_restart(spec, cfg, psi0, objective, ground,
                                         derive_seed(cfg.seed, static_cast<std::uint64_t>(r)), r,
                                         logger);
    };

    const int threads = std::max(1, std::min(cfg.threads, cfg.restarts));
    if (threads == 1) {
        for (int r = 0; r < cfg.restarts; ++r) work(r);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        std::mutex fail_mutex;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < cfg.restarts; r = next.fetch_add(1)) {
                    try {
                        work(r);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(fail_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    int best = 0;
    for (int r = 1; r < cfg.restarts; ++r) {
        if (results[r].final_loss < results[best].final_loss) best = r;
    }
    report.best_restart = best;
    report.loss_curve = std::move(results[best].curve);
    report.final_params = std::move(results[best].params);
    report.final_loss = results[best].final_loss;
    report.converged = results[best].converged;
    report.restart_final_losses.reserve(cfg.restarts);
    for (const auto& r : results) report.restart_final_losses.push_back(r.final_loss);
    return report;
}

} // namespace qghnn
