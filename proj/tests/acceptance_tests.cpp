// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one [PASS]/[FAIL] line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qghnn/cli.hpp"
#include "qghnn/experiment.hpp"
#include "qghnn/noise.hpp"
#include "test_helpers.hpp"

using namespace qghnn;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

ExperimentConfig bundled(const std::string& name) {
    return load_experiment_config((fs::path(QGHNN_CONFIG_DIR) / name).string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("qghnn_acceptance_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct VariantScore {
    std::string method;
    MetricReport metrics;
    bool defined = false;
};

std::vector<VariantScore> scored_variants(const ExperimentResult& res) {
    std::vector<VariantScore> out;
    for (const MetricRow& row : res.rows) {
        out.push_back({row.method, row.metrics, row.defined});
    }
    return out;
}

std::string fmt(double v) { return format_double(v); }

} // namespace

int main() {
    std::printf("acceptance suite\n");

    // Shared runs: the three bundled experiments.
    ExperimentResult exp01, exp02, exp03;
    double exp01_seconds = 0.0;
    {
        const auto t0 = std::chrono::steady_clock::now();
        exp01 = run_experiment(bundled("exp01.json"), nullptr);
        exp01_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        exp02 = run_experiment(bundled("exp02.json"), nullptr);
        exp03 = run_experiment(bundled("exp03.json"), nullptr);
    }

    criterion(1, "loss convergence on bundled exp01 (final <= -0.95, runtime < 60 s)",
              [&](std::string& detail) {
                  double best_restart_final = exp01.train.restart_final_losses.front();
                  for (double v : exp01.train.restart_final_losses) {
                      best_restart_final = std::min(best_restart_final, v);
                  }
                  detail = "final_loss=" + fmt(exp01.train.final_loss) +
                           ", best_restart_final=" + fmt(best_restart_final) +
                           ", ground=" + fmt(exp01.train.ground_energy) +
                           ", seconds=" + fmt(exp01_seconds);
                  const bool converged_enough = exp01.train.final_loss <= -0.95;
                  const bool one_restart_near = best_restart_final <= -0.95;
                  const bool fast_enough = exp01_seconds < 60.0;
                  return converged_enough && one_restart_near && fast_enough;
              });

    criterion(2, "relaxed metric reproduction on exp01/exp02/exp03",
              [&](std::string& detail) {
                  struct Gate {
                      const ExperimentResult* res;
                      double max_mse;
                      double min_cosine;
                      double min_corr; // NaN when not gated
                  };
                  const Gate gates[] = {{&exp01, 0.05, 0.95, 0.95},
                                        {&exp02, 0.08, 0.92, std::nan("")},
                                        {&exp03, 0.08, 0.92, std::nan("")}};
                  bool all_ok = true;
                  for (const Gate& g : gates) {
                      bool exp_ok = false;
                      double best_cos = -2.0;
                      std::string best;
                      for (const VariantScore& v : scored_variants(*g.res)) {
                          if (!v.defined) continue;
                          const bool ok =
                              v.metrics.mse <= g.max_mse && v.metrics.cosine >= g.min_cosine &&
                              (std::isnan(g.min_corr) || v.metrics.correlation >= g.min_corr);
                          if (v.metrics.cosine > best_cos) {
                              best_cos = v.metrics.cosine;
                              best = v.method + " mse=" + fmt(v.metrics.mse) +
                                     " cos=" + fmt(v.metrics.cosine) +
                                     " corr=" + fmt(v.metrics.correlation);
                          }
                          exp_ok = exp_ok || ok;
                      }
                      detail += g.res->config.run_id + " best[" + best + "] ";
                      all_ok = all_ok && exp_ok;
                  }
                  return all_ok;
              });

    criterion(3, "amplitude encoding round-trip (benchmarks + 100 random graphs)",
              [&](std::string& detail) {
                  std::mt19937_64 rng(101);
                  std::vector<Graph> graphs = {make_benchmark_graph("t1"),
                                               make_benchmark_graph("t2"),
                                               make_benchmark_graph("t3")};
                  for (int i = 0; i < 100; ++i) {
                      graphs.push_back(testutil::random_graph(rng, 2 + static_cast<int>(rng() % 5)));
                  }
                  double worst = 0.0;
                  for (const Graph& g : graphs) {
                      const auto na = normalize_adjacency(g);
                      const StateVector psi = encode_to_amplitudes(na, qubits_for_nodes(g.n));
                      const DecodedGraph d = decode_amplitude(psi, g.n, na.scale);
                      for (int i = 0; i < g.n; ++i)
                          for (int j = 0; j < g.n; ++j)
                              worst = std::max(worst, std::abs(d.adj_est[i][j] - g.adj[i][j]));
                  }
                  detail = "worst_entry_error=" + fmt(worst);
                  return worst < 1e-10;
              });

    criterion(4, "variational bound over 200 random (graph, params) instances",
              [&](std::string& detail) {
                  std::mt19937_64 rng(202);
                  double worst_violation = -1e9;
                  for (int trial = 0; trial < 200; ++trial) {
                      const int n = 2 + static_cast<int>(rng() % 3);
                      const Graph g = testutil::random_graph(rng, n);
                      const PauliOperator h = build_mapping_hamiltonian(g, Couplings{}, n);
                      const double floor = exact_spectrum(h).min_eig;
                      const CircuitSpec spec = default_layout(n, 1 + static_cast<int>(rng() % 2));
                      const double value =
                          loss(spec, testutil::random_params(rng, spec.param_count()),
                               testutil::random_state(rng, n), h);
                      worst_violation = std::max(worst_violation, floor - value);
                  }
                  detail = "worst_floor_minus_loss=" + fmt(worst_violation);
                  return worst_violation <= 1e-8;
              });

    criterion(5, "finite-difference gradient vs Richardson oracle (50 3-qubit instances)",
              [&](std::string& detail) {
                  std::mt19937_64 rng(303);
                  double worst = 0.0;
                  for (int trial = 0; trial < 50; ++trial) {
                      const int nodes = 2 + static_cast<int>(rng() % 2);
                      const CircuitSpec spec = default_layout(3, 1 + static_cast<int>(rng() % 2));
                      const PauliOperator h = build_mapping_hamiltonian(
                          testutil::random_graph(rng, nodes), Couplings{}, 3);
                      const StateVector psi0 = testutil::random_state(rng, 3);
                      const ParamVector params =
                          testutil::random_params(rng, spec.param_count());
                      const auto fast = gradient_fd(spec, params, psi0, h, 1e-3);
                      const auto oracle =
                          testutil::richardson_gradient(spec, params, psi0, h, 1e-3);
                      for (std::size_t j = 0; j < fast.size(); ++j) {
                          worst = std::max(worst, std::abs(fast[j] - oracle[j]));
                      }
                  }

                  // layer isolation: bumping layer 0's triple leaves other layers alone
                  const CircuitSpec spec = default_layout(4, 3);
                  std::mt19937_64 rng2(404);
                  const ParamVector base = testutil::random_params(rng2, spec.param_count());
                  ParamVector bumped = base;
                  bumped[0] += 0.3;
                  bumped[1] += 0.2;
                  bumped[2] -= 0.1;
                  const auto g0 = circuit_gates(spec, base);
                  const auto g1 = circuit_gates(spec, bumped);
                  bool isolated = g0.size() == g1.size();
                  const std::size_t per_layer = g0.size() / 3;
                  for (std::size_t i = per_layer; isolated && i < g0.size(); ++i) {
                      isolated = g0[i] == g1[i];
                  }
                  detail = "worst_component_error=" + fmt(worst) +
                           ", layers_isolated=" + (isolated ? "yes" : "no");
                  return worst < 1e-4 && isolated;
              });

    criterion(6, "gate kernel vs dense kron oracle (500 cases), unitarity, identity block",
              [&](std::string& detail) {
                  std::mt19937_64 rng(505);
                  std::uniform_real_distribution<double> angle(-6.0, 6.0);
                  double worst_apply = 0.0;
                  double worst_unitary = 0.0;
                  for (int trial = 0; trial < 500; ++trial) {
                      const int n = 2 + static_cast<int>(rng() % 3);
                      Gate g;
                      const int kind = static_cast<int>(rng() % 4);
                      const int q0 = static_cast<int>(rng() % n);
                      int q1 = static_cast<int>(rng() % n);
                      while (q1 == q0) q1 = static_cast<int>(rng() % n);
                      switch (kind) {
                          case 0: g = Gate::rx(q0, angle(rng)); break;
                          case 1: g = Gate::ry(q0, angle(rng)); break;
                          case 2: g = Gate::rz(q0, angle(rng)); break;
                          default: g = Gate::cnot(q0, q1); break;
                      }
                      const StateVector psi = testutil::random_state(rng, n);
                      const StateVector fast = apply_gate(psi, g);
                      const auto u = testutil::gate_matrix_full(g, n);
                      const auto slow = testutil::matvec(u, psi.amps);
                      for (std::size_t k = 0; k < fast.dim(); ++k) {
                          worst_apply = std::max(worst_apply, std::abs(fast.amps[k] - slow[k]));
                      }
                      const std::size_t dim = u.size();
                      for (std::size_t i = 0; i < dim; ++i) {
                          for (std::size_t j = 0; j < dim; ++j) {
                              cplx acc{0, 0};
                              for (std::size_t k = 0; k < dim; ++k) {
                                  acc += u[k][i] * std::conj(u[k][j]);
                              }
                              const cplx want = (i == j) ? cplx{1, 0} : cplx{0, 0};
                              worst_unitary = std::max(worst_unitary, std::abs(acc - want));
                          }
                      }
                  }

                  double worst_identity = 0.0;
                  for (std::size_t k = 0; k < 4; ++k) {
                      StateVector psi = basis_state(2, k);
                      for (const Gate& g : build_block(0.0, 0.0, 0.0, {0, 1})) {
                          apply_gate_inplace(psi, g);
                      }
                      for (std::size_t j = 0; j < 4; ++j) {
                          const cplx want = (j == k) ? cplx{1, 0} : cplx{0, 0};
                          worst_identity = std::max(worst_identity, std::abs(psi.amps[j] - want));
                      }
                  }
                  detail = "worst_apply=" + fmt(worst_apply) +
                           ", worst_unitarity=" + fmt(worst_unitary) +
                           ", worst_identity_block=" + fmt(worst_identity);
                  return worst_apply < 1e-10 && worst_unitary < 1e-12 && worst_identity < 1e-12;
              });

    criterion(7, "hamiltonian spectrum oracle and hermiticity",
              [&](std::string& detail) {
                  Graph edge;
                  edge.n = 2;
                  edge.adj = {{0, 1}, {1, 0}};
                  const PauliOperator h = build_mapping_hamiltonian(edge, Couplings{}, 2);
                  const SpectralSummary sp = exact_spectrum(h);
                  const bool spectrum_ok = std::abs(sp.min_eig - (-6.0)) < 1e-9 &&
                                           std::abs(sp.max_eig - 2.0) < 1e-9;

                  const auto [hn, scale] = normalize_spectral(h);
                  const double normalized_min = exact_spectrum(hn).min_eig;
                  const bool normalized_ok = std::abs(normalized_min - (-1.0)) < 1e-10;

                  std::mt19937_64 rng(606);
                  double worst_hermitian = 0.0;
                  for (int trial = 0; trial < 100; ++trial) {
                      const int n = 2 + static_cast<int>(rng() % 3);
                      const auto m = dense_matrix(
                          build_mapping_hamiltonian(testutil::random_graph(rng, n), Couplings{}, n));
                      const std::size_t dim = std::size_t{1} << n;
                      for (std::size_t r = 0; r < dim; ++r) {
                          for (std::size_t c = 0; c < dim; ++c) {
                              worst_hermitian = std::max(
                                  worst_hermitian,
                                  std::abs(m[r * dim + c] - std::conj(m[c * dim + r])));
                          }
                      }
                  }
                  detail = "edge_spectrum=[" + fmt(sp.min_eig) + ", " + fmt(sp.max_eig) +
                           "], normalized_min=" + fmt(normalized_min) +
                           ", worst_hermitian=" + fmt(worst_hermitian);
                  return spectrum_ok && normalized_ok && worst_hermitian < 1e-12;
              });

    criterion(8, "noise robustness at the trained exp01 optimum (extension gate)",
              [&](std::string& detail) {
                  const ExperimentConfig cfg = bundled("exp01.json");
                  const StateVector psi0 = encode_to_amplitudes(
                      normalize_adjacency(make_complete_graph(cfg.graph.n)), cfg.n_qubits);
                  const CircuitSpec spec =
                      default_layout(cfg.n_qubits, cfg.layers, cfg.block_order);
                  const PauliOperator hn =
                      normalize_spectral(
                          build_mapping_hamiltonian(cfg.graph, cfg.couplings, cfg.n_qubits))
                          .first;

                  const double noiseless = loss(spec, exp01.train.final_params, psi0, hn);

                  NoiseModel model;
                  model.p = 0.01;
                  model.seed = 7;
                  const double noisy =
                      noisy_eval(spec, exp01.train.final_params, psi0, hn, model, 200);
                  const double degrade = noisy - noiseless;

                  NoiseModel off = model;
                  off.p = 0.0;
                  const StateVector a =
                      apply_noisy_circuit(spec, exp01.train.final_params, psi0, off);
                  const StateVector b = run_circuit(spec, exp01.train.final_params, psi0);
                  bool bit_identical = a.dim() == b.dim();
                  for (std::size_t k = 0; bit_identical && k < a.dim(); ++k) {
                      bit_identical = a.amps[k].real() == b.amps[k].real() &&
                                      a.amps[k].imag() == b.amps[k].imag();
                  }
                  detail = "noiseless=" + fmt(noiseless) + ", noisy_mean=" + fmt(noisy) +
                           ", degrade=" + fmt(degrade) +
                           ", p0_bit_identical=" + (bit_identical ? "yes" : "no");
                  return degrade < 0.2 && bit_identical;
              });

    criterion(9, "determinism: identical seeds give byte-identical report.json",
              [&](std::string& detail) {
                  const fs::path dir_a = scratch_dir("det_a");
                  const fs::path dir_b = scratch_dir("det_b");
                  const ExperimentConfig cfg = bundled("exp01.json");
                  const ExperimentResult a = run_experiment(cfg, nullptr);
                  const ExperimentResult b = run_experiment(cfg, nullptr);
                  write_outputs(a, dir_a.string());
                  write_outputs(b, dir_b.string());
                  const std::string ta = read_file(dir_a / "report.json");
                  const std::string tb = read_file(dir_b / "report.json");
                  detail = "bytes=" + std::to_string(ta.size());
                  return !ta.empty() && ta == tb;
              });

    std::printf("%d of 9 criteria failed\n", g_failures);
    return g_failures;
}
