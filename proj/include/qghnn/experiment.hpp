#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qghnn/circuit.hpp"
#include "qghnn/common.hpp"
#include "qghnn/graph.hpp"
#include "qghnn/io.hpp"
#include "qghnn/noise.hpp"
#include "qghnn/pauli.hpp"
#include "qghnn/readout.hpp"
#include "qghnn/statevector.hpp"
#include "qghnn/trainer.hpp"

namespace qghnn {

// One experiment: a target graph, a mapping Hamiltonian, an ansatz, training
// settings, readout choices, and an optional noise study.
struct ExperimentConfig {
    std::string run_id;
    std::string graph_id; // benchmark id, or empty for an inline graph
    Graph graph;
    int n_qubits = 0;
    int layers = 1;
    Couplings couplings;
    bool half_sum = false;
    BlockOrder block_order = BlockOrder::Fig4;
    TrainConfig train;
    std::vector<std::string> readout = {"amplitude", "zz"};
    std::optional<double> threshold;      // when set, binarized variants are also scored
    std::optional<NoiseModel> noise;
    int noise_trials = 100;
    std::string output_dir;
    int log_every = 10;
};

struct MetricRow {
    std::string run_id;
    std::string method;
    MetricReport metrics;
    bool defined = true;
    std::string metric_error;
};

struct ExperimentResult {
    ExperimentConfig config;
    double lambda_min = 0.0; // pre-normalization spectrum of H_m
    double lambda_max = 0.0;
    TrainReport train;
    std::vector<DecodedGraph> decoded;
    std::vector<MetricRow> rows;
    bool has_noise = false;
    double noiseless_loss = 0.0;
    double mean_noisy_loss = 0.0;
};

inline ExperimentConfig experiment_from_json(const json& j) {
    ExperimentConfig cfg;
    const json& graph = j.at("graph");
    if (graph.is_string()) {
        cfg.graph_id = graph.get<std::string>();
        cfg.graph = make_benchmark_graph(cfg.graph_id);
    } else {
        cfg.graph = graph_from_json(graph);
    }
    cfg.n_qubits = j.value("n_qubits", qubits_for_nodes(cfg.graph.n));
    const std::size_t need = static_cast<std::size_t>(cfg.graph.n) * cfg.graph.n;
    if (cfg.n_qubits < 1 || cfg.n_qubits > 20 ||
        (std::size_t{1} << cfg.n_qubits) < need) {
        throw CapacityError("config: 2^" + std::to_string(cfg.n_qubits) + " < " +
                            std::to_string(need) + " adjacency entries");
    }
    cfg.layers = j.at("layers").get<int>();
    if (j.contains("couplings")) {
        const auto c = j["couplings"].get<std::vector<double>>();
        if (c.size() != 3) throw std::invalid_argument("config: couplings needs [Jx, Jy, Jz]");
        cfg.couplings = Couplings{c[0], c[1], c[2]};
    }
    cfg.half_sum = j.value("half_sum", false);
    if (j.contains("block_order")) {
        const std::string name = j["block_order"].get<std::string>();
        if (name == "eq12") cfg.block_order = BlockOrder::Eq12;
        else if (name != "fig4") throw std::invalid_argument("config: unknown block_order " + name);
    }
    cfg.train.learning_rate = j.value("learning_rate", 0.1);
    cfg.train.steps = j.value("steps", 500);
    cfg.train.fd_delta = j.value("fd_delta", 1e-3);
    cfg.train.restarts = j.value("restarts", 10);
    cfg.train.seed = j.value("seed", std::uint64_t{1});
    cfg.train.gap_delta = j.value("gap_delta", 1e-3);
    cfg.train.normalize_hamiltonian = j.value("normalize_hamiltonian", true);
    if (j.contains("readout")) {
        cfg.readout = j["readout"].get<std::vector<std::string>>();
        for (const auto& m : cfg.readout) {
            if (m != "amplitude" && m != "zz") {
                throw std::invalid_argument("config: unknown readout method " + m);
            }
        }
        if (cfg.readout.empty()) throw std::invalid_argument("config: readout list is empty");
    }
    if (j.contains("threshold")) cfg.threshold = j["threshold"].get<double>();
    if (j.contains("noise")) {
        cfg.noise = noise_from_json(j["noise"]);
        cfg.noise_trials = j["noise"].value("trials", 100);
        if (cfg.noise_trials < 1) throw std::invalid_argument("config: noise trials must be >= 1");
    }
    cfg.run_id = j.value("run_id", cfg.graph_id.empty() ? std::string("inline") : cfg.graph_id);
    cfg.output_dir = j.value("output_dir", "out/" + cfg.run_id);
    cfg.log_every = j.value("log_every", 10);
    cfg.train.validate();
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
    try {
        return experiment_from_json(j);
    } catch (const json::exception& e) {
        throw std::invalid_argument("config error in " + path + ": " + e.what());
    }
}

// Resolved-config echo used in report.json. Output paths are excluded so
// identical seeds give byte-identical reports wherever they are written.
inline json experiment_config_json(const ExperimentConfig& cfg) {
    json j{{"run_id", cfg.run_id},
           {"graph", graph_to_json(cfg.graph)},
           {"n_qubits", cfg.n_qubits},
           {"layers", cfg.layers},
           {"couplings", {cfg.couplings.jx, cfg.couplings.jy, cfg.couplings.jz}},
           {"half_sum", cfg.half_sum},
           {"block_order", block_order_name(cfg.block_order)},
           {"learning_rate", cfg.train.learning_rate},
           {"steps", cfg.train.steps},
           {"fd_delta", cfg.train.fd_delta},
           {"restarts", cfg.train.restarts},
           {"seed", cfg.train.seed},
           {"gap_delta", cfg.train.gap_delta},
           {"normalize_hamiltonian", cfg.train.normalize_hamiltonian},
           {"readout", cfg.readout},
           {"log_every", cfg.log_every}};
    if (!cfg.graph_id.empty()) j["graph_id"] = cfg.graph_id;
    if (cfg.threshold) j["threshold"] = *cfg.threshold;
    if (cfg.noise) {
        j["noise"] = noise_to_json(*cfg.noise);
        j["noise"]["trials"] = cfg.noise_trials;
    }
    return j;
}

// encode -> train -> decode -> score, plus the optional noise study.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                       std::ostream* log = &std::cerr) {
    ExperimentResult res;
    res.config = cfg;

    const PauliOperator hm =
        build_mapping_hamiltonian(cfg.graph, cfg.couplings, cfg.n_qubits, cfg.half_sum);
    {
        const SpectralSummary sp = exact_spectrum(hm);
        res.lambda_min = sp.min_eig;
        res.lambda_max = sp.max_eig;
    }

    const NormalizedAdjacency initial =
        normalize_adjacency(make_complete_graph(cfg.graph.n));
    const StateVector psi0 = encode_to_amplitudes(initial, cfg.n_qubits);
    const CircuitSpec spec = default_layout(cfg.n_qubits, cfg.layers, cfg.block_order);

    TrainLogger logger;
    if (log && cfg.log_every > 0) {
        logger = [log, stride = cfg.log_every](int restart, int step, double value) {
            if (step % stride == 0) {
                (*log) << "restart " << restart << " step " << step << " loss " << value << "\n";
            }
        };
    }
    res.train = train(spec, cfg.train, psi0, hm, logger);

    const StateVector psi_out = run_circuit(spec, res.train.final_params, psi0);
    const NormalizedAdjacency target_scale = normalize_adjacency(cfg.graph);

    for (const std::string& method : cfg.readout) {
        DecodedGraph d = (method == "amplitude")
                             ? decode_amplitude(psi_out, cfg.graph.n, target_scale.scale)
                             : decode_zz(psi_out, cfg.graph.n);
        res.decoded.push_back(d);
        if (cfg.threshold) res.decoded.push_back(binarize(d, *cfg.threshold));
    }
    for (const DecodedGraph& d : res.decoded) {
        MetricRow row;
        row.run_id = cfg.run_id;
        row.method = d.method;
        try {
            row.metrics = score(cfg.graph, d);
        } catch (const UndefinedMetricError& e) {
            row.defined = false;
            row.metric_error = e.what();
        }
        res.rows.push_back(std::move(row));
    }

    if (cfg.noise) {
        // Noise robustness probe: an extension beyond the bundled experiment
        // settings, labeled as such in the report.
        PauliOperator objective = hm;
        if (cfg.train.normalize_hamiltonian && !hm.is_zero()) {
            objective = normalize_spectral(hm).first;
        }
        res.has_noise = true;
        res.noiseless_loss = loss(spec, res.train.final_params, psi0, objective);
        res.mean_noisy_loss = noisy_eval(spec, res.train.final_params, psi0, objective,
                                         *cfg.noise, cfg.noise_trials);
    }
    return res;
}

inline json report_json(const ExperimentResult& res) {
    json train{{"final_loss", res.train.final_loss},
               {"ground_energy", res.train.ground_energy},
               {"spectral_scale", res.train.spectral_scale},
               {"converged", res.train.converged},
               {"best_restart", res.train.best_restart},
               {"steps_run", res.train.loss_curve.size()},
               {"restart_final_losses", res.train.restart_final_losses},
               {"final_params", res.train.final_params}};
    json readouts = json::object();
    for (std::size_t i = 0; i < res.decoded.size(); ++i) {
        json entry = decoded_to_json(res.decoded[i]);
        if (res.rows[i].defined) entry["metrics"] = metrics_to_json(res.rows[i].metrics);
        else entry["metric_error"] = res.rows[i].metric_error;
        readouts[res.decoded[i].method] = std::move(entry);
    }
    json j{{"config", experiment_config_json(res.config)},
           {"spectrum", {{"lambda_min", res.lambda_min}, {"lambda_max", res.lambda_max}}},
           {"train", std::move(train)},
           {"readouts", std::move(readouts)}};
    if (res.has_noise) {
        j["noise"] = {{"label", "extension"},
                      {"p", res.config.noise->p},
                      {"trials", res.config.noise_trials},
                      {"noiseless_loss", res.noiseless_loss},
                      {"mean_noisy_loss", res.mean_noisy_loss}};
    }
    return j;
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string metrics_csv(const std::vector<MetricRow>& rows) {
    std::ostringstream out;
    out << "run_id,method,mse,cosine,frobenius,correlation\n";
    for (const MetricRow& r : rows) {
        out << r.run_id << ',' << r.method << ',';
        if (r.defined) {
            out << format_double(r.metrics.mse) << ','
                << format_double(r.metrics.cosine) << ','
                << format_double(r.metrics.frobenius) << ','
                << format_double(r.metrics.correlation);
        } else {
            out << ",,,";
        }
        out << '\n';
    }
    return out.str();
}

inline std::string loss_curve_csv(const std::vector<double>& curve) {
    std::ostringstream out;
    out << "step,loss\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out << (i + 1) << ',' << format_double(curve[i]) << '\n';
    }
    return out.str();
}

// report.json, loss_curve.csv, decoded_<method>.json, metrics.csv.
inline void write_outputs(const ExperimentResult& res, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto write = [&dir](const std::string& name, const std::string& text) {
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + name + " in " + dir);
        out << text;
    };
    write("report.json", report_json(res).dump(2) + "\n");
    write("loss_curve.csv", loss_curve_csv(res.train.loss_curve));
    write("metrics.csv", metrics_csv(res.rows));
    for (const DecodedGraph& d : res.decoded) {
        write("decoded_" + d.method + ".json", decoded_to_json(d).dump(2) + "\n");
    }
}

// lambda_min / lambda_max of H_m before and after spectral normalization.
inline json spectrum_json(const ExperimentConfig& cfg) {
    const PauliOperator hm =
        build_mapping_hamiltonian(cfg.graph, cfg.couplings, cfg.n_qubits, cfg.half_sum);
    const SpectralSummary sp = exact_spectrum(hm);
    json j{{"run_id", cfg.run_id},
           {"lambda_min", sp.min_eig},
           {"lambda_max", sp.max_eig},
           {"normalized", nullptr}};
    if (!hm.is_zero() && sp.min_eig != 0.0) {
        auto [hn, scale] = normalize_spectral(hm);
        const SpectralSummary spn = exact_spectrum(hn);
        j["normalized"] = {{"lambda_min", spn.min_eig},
                           {"lambda_max", spn.max_eig},
                           {"scale", scale}};
    }
    return j;
}

} // namespace qghnn
