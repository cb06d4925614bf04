#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qghnn/common.hpp"
#include "qghnn/experiment.hpp"

namespace qghnn {

// Exit-code contract: 0 success, 2 configuration/usage error, 3 numerical
// failure during iteration.
enum ExitCode { kOk = 0, kConfigError = 2, kNumericalError = 3 };

namespace detail {

inline int effective_threads(int cli_threads) {
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("QGHNN_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

inline std::string value_label(double v) {
    std::string s = format_double(v);
    for (char& c : s) {
        if (c == '.' || c == '-' || c == '+') c = '_';
    }
    return s;
}

} // namespace detail

inline int cmd_run(const std::string& config_path, const std::optional<std::string>& output_dir,
                   const std::optional<double>& threshold, int threads, std::ostream& out,
                   std::ostream& err) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (output_dir) cfg.output_dir = *output_dir;
    if (threshold) cfg.threshold = *threshold;
    cfg.train.threads = threads;

    ExperimentResult res = run_experiment(cfg, &err);
    write_outputs(res, cfg.output_dir);
    out << "run " << cfg.run_id << ": final_loss=" << res.train.final_loss
        << " ground=" << res.train.ground_energy << " converged=" << res.train.converged
        << " outputs=" << cfg.output_dir << "\n";
    return kOk;
}

inline int cmd_spectrum(const std::string& config_path, std::ostream& out) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    out << spectrum_json(cfg).dump(2) << "\n";
    return kOk;
}

inline int cmd_sweep(const std::string& config_path, const std::string& param,
                     const std::vector<double>& values,
                     const std::optional<std::string>& output_dir, int threads, std::ostream& out,
                     std::ostream& err) {
    if (param != "layers" && param != "learning_rate" && param != "noise.p") {
        throw std::invalid_argument("sweep: unknown parameter " + param +
                                    " (expected layers, learning_rate, or noise.p)");
    }
    if (values.empty()) throw std::invalid_argument("sweep: empty value list");

    const ExperimentConfig base = load_experiment_config(config_path);
    const std::string sweep_dir = output_dir.value_or(base.output_dir + "_sweep");

    std::ostringstream agg;
    agg << "param,value,run_id,method,mse,cosine,frobenius,correlation,noisy_loss\n";
    for (double v : values) {
        ExperimentConfig cfg = base;
        cfg.train.threads = threads;
        if (param == "layers") {
            const int layers = static_cast<int>(v);
            if (layers < 1 || static_cast<double>(layers) != v) {
                throw std::invalid_argument("sweep: layers values must be positive integers");
            }
            cfg.layers = layers;
        } else if (param == "learning_rate") {
            if (!(v > 0.0)) throw std::invalid_argument("sweep: learning_rate must be > 0");
            cfg.train.learning_rate = v;
        } else {
            if (!cfg.noise) {
                throw std::invalid_argument(
                    "sweep: noise.p sweep needs a noise block in the config");
            }
            cfg.noise->p = v;
        }
        cfg.run_id = base.run_id + "_" + param + "=" + format_double(v);
        cfg.output_dir =
            (std::filesystem::path(sweep_dir) / (param + "_" + detail::value_label(v))).string();

        ExperimentResult res = run_experiment(cfg, &err);
        write_outputs(res, cfg.output_dir);
        err << "sweep " << param << "=" << format_double(v)
            << " final_loss=" << res.train.final_loss << "\n";
        for (const MetricRow& r : res.rows) {
            agg << param << ',' << format_double(v) << ',' << r.run_id << ',' << r.method << ',';
            if (r.defined) {
                agg << format_double(r.metrics.mse) << ',' << format_double(r.metrics.cosine)
                    << ',' << format_double(r.metrics.frobenius) << ','
                    << format_double(r.metrics.correlation);
            } else {
                agg << ",,,";
            }
            agg << ',';
            if (res.has_noise) agg << format_double(res.mean_noisy_loss);
            agg << '\n';
        }
    }
    std::filesystem::create_directories(sweep_dir);
    const auto csv_path = std::filesystem::path(sweep_dir) / "sweep.csv";
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
    csv << agg.str();
    out << "sweep complete: " << csv_path.string() << "\n";
    return kOk;
}

inline int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"statevector simulator and training harness for graph Hamiltonian learning"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> output_dir;
    std::optional<double> threshold;
    int threads = 0;

    CLI::App* run = app.add_subcommand("run", "run one experiment config end to end");
    run->add_option("config", config_path, "experiment JSON")->required();
    run->add_option("--output-dir", output_dir, "override the config's output directory");
    run->add_option("--threshold", threshold, "also score 0/1-binarized readouts at this value");
    run->add_option("--threads", threads, "restart-level worker cap (or QGHNN_THREADS)");

    CLI::App* spectrum = app.add_subcommand("spectrum", "print H_m eigenvalue range as JSON");
    spectrum->add_option("config", config_path, "experiment JSON")->required();

    std::string sweep_param;
    std::string sweep_values;
    CLI::App* sweep = app.add_subcommand("sweep", "run the config once per parameter value");
    sweep->add_option("config", config_path, "experiment JSON")->required();
    sweep->add_option("--param", sweep_param, "layers, learning_rate, or noise.p")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep->add_option("--output-dir", output_dir, "aggregate output directory");
    sweep->add_option("--threads", threads, "restart-level worker cap (or QGHNN_THREADS)");

    try {
        std::vector<const char*> argv = {"qghnn"};
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        if (run->parsed()) {
            return cmd_run(config_path, output_dir, threshold,
                           detail::effective_threads(threads), out, err);
        }
        if (spectrum->parsed()) {
            return cmd_spectrum(config_path, out);
        }
        std::vector<double> values;
        std::stringstream ss(sweep_values);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) values.push_back(std::stod(item));
        }
        return cmd_sweep(config_path, sweep_param, values, output_dir,
                         detail::effective_threads(threads), out, err);
    } catch (const NumericalFailureError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
}

} // namespace qghnn
