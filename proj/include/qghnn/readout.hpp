#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qghnn/common.hpp"
#include "qghnn/graph.hpp"
#include "qghnn/statevector.hpp"

namespace qghnn {

// Adjacency estimate reconstructed from a quantum state. Always symmetric
// with zero diagonal; entries stay continuous unless binarize() is applied.
struct DecodedGraph {
    int n = 0;
    Matrix adj_est;
    std::string method; // "amplitude", "zz", or either with a "_bin" suffix
};

struct MetricReport {
    double mse = 0.0;
    double cosine = 0.0;
    double frobenius = 0.0;
    double correlation = 0.0;
};

// Inverse of the amplitude encoding: entry (i, j) = scale * |amp[i*n + j]|,
// then symmetrized by (M + M^T)/2 with the diagonal zeroed. Phases are
// discarded, so any rephasing of the state decodes identically.
inline DecodedGraph decode_amplitude(const StateVector& psi, int n, double scale) {
    if (n < 2) throw std::invalid_argument("decode_amplitude: need >= 2 nodes");
    const std::size_t need = static_cast<std::size_t>(n) * n;
    if (psi.dim() < need) {
        throw std::invalid_argument("decode_amplitude: state dimension " +
                                    std::to_string(psi.dim()) + " < " + std::to_string(need));
    }
    DecodedGraph d;
    d.n = n;
    d.method = "amplitude";
    d.adj_est.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            d.adj_est[i][j] = scale * std::abs(psi.amps[static_cast<std::size_t>(i) * n + j]);
        }
    }
    for (int i = 0; i < n; ++i) {
        d.adj_est[i][i] = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (d.adj_est[i][j] + d.adj_est[j][i]);
            d.adj_est[i][j] = avg;
            d.adj_est[j][i] = avg;
        }
    }
    return d;
}

// Two-point correlator readout: entry (i, j) = |<psi| Z_i Z_j |psi>| for
// i != j, diagonal zero. Diagonal in the computational basis, so it reads
// straight off the probabilities.
inline DecodedGraph decode_zz(const StateVector& psi, int n) {
    if (n < 2) throw std::invalid_argument("decode_zz: need >= 2 nodes");
    if (psi.n < n) {
        throw std::invalid_argument("decode_zz: state has " + std::to_string(psi.n) +
                                    " qubits, need " + std::to_string(n));
    }
    DecodedGraph d;
    d.n = n;
    d.method = "zz";
    d.adj_est.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const std::size_t mi = std::size_t{1} << (psi.n - 1 - i);
            const std::size_t mj = std::size_t{1} << (psi.n - 1 - j);
            double corr = 0.0;
            for (std::size_t k = 0; k < psi.dim(); ++k) {
                const bool minus = static_cast<bool>(k & mi) != static_cast<bool>(k & mj);
                corr += (minus ? -1.0 : 1.0) * std::norm(psi.amps[k]);
            }
            d.adj_est[i][j] = std::abs(corr);
            d.adj_est[j][i] = d.adj_est[i][j];
        }
    }
    return d;
}

// Threshold to a 0/1 adjacency: entries >= t become 1.
inline DecodedGraph binarize(const DecodedGraph& d, double threshold) {
    DecodedGraph out = d;
    out.method = d.method + "_bin";
    for (int i = 0; i < d.n; ++i) {
        for (int j = 0; j < d.n; ++j) {
            out.adj_est[i][j] = (i != j && d.adj_est[i][j] >= threshold) ? 1.0 : 0.0;
        }
    }
    return out;
}

// The four evaluation metrics over the flattened n^2 entries of target (x)
// and decoded (y): mse = mean((x-y)^2), cosine = <x,y>/(|x||y|),
// frobenius = |X - Y|_F, correlation = Pearson coefficient.
inline MetricReport score(const Graph& target, const DecodedGraph& decoded) {
    if (target.n != decoded.n) throw std::invalid_argument("score: node counts differ");
    const int n = target.n;
    const double count = static_cast<double>(n) * n;

    double sum_sq_diff = 0.0, dot = 0.0, nx2 = 0.0, ny2 = 0.0, sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = target.adj[i][j];
            const double y = decoded.adj_est[i][j];
            const double diff = x - y;
            sum_sq_diff += diff * diff;
            dot += x * y;
            nx2 += x * x;
            ny2 += y * y;
            sx += x;
            sy += y;
        }
    }

    MetricReport m;
    m.mse = sum_sq_diff / count;
    m.frobenius = std::sqrt(sum_sq_diff);
    if (nx2 == 0.0 || ny2 == 0.0) {
        throw UndefinedMetricError("cosine: zero-norm matrix");
    }
    m.cosine = dot / (std::sqrt(nx2) * std::sqrt(ny2));

    const double mx = sx / count;
    const double my = sy / count;
    const double var_x = nx2 / count - mx * mx;
    const double var_y = ny2 / count - my * my;
    // constant matrices produce variance at rounding level; treat as zero
    const double eps_x = 1e-14 * std::max(1.0, nx2 / count);
    const double eps_y = 1e-14 * std::max(1.0, ny2 / count);
    if (var_x <= eps_x || var_y <= eps_y) {
        throw UndefinedMetricError("correlation: zero-variance matrix");
    }
    const double cov = dot / count - mx * my;
    m.correlation = cov / std::sqrt(var_x * var_y);
    return m;
}

} // namespace qghnn
