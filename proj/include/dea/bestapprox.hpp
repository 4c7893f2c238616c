// Copyright 2026 The DEA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dea/analysis.hpp"
#include "dea/circuit.hpp"
#include "dea/hull3d.hpp"
#include "dea/sectors.hpp"
#include "dea/simulator.hpp"
#include "dea/sobol.hpp"

namespace dea {

// ---------------------------------------------------------------------------
// Sample sets
// ---------------------------------------------------------------------------

enum class SampleProvenance { Grid, Sobol, User };

/// A discrete set of circuit states C(theta_1) ... C(theta_N). States are
/// regenerated deterministically from the theta list.
struct SampleSet {
    std::vector<ParameterAssignment> thetas;
    std::vector<StateVector> states;
    SampleProvenance provenance = SampleProvenance::User;
    std::vector<double> grid_spacing;  // per parameter; Grid provenance only
    std::optional<std::uint64_t> seed;

    std::size_t size() const { return thetas.size(); }
};

inline SampleSet user_sample_set(const ParametricCircuit& c,
                                 std::vector<ParameterAssignment> thetas) {
    if (thetas.empty()) throw std::invalid_argument("sample set must not be empty");
    SampleSet d;
    d.thetas = std::move(thetas);
    for (const ParameterAssignment& t : d.thetas) d.states.push_back(evolve(c, t));
    return d;
}

/// Tensor grid over [0, 2*pi)^P with the given number of points per
/// parameter; spacing h_k = 2*pi / n_k.
inline SampleSet grid_sample_set(const ParametricCircuit& c, const std::vector<int>& points_per_dim) {
    const int p = c.parameter_count();
    if (static_cast<int>(points_per_dim.size()) != p)
        throw std::invalid_argument("grid_sample_set: one point count per parameter required");
    for (int n : points_per_dim)
        if (n < 1) throw std::invalid_argument("grid_sample_set: point counts must be >= 1");
    std::vector<ParameterAssignment> thetas;
    std::vector<int> idx(p, 0);
    while (true) {
        ParameterAssignment t(p);
        for (int k = 0; k < p; ++k) t[k] = 2.0 * std::numbers::pi * idx[k] / points_per_dim[k];
        thetas.push_back(t);
        int k = 0;
        while (k < p && ++idx[k] == points_per_dim[k]) idx[k++] = 0;
        if (k == p) break;
    }
    SampleSet d = user_sample_set(c, std::move(thetas));
    d.provenance = SampleProvenance::Grid;
    for (int n : points_per_dim) d.grid_spacing.push_back(2.0 * std::numbers::pi / n);
    return d;
}

/// Scrambled Sobol' points in parameter space, mapped to [0, 2*pi)^P.
inline SampleSet sobol_sample_set(const ParametricCircuit& c, std::uint64_t n,
                                  std::optional<std::uint64_t> seed) {
    if (n < 1) throw std::invalid_argument("sobol_sample_set: n must be >= 1");
    std::vector<ParameterAssignment> thetas;
    SobolSequence seq(c.parameter_count(), seed);
    for (std::uint64_t i = 0; i < n; ++i) {
        ParameterAssignment t = seq.point(i);
        for (double& x : t) x *= 2.0 * std::numbers::pi;
        thetas.push_back(std::move(t));
    }
    SampleSet d = user_sample_set(c, std::move(thetas));
    d.provenance = SampleProvenance::Sobol;
    d.seed = seed;
    return d;
}

// ---------------------------------------------------------------------------
// Gram embedding
// ---------------------------------------------------------------------------

/// Isometric embedding of the sample states into R^r, r = numerical rank of
/// the real Gram matrix: coordinates are eigenvector rows scaled by the
/// square roots of the kept eigenvalues, so embedded Euclidean distances
/// equal chordal distances sqrt(2 - 2 gram[j][k]).
struct Embedding {
    Eigen::MatrixXd gram;         // N x N, Re<C(theta_j), C(theta_k)>
    Eigen::MatrixXd coordinates;  // N x r
    int rank = 0;
};

inline Embedding gram_embed(const std::vector<StateVector>& states) {
    const int n = static_cast<int>(states.size());
    if (n < 1) throw std::invalid_argument("gram_embed: empty state list");
    Embedding e;
    e.gram.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double v = inner(states[i], states[j]).real();
            e.gram(i, j) = v;
            e.gram(j, i) = v;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e.gram);
    const auto& ev = es.eigenvalues();
    if (ev(0) < -1e-8)
        throw NumericError("gram_embed: Gram matrix is not positive semidefinite");
    const double cutoff = 1e-10 * ev(n - 1);
    std::vector<int> kept;
    for (int i = n - 1; i >= 0; --i)
        if (ev(i) > cutoff) kept.push_back(i);
    e.rank = static_cast<int>(kept.size());
    e.coordinates.resize(n, e.rank);
    for (int col = 0; col < e.rank; ++col)
        e.coordinates.col(col) = std::sqrt(std::max(0.0, ev(kept[col]))) * es.eigenvectors().col(kept[col]);
    return e;
}

inline Embedding gram_embed(const ParametricCircuit& c,
                            const std::vector<ParameterAssignment>& thetas) {
    std::vector<StateVector> states;
    for (const ParameterAssignment& t : thetas) states.push_back(evolve(c, t));
    return gram_embed(states);
}

// ---------------------------------------------------------------------------
// Density certificates
// ---------------------------------------------------------------------------

/// Certified epsilon for a tensor grid with the given per-parameter
/// spacings: within one cell the state moves at most by the Lipschitz bound
/// ||d_k C|| <= terms_k / 2 per parameter, half a spacing each, so
/// eps = 1/2 * sum_k h_k * terms_k / 2.
inline double epsilon_density(const ParametricCircuit& c, const std::vector<double>& grid_spacing) {
    if (static_cast<int>(grid_spacing.size()) != c.parameter_count())
        throw std::invalid_argument("epsilon_density: one spacing per parameter required");
    double eps = 0;
    for (int k = 0; k < c.parameter_count(); ++k)
        eps += 0.5 * grid_spacing[k] * c.generator_of_parameter(k).term_count() / 2.0;
    return eps;
}

inline double epsilon_density(const ParametricCircuit& c, const SampleSet& d) {
    if (d.provenance != SampleProvenance::Grid)
        throw std::invalid_argument(
            "epsilon_density: only grid sample sets carry an implicit certificate");
    return epsilon_density(c, d.grid_spacing);
}

// ---------------------------------------------------------------------------
// Best-approximation error estimates
// ---------------------------------------------------------------------------

enum class AlphaMethod { Auto, Voronoi3D, Probe };
enum class StateSpace { FullDevice, SampleSpan, Sector };

struct AlphaOptions {
    AlphaMethod method = AlphaMethod::Auto;
    StateSpace space = StateSpace::FullDevice;
    std::optional<SectorSpec> sector;
    std::uint64_t probes = 100000;
    std::uint64_t seed = 0;
    bool polish = true;
    /// Optional sup-distance (infinity norm in parameter space) from any
    /// theta to the sample set, for certificates on non-grid sets.
    std::optional<double> dispersion_linf;
};

struct AlphaEstimate {
    double alpha_hat = 0;
    std::optional<double> epsilon;
    std::optional<double> lower;
    std::string method;  // "voronoi-3d" | "probe"
    std::uint64_t sample_count = 0;
    std::optional<std::uint64_t> probe_count;   // probe method: total evaluations
    std::optional<std::uint64_t> vertex_count;  // voronoi method: hull faces

    nlohmann::json to_json() const {
        nlohmann::json j{{"alpha_hat", alpha_hat}, {"method", method}, {"N", sample_count}};
        j["epsilon"] = epsilon.has_value() ? nlohmann::json(*epsilon) : nlohmann::json();
        j["lower"] = lower.has_value() ? nlohmann::json(*lower) : nlohmann::json();
        if (probe_count.has_value()) j["M"] = *probe_count;
        if (vertex_count.has_value()) j["vertices"] = *vertex_count;
        return j;
    }
};

namespace detail {

/// Sites realified into the working space; rows have unit norm.
struct RealSpaceSites {
    Eigen::MatrixXd rows;
    int dim = 0;

    /// Chordal distance from a unit vector to the nearest site.
    double min_distance(const Eigen::VectorXd& v) const {
        double best_dot = (rows * v).maxCoeff();
        return std::sqrt(std::max(0.0, 2.0 - 2.0 * best_dot));
    }
};

inline Eigen::VectorXd realify(const StateVector& s) {
    Eigen::VectorXd v(2 * s.dimension());
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        v(i) = s[i].real();
        v(s.dimension() + i) = s[i].imag();
    }
    return v;
}

inline RealSpaceSites build_sites(const SampleSet& d, const AlphaOptions& opt) {
    RealSpaceSites sites;
    const int n = static_cast<int>(d.size());
    switch (opt.space) {
        case StateSpace::FullDevice: {
            sites.dim = static_cast<int>(2 * d.states.front().dimension());
            sites.rows.resize(n, sites.dim);
            for (int i = 0; i < n; ++i) sites.rows.row(i) = realify(d.states[i]).transpose();
            break;
        }
        case StateSpace::SampleSpan: {
            Embedding e = gram_embed(d.states);
            sites.dim = e.rank;
            sites.rows = e.coordinates;
            break;
        }
        case StateSpace::Sector: {
            if (!opt.sector.has_value())
                throw std::invalid_argument("alpha_hat: sector space requires a SectorSpec");
            std::vector<StateVector> basis = sector_basis(*opt.sector);
            const int b = static_cast<int>(basis.size());
            sites.dim = 2 * b;
            sites.rows.resize(n, sites.dim);
            for (int i = 0; i < n; ++i) {
                double captured = 0;
                for (int k = 0; k < b; ++k) {
                    Complex ck = inner(basis[k], d.states[i]);
                    sites.rows(i, 2 * k) = ck.real();
                    sites.rows(i, 2 * k + 1) = ck.imag();
                    captured += std::norm(ck);
                }
                if (captured < 1.0 - 1e-8)
                    throw NumericError("alpha_hat: sample state leaves the requested sector");
            }
            break;
        }
    }
    return sites;
}

/// Pattern search on the unit sphere, ascending the min-distance function.
/// Gains below 1e-13 do not count as progress (otherwise one-ulp cycles can
/// hold the step size forever) and the sweep count is capped.
inline double polish_probe(const RealSpaceSites& sites, Eigen::VectorXd v, double best,
                           std::uint64_t& evaluations) {
    double step = 0.25;
    int sweeps = 0;
    while (step > 1e-9 && ++sweeps <= 4000) {
        bool improved = false;
        for (int dimension = 0; dimension < sites.dim; ++dimension) {
            for (double sign : {1.0, -1.0}) {
                Eigen::VectorXd w = v;
                w(dimension) += sign * step;
                w.normalize();
                ++evaluations;
                double f = sites.min_distance(w);
                if (f > best + 1e-13) {
                    best = f;
                    v = w;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

struct ProbeOutcome {
    double alpha = 0;
    std::uint64_t evaluations = 0;
};

inline ProbeOutcome probe_alpha(const RealSpaceSites& sites, const AlphaOptions& opt) {
    ProbeOutcome out;
    const int top_starts = 8;
    std::vector<std::pair<double, Eigen::VectorXd>> top;
    auto consider = [&](const Eigen::VectorXd& v) {
        double f = sites.min_distance(v);
        ++out.evaluations;
        out.alpha = std::max(out.alpha, f);
        if (static_cast<int>(top.size()) < top_starts) {
            top.emplace_back(f, v);
            std::sort(top.begin(), top.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
        } else if (f > top.back().first) {
            top.back() = {f, v};
            std::sort(top.begin(), top.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
        }
    };

    if (sites.dim <= SobolSequence::kMaxDimension) {
        SobolSequence seq(sites.dim, opt.seed);
        for (std::uint64_t i = 1; i <= opt.probes; ++i) {
            std::vector<double> u = seq.point(i);
            Eigen::VectorXd v(sites.dim);
            for (int k = 0; k < sites.dim; ++k) {
                double uu = std::min(std::max(u[k], 1e-15), 1.0 - 1e-15);
                v(k) = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * uu - 1.0);
            }
            double norm = v.norm();
            if (norm < 1e-12) continue;
            consider(v / norm);
        }
    } else {
        std::mt19937_64 eng(derive_seed(opt.seed, {0x70726f62ULL}));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (std::uint64_t i = 0; i < opt.probes; ++i) {
            Eigen::VectorXd v(sites.dim);
            for (int k = 0; k < sites.dim; ++k) v(k) = gauss(eng);
            double norm = v.norm();
            if (norm < 1e-12) continue;
            consider(v / norm);
        }
    }
    if (opt.polish)
        for (const auto& [f, v] : top)
            out.alpha = std::max(out.alpha, polish_probe(sites, v, f, out.evaluations));
    return out;
}

}  // namespace detail

/// alpha_C^D: the worst-case distance from a point of the relevant state
/// space to the sample set, in the chordal metric.
///
/// When the embedded state space is the unit sphere in R^3 the spherical
/// Voronoi diagram is computed exactly via convex-hull duality and candidate
/// maxima are evaluated at the Voronoi vertices (the normalized face
/// circumcenter directions). Otherwise quasi-random unit probes (plus a
/// deterministic local polish) give a lower estimate, reported with the
/// evaluation count.
inline AlphaEstimate alpha_hat(const ParametricCircuit& c, const SampleSet& d,
                               const AlphaOptions& options = {}) {
    if (d.size() == 0) throw std::invalid_argument("alpha_hat: empty sample set");
    AlphaOptions opt = options;
    if (opt.sector.has_value() && opt.space == StateSpace::FullDevice)
        opt.space = StateSpace::Sector;
    detail::RealSpaceSites sites = detail::build_sites(d, opt);

    AlphaEstimate est;
    est.sample_count = d.size();

    bool want_voronoi = opt.method == AlphaMethod::Voronoi3D ||
                        (opt.method == AlphaMethod::Auto && sites.dim == 3);
    if (opt.method == AlphaMethod::Voronoi3D && sites.dim != 3)
        throw std::invalid_argument("alpha_hat: voronoi-3d needs a 3-dimensional embedded space");

    bool done = false;
    if (want_voronoi && sites.dim == 3) {
        std::vector<Eigen::Vector3d> pts;
        for (int i = 0; i < sites.rows.rows(); ++i) {
            Eigen::Vector3d p = sites.rows.row(i).transpose();
            bool dup = false;
            for (const Eigen::Vector3d& q : pts)
                if ((p - q).norm() < 1e-12) {
                    dup = true;
                    break;
                }
            if (!dup) pts.push_back(p);
        }
        Hull3D hull = convex_hull_3d(pts);
        if (hull.ok && hull.origin_inside) {
            double alpha = 0;
            for (const Hull3D::Face& f : hull.faces) {
                Eigen::Vector3d normal =
                    (pts[f.b] - pts[f.a]).cross(pts[f.c] - pts[f.a]);
                double len = normal.norm();
                if (len < 1e-14) continue;
                for (double sign : {1.0, -1.0}) {
                    Eigen::VectorXd v = (sign / len) * normal;
                    alpha = std::max(alpha, sites.min_distance(v));
                }
            }
            est.alpha_hat = alpha;
            est.method = "voronoi-3d";
            est.vertex_count = hull.faces.size();
            done = true;
        }
        // Degenerate geometry (coplanar sites, uncovered hemisphere) falls
        // back to the probe estimator.
    }
    if (!done) {
        detail::ProbeOutcome probe = detail::probe_alpha(sites, opt);
        est.alpha_hat = probe.alpha;
        est.method = "probe";
        est.probe_count = probe.evaluations;
    }

    if (d.provenance == SampleProvenance::Grid) {
        est.epsilon = epsilon_density(c, d.grid_spacing);
    } else if (opt.dispersion_linf.has_value()) {
        double lipschitz = 0;
        for (int k = 0; k < c.parameter_count(); ++k)
            lipschitz += c.generator_of_parameter(k).term_count() / 2.0;
        est.epsilon = *opt.dispersion_linf * lipschitz;
    }
    if (est.epsilon.has_value()) est.lower = est.alpha_hat - *est.epsilon;
    return est;
}

// ---------------------------------------------------------------------------
// Volume and the closed-form lower bound
// ---------------------------------------------------------------------------

struct QuadratureSpec {
    enum class Rule { Auto, TensorTrapezoid, SobolQMC };
    Rule rule = Rule::Auto;
    int nodes_per_dim = 0;          // 0 = pick by dimension
    std::uint64_t qmc_nodes = 4096;
    std::optional<std::uint64_t> seed;
};

/// vol(M) = integral over [0, 2*pi)^P of sqrt(det g(theta)), where g is the
/// derivative Gram matrix (the same matrix the classifier checks). Periodic
/// tensor quadrature up to three parameters, Sobol' QMC beyond.
inline double volume(const ParametricCircuit& c, const QuadratureSpec& spec = {}) {
    const int p = c.parameter_count();
    if (p < 1) throw std::invalid_argument("volume: circuit has no parameters");
    QuadratureSpec::Rule rule = spec.rule;
    if (rule == QuadratureSpec::Rule::Auto)
        rule = p <= 3 ? QuadratureSpec::Rule::TensorTrapezoid : QuadratureSpec::Rule::SobolQMC;

    std::vector<ParameterAssignment> nodes;
    if (rule == QuadratureSpec::Rule::TensorTrapezoid) {
        if (p > 3)
            throw std::invalid_argument("volume: tensor quadrature supports at most 3 parameters");
        int n = spec.nodes_per_dim > 0 ? spec.nodes_per_dim : (p == 1 ? 128 : (p == 2 ? 48 : 20));
        std::vector<int> counts(p, n);
        std::vector<int> idx(p, 0);
        while (true) {
            ParameterAssignment t(p);
            for (int k = 0; k < p; ++k) t[k] = 2.0 * std::numbers::pi * idx[k] / n;
            nodes.push_back(t);
            int k = 0;
            while (k < p && ++idx[k] == n) idx[k++] = 0;
            if (k == p) break;
        }
    } else {
        SobolSequence seq(p, spec.seed);
        for (std::uint64_t i = 0; i < spec.qmc_nodes; ++i) {
            ParameterAssignment t = seq.point(i);
            for (double& x : t) x *= 2.0 * std::numbers::pi;
            nodes.push_back(std::move(t));
        }
    }

    double acc = 0;
    std::size_t singular = 0;
    for (const ParameterAssignment& t : nodes) {
        SMatrix s = full_s_matrix(c, t);
        Eigen::SelfAdjointEigenSolver<SMatrix> es(s, Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        if (ev(0) < std::max(1e-12, 1e-12 * ev(p - 1))) {
            ++singular;
            continue;
        }
        double det = 1;
        for (int i = 0; i < p; ++i) det *= std::max(0.0, ev(i));
        acc += std::sqrt(det);
    }
    if (singular * 100 >= nodes.size() * 99)
        throw NumericError("volume: det g vanishes almost everywhere; circuit is not minimal");
    double cell = std::pow(2.0 * std::numbers::pi, p) / static_cast<double>(nodes.size());
    return acc * cell;
}

struct LowerBoundEstimate {
    double value = 0;
    double volume = 0;
    int dimension = 0;
    /// The printed formula can exceed the diameter of the state sphere (2)
    /// for small volumes; such outputs carry no information and are flagged
    /// rather than clamped.
    bool exceeds_diameter = false;
};

/// Evaluates 4 * pi^(dim/2 + 1) / (Gamma(dim/2) * vol(M)) with dim = the
/// parameter count of a minimal, non-maximally-expressive circuit.
inline LowerBoundEstimate lower_bound(const ParametricCircuit& c, const QuadratureSpec& spec = {}) {
    LowerBoundEstimate out;
    out.dimension = c.parameter_count();
    out.volume = volume(c, spec);
    double half = out.dimension / 2.0;
    out.value = 4.0 * std::pow(std::numbers::pi, half + 1.0) / (std::tgamma(half) * out.volume);
    out.exceeds_diameter = out.value > 2.0;
    return out;
}

}  // namespace dea
