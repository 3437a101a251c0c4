#include "credal/simplex_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace credal {

Weights project_to_simplex(std::span<const double> v) {
    if (v.empty())
        throw InvalidInputError("cannot project an empty vector");
    for (double x : v)
        if (!std::isfinite(x))
            throw InvalidInputError("cannot project a non-finite vector");

    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumsum = 0.0;
    double tau = 0.0;
    std::size_t rho = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumsum += u[j];
        const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) {
            rho = j + 1;
            tau = candidate;
        }
    }
    (void)rho;
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        w[i] = std::max(v[i] - tau, 0.0);
    return Weights(std::move(w));
}

namespace {

// min_w w'Qw - 2c'w + constant over the simplex, Q symmetric PSD.
struct QuadObjective {
    const Matrix& q;
    std::span<const double> c;
    double constant;

    double value(std::span<const double> w) const {
        double acc = constant;
        for (std::size_t i = 0; i < q.rows(); ++i) {
            const double* row = q.row(i);
            double inner = 0.0;
            for (std::size_t j = 0; j < q.cols(); ++j)
                inner += row[j] * w[j];
            acc += w[i] * (inner - 2.0 * c[i]);
        }
        return acc;
    }

    double curvature(std::span<const double> d) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < q.rows(); ++i) {
            const double* row = q.row(i);
            double inner = 0.0;
            for (std::size_t j = 0; j < q.cols(); ++j)
                inner += row[j] * d[j];
            acc += d[i] * inner;
        }
        return acc;
    }

    void gradient(std::span<const double> w, std::vector<double>& grad) const {
        grad.assign(q.rows(), 0.0);
        for (std::size_t i = 0; i < q.rows(); ++i) {
            const double* row = q.row(i);
            double inner = 0.0;
            for (std::size_t j = 0; j < q.cols(); ++j)
                inner += row[j] * w[j];
            grad[i] = 2.0 * (inner - c[i]);
        }
    }

    double lipschitz_guess() const {
        double max_diag = 0.0;
        for (std::size_t i = 0; i < q.rows(); ++i)
            max_diag = std::max(max_diag, q(i, i));
        const double l = 2.0 * max_diag;
        return l > 0.0 ? l : 1.0;
    }
};

struct PgdOutcome {
    Weights w;
    double objective;
    bool converged;
    int iters;
};

double step_norm(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

// Projected gradient descent with the reference step 1/L_hat defining the
// arc. Because the objective is quadratic, the step along the feasible
// segment [w, proj(w - s grad)] admits an exact minimiser; step-halving
// backtracking remains as the fallback when rounding spoils that step.
PgdOutcome projected_gradient(const QuadObjective& obj, Weights start,
                              const OptimizerConfig& cfg) {
    const double s0 = 1.0 / obj.lipschitz_guess();
    Weights w = std::move(start);
    double fw = obj.value(w.values());
    std::vector<double> grad;
    std::vector<double> trial(w.size());
    std::vector<double> direction(w.size());
    bool converged = false;
    int iter = 0;
    for (; iter < cfg.max_inner_iters; ++iter) {
        obj.gradient(w.values(), grad);
        for (std::size_t i = 0; i < w.size(); ++i)
            trial[i] = w[i] - s0 * grad[i];
        Weights candidate = project_to_simplex(trial);
        if (step_norm(w.values(), candidate.values()) <= cfg.grad_tol) {
            converged = true;
            break;
        }

        double slope = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            direction[i] = candidate[i] - w[i];
            slope += grad[i] * direction[i];
        }
        const double curvature = obj.curvature(direction);
        double t = 1.0;
        if (curvature > 0.0)
            t = std::min(1.0, -0.5 * slope / curvature);
        bool accepted = false;
        if (t > 0.0) {
            for (std::size_t i = 0; i < w.size(); ++i)
                trial[i] = w[i] + t * direction[i];
            Weights stepped = project_to_simplex(trial);
            const double fs = obj.value(stepped.values());
            if (fs < fw) {
                w = std::move(stepped);
                fw = fs;
                accepted = true;
            }
        }
        if (!accepted) {
            double s = s0;
            double fc = obj.value(candidate.values());
            accepted = fc < fw;
            for (int halving = 0; halving < 60 && !accepted; ++halving) {
                s *= 0.5;
                for (std::size_t i = 0; i < w.size(); ++i)
                    trial[i] = w[i] - s * grad[i];
                candidate = project_to_simplex(trial);
                fc = obj.value(candidate.values());
                accepted = fc < fw;
            }
            if (!accepted)
                break;  // no descent at machine precision
            w = std::move(candidate);
            fw = fc;
        }
    }
    return {std::move(w), fw, converged, iter};
}

std::vector<double> matvec(const Matrix& m, std::span<const double> v) {
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double* row = m.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

std::vector<double> matvec_transposed(const Matrix& m, std::span<const double> v) {
    std::vector<double> out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double* row = m.row(i);
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[j] += row[j] * v[i];
    }
    return out;
}

double quad(const Matrix& m, std::span<const double> v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double* row = m.row(i);
        double inner = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            inner += row[j] * v[j];
        acc += v[i] * inner;
    }
    return acc;
}

}  // namespace

OptResult minimize_eta(const KcdGrams& g, const OptimizerConfig& cfg, std::size_t x_row) {
    cfg.validate();
    if (x_row >= g.x_count())
        throw InvalidInputError("minimize_eta: extreme-point row out of range");
    const std::size_t r = g.y_count();
    std::vector<double> c(r);
    for (std::size_t j = 0; j < r; ++j)
        c[j] = g.mxy(x_row, j);
    const QuadObjective obj{g.myy, c, g.mxx(x_row, x_row)};
    PgdOutcome pgd = projected_gradient(obj, Weights::uniform(r), cfg);

    const Weights lambda = Weights::unit(g.x_count(), x_row);
    OptResult out{lambda, pgd.w, 0.0, pgd.converged, pgd.iters, {}};
    out.objective = kcd_value(g, out.lambda, out.eta);
    out.trace = {out.objective};
    return out;
}

OptResult minimize_biconvex(const KcdGrams& g, const OptimizerConfig& cfg, Rng& rng) {
    cfg.validate();
    const std::size_t l = g.x_count();
    const std::size_t r = g.y_count();
    const Rng restart_root = rng.fork();

    std::optional<OptResult> best;
    const int runs = cfg.restarts + 1;
    for (int run = 0; run < runs; ++run) {
        Weights lambda = Weights::uniform(l);
        Weights eta = Weights::uniform(r);
        if (!(run == 0 && cfg.init == WeightInit::Uniform)) {
            Rng init_rng = restart_root.substream(static_cast<std::uint64_t>(run));
            lambda = Weights(init_rng.substream("lambda").simplex_uniform(l));
            eta = Weights(init_rng.substream("eta").simplex_uniform(r));
        }

        std::vector<double> trace{kcd_value(g, lambda, eta)};
        bool converged = false;
        bool inner_ok = true;
        int outer = 0;
        for (; outer < cfg.max_outer_iters; ++outer) {
            {
                const std::vector<double> c = matvec(g.mxy, eta.values());
                const QuadObjective obj{g.mxx, c, quad(g.myy, eta.values())};
                PgdOutcome step = projected_gradient(obj, std::move(lambda), cfg);
                lambda = std::move(step.w);
                inner_ok = inner_ok && step.converged;
            }
            {
                const std::vector<double> c = matvec_transposed(g.mxy, lambda.values());
                const QuadObjective obj{g.myy, c, quad(g.mxx, lambda.values())};
                PgdOutcome step = projected_gradient(obj, std::move(eta), cfg);
                eta = std::move(step.w);
                inner_ok = inner_ok && step.converged;
            }
            trace.push_back(kcd_value(g, lambda, eta));
            if (trace[trace.size() - 2] - trace.back() < cfg.obj_tol) {
                converged = inner_ok;
                ++outer;
                break;
            }
        }

        OptResult candidate{std::move(lambda), std::move(eta), 0.0, converged, outer,
                            std::move(trace)};
        candidate.objective = kcd_value(g, candidate.lambda, candidate.eta);
        if (!best || candidate.objective < best->objective)
            best = std::move(candidate);
    }
    return std::move(*best);
}

}  // namespace credal
