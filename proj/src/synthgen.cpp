#include "credal/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace credal {

const char* to_string(TestKind k) {
    switch (k) {
        case TestKind::Specification: return "specification";
        case TestKind::Inclusion: return "inclusion";
        case TestKind::Equality: return "equality";
        case TestKind::Plausibility: return "plausibility";
    }
    return "?";
}

const char* to_string(Hypothesis h) {
    return h == Hypothesis::Null ? "null" : "alternative";
}

TestKind parse_test_kind(std::string_view s) {
    if (s == "spec" || s == "specification")
        return TestKind::Specification;
    if (s == "incl" || s == "inclusion")
        return TestKind::Inclusion;
    if (s == "eq" || s == "equality")
        return TestKind::Equality;
    if (s == "plaus" || s == "plausibility")
        return TestKind::Plausibility;
    throw InvalidInputError("unknown test kind: " + std::string(s));
}

Hypothesis parse_hypothesis(std::string_view s) {
    if (s == "null")
        return Hypothesis::Null;
    if (s == "alt" || s == "alternative")
        return Hypothesis::Alternative;
    throw InvalidInputError("unknown hypothesis: " + std::string(s));
}

Matrix make_extreme_means(std::size_t r, std::size_t d, Rng& rng, double radius) {
    if (r < 1 || d < 1)
        throw InvalidInputError("mean matrix needs positive dimensions");
    Matrix means(r, d);
    for (std::size_t i = 0; i < r; ++i) {
        double norm_sq = 0.0;
        do {
            norm_sq = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double g = rng.normal();
                means(i, c) = g;
                norm_sq += g * g;
            }
        } while (norm_sq == 0.0);
        const double scale = radius / std::sqrt(norm_sq);
        for (std::size_t c = 0; c < d; ++c)
            means(i, c) *= scale;
    }
    return means;
}

Dataset sample_gaussian_extreme(std::span<const double> mean, std::size_t n, Rng& rng) {
    if (n < 1)
        throw InvalidInputError("sample size must be positive");
    Matrix out(n, mean.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < mean.size(); ++c)
            out(i, c) = mean[c] + rng.normal();
    return Dataset(std::move(out));
}

Dataset sample_student_extreme(std::span<const double> mean, double dof, std::size_t n,
                               Rng& rng) {
    if (!(dof > 0.0))
        throw InvalidInputError("Student-t degrees of freedom must be positive");
    if (n < 1)
        throw InvalidInputError("sample size must be positive");
    Matrix out(n, mean.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double denom = std::sqrt(rng.chi_squared(dof) / dof);
        for (std::size_t c = 0; c < mean.size(); ++c)
            out(i, c) = mean[c] + rng.normal() / denom;
    }
    return Dataset(std::move(out));
}

namespace {

enum class Family { Gaussian, Student };

struct ComponentLaw {
    std::span<const double> mean;
    Family family;
};

/// One observation of the mixture sum_j weights[j] * components[j].
void mixture_row(std::span<const double> weights, std::span<const ComponentLaw> components,
                 double t_dof, Rng& rng, double* out, std::size_t d) {
    const std::size_t j = rng.categorical(weights);
    const ComponentLaw& law = components[j];
    if (law.family == Family::Gaussian) {
        for (std::size_t c = 0; c < d; ++c)
            out[c] = law.mean[c] + rng.normal();
    } else {
        const double denom = std::sqrt(rng.chi_squared(t_dof) / t_dof);
        for (std::size_t c = 0; c < d; ++c)
            out[c] = law.mean[c] + rng.normal() / denom;
    }
}

Dataset sample_mixture(std::span<const double> weights,
                       std::span<const ComponentLaw> components, double t_dof, std::size_t n,
                       std::size_t d, Rng& rng) {
    Matrix out(n, d);
    for (std::size_t i = 0; i < n; ++i)
        mixture_row(weights, components, t_dof, rng, out.row(i), d);
    return Dataset(std::move(out));
}

Dataset sample_extreme(const ComponentLaw& law, double t_dof, std::size_t n, Rng& rng) {
    return law.family == Family::Gaussian
               ? sample_gaussian_extreme(law.mean, n, rng)
               : sample_student_extreme(law.mean, t_dof, n, rng);
}

}  // namespace

BuiltScenario build_scenario(const ScenarioSpec& spec, std::optional<std::uint64_t> noise_seed) {
    spec.validate();
    Rng layout_rng = Rng(spec.seed).substream("layout");
    Rng noise_rng = noise_seed ? Rng(*noise_seed) : Rng(spec.seed).substream("noise");

    const std::size_t mean_count = std::max(spec.r, spec.ell);
    const Matrix means = make_extreme_means(mean_count, spec.d, layout_rng, spec.sphere_radius);
    const bool alt = spec.hypothesis == Hypothesis::Alternative;

    auto gaussian_laws = [&](std::size_t count) {
        std::vector<ComponentLaw> laws;
        laws.reserve(count);
        for (std::size_t j = 0; j < count; ++j)
            laws.push_back({means.row_span(j), Family::Gaussian});
        return laws;
    };
    auto student_laws = [&](std::size_t count) {
        std::vector<ComponentLaw> laws;
        laws.reserve(count);
        for (std::size_t j = 0; j < count; ++j)
            laws.push_back({means.row_span(j), Family::Student});
        return laws;
    };

    switch (spec.test_kind) {
        case TestKind::Specification: {
            std::vector<Dataset> y;
            const auto y_laws = gaussian_laws(spec.r);
            for (const auto& law : y_laws)
                y.emplace_back(sample_extreme(law, spec.t_dof, spec.n, noise_rng));
            std::size_t mix_count = spec.r;
            if (spec.dependent_extreme) {
                // Extra extreme point that is itself the uniform mixture of
                // the others, so the extremes are linearly dependent.
                const std::vector<double> uniform(spec.r, 1.0 / static_cast<double>(spec.r));
                y.emplace_back(sample_mixture(uniform, y_laws, spec.t_dof, spec.n, spec.d,
                                              noise_rng));
            }
            const std::vector<double> eta0 = layout_rng.substream("eta0").simplex_uniform(mix_count);
            const auto x_laws = alt ? student_laws(mix_count) : gaussian_laws(mix_count);
            Dataset x = sample_mixture(eta0, x_laws, spec.t_dof, spec.n, spec.d, noise_rng);
            return {CredalSample({std::move(x)}), CredalSample(std::move(y))};
        }
        case TestKind::Inclusion: {
            std::vector<Dataset> y;
            for (const auto& law : gaussian_laws(spec.r))
                y.emplace_back(sample_extreme(law, spec.t_dof, spec.n, noise_rng));
            const auto x_laws = alt ? student_laws(spec.r) : gaussian_laws(spec.r);
            std::vector<Dataset> x;
            Rng weights_rng = layout_rng.substream("eta0");
            for (std::size_t i = 0; i < spec.ell; ++i) {
                const std::vector<double> eta0 = weights_rng.simplex_uniform(spec.r);
                x.emplace_back(sample_mixture(eta0, x_laws, spec.t_dof, spec.n, spec.d,
                                              noise_rng));
            }
            return {CredalSample(std::move(x)), CredalSample(std::move(y))};
        }
        case TestKind::Equality: {
            std::vector<Dataset> x;
            std::vector<Dataset> y;
            const auto x_laws = alt ? student_laws(spec.r) : gaussian_laws(spec.r);
            for (const auto& law : x_laws)
                x.emplace_back(sample_extreme(law, spec.t_dof, spec.n, noise_rng));
            for (const auto& law : gaussian_laws(spec.r))
                y.emplace_back(sample_extreme(law, spec.t_dof, spec.n, noise_rng));
            return {CredalSample(std::move(x)), CredalSample(std::move(y))};
        }
        case TestKind::Plausibility: {
            std::vector<Dataset> x;
            for (const auto& law : gaussian_laws(spec.ell))
                x.emplace_back(sample_extreme(law, spec.t_dof, spec.n, noise_rng));
            std::vector<Dataset> y;
            if (alt) {
                for (const auto& law : student_laws(spec.r))
                    y.emplace_back(sample_extreme(law, spec.t_dof, spec.n, noise_rng));
            } else {
                // Shares two extreme points with the X side (fewer when the
                // sets are too small), so the credal sets intersect.
                const std::size_t shared = std::min<std::size_t>(
                    2, std::min(spec.ell, spec.r));
                for (std::size_t j = 0; j < spec.r; ++j) {
                    const ComponentLaw law{means.row_span(j),
                                           j < shared ? Family::Gaussian : Family::Student};
                    y.emplace_back(sample_extreme(law, spec.t_dof, spec.n, noise_rng));
                }
            }
            return {CredalSample(std::move(x)), CredalSample(std::move(y))};
        }
    }
    throw InvalidInputError("unknown test kind");
}

}  // namespace credal
