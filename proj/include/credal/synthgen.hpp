#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "credal/rng.hpp"
#include "credal/types.hpp"

namespace credal {

enum class TestKind { Specification, Inclusion, Equality, Plausibility };
enum class Hypothesis { Null, Alternative };

const char* to_string(TestKind k);
const char* to_string(Hypothesis h);
TestKind parse_test_kind(std::string_view s);
Hypothesis parse_hypothesis(std::string_view s);

/// One synthetic scenario: Gaussian extreme points with means on the unit
/// sphere, Student-t counterparts with the same means, and per-test null or
/// alternative constructions. The seed fixes the layout (means, mixture
/// weights); observation noise comes from a disjoint substream so layouts
/// can stay frozen while repetitions redraw data.
struct ScenarioSpec {
    TestKind test_kind = TestKind::Specification;
    Hypothesis hypothesis = Hypothesis::Null;
    std::size_t d = 10;
    std::size_t r = 3;    // extreme points of the Y-side credal set
    std::size_t ell = 3;  // extreme points of the X-side credal set (where used)
    std::size_t n = 512;  // sample size per extreme point
    double t_dof = 3.0;
    double sphere_radius = 1.0;
    bool dependent_extreme = false;  // adds a Y extreme drawn from a fixed mixture
    std::uint64_t seed = 0;

    void validate() const {
        if (d < 1 || r < 1 || ell < 1)
            throw InvalidInputError("scenario dimensions and extreme counts must be positive");
        if (n < 4)
            throw InvalidInputError("scenario needs at least four samples per extreme point");
        if (!(t_dof >= 1.0))
            throw InvalidInputError("Student-t degrees of freedom must be at least one");
        if (!(sphere_radius > 0.0))
            throw InvalidInputError("sphere radius must be positive");
    }
};

/// r independent uniform draws from the radius-scaled (d-1)-sphere, one per row.
Matrix make_extreme_means(std::size_t r, std::size_t d, Rng& rng, double radius = 1.0);

Dataset sample_gaussian_extreme(std::span<const double> mean, std::size_t n, Rng& rng);

/// mean + g / sqrt(chi2_dof / dof), g standard normal; one chi-square draw
/// per observation (the usual multivariate-t construction, identity scale).
Dataset sample_student_extreme(std::span<const double> mean, double dof, std::size_t n,
                               Rng& rng);

struct BuiltScenario {
    CredalSample x;  // a single extreme for specification scenarios
    CredalSample y;
};

/// Fresh data for the configured scenario. Mixture observations draw a
/// component index and then one fresh component observation (sampling from
/// the population, with replacement; resampling observed rows without
/// replacement is redraw_samples' job and must not be confused with this).
BuiltScenario build_scenario(const ScenarioSpec& spec,
                             std::optional<std::uint64_t> noise_seed = std::nullopt);

}  // namespace credal
