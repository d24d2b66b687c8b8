#include "invar/problem/validate.hpp"

#include "invar/support/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace invar {

bool ValidationReport::any_fail() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const auto& c) { return c.status == CheckStatus::Fail; });
}

bool ValidationReport::any_warn() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const auto& c) { return c.status == CheckStatus::Warn; });
}

namespace {

Vec sample_box(const Box& box, PhiloxRng& rng) {
    Vec x(box.lower.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x[i] = box.lower[i] + (box.upper[i] - box.lower[i]) * rng.next_uniform();
    return x;
}

}  // namespace

ValidationReport validate_spec(const ProblemSpec& spec, int sample_count, double tolerance,
                               std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("validate_spec: sample_count >= 1");
    ValidationReport report;

    // Structural checks. Domain construction already enforces the variant
    // invariants, so surviving objects pass; re-stated here so the report is
    // self-contained.
    {
        ValidationCheck c;
        c.name = "domain_structure";
        c.detail = "variant invariants hold (enforced at construction)";
        report.checks.push_back(std::move(c));
    }
    {
        ValidationCheck c;
        c.name = "x0_interior";
        c.status = spec.domain.classify(spec.x0) == Region::Interior ? CheckStatus::Pass
                                                                     : CheckStatus::Fail;
        c.witness = spec.x0;
        report.checks.push_back(std::move(c));
    }

    const Box box = spec.domain.bounding_box();
    const double t_probe = spec.horizon.is_finite() ? 0.5 * spec.horizon.T() : 0.0;

    // Sampled uniform-ellipticity check on Sigma = sigma sigma^T.
    {
        PhiloxRng rng(seed, /*stream=*/1);
        double worst = std::numeric_limits<double>::infinity();
        Vec worst_x;
        for (int k = 0; k < sample_count; ++k) {
            const Vec x = sample_box(box, rng);
            const Mat Sigma = sigma_to_Sigma(spec.dynamics, t_probe, x);
            Eigen::SelfAdjointEigenSolver<Mat> es(Sigma, Eigen::EigenvaluesOnly);
            const double lambda_min = es.eigenvalues().minCoeff();
            if (lambda_min < worst) {
                worst = lambda_min;
                worst_x = x;
            }
        }
        ValidationCheck c;
        c.name = "uniform_ellipticity";
        c.value = worst;
        c.witness = worst_x;
        if (worst >= tolerance) {
            c.detail = "min eigenvalue of Sigma over samples >= tolerance";
        } else {
            c.status = CheckStatus::Warn;
            c.detail = "Sigma has near-degenerate directions; score-based test still applies";
        }
        report.checks.push_back(std::move(c));
    }

    // Target containment by sampling: points in the target must not be
    // exterior to the invariance set.
    if (spec.target) {
        PhiloxRng rng(seed, /*stream=*/2);
        const Box tbox = spec.target->bounding_box();
        bool ok = true;
        Vec bad;
        int hits = 0;
        for (int k = 0; k < sample_count || hits == 0; ++k) {
            if (k > 100 * sample_count) break;  // degenerate target, give up on coverage
            const Vec x = sample_box(tbox, rng);
            if (spec.target->classify(x) != Region::Interior) continue;
            ++hits;
            if (spec.domain.classify(x) == Region::Exterior) {
                ok = false;
                bad = x;
                break;
            }
        }
        ValidationCheck c;
        c.name = "target_in_domain";
        c.status = ok && hits > 0 ? CheckStatus::Pass : CheckStatus::Fail;
        c.witness = bad;
        c.detail = ok ? (hits > 0 ? "all sampled target points lie in the invariance set"
                                  : "could not sample the target interior")
                      : "sampled target point escapes the invariance set";
        report.checks.push_back(std::move(c));
    }

    return report;
}

}  // namespace invar
