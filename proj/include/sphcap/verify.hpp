#pragma once

#include "sphcap/geometry.hpp"
#include "sphcap/profile.hpp"
#include "sphcap/rearrangement.hpp"

#include <string>
#include <vector>

namespace sphcap {

/// Discretization allowance: a bound is violated only beyond this fraction of
/// its right-hand side.
inline constexpr double kBoundRelTol = 0.01;
/// gamma_measure below this fraction of the set's radius counts as "no single arcs".
inline constexpr double kGammaRelTol = 1e-3;

enum class CheckStatus { Ok, Finding, Violation };

std::string_view to_string(CheckStatus status);

struct BoundPair {
    double lhs = 0.0;
    double rhs = 0.0;

    bool holds(double rel_tol = kBoundRelTol) const { return lhs <= rhs + rel_tol * rhs + 1e-12; }
};

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Ok;
    std::string detail;
};

struct VerificationReport {
    AnnulusWindow window = AnnulusWindow::everything();
    int samples_per_segment = 0;
    std::size_t segments = 0;
    std::size_t samples = 0;

    double P_E = 0.0;
    double P_Fv = 0.0;
    double gamma_measure = 0.0;
    double slack_main = 0.0; ///< P_E + 2 gamma - P_Fv
    BoundPair tv;            ///< |4 r D theta|(window) vs P_E(window)
    BoundPair estim;         ///< P_Fv vs |4 r D theta| + integral of p_Fv
    BoundPair jensen;        ///< integral of sqrt(p_E^2 + g_E^2) vs P_E
    bool disconnected = false;
    double strict_hint = 0.0;
    std::size_t pointwise_checked = 0;
    std::size_t pointwise_failed = 0;

    double bound_tolerance = kBoundRelTol;
    double gamma_tolerance = 0.0;

    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    bool has_violation() const;
    bool has_finding() const;
};

/// Everything derived from one polygon at one resolution.
struct Analysis {
    MultiPolygon poly;
    RadialProfile profile;
    RearrangedSet rearranged;

    Analysis(MultiPolygon poly, int samples_per_segment);
};

VerificationReport verify_main_theorem(const Analysis& analysis, const AnnulusWindow& window);
VerificationReport verify_main_theorem(const MultiPolygon& poly, const AnnulusWindow& window,
                                       int samples_per_segment = kDefaultSamplesPerSegment);

BoundPair verify_tv_bound(const Analysis& analysis, const AnnulusWindow& window);
BoundPair verify_estim_bound(const Analysis& analysis, const AnnulusWindow& window);
BoundPair verify_jensen_bound(const Analysis& analysis, const AnnulusWindow& window);

BoundPair verify_tv_bound(const MultiPolygon& poly, const AnnulusWindow& window,
                          int samples_per_segment = kDefaultSamplesPerSegment);
BoundPair verify_estim_bound(const MultiPolygon& poly, const AnnulusWindow& window,
                             int samples_per_segment = kDefaultSamplesPerSegment);
BoundPair verify_jensen_bound(const MultiPolygon& poly, const AnnulusWindow& window,
                              int samples_per_segment = kDefaultSamplesPerSegment);

/// Estimated-bound pair for a rearranged profile alone (no source polygon).
BoundPair estim_bound(const RearrangedSet& rset, const AnnulusWindow& window);

/// Integral of sqrt(p_E^2 + (4 r theta')^2); equals the integral of
/// sqrt(p_E^2 + g_E^2) because g_E = -4 r theta' on every slice.
double jensen_integral(const RadialProfile& profile, const AnnulusWindow& window);

/// Measure of radii whose slice has three or more arcs.
double strictness_hint(const RadialProfile& profile, const AnnulusWindow& window);

/// sqrt(16 + s) - sqrt(4 + s) for s = (4 r theta')^2; never exceeds 2.
double pointwise_excess(double four_r_dtheta);

struct HighDimResult {
    double lateral_E = 0.0;
    double lateral_F = 0.0;
    bool increased = false;
};

/// Lateral areas (unit radius, common factors dropped) of a ball with two thin
/// cylinders of radii 1 and alpha in R^N, and of its rearrangement whose two
/// cylinders share the averaged (N-1)-volume.
HighDimResult highdim_counterexample(int N, double alpha);

} // namespace sphcap
