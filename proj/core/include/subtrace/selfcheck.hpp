#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace subtrace {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::size_t instances = 0;
    double worst = 0.0;     // worst observed margin statistic
    std::string detail;     // populated on failure
};

/// Randomized verification of the update-geometry properties: orthonormality
/// preservation, COM invariance of the rotated basis, residual and companion
/// orthogonality, the stepsize clamp bound, the no-overturn boundary for
/// noise tracking, cone containment for DPM signal tracking, and agreement
/// of the closed-form rotation angle with direct measurement.
std::vector<CheckResult> geometry_selfcheck(std::uint64_t seed, std::size_t instances);

}  // namespace subtrace
