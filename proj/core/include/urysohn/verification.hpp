#pragma once

// Property suites: interpolation identities, the divided-difference bounds
// on K'(phi), operator order checks and the linear counterexample.

#include <cstdint>
#include <string>
#include <vector>

#include "urysohn/published.hpp"

namespace urysohn {

inline constexpr std::uint64_t default_seed = 20240607;

/// Nodal exactness, polynomial reproduction, idempotence, Newton-form
/// identity, divided-difference symmetry and interpolation-error slopes.
std::vector<CriterionResult> verify_projection(std::uint64_t seed = default_seed);

/// For y = K'(phi) 1 on Example 2: sup over each cell of
/// |[tau_j^0..tau_j^2r, s] y| h^2r and of the [.., s, s] form must not grow
/// beyond 3x the coarsest value as n doubles over 4..32 (r = 0, 1).
std::vector<CriterionResult> verify_lemmas();

/// Slopes in h of ||K'(I-Q_n)x||, ||K'(I-Q_n)K'(I-Q_n)x|| and a random-sample
/// surrogate of ||K'(I-Q_n)K'|| on Example 2, r = 0, n = 4..32.
std::vector<CriterionResult> verify_propositions(std::uint64_t seed = default_seed);

/// Linear rank-one kernel with nodes at one third of each cell:
/// ||K'(I-Q_n)phi|| / ||(I-Q_n)phi|| >= 1/4 and ||K'(I-Q_n)phi|| = 2/(3n)
/// for n = 3, 9, 27.
std::vector<CriterionResult> verify_conclusion();

/// Suite names accepted by run_suite, "all" included.
std::vector<std::string> suite_names();
/// Throws std::invalid_argument for an unknown name.
std::vector<CriterionResult> run_suite(const std::string& name, std::uint64_t seed = default_seed);

}  // namespace urysohn
