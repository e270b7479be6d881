// Validities of the dominance ought checked on random explicit models.
// Each suite draws its models from the caller's generator and counts every
// instance it checks; a valid implementation reports zero violations.
#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "deontic/random.hpp"

namespace deontic::props {

struct SuiteResult {
  std::string name;
  std::size_t models = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::string first_violation;  // empty when there is none
};

/// |A|_m empty implies O[a cstit: A | B] <-> O[a cstit: B], and the
/// extension of A | B is the union of the extensions.
SuiteResult force_others(std::mt19937_64& rng, std::size_t models,
                         const random::ModelBounds& bounds = {});

/// [a dstit: [a dstit: phi]] has the extension of [a dstit: phi].
SuiteResult dstit_idempotence(std::mt19937_64& rng, std::size_t models,
                              const random::ModelBounds& bounds = {});

/// [a dstit: ![a dstit: ![a dstit: phi]]] has the extension of
/// [a dstit: phi].
SuiteResult refrain_refrain(std::mt19937_64& rng, std::size_t models,
                            const random::ModelBounds& bounds = {});

/// Ought statements have the same truth value on every history through a
/// moment.
SuiteResult history_independence(std::mt19937_64& rng, std::size_t models,
                                  const random::ModelBounds& bounds = {});

/// O[A] & O[B] <-> O[A & B].
SuiteResult conjunction(std::mt19937_64& rng, std::size_t models,
                        const random::ModelBounds& bounds = {});

/// Every agent and the group of all agents has an optimal action at every
/// moment, also under a condition with non-empty extension.
SuiteResult optimal_nonempty(std::mt19937_64& rng, std::size_t models,
                             const random::ModelBounds& bounds = {});

/// Strict dominance between actions is irreflexive and transitive.
SuiteResult dominance_order(std::mt19937_64& rng, std::size_t models,
                            const random::ModelBounds& bounds = {});

/// Every suite above, in declaration order, each with its own generator
/// seeded from `seed`.
std::vector<SuiteResult> all_suites(std::uint64_t seed, std::size_t models,
                                    const random::ModelBounds& bounds = {});

}  // namespace deontic::props
