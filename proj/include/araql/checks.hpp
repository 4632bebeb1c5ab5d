#ifndef ARAQL_CHECKS_HPP
#define ARAQL_CHECKS_HPP

#include <random>
#include <string>
#include <vector>

#include "araql/relalg.hpp"

namespace araql {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

/// Samples a value from a builtin semiring's carrier. Distributivity needs
/// exact arithmetic, so reals are drawn from small dyadics and min_concat
/// words share one length per triple (the string law fails across lengths).
Value sample_carrier(const std::string& semiring, std::mt19937_64& rng, int word_len);

/// Checks the four semiring axioms on `samples` random triples.
CheckResult check_semiring_axioms(const std::string& name, int samples, std::mt19937_64& rng);

/// Random small array over the given semiring (support within rows x cols).
AssocArray random_array(SemiringPtr sr, std::mt19937_64& rng, int max_rows = 4, int max_cols = 4);

/// The in-binary invariant suite behind `araql check`: semiring axioms,
/// array algebra laws, equivalence criteria agreement, dedup idempotence
/// and the demo graph. Lighter than the acceptance tests but same substance.
std::vector<CheckResult> run_self_checks(unsigned seed = 1, int samples = 200);

} // namespace araql

#endif
