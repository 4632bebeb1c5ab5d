#ifndef ARAQL_TESTS_GEN_HPP
#define ARAQL_TESTS_GEN_HPP

// Seeded random relations, catalogs and grammar-valid queries for property
// and oracle-equivalence testing.

#include <random>

#include "araql/queryc.hpp"

namespace araql::gen {

using Rng = std::mt19937_64;

int pick(Rng& rng, int lo, int hi);
bool chance(Rng& rng, double p);

/// Random relation: columns from {a,b} (numeric) and {c,d} (text), small
/// int/dyadic-real/short-text values, ~1/5 null cells, synthetic int keys.
Relation random_relation(Rng& rng, int max_rows = 6, int max_cols = 4);

/// Catalog of 1..3 relations named T1..T3.
Catalog random_catalog(Rng& rng);

/// Random query that is grammar-valid and compiles against the catalog.
AstPtr random_query(Rng& rng, const Catalog& catalog);

/// Relation whose rows reuse a tiny tuple alphabet, so equivalences and
/// matched row classes actually occur.
Relation random_small_relation(Rng& rng, int max_rows = 6, int max_cols = 4, int alphabet = 3);

/// A pair (A, B) where B is, with mixed probability, a row-permuted copy,
/// a duplicated/dropped-row variant, or an independent relation.
std::pair<Relation, Relation> related_pair(Rng& rng);

} // namespace araql::gen

#endif
