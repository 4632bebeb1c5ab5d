#ifndef ARAQL_EQUIVALENCE_HPP
#define ARAQL_EQUIVALENCE_HPP

#include <optional>

#include "araql/array.hpp"

namespace araql {

// Boolean array with P(i,j) = 1 exactly when row i of A equals row j of B.
// Characterizes both array equivalences.
struct CrossCorrelation {
    AssocArray p;
};

/// Computes the cross-correlation array twice — directly from pairwise row
/// equality and via the (wedge, delta) generalized product of the identity-
/// restricted operands — and verifies both agree before returning. A
/// disagreement is an engine bug, not a data condition.
CrossCorrelation cross_correlation(const AssocArray& a, const AssocArray& b);

/// True iff each non-zero row of A has an equal row in B and vice versa
/// (equal underlying sets of tuples). Decided through the cross-correlation
/// criterion: every supported row of A hits a non-empty P row and every
/// supported row of B a non-empty P column.
bool weak_equiv(const AssocArray& a, const AssocArray& b);

/// True iff A and B are equal as multisets of rows. Decided through the
/// cross-correlation criterion: weak equivalence plus matching non-zero
/// counts of P(i,:) and P(:,j) at every P(i,j) != 0.
bool strong_equiv(const AssocArray& a, const AssocArray& b);

/// When A ≈ B, a bijection f over the row supports with A = 𝕀_{I_A,I_B,f} B;
/// nothing otherwise. Keys are paired ascending within each matched row
/// class, and the defining equation is re-checked before returning.
std::optional<std::map<Key, Key>> strong_witness(const AssocArray& a, const AssocArray& b);

// Subset of (A x {1}) ∪ (B x {2}) as Pair keys; what sub() selects from.
using TaggedKeySet = std::set<Key>;

/// Tags k with 1 or 2: the Pair key (k, tag).
Key tag_key(const Key& k, int tag);

/// First component of a tagged Pair key.
Key untag_key(const Key& k);

/// The fixed choice function over (A x {1}) ∪ (B x {2}): the first n
/// elements under the canonical order (a1,1) < ... < (an,1) < (b1,2) < ...
/// Errors when n exceeds |A| + |B|.
TaggedKeySet sub(const std::set<Key>& a, const std::set<Key>& b, std::size_t n);

/// Set(A): one representative per row-equality class, chosen through
/// sub(class, ∅, 1) and applied as 𝕀_S A. Idempotent; weakly equivalent to
/// the input.
AssocArray dedup(const AssocArray& a);

} // namespace araql

#endif
