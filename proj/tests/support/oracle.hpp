#ifndef ARAQL_TESTS_ORACLE_HPP
#define ARAQL_TESTS_ORACLE_HPP

// Naive multiset-of-tuples reference engine. Everything here works on plain
// tuple maps and counts — no associative-array operations — so it can serve
// as an independent oracle for the array-based implementation. The value
// comparison and aggregate semantics are deliberately re-implemented rather
// than shared.

#include <map>

#include "araql/queryc.hpp"

namespace araql::oracle {

using Tuple = std::map<Key, Value>;                               // non-null cells
struct TupleLess {
    bool operator()(const Tuple& a, const Tuple& b) const;
};
using Bag = std::map<Tuple, std::size_t, TupleLess>;              // tuple -> count

/// Rows of an array as a bag of tuples (any semiring).
Bag bag_of(const AssocArray& a);
Bag bag_of(const Relation& r);

bool bag_equal(const Bag& a, const Bag& b);    // strong equivalence
bool support_equal(const Bag& a, const Bag& b); // weak equivalence

Bag bag_union(const Bag& a, const Bag& b);
Bag bag_intersect(const Bag& a, const Bag& b);
Bag bag_msdiff(const Bag& a, const Bag& b);
Bag bag_setdiff(const Bag& a, const Bag& b);
Bag bag_dedup(const Bag& a);
Bag bag_project(const Bag& a, const std::set<Key>& j);
Bag bag_rename(const Bag& a, const std::map<Key, Key>& f);

/// Evaluates a parsed query against relation-valued inputs using tuple
/// manipulation only. Mirrors the compiler's documented semantics (join
/// mode choice, Null-rejecting comparisons, aggregate folds).
Bag eval_query(const AstPtr& q, const Catalog& catalog);

} // namespace araql::oracle

#endif
