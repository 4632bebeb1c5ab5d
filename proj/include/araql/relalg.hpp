#ifndef ARAQL_RELALG_HPP
#define ARAQL_RELALG_HPP

#include <functional>
#include <optional>

#include "araql/array.hpp"
#include "araql/equivalence.hpp"

namespace araql {

// An associative array over the relational domain read as a relation: rows
// are tuples, columns are attributes, row keys only tell rows apart.
// Operation results are compared by strong equivalence in tests except
// where the algebra gives outright equality.
struct Relation {
    AssocArray data;
    std::set<Key> schema;

    Relation();
    Relation(AssocArray d, std::set<Key> s);
};

// Boolean row filter: watches the J-indexed entries of a row and returns
// Bool true/false. The evaluator only ever sees the non-zero J entries.
struct RowPredicate {
    std::set<Key> cols;
    std::function<Value(const AssocArray::Row&)> eval;
};

/// Predicate that is constantly true/false regardless of the row.
RowPredicate const_predicate(bool outcome);

// Two-row boolean filter for joins: J1 entries come from the first operand,
// J2 entries from the second.
struct JoinPredicate {
    std::set<Key> j1;
    std::set<Key> j2;
    std::function<Value(const AssocArray::Row&, const AssocArray::Row&)> eval;
};

JoinPredicate const_join_predicate(bool outcome);

// Symmetric fold over the non-empty multiset of non-zero values of a group.
struct Aggregator {
    std::string name;
    std::function<Value(const std::vector<Value>&)> fold;
};

/// Wraps a fold as an Aggregator after spot-checking symmetry on sampled
/// multisets; an order-dependent fold is rejected here rather than at use.
Aggregator make_aggregator(std::string name, std::function<Value(const std::vector<Value>&)> fold);

/// Catalog aggregators: sum, min, max, count, first.
const Aggregator& builtin_aggregator(const std::string& name);

/// Π_J(A) = A 𝕀_J. Keeps exactly the J columns; schema becomes schema ∩ J.
Relation project(const Relation& a, const std::set<Key>& j);

/// ρ(A) = A 𝕀_{J1,J2,f} for the bijection f given as a map. Columns outside
/// dom f are dropped — callers renaming in place must map kept columns to
/// themselves.
Relation rename(const Relation& a, const std::map<Key, Key>& f);

/// A ∪ B: row keys tagged (i,1)/(i,2), tuple counts add (bag UNION ALL).
Relation union_all(const Relation& a, const Relation& b);

/// A ∩ B: per matched row class, the minimum of the two counts survives.
Relation intersect(const Relation& a, const Relation& b);

/// A \ B: removes as many copies of each row as B holds. Invariant under
/// strong equivalence only.
Relation msdiff(const Relation& a, const Relation& b);

/// Set-semantics difference: removes every copy of any tuple present in B.
Relation setdiff(const Relation& a, const Relation& b);

/// σ_φ(A) = [[φ(A(:,J)) φ(A(:,J))ᵀ] ⊗ 𝕀_{I_A}] A. Rows carrying a Conflict
/// value always fail the predicate (the merge-filter contract).
Relation select(const Relation& a, const RowPredicate& phi);

enum class JoinMode {
    Tagged, // result columns (c,1)/(c,2); θ reads the two sides separately
    EqMerge // shared columns merged cell-wise; mismatches become Conflict
            // and are removed by the enclosing selection
};

/// A ⋈_θ B = σ_θ([A ⊛ 𝟙_{I_B,{1}}] ⊕ ρ[𝟙_{I_A},{2}} ⊛ B]), rows keyed by
/// (i_A, i_B) pairs. In EqMerge mode the array addition is the merging ⊕₌
/// and θ evaluates over the merged row.
Relation theta_join(const Relation& a, const Relation& b, const JoinPredicate& theta,
                    JoinMode mode = JoinMode::Tagged);

/// Replaces the J columns by the single column `out` computed per row by
/// phi. Rows where phi yields Null produce no entry.
Relation extended_projection(const Relation& a, const std::set<Key>& j,
                             const std::function<Value(const AssocArray::Row&)>& phi,
                             const Key& out);

/// Groups rows by equal non-zero values of group_col and folds value_col
/// with f. Before dedup the result keeps one (identical) entry per input
/// row under column key 1; with dedup_groups the group values themselves
/// become the row keys; out_col renames the output column.
Relation aggregate(const Relation& a, const Key& group_col, const Key& value_col,
                   const Aggregator& f, bool dedup_groups = false,
                   const std::optional<Key>& out_col = std::nullopt);

/// Key encoding of a group value (Int -> int atom, Text -> text atom,
/// anything else its canonical rendering).
Key key_of_value(const Value& v);

/// True when any stored cell is the Conflict sentinel. Conflicts may only
/// exist transiently inside a join before its selection; one reaching a
/// user-visible relation is an engine bug.
bool has_conflict(const AssocArray& a);

} // namespace araql

#endif
