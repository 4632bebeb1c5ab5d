#ifndef ARAQL_ARRAY_HPP
#define ARAQL_ARRAY_HPP

#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "araql/key.hpp"
#include "araql/value.hpp"

namespace araql {

// Finitely supported map (Key x Key) -> Value over a semiring; the universal
// container of the engine. Two invariants hold everywhere:
//   - no stored entry equals the semiring zero, and no stored row is empty;
//   - lookups of absent pairs return the semiring zero, which realizes zero
//     padding implicitly and makes every binary operation total.
// Arrays are immutable after construction; all operations below are pure.
class AssocArray {
public:
    using Row = std::map<Key, Value>;
    using Entries = std::map<Key, Row>;

    explicit AssocArray(SemiringPtr sr) : semiring_(std::move(sr)) {}

    /// Internal constructor from pre-cleaned entries (no zeros, no empty
    /// rows). from_entries is the checked public builder.
    AssocArray(SemiringPtr sr, Entries entries) : semiring_(std::move(sr)), entries_(std::move(entries)) {}

    const SemiringPtr& semiring() const { return semiring_; }
    const Entries& entries() const { return entries_; }

    /// Value at (row, col); the semiring zero when the pair is absent.
    const Value& at(const Key& row, const Key& col) const;
    bool contains(const Key& row, const Key& col) const;

    bool is_zero() const { return entries_.empty(); }
    std::size_t nnz() const;

    /// Stored (non-zero) row keys. Identical to the row support.
    std::set<Key> stored_rows() const;
    /// Union of stored column keys across all rows.
    std::set<Key> stored_cols() const;

    /// Declared key sets are optional metadata (needed by ones and the array
    /// identities); when absent the key set is the support's projection.
    const std::optional<std::set<Key>>& declared_rows() const { return declared_rows_; }
    const std::optional<std::set<Key>>& declared_cols() const { return declared_cols_; }
    std::set<Key> row_keys() const { return declared_rows_ ? *declared_rows_ : stored_rows(); }
    std::set<Key> col_keys() const { return declared_cols_ ? *declared_cols_ : stored_cols(); }

    AssocArray with_declared(std::optional<std::set<Key>> rows, std::optional<std::set<Key>> cols) const;

    /// Triple list "row,col,value", one per line, ascending (row, col) key
    /// order. Bit-exact across runs; used by golden tests.
    std::string dump() const;

private:
    SemiringPtr semiring_;
    Entries entries_;
    std::optional<std::set<Key>> declared_rows_;
    std::optional<std::set<Key>> declared_cols_;
};

// The non-zero cells of one row, i.e. the tuple A(i,:).
class RowView {
public:
    RowView(const AssocArray& a, Key row);
    const AssocArray::Row& cells() const { return *cells_; }
    AssocArray::Row::const_iterator begin() const { return cells_->begin(); }
    AssocArray::Row::const_iterator end() const { return cells_->end(); }
    bool empty() const { return cells_->empty(); }
    const Key& row() const { return row_; }

private:
    Key row_;
    const AssocArray::Row* cells_;
};

using Triple = std::tuple<Key, Key, Value>;

/// Builds an array from triples. Values must lie in the semiring's carrier;
/// zero triples are dropped; duplicate (row, col) pairs combine with the
/// semiring plus.
AssocArray from_entries(SemiringPtr sr, const std::vector<Triple>& triples);

/// C(k1,k2) = A(k1,k2) ⊕ B(k1,k2) over the union of supports.
AssocArray eplus(const AssocArray& a, const AssocArray& b);

/// eplus with an explicit combiner (e.g. merge_eq for join column merging).
AssocArray eplus_with(const AssocArray& a, const AssocArray& b, const BinaryOp& add);

/// C(k1,k2) = A(k1,k2) ⊗ B(k1,k2) after mutual padding.
AssocArray etimes(const AssocArray& a, const AssocArray& b);

/// All-ones array on rows x cols (declared key sets retained).
AssocArray ones(const std::set<Key>& rows, const std::set<Key>& cols, SemiringPtr sr);

/// Array identity for a partial injection f: rows -> cols, one at
/// (k, f(k)). Errors when f is not injective.
AssocArray identity_map(const std::set<Key>& rows, const std::set<Key>& cols,
                        const std::map<Key, Key>& f, SemiringPtr sr);

/// The shorthand with dom f = rows ∩ cols and f the identity.
AssocArray identity_map(const std::set<Key>& rows, const std::set<Key>& cols, SemiringPtr sr);

/// Square identity on K.
AssocArray identity_square(const std::set<Key>& keys, SemiringPtr sr);

/// Reduces the ordered list of per-middle-key contributions of one output
/// cell to its final value. Receives contributions in ascending middle-key
/// order; an empty list never reaches the reducer (the cell is zero).
using Reducer = std::function<Value(const std::vector<Value>&)>;

/// C(k1,k3) = ⊕-fold over k2 of A(k1,k2) ⊗ B(k2,k3), with the semiring's
/// own operator pair. Requires equal semirings.
AssocArray arrayprod(const AssocArray& a, const AssocArray& b);

/// Generalized product A ⊕.⊗ B with an explicit operator pair. The fold
/// runs over middle keys where at least one operand is non-zero, in
/// ascending key order, over the full contribution list (add-like ops for
/// which zero is not an identity, such as wedge, rely on this). An empty
/// fold yields zero. The result lives in result_sr (operands' semirings may
/// differ; defaults to A's when null).
AssocArray arrayprod(const AssocArray& a, const AssocArray& b, const OpPair& ops,
                     SemiringPtr result_sr = nullptr);

/// Same contraction with an arbitrary reducer in place of a binary add-like
/// op (aggregation folds a whole multiset at once).
AssocArray arrayprod_reduce(const AssocArray& a, const AssocArray& b, const Reducer& reduce,
                            const BinaryOp& mul, SemiringPtr result_sr);

/// Aᵀ(k2,k1) = A(k1,k2). Involution.
AssocArray transpose(const AssocArray& a);

/// C((k1,k3),(k2,k4)) = A(k1,k2) ⊗ B(k3,k4) with Pair result keys.
AssocArray kron(const AssocArray& a, const AssocArray& b);

/// Row keys of non-zero rows.
std::set<Key> row_support(const AssocArray& a);

/// True iff rows A(i,:) and B(j,:) agree wherever either is non-zero.
bool row_eq(const AssocArray& a, const Key& i, const AssocArray& b, const Key& j);

/// All row keys of A whose rows equal A(i,:). Errors when i is outside the
/// row support.
std::set<Key> row_class(const AssocArray& a, const Key& i);

/// Equality up to zero padding: identical stored entries.
bool array_equal(const AssocArray& a, const AssocArray& b);

} // namespace araql

#endif
