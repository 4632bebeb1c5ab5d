#include "araql/array.hpp"

#include <algorithm>

namespace araql {

namespace {

const AssocArray::Row& empty_row() {
    static const AssocArray::Row r;
    return r;
}

void require_same_semiring(const AssocArray& a, const AssocArray& b, const char* op) {
    if (a.semiring()->name != b.semiring()->name)
        throw Error(std::string("semiring mismatch in ") + op + ": " + a.semiring()->name +
                    " vs " + b.semiring()->name);
}

void store(AssocArray::Entries& e, const Key& r, const Key& c, Value v, const Value& zero) {
    if (v == zero) return;
    e[r].emplace(c, std::move(v));
}

// column -> (row -> value) view of b, for walking products column-wise
std::map<Key, AssocArray::Row> column_index(const AssocArray& b) {
    std::map<Key, AssocArray::Row> cols;
    for (const auto& [r, row] : b.entries())
        for (const auto& [c, v] : row) cols[c].emplace(r, v);
    return cols;
}

Reducer fold_reducer(const BinaryOp& add) {
    return [add](const std::vector<Value>& vs) {
        Value acc = vs.front();
        for (std::size_t i = 1; i < vs.size(); ++i) acc = add(acc, vs[i]);
        return acc;
    };
}

} // namespace

const Value& AssocArray::at(const Key& row, const Key& col) const {
    auto r = entries_.find(row);
    if (r == entries_.end()) return semiring_->zero;
    auto c = r->second.find(col);
    if (c == r->second.end()) return semiring_->zero;
    return c->second;
}

bool AssocArray::contains(const Key& row, const Key& col) const {
    auto r = entries_.find(row);
    return r != entries_.end() && r->second.count(col) > 0;
}

std::size_t AssocArray::nnz() const {
    std::size_t n = 0;
    for (const auto& [r, row] : entries_) n += row.size();
    return n;
}

std::set<Key> AssocArray::stored_rows() const {
    std::set<Key> s;
    for (const auto& [r, row] : entries_) s.insert(r);
    return s;
}

std::set<Key> AssocArray::stored_cols() const {
    std::set<Key> s;
    for (const auto& [r, row] : entries_)
        for (const auto& [c, v] : row) s.insert(c);
    return s;
}

AssocArray AssocArray::with_declared(std::optional<std::set<Key>> rows,
                                     std::optional<std::set<Key>> cols) const {
    AssocArray out(semiring_, entries_);
    out.declared_rows_ = std::move(rows);
    out.declared_cols_ = std::move(cols);
    return out;
}

std::string AssocArray::dump() const {
    std::string out;
    for (const auto& [r, row] : entries_)
        for (const auto& [c, v] : row)
            out += r.to_string() + "," + c.to_string() + "," + v.to_string() + "\n";
    return out;
}

RowView::RowView(const AssocArray& a, Key row) : row_(std::move(row)) {
    auto it = a.entries().find(row_);
    cells_ = it == a.entries().end() ? &empty_row() : &it->second;
}

AssocArray from_entries(SemiringPtr sr, const std::vector<Triple>& triples) {
    AssocArray::Entries e;
    const Value& zero = sr->zero;
    for (const auto& [r, c, v] : triples) {
        if (!sr->contains(v))
            throw TypeError("value '" + v.to_string() + "' is outside the " + sr->name +
                            " carrier");
        if (v == zero) continue;
        auto& row = e[r];
        auto it = row.find(c);
        if (it == row.end()) {
            row.emplace(c, v);
        } else {
            Value combined = sr->plus(it->second, v);
            if (combined == zero)
                row.erase(it);
            else
                it->second = std::move(combined);
        }
    }
    for (auto it = e.begin(); it != e.end();)
        it = it->second.empty() ? e.erase(it) : std::next(it);
    return AssocArray(std::move(sr), std::move(e));
}

AssocArray eplus_with(const AssocArray& a, const AssocArray& b, const BinaryOp& add) {
    const Value& zero = a.semiring()->zero;
    AssocArray::Entries e;
    for (const auto& [r, row] : a.entries())
        for (const auto& [c, v] : row) store(e, r, c, add(v, b.at(r, c)), zero);
    for (const auto& [r, row] : b.entries())
        for (const auto& [c, v] : row)
            if (!a.contains(r, c)) store(e, r, c, add(a.semiring()->zero, v), zero);
    return AssocArray(a.semiring(), std::move(e));
}

AssocArray eplus(const AssocArray& a, const AssocArray& b) {
    require_same_semiring(a, b, "eplus");
    return eplus_with(a, b, a.semiring()->plus);
}

AssocArray etimes(const AssocArray& a, const AssocArray& b) {
    require_same_semiring(a, b, "etimes");
    const auto& sr = a.semiring();
    AssocArray::Entries e;
    // zero annihilates under ⊗, so only the support intersection can be non-zero
    for (const auto& [r, row] : a.entries()) {
        auto rb = b.entries().find(r);
        if (rb == b.entries().end()) continue;
        for (const auto& [c, v] : row) {
            auto cb = rb->second.find(c);
            if (cb == rb->second.end()) continue;
            store(e, r, c, sr->times(v, cb->second), sr->zero);
        }
    }
    return AssocArray(sr, std::move(e));
}

AssocArray ones(const std::set<Key>& rows, const std::set<Key>& cols, SemiringPtr sr) {
    AssocArray::Entries e;
    for (const Key& r : rows)
        for (const Key& c : cols) e[r].emplace(c, sr->one);
    AssocArray out(std::move(sr), std::move(e));
    return out.with_declared(rows, cols);
}

AssocArray identity_map(const std::set<Key>& rows, const std::set<Key>& cols,
                        const std::map<Key, Key>& f, SemiringPtr sr) {
    std::set<Key> image;
    AssocArray::Entries e;
    for (const auto& [k, fk] : f) {
        if (!rows.count(k))
            throw Error("identity map domain key '" + k.to_string() + "' is not a row key");
        if (!cols.count(fk))
            throw Error("identity map image key '" + fk.to_string() + "' is not a column key");
        if (!image.insert(fk).second)
            throw Error("identity map is not injective at '" + fk.to_string() + "'");
        e[k].emplace(fk, sr->one);
    }
    AssocArray out(std::move(sr), std::move(e));
    return out.with_declared(rows, cols);
}

AssocArray identity_map(const std::set<Key>& rows, const std::set<Key>& cols, SemiringPtr sr) {
    std::map<Key, Key> f;
    for (const Key& k : rows)
        if (cols.count(k)) f.emplace(k, k);
    return identity_map(rows, cols, f, std::move(sr));
}

AssocArray identity_square(const std::set<Key>& keys, SemiringPtr sr) {
    return identity_map(keys, keys, std::move(sr));
}

AssocArray arrayprod_reduce(const AssocArray& a, const AssocArray& b, const Reducer& reduce,
                            const BinaryOp& mul, SemiringPtr result_sr) {
    const auto bcols = column_index(b);
    const Value& azero = a.semiring()->zero;
    const Value& bzero = b.semiring()->zero;
    const Value& rzero = result_sr->zero;
    AssocArray::Entries e;
    std::vector<Value> contribs;
    for (const auto& [k1, arow] : a.entries()) {
        for (const auto& [k3, bcol] : bcols) {
            contribs.clear();
            // middle keys with a stored entry on either side, ascending
            auto ia = arow.begin();
            auto ib = bcol.begin();
            while (ia != arow.end() || ib != bcol.end()) {
                if (ib == bcol.end() || (ia != arow.end() && ia->first < ib->first)) {
                    contribs.push_back(mul(ia->second, bzero));
                    ++ia;
                } else if (ia == arow.end() || ib->first < ia->first) {
                    contribs.push_back(mul(azero, ib->second));
                    ++ib;
                } else {
                    contribs.push_back(mul(ia->second, ib->second));
                    ++ia;
                    ++ib;
                }
            }
            if (contribs.empty()) continue;
            store(e, k1, k3, reduce(contribs), rzero);
        }
    }
    return AssocArray(std::move(result_sr), std::move(e));
}

AssocArray arrayprod(const AssocArray& a, const AssocArray& b, const OpPair& ops,
                     SemiringPtr result_sr) {
    if (!result_sr) result_sr = a.semiring();
    return arrayprod_reduce(a, b, fold_reducer(ops.add), ops.mul, std::move(result_sr));
}

AssocArray arrayprod(const AssocArray& a, const AssocArray& b) {
    require_same_semiring(a, b, "arrayprod");
    return arrayprod(a, b, OpPair{a.semiring()->plus, a.semiring()->times}, a.semiring());
}

AssocArray transpose(const AssocArray& a) {
    AssocArray::Entries e;
    for (const auto& [r, row] : a.entries())
        for (const auto& [c, v] : row) e[c].emplace(r, v);
    return AssocArray(a.semiring(), std::move(e));
}

AssocArray kron(const AssocArray& a, const AssocArray& b) {
    require_same_semiring(a, b, "kron");
    const auto& sr = a.semiring();
    AssocArray::Entries e;
    for (const auto& [k1, arow] : a.entries())
        for (const auto& [k2, av] : arow)
            for (const auto& [k3, brow] : b.entries())
                for (const auto& [k4, bv] : brow)
                    store(e, Key::pair(k1, k3), Key::pair(k2, k4), sr->times(av, bv), sr->zero);
    return AssocArray(sr, std::move(e));
}

std::set<Key> row_support(const AssocArray& a) { return a.stored_rows(); }

bool row_eq(const AssocArray& a, const Key& i, const AssocArray& b, const Key& j) {
    const auto& ra = RowView(a, i).cells();
    const auto& rb = RowView(b, j).cells();
    // walk the union of stored columns; a cell stored on one side only can
    // never match (stored values are non-zero by the sparsity invariant)
    auto ia = ra.begin();
    auto ib = rb.begin();
    while (ia != ra.end() || ib != rb.end()) {
        if (ib == rb.end() || (ia != ra.end() && ia->first < ib->first)) return false;
        if (ia == ra.end() || ib->first < ia->first) return false;
        if (ia->second != ib->second) return false;
        ++ia;
        ++ib;
    }
    return true;
}

std::set<Key> row_class(const AssocArray& a, const Key& i) {
    if (a.entries().find(i) == a.entries().end())
        throw Error("row '" + i.to_string() + "' is not in the row support");
    std::set<Key> cls;
    for (const auto& [r, row] : a.entries())
        if (row_eq(a, i, a, r)) cls.insert(r);
    return cls;
}

bool array_equal(const AssocArray& a, const AssocArray& b) {
    return a.entries() == b.entries();
}

} // namespace araql
