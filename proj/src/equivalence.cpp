#include "araql/equivalence.hpp"

namespace araql {

namespace {

AssocArray direct_cross_correlation(const AssocArray& a, const AssocArray& b) {
    std::vector<Triple> triples;
    for (const auto& [i, arow] : a.entries())
        for (const auto& [j, brow] : b.entries())
            if (row_eq(a, i, b, j)) triples.emplace_back(i, j, Value::boolean(true));
    return from_entries(builtin_semiring("boolean"), triples);
}

AssocArray lemma_cross_correlation(const AssocArray& a, const AssocArray& b) {
    AssocArray la = arrayprod(identity_square(row_support(a), a.semiring()), a);
    AssocArray lb = arrayprod(identity_square(row_support(b), b.semiring()), b);
    return arrayprod(la, transpose(lb), OpPair{wedge, delta}, builtin_semiring("boolean"));
}

// partition of the row support into row-equality classes, each sorted
std::vector<std::set<Key>> row_classes(const AssocArray& a) {
    std::vector<std::set<Key>> classes;
    std::set<Key> seen;
    for (const auto& [i, row] : a.entries()) {
        if (seen.count(i)) continue;
        std::set<Key> cls = row_class(a, i);
        seen.insert(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

} // namespace

CrossCorrelation cross_correlation(const AssocArray& a, const AssocArray& b) {
    AssocArray direct = direct_cross_correlation(a, b);
    AssocArray lemma = lemma_cross_correlation(a, b);
    if (!array_equal(direct, lemma))
        throw Error("cross-correlation mismatch between direct and product construction");
    return CrossCorrelation{std::move(direct)};
}

bool weak_equiv(const AssocArray& a, const AssocArray& b) {
    const AssocArray p = cross_correlation(a, b).p;
    for (const auto& [i, row] : a.entries())
        if (p.entries().find(i) == p.entries().end()) return false;
    std::set<Key> pcols = p.stored_cols();
    for (const auto& [j, row] : b.entries())
        if (!pcols.count(j)) return false;
    return true;
}

bool strong_equiv(const AssocArray& a, const AssocArray& b) {
    if (!weak_equiv(a, b)) return false;
    const AssocArray p = cross_correlation(a, b).p;
    std::map<Key, std::size_t> col_counts;
    for (const auto& [i, row] : p.entries())
        for (const auto& [j, v] : row) ++col_counts[j];
    for (const auto& [i, row] : p.entries())
        for (const auto& [j, v] : row)
            if (row.size() != col_counts[j]) return false;
    return true;
}

std::optional<std::map<Key, Key>> strong_witness(const AssocArray& a, const AssocArray& b) {
    if (!strong_equiv(a, b)) return std::nullopt;
    std::map<Key, Key> f;
    for (const std::set<Key>& cls : row_classes(a)) {
        const Key& rep = *cls.begin();
        std::set<Key> bcls;
        for (const auto& [j, brow] : b.entries())
            if (row_eq(a, rep, b, j)) bcls.insert(j);
        if (bcls.size() != cls.size())
            throw Error("strong equivalence class size mismatch"); // unreachable if ≈ holds
        auto ib = bcls.begin();
        for (const Key& i : cls) f.emplace(i, *ib++);
    }
    AssocArray recon =
        arrayprod(identity_map(row_support(a), row_support(b), f, a.semiring()), b);
    if (!array_equal(recon, a)) throw Error("strong witness fails its defining equation");
    return f;
}

Key tag_key(const Key& k, int tag) { return Key::pair(k, Key::of(static_cast<std::int64_t>(tag))); }

Key untag_key(const Key& k) { return k.first(); }

TaggedKeySet sub(const std::set<Key>& a, const std::set<Key>& b, std::size_t n) {
    if (n > a.size() + b.size())
        throw Error("sub: requested " + std::to_string(n) + " of " +
                    std::to_string(a.size() + b.size()) + " tagged keys");
    std::set<Key> out;
    for (const Key& k : a) {
        if (out.size() == n) return out;
        out.insert(tag_key(k, 1));
    }
    for (const Key& k : b) {
        if (out.size() == n) return out;
        out.insert(tag_key(k, 2));
    }
    return out;
}

AssocArray dedup(const AssocArray& a) {
    std::set<Key> reps;
    for (const std::set<Key>& cls : row_classes(a)) {
        std::set<Key> chosen = sub(cls, {}, 1);
        reps.insert(untag_key(*chosen.begin()));
    }
    return arrayprod(identity_map(reps, reps, a.semiring()), a);
}

} // namespace araql
