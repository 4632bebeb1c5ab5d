#include "araql/relalg.hpp"

#include <algorithm>

namespace araql {

namespace {

SemiringPtr rel() { return relational_semiring(); }
SemiringPtr boolean() { return builtin_semiring("boolean"); }

OpPair rel_ops() { return OpPair{rel()->plus, rel()->times}; }

AssocArray::Row restrict_cols(const AssocArray::Row& row, const std::set<Key>& j) {
    AssocArray::Row out;
    for (const auto& [c, v] : row)
        if (j.count(c)) out.emplace(c, v);
    return out;
}

bool row_has_conflict(const AssocArray::Row& row) {
    for (const auto& [c, v] : row)
        if (v.is_conflict()) return true;
    return false;
}

/// A(:,j) as the literal composition A 𝕀_{j}.
AssocArray column_restrict(const AssocArray& a, const Key& j) {
    return arrayprod(a, identity_map({j}, {j}, {{j, j}}, a.semiring()), rel_ops(), a.semiring());
}

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

std::set<Key> matching_rows(const AssocArray& a, const Key& rep, const AssocArray& b) {
    std::set<Key> out;
    for (const auto& [j, row] : b.entries())
        if (row_eq(a, rep, b, j)) out.insert(j);
    return out;
}

/// 𝕀_{K×{t},K}: retags every row key of `keys` with t.
AssocArray row_tagger(const std::set<Key>& keys, int tag) {
    std::set<Key> tagged;
    std::map<Key, Key> f;
    for (const Key& k : keys) {
        Key tk = tag_key(k, tag);
        tagged.insert(tk);
        f.emplace(tk, k);
    }
    return identity_map(tagged, keys, f, rel());
}

AssocArray keep_rows(const std::set<Key>& s, const AssocArray& a) {
    return arrayprod(identity_map(s, s, a.semiring()), a, rel_ops(), a.semiring());
}

} // namespace

Relation::Relation() : data(rel()) {}

Relation::Relation(AssocArray d, std::set<Key> s) : data(std::move(d)), schema(std::move(s)) {
    if (data.semiring()->name != "relational")
        throw Error("relations live in the relational domain, got " + data.semiring()->name);
    for (const auto& [r, row] : data.entries())
        for (const auto& [c, v] : row)
            if (!schema.count(c))
                throw Error("row entry at column '" + c.to_string() + "' is outside the schema");
}

RowPredicate const_predicate(bool outcome) {
    return RowPredicate{{}, [outcome](const AssocArray::Row&) { return Value::boolean(outcome); }};
}

JoinPredicate const_join_predicate(bool outcome) {
    return JoinPredicate{{}, {}, [outcome](const AssocArray::Row&, const AssocArray::Row&) {
                             return Value::boolean(outcome);
                         }};
}

Relation project(const Relation& a, const std::set<Key>& j) {
    AssocArray out = arrayprod(a.data, identity_map(j, j, rel()), rel_ops(), rel());
    std::set<Key> schema;
    std::set_intersection(a.schema.begin(), a.schema.end(), j.begin(), j.end(),
                          std::inserter(schema, schema.begin()));
    return Relation(std::move(out), std::move(schema));
}

Relation rename(const Relation& a, const std::map<Key, Key>& f) {
    std::set<Key> j1, j2;
    for (const auto& [k, fk] : f) {
        j1.insert(k);
        if (!j2.insert(fk).second)
            throw Error("rename map is not a bijection at '" + fk.to_string() + "'");
    }
    AssocArray out = arrayprod(a.data, identity_map(j1, j2, f, rel()), rel_ops(), rel());
    std::set<Key> schema;
    for (const Key& c : a.schema) {
        auto it = f.find(c);
        if (it != f.end()) schema.insert(it->second);
    }
    return Relation(std::move(out), std::move(schema));
}

Relation union_all(const Relation& a, const Relation& b) {
    AssocArray la = arrayprod(row_tagger(row_support(a.data), 1), a.data);
    AssocArray lb = arrayprod(row_tagger(row_support(b.data), 2), b.data);
    std::set<Key> schema = a.schema;
    schema.insert(b.schema.begin(), b.schema.end());
    return Relation(eplus(la, lb), std::move(schema));
}

Relation intersect(const Relation& a, const Relation& b) {
    Relation u = union_all(a, b);
    std::set<Key> s;
    for (const std::set<Key>& cls : row_classes(a.data)) {
        std::set<Key> bcls = matching_rows(a.data, *cls.begin(), b.data);
        if (bcls.empty()) continue;
        std::set<Key> chosen = sub(cls, bcls, std::min(cls.size(), bcls.size()));
        s.insert(chosen.begin(), chosen.end());
    }
    return Relation(keep_rows(s, u.data), u.schema);
}

namespace {

// Shared difference machinery: p = how many copies of each matched A-class
// get removed.
Relation difference(const Relation& a, const Relation& b,
                    const std::function<std::size_t(std::size_t, std::size_t)>& removal_count) {
    std::set<Key> removed;
    for (const std::set<Key>& cls : row_classes(a.data)) {
        std::set<Key> bcls = matching_rows(a.data, *cls.begin(), b.data);
        if (bcls.empty()) continue;
        std::size_t p = removal_count(cls.size(), bcls.size());
        for (const Key& t : sub(cls, {}, p)) removed.insert(untag_key(t));
    }
    std::set<Key> s;
    for (const auto& [i, row] : a.data.entries())
        if (!removed.count(i)) s.insert(i);
    return Relation(keep_rows(s, a.data), a.schema);
}

} // namespace

Relation msdiff(const Relation& a, const Relation& b) {
    // p = m - max(0, m - n), i.e. min(m, n) copies get removed
    return difference(a, b, [](std::size_t m, std::size_t n) { return std::min(m, n); });
}

Relation setdiff(const Relation& a, const Relation& b) {
    return difference(a, b, [](std::size_t m, std::size_t) { return m; });
}

Relation select(const Relation& a, const RowPredicate& phi) {
    std::vector<Triple> hits;
    for (const auto& [i, row] : a.data.entries()) {
        if (row_has_conflict(row)) continue;
        Value v = phi.eval(restrict_cols(row, phi.cols));
        if (!v.is_bool())
            throw Error("predicate returned non-boolean value '" + v.to_string() + "'");
        if (v.as_bool()) hits.emplace_back(i, Key::of(std::int64_t{1}), Value::boolean(true));
    }
    AssocArray phiv = from_entries(boolean(), hits);
    AssocArray outer = arrayprod(phiv, transpose(phiv));
    AssocArray diag = etimes(outer, identity_square(row_support(a.data), boolean()));
    AssocArray out = arrayprod(diag, a.data, rel_ops(), rel());
    return Relation(std::move(out), a.schema);
}

Relation theta_join(const Relation& a, const Relation& b, const JoinPredicate& theta,
                    JoinMode mode) {
    const std::set<Key> ia = row_support(a.data);
    const std::set<Key> ib = row_support(b.data);
    const Key one = Key::of(std::int64_t{1});
    const Key two = Key::of(std::int64_t{2});

    // A ⊛ 𝟙_{I_B,{1}} tags A's columns with 1 and crosses the row keys
    AssocArray ta = kron(a.data, ones(ib, {one}, rel()));
    // 𝟙_{I_A,{2}} ⊛ B, then ρ: (2,c) -> (c,2)
    AssocArray tb = kron(ones(ia, {two}, rel()), b.data);
    std::map<Key, Key> flip;
    for (const Key& c : tb.stored_cols()) flip.emplace(c, Key::pair(c.second(), two));
    AssocArray tbr = arrayprod(tb, identity_map(tb.stored_cols(), [&] {
                                   std::set<Key> img;
                                   for (auto& [k, v] : flip) img.insert(v);
                                   return img;
                               }(), flip, rel()),
                               rel_ops(), rel());

    std::set<Key> schema;
    AssocArray merged(rel());
    RowPredicate phi;
    if (mode == JoinMode::Tagged) {
        merged = eplus(ta, tbr);
        for (const Key& c : a.schema) schema.insert(Key::pair(c, one));
        for (const Key& c : b.schema) schema.insert(Key::pair(c, two));
        for (const Key& c : theta.j1) phi.cols.insert(Key::pair(c, one));
        for (const Key& c : theta.j2) phi.cols.insert(Key::pair(c, two));
        phi.eval = [&theta, one, two](const AssocArray::Row& row) {
            AssocArray::Row r1, r2;
            for (const auto& [c, v] : row) {
                if (c.second() == one && theta.j1.count(c.first())) r1.emplace(c.first(), v);
                if (c.second() == two && theta.j2.count(c.first())) r2.emplace(c.first(), v);
            }
            return theta.eval(r1, r2);
        };
    } else {
        // strip the tags so shared columns land on each other, then merge
        auto untag_all = [](const AssocArray& t) {
            std::map<Key, Key> f;
            std::set<Key> img;
            for (const Key& c : t.stored_cols()) {
                f.emplace(c, c.first());
                img.insert(c.first());
            }
            return arrayprod(t, identity_map(t.stored_cols(), img, f, rel()), rel_ops(), rel());
        };
        merged = eplus_with(untag_all(ta), untag_all(tbr), merge_eq);
        schema = a.schema;
        schema.insert(b.schema.begin(), b.schema.end());
        phi.cols = theta.j1;
        phi.cols.insert(theta.j2.begin(), theta.j2.end());
        phi.eval = [&theta](const AssocArray::Row& row) {
            return theta.eval(restrict_cols(row, theta.j1), restrict_cols(row, theta.j2));
        };
    }
    return select(Relation(std::move(merged), std::move(schema)), phi);
}

Relation extended_projection(const Relation& a, const std::set<Key>& j,
                             const std::function<Value(const AssocArray::Row&)>& phi,
                             const Key& out) {
    const Key one = Key::of(std::int64_t{1});
    std::vector<Triple> entries;
    for (const auto& [i, row] : a.data.entries()) {
        Value v = phi(restrict_cols(row, j));
        if (!v.is_null()) entries.emplace_back(i, one, v);
    }
    AssocArray vec = from_entries(rel(), entries);
    AssocArray renamed =
        arrayprod(vec, identity_map({one}, {out}, {{one, out}}, rel()), rel_ops(), rel());
    return Relation(std::move(renamed), {out});
}

Relation aggregate(const Relation& a, const Key& group_col, const Key& value_col,
                   const Aggregator& f, bool dedup_groups, const std::optional<Key>& out_col) {
    const Key one = Key::of(std::int64_t{1});
    // Q = 𝕀_{I_A} A(:,j); P(i,i') = 1 iff the group values match and are non-zero
    AssocArray q = arrayprod(identity_square(row_support(a.data), rel()),
                             column_restrict(a.data, group_col), rel_ops(), rel());
    AssocArray p = arrayprod(q, transpose(q), OpPair{rel()->plus, delta}, boolean());

    // column j' relabeled to the default output column 1
    AssocArray h = arrayprod(column_restrict(a.data, value_col),
                             identity_map({value_col}, {one}, {{value_col, one}}, rel()),
                             rel_ops(), rel());

    // f folds the multiset of non-zero group contributions
    Reducer red = [&f](const std::vector<Value>& contribs) -> Value {
        std::vector<Value> nz;
        for (const Value& v : contribs)
            if (!v.is_null()) nz.push_back(v);
        if (nz.empty()) return Value::null();
        return f.fold(nz);
    };
    AssocArray g = arrayprod_reduce(p, h, red, rel()->times, rel());

    if (dedup_groups) {
        // characteristic array of i -> A(i,j); its transpose keys rows by
        // the group value itself
        std::vector<Triple> t;
        for (const auto& [i, row] : q.entries())
            t.emplace_back(i, key_of_value(row.begin()->second), Value::boolean(true));
        AssocArray tagger = from_entries(boolean(), t);
        g = arrayprod(transpose(tagger), g, rel_ops(), rel());
    }
    Key out = one;
    if (out_col) {
        g = arrayprod(g, identity_map({one}, {*out_col}, {{one, *out_col}}, rel()), rel_ops(),
                      rel());
        out = *out_col;
    }
    return Relation(std::move(g), {out});
}

Key key_of_value(const Value& v) {
    if (v.is_int()) return Key::of(v.as_int());
    if (v.is_text()) return Key::of(v.as_text());
    return Key::of(v.to_string());
}

bool has_conflict(const AssocArray& a) {
    for (const auto& [r, row] : a.entries())
        if (row_has_conflict(row)) return true;
    return false;
}

namespace {

std::vector<std::vector<Value>> symmetry_samples() {
    return {
        {Value::integer(1), Value::integer(2), Value::integer(3)},
        {Value::integer(5), Value::integer(5), Value::integer(2)},
        {Value::integer(7), Value::integer(-1), Value::integer(4), Value::integer(4)},
    };
}

} // namespace

Aggregator make_aggregator(std::string name,
                           std::function<Value(const std::vector<Value>&)> fold) {
    for (std::vector<Value> sample : symmetry_samples()) {
        Value expected;
        try {
            expected = fold(sample);
        } catch (const TypeError&) {
            continue; // fold not defined on ints; nothing to check with this sample
        }
        std::sort(sample.begin(), sample.end(), canonical_less);
        do {
            if (fold(sample) != expected)
                throw Error("aggregate '" + name + "' is not symmetric");
        } while (std::next_permutation(sample.begin(), sample.end(), canonical_less));
    }
    return Aggregator{std::move(name), std::move(fold)};
}

namespace {

Value fold_sum(const std::vector<Value>& vs) {
    bool real = false;
    for (const Value& v : vs) {
        if (!v.is_numeric()) throw TypeError("sum over non-numeric value '" + v.to_string() + "'");
        real = real || v.is_real();
    }
    if (real) {
        double acc = 0;
        for (const Value& v : vs) acc += v.numeric();
        return Value::real(acc);
    }
    std::int64_t acc = 0;
    for (const Value& v : vs) acc += v.as_int();
    return Value::integer(acc);
}

Value fold_extreme(const std::vector<Value>& vs, bool want_max, const char* name) {
    const bool numeric = vs.front().is_numeric();
    for (const Value& v : vs) {
        if (!v.is_numeric() && !v.is_text())
            throw TypeError(std::string(name) + " over unsupported value '" + v.to_string() + "'");
        if (v.is_numeric() != numeric)
            throw TypeError(std::string(name) + " over mixed numeric/text values");
    }
    const Value* best = &vs.front();
    for (const Value& v : vs) {
        int cmp;
        if (numeric) {
            double dv = v.numeric(), db = best->numeric();
            cmp = dv < db ? -1 : dv > db ? 1 : 0;
        } else {
            cmp = v.as_text().compare(best->as_text());
        }
        if (want_max ? cmp > 0 : cmp < 0)
            best = &v;
        else if (cmp == 0 && canonical_less(v, *best))
            best = &v; // numeric ties (Int vs Real) break canonically, not by position
    }
    return *best;
}

} // namespace

const Aggregator& builtin_aggregator(const std::string& name) {
    static const std::map<std::string, Aggregator> table = [] {
        std::map<std::string, Aggregator> t;
        t.emplace("sum", make_aggregator("sum", fold_sum));
        t.emplace("min", make_aggregator("min", [](const std::vector<Value>& vs) {
                      return fold_extreme(vs, false, "min");
                  }));
        t.emplace("max", make_aggregator("max", [](const std::vector<Value>& vs) {
                      return fold_extreme(vs, true, "max");
                  }));
        t.emplace("count", make_aggregator("count", [](const std::vector<Value>& vs) {
                      return Value::integer(static_cast<std::int64_t>(vs.size()));
                  }));
        t.emplace("first", make_aggregator("first", [](const std::vector<Value>& vs) {
                      return *std::min_element(vs.begin(), vs.end(), canonical_less);
                  }));
        return t;
    }();
    auto it = table.find(name);
    if (it == table.end()) throw Error("unknown aggregate function: " + name);
    return it->second;
}

} // namespace araql
