#include "support/oracle.hpp"

#include <algorithm>

namespace araql::oracle {

namespace {

bool value_less(const Value& a, const Value& b) { return canonical_less(a, b); }

bool tuple_less(const Tuple& a, const Tuple& b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
            if (x.first < y.first) return true;
            if (y.first < x.first) return false;
            return value_less(x.second, y.second);
        });
}

} // namespace

bool TupleLess::operator()(const Tuple& a, const Tuple& b) const { return tuple_less(a, b); }

Bag bag_of(const AssocArray& a) {
    Bag out;
    for (const auto& [r, row] : a.entries()) ++out[row];
    return out;
}

Bag bag_of(const Relation& r) { return bag_of(r.data); }

bool bag_equal(const Bag& a, const Bag& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const auto& x, const auto& y) {
                          return !tuple_less(x.first, y.first) && !tuple_less(y.first, x.first) &&
                                 x.second == y.second;
                      }) &&
           a.size() == b.size();
}

bool support_equal(const Bag& a, const Bag& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib)
        if (tuple_less(ia->first, ib->first) || tuple_less(ib->first, ia->first)) return false;
    return ia == a.end() && ib == b.end();
}

Bag bag_union(const Bag& a, const Bag& b) {
    Bag out = a;
    for (const auto& [t, n] : b) out[t] += n;
    return out;
}

Bag bag_intersect(const Bag& a, const Bag& b) {
    Bag out;
    for (const auto& [t, n] : a) {
        auto it = b.find(t);
        if (it != b.end()) out[t] = std::min(n, it->second);
    }
    return out;
}

Bag bag_msdiff(const Bag& a, const Bag& b) {
    Bag out;
    for (const auto& [t, n] : a) {
        auto it = b.find(t);
        std::size_t keep = it == b.end() ? n : (n > it->second ? n - it->second : 0);
        if (keep) out[t] = keep;
    }
    return out;
}

Bag bag_setdiff(const Bag& a, const Bag& b) {
    Bag out;
    for (const auto& [t, n] : a)
        if (!b.count(t)) out[t] = n;
    return out;
}

Bag bag_dedup(const Bag& a) {
    Bag out;
    for (const auto& [t, n] : a) out[t] = 1;
    return out;
}

Bag bag_project(const Bag& a, const std::set<Key>& j) {
    Bag out;
    for (const auto& [t, n] : a) {
        Tuple p;
        for (const auto& [k, v] : t)
            if (j.count(k)) p.emplace(k, v);
        if (!p.empty()) out[p] += n;
    }
    return out;
}

Bag bag_rename(const Bag& a, const std::map<Key, Key>& f) {
    Bag out;
    for (const auto& [t, n] : a) {
        Tuple p;
        for (const auto& [k, v] : t) {
            auto it = f.find(k);
            if (it != f.end()) p.emplace(it->second, v);
        }
        if (!p.empty()) out[p] += n;
    }
    return out;
}

// --- oracle-side expression evaluation --------------------------------------

namespace {

bool o_is_numeric(const Value& v) { return v.is_int() || v.is_real(); }

double o_num(const Value& v) {
    return v.is_int() ? static_cast<double>(v.as_int()) : v.as_real();
}

bool o_equal(const Value& a, const Value& b) {
    if (a.is_null() || b.is_null() || a.is_conflict() || b.is_conflict()) return false;
    if (o_is_numeric(a) && o_is_numeric(b)) return o_num(a) == o_num(b);
    return a == b;
}

Value o_compare(const std::string& op, const Value& a, const Value& b) {
    if (op == "=") return Value::boolean(o_equal(a, b));
    if (op == "<>")
        return Value::boolean(!a.is_null() && !b.is_null() && !a.is_conflict() &&
                              !b.is_conflict() && !o_equal(a, b));
    bool comparable = (o_is_numeric(a) && o_is_numeric(b)) || (a.is_text() && b.is_text());
    if (!comparable) return Value::boolean(false);
    int ord;
    if (a.is_text()) {
        int c = a.as_text().compare(b.as_text());
        ord = c < 0 ? -1 : c > 0 ? 1 : 0;
    } else {
        double l = o_num(a), r = o_num(b);
        ord = l < r ? -1 : l > r ? 1 : 0;
    }
    if (op == "<") return Value::boolean(ord < 0);
    if (op == "<=") return Value::boolean(ord <= 0);
    if (op == ">") return Value::boolean(ord > 0);
    return Value::boolean(ord >= 0);
}

Value o_arith(const std::string& op, const Value& a, const Value& b) {
    if (a.is_null() || b.is_null()) return Value::null();
    if (!o_is_numeric(a) || !o_is_numeric(b)) throw Error("oracle: non-numeric arithmetic");
    if (op == "/") {
        if (o_num(b) == 0) throw Error("oracle: division by zero");
        return Value::real(o_num(a) / o_num(b));
    }
    if (a.is_int() && b.is_int()) {
        std::int64_t l = a.as_int(), r = b.as_int();
        return Value::integer(op == "+" ? l + r : op == "-" ? l - r : l * r);
    }
    double l = o_num(a), r = o_num(b);
    return Value::real(op == "+" ? l + r : op == "-" ? l - r : l * r);
}

using Lookup = std::function<Value(const Expr&)>;

Value o_eval(const Expr& e, const Lookup& col) {
    switch (e.kind) {
        case Expr::Kind::Column: return col(e);
        case Expr::Kind::Literal: return e.literal;
        case Expr::Kind::Func: throw Error("oracle: aggregate outside GROUP BY");
        case Expr::Kind::Not: {
            Value v = o_eval(*e.lhs, col);
            if (!v.is_bool()) throw Error("oracle: NOT over non-boolean");
            return Value::boolean(!v.as_bool());
        }
        case Expr::Kind::Binary: {
            if (e.op == "and" || e.op == "or") {
                Value l = o_eval(*e.lhs, col);
                Value r = o_eval(*e.rhs, col);
                if (!l.is_bool() || !r.is_bool()) throw Error("oracle: boolean op over non-boolean");
                return Value::boolean(e.op == "and" ? (l.as_bool() && r.as_bool())
                                                    : (l.as_bool() || r.as_bool()));
            }
            Value l = o_eval(*e.lhs, col);
            Value r = o_eval(*e.rhs, col);
            if (e.op == "+" || e.op == "-" || e.op == "*" || e.op == "/")
                return o_arith(e.op, l, r);
            return o_compare(e.op, l, r);
        }
    }
    return Value::null();
}

Value o_lookup_tuple(const Tuple& t, const Key& k) {
    auto it = t.find(k);
    return it == t.end() ? Value::null() : it->second;
}

// --- oracle aggregates -------------------------------------------------------

Value o_aggregate(const std::string& name, const std::vector<Value>& vs) {
    if (name == "count") return Value::integer(static_cast<std::int64_t>(vs.size()));
    if (name == "first") return *std::min_element(vs.begin(), vs.end(), canonical_less);
    if (name == "sum") {
        bool real = false;
        for (const Value& v : vs) {
            if (!o_is_numeric(v)) throw Error("oracle: sum over non-numeric");
            real = real || v.is_real();
        }
        if (real) {
            double acc = 0;
            for (const Value& v : vs) acc += o_num(v);
            return Value::real(acc);
        }
        std::int64_t acc = 0;
        for (const Value& v : vs) acc += v.as_int();
        return Value::integer(acc);
    }
    // min / max
    bool numeric = o_is_numeric(vs.front());
    for (const Value& v : vs) {
        if (o_is_numeric(v) != numeric) throw Error("oracle: min/max over mixed kinds");
        if (!o_is_numeric(v) && !v.is_text()) throw Error("oracle: min/max over unsupported kind");
    }
    std::vector<Value> sorted = vs;
    std::sort(sorted.begin(), sorted.end(), [&](const Value& x, const Value& y) {
        if (numeric) {
            if (o_num(x) != o_num(y)) return o_num(x) < o_num(y);
        } else if (x.as_text() != y.as_text()) {
            return x.as_text() < y.as_text();
        }
        return canonical_less(x, y);
    });
    if (name == "min") return sorted.front();
    // max: the greatest by value; canonical tie-break still picks the least
    // representation among the tied greatest values
    const Value& top = sorted.back();
    for (const Value& v : sorted) {
        bool tied = numeric ? o_num(v) == o_num(top) : v.as_text() == top.as_text();
        if (tied) return v;
    }
    return top;
}

// --- query evaluation --------------------------------------------------------

struct ORel {
    Bag bag;
    std::set<Key> schema;
};

std::vector<ExprPtr> conjuncts(const ExprPtr& e) {
    if (e->kind == Expr::Kind::Binary && e->op == "and") {
        std::vector<ExprPtr> l = conjuncts(e->lhs);
        std::vector<ExprPtr> r = conjuncts(e->rhs);
        l.insert(l.end(), r.begin(), r.end());
        return l;
    }
    return {e};
}

bool merge_equijoin_shape(const ExprPtr& where, const std::string& s1, const std::string& s2,
                          const std::set<Key>& sch1, const std::set<Key>& sch2) {
    std::set<Key> shared;
    for (const Key& k : sch1)
        if (sch2.count(k)) shared.insert(k);
    if (shared.empty()) return false;
    std::set<Key> equated;
    for (const ExprPtr& c : conjuncts(where)) {
        if (c->kind != Expr::Kind::Binary || c->op != "=") return false;
        const Expr& l = *c->lhs;
        const Expr& r = *c->rhs;
        if (l.kind != Expr::Kind::Column || r.kind != Expr::Kind::Column) return false;
        if (l.qualifier.empty() || r.qualifier.empty() || l.name != r.name) return false;
        if (std::set<std::string>{l.qualifier, r.qualifier} != std::set<std::string>{s1, s2})
            return false;
        if (!shared.count(Key::of(l.name))) return false;
        equated.insert(Key::of(l.name));
    }
    return equated == shared;
}

ORel eval_select(const SelectStmt& s, const Catalog& catalog) {
    auto fetch = [&](const std::string& name) -> ORel {
        auto it = catalog.find(name);
        if (it == catalog.end()) throw Error("oracle: unknown relation " + name);
        return ORel{bag_of(it->second), it->second.schema};
    };

    ORel base;
    bool two = s.sources.size() == 2;
    ORel r1 = fetch(s.sources[0]);
    // resolves bare/qualified references against the post-FROM shape
    std::function<Key(const Expr&)> resolve;

    if (!two) {
        base = r1;
        resolve = [&, sch = r1.schema](const Expr& c) {
            Key k = Key::of(c.name);
            if (!sch.count(k)) throw Error("oracle: unknown column " + c.name);
            return k;
        };
        if (s.where) {
            Bag kept;
            for (const auto& [t, n] : base.bag) {
                Value v = o_eval(*s.where, [&](const Expr& c) {
                    return o_lookup_tuple(t, resolve(c));
                });
                if (v.is_bool() && v.as_bool()) kept[t] = n;
            }
            base.bag = std::move(kept);
        }
    } else {
        ORel r2 = fetch(s.sources[1]);
        bool merged = s.where && merge_equijoin_shape(s.where, s.sources[0], s.sources[1],
                                                      r1.schema, r2.schema);
        if (merged) {
            for (const auto& [t1, n1] : r1.bag)
                for (const auto& [t2, n2] : r2.bag) {
                    Tuple m = t1;
                    bool conflict = false;
                    for (const auto& [k, v] : t2) {
                        auto it = m.find(k);
                        if (it == m.end())
                            m.emplace(k, v);
                        else if (!(it->second == v))
                            conflict = true;
                    }
                    if (!conflict && !m.empty()) base.bag[m] += n1 * n2;
                }
            base.schema = r1.schema;
            base.schema.insert(r2.schema.begin(), r2.schema.end());
            resolve = [&, sch = base.schema](const Expr& c) {
                Key k = Key::of(c.name);
                if (!sch.count(k)) throw Error("oracle: unknown column " + c.name);
                return k;
            };
        } else {
            const Key one = Key::of(std::int64_t{1});
            const Key twok = Key::of(std::int64_t{2});
            auto side_of = [&, s1 = s.sources[0], s2 = s.sources[1], sch1 = r1.schema,
                            sch2 = r2.schema](const Expr& c) -> int {
                Key bare = Key::of(c.name);
                if (!c.qualifier.empty()) {
                    if (c.qualifier == s1 && sch1.count(bare)) return 1;
                    if (c.qualifier == s2 && sch2.count(bare)) return 2;
                    throw Error("oracle: unknown column " + c.qualifier + "." + c.name);
                }
                bool in1 = sch1.count(bare) > 0, in2 = sch2.count(bare) > 0;
                if (in1 == in2) throw Error("oracle: ambiguous or unknown column " + c.name);
                return in1 ? 1 : 2;
            };
            for (const auto& [t1, n1] : r1.bag)
                for (const auto& [t2, n2] : r2.bag) {
                    bool keep = true;
                    if (s.where) {
                        Value v = o_eval(*s.where, [&](const Expr& c) {
                            return o_lookup_tuple(side_of(c) == 1 ? t1 : t2, Key::of(c.name));
                        });
                        keep = v.is_bool() && v.as_bool();
                    }
                    if (!keep) continue;
                    Tuple m;
                    for (const auto& [k, v] : t1) m.emplace(Key::pair(k, one), v);
                    for (const auto& [k, v] : t2) m.emplace(Key::pair(k, twok), v);
                    if (!m.empty()) base.bag[m] += n1 * n2;
                }
            for (const Key& k : r1.schema) base.schema.insert(Key::pair(k, one));
            for (const Key& k : r2.schema) base.schema.insert(Key::pair(k, twok));
            resolve = [&, side_of](const Expr& c) {
                int side = side_of(c);
                return Key::pair(Key::of(c.name), Key::of(std::int64_t{side}));
            };
        }
        if (s.where && !merged) {
            // predicate already applied pairwise above
        } else if (s.where && merged) {
            // the equality conjunction is fully expressed by the merge
        }
    }

    if (!s.group_by.empty()) {
        const SelectItem& item = s.items.at(0);
        Key gk = resolve(*Expr::column("", s.group_by));
        Key vk = resolve(*item.expr->args.at(0));
        Key out = item.as.empty() ? Key::of(std::int64_t{1}) : Key::of(item.as);
        std::map<Value, std::vector<Value>, CanonicalValueLess> groups;
        for (const auto& [t, n] : base.bag) {
            Value g = o_lookup_tuple(t, gk);
            if (g.is_null()) continue;
            Value v = o_lookup_tuple(t, vk);
            auto& vec = groups[g]; // the group exists even if no values follow
            if (!v.is_null())
                for (std::size_t i = 0; i < n; ++i) vec.push_back(v);
        }
        ORel res;
        res.schema = {out};
        for (const auto& [g, vs] : groups) {
            if (vs.empty()) continue; // all-zero groups aggregate to zero
            Value v = o_aggregate(item.expr->name, vs);
            if (!v.is_null()) ++res.bag[Tuple{{out, v}}];
        }
        return res;
    }

    if (s.star) return base;

    ORel res;
    for (const auto& [t, n] : base.bag) {
        Tuple p;
        for (const SelectItem& item : s.items) {
            Key out = !item.as.empty()          ? Key::of(item.as)
                      : item.expr->kind == Expr::Kind::Column ? resolve(*item.expr)
                                                              : Key::of(std::string("?"));
            Value v = o_eval(*item.expr, [&](const Expr& c) {
                return o_lookup_tuple(t, resolve(c));
            });
            if (!v.is_null()) p[out] = v;
        }
        if (!p.empty()) res.bag[p] += n;
    }
    for (const SelectItem& item : s.items)
        res.schema.insert(!item.as.empty() ? Key::of(item.as) : Key::of(item.expr->name));
    return res;
}

ORel eval_node(const AstPtr& q, const Catalog& catalog) {
    if (q->kind == QueryAst::Kind::Select) return eval_select(q->select, catalog);
    ORel l = eval_node(q->left, catalog);
    ORel r = eval_node(q->right, catalog);
    ORel out;
    out.schema = l.schema;
    if (q->kind != QueryAst::Kind::Except)
        out.schema.insert(r.schema.begin(), r.schema.end());
    switch (q->kind) {
        case QueryAst::Kind::UnionAll: out.bag = bag_union(l.bag, r.bag); break;
        case QueryAst::Kind::Intersect: out.bag = bag_intersect(l.bag, r.bag); break;
        case QueryAst::Kind::Except: out.bag = bag_msdiff(l.bag, r.bag); break;
        default: break;
    }
    return out;
}

} // namespace

Bag eval_query(const AstPtr& q, const Catalog& catalog) { return eval_node(q, catalog).bag; }

} // namespace araql::oracle
