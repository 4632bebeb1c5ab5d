#include <doctest.h>

#include "araql/array.hpp"
#include "araql/checks.hpp"

using namespace araql;

namespace {

SemiringPtr nat() { return builtin_semiring("natural"); }
SemiringPtr boolsr() { return builtin_semiring("boolean"); }

Key k(const char* s) { return Key::of(s); }
Key k(int i) { return Key::of(static_cast<std::int64_t>(i)); }
Value iv(std::int64_t i) { return Value::integer(i); }

// independent brute-force evaluation of the product-sum formula
AssocArray naive_product(const AssocArray& a, const AssocArray& b) {
    const auto& sr = a.semiring();
    std::vector<Triple> out;
    for (const Key& r : a.stored_rows())
        for (const Key& c : b.stored_cols()) {
            Value acc = sr->zero;
            std::set<Key> middles = a.stored_cols();
            auto brows = b.stored_rows();
            middles.insert(brows.begin(), brows.end());
            for (const Key& m : middles) acc = sr->plus(acc, sr->times(a.at(r, m), b.at(m, c)));
            out.emplace_back(r, c, acc);
        }
    return from_entries(sr, out);
}

bool sparsity_ok(const AssocArray& a) {
    for (const auto& [r, row] : a.entries()) {
        if (row.empty()) return false;
        for (const auto& [c, v] : row)
            if (v == a.semiring()->zero) return false;
    }
    return true;
}

} // namespace

TEST_CASE("key total order: ints before texts before pairs") {
    CHECK(k(5) < k("a"));
    CHECK(k("a") < Key::pair(k(1), k(1)));
    CHECK(k(-2) < k(7));
    CHECK(k("ab") < k("b"));
    CHECK(Key::pair(k(1), k(9)) < Key::pair(k(2), k(0)));
    CHECK(Key::pair(k(1), k(0)) < Key::pair(k(1), k(9)));
    CHECK(Key::pair(k("r"), k(1)).to_string() == "(r,1)");
}

TEST_CASE("from_entries") {
    CHECK(from_entries(boolsr(), {}).is_zero());
    AssocArray a = from_entries(nat(), {{k("r1"), k("c1"), iv(2)}, {k("r1"), k("c1"), iv(3)}});
    CHECK(a.at(k("r1"), k("c1")) == iv(5)); // duplicates combine with semiring plus
    CHECK(from_entries(nat(), {{k("r1"), k("c1"), iv(0)}}).is_zero());
    CHECK_THROWS_AS(from_entries(nat(), {{k("r"), k("c"), Value::text("x")}}), TypeError);
}

TEST_CASE("lookup of absent pairs is the semiring zero") {
    AssocArray a = from_entries(nat(), {{k(1), k(1), iv(7)}});
    CHECK(a.at(k(1), k(2)) == iv(0));
    CHECK(a.at(k(9), k(9)) == iv(0));
    CHECK(a.contains(k(1), k(1)));
    CHECK_FALSE(a.contains(k(1), k(2)));
}

TEST_CASE("eplus") {
    AssocArray a = from_entries(nat(), {{k("r"), k("c"), iv(1)}});
    AssocArray b = from_entries(nat(), {{k("r"), k("c"), iv(2)}, {k("r"), k("d"), iv(4)}});
    AssocArray c = eplus(a, b);
    CHECK(c.at(k("r"), k("c")) == iv(3));
    CHECK(c.at(k("r"), k("d")) == iv(4));
    CHECK(c.nnz() == 2);
    CHECK(array_equal(eplus(a, AssocArray(nat())), a));
    CHECK(array_equal(eplus(a, b), eplus(b, a)));
    CHECK_THROWS_AS(eplus(a, from_entries(boolsr(), {})), Error);
}

TEST_CASE("etimes") {
    AssocArray a = from_entries(nat(), {{k("r"), k("c"), iv(2)}});
    AssocArray b = from_entries(nat(), {{k("r"), k("c"), iv(3)}, {k("r"), k("d"), iv(9)}});
    AssocArray c = etimes(a, b);
    CHECK(c.nnz() == 1);
    CHECK(c.at(k("r"), k("c")) == iv(6));
    CHECK(array_equal(etimes(a, ones(a.stored_rows(), a.stored_cols(), nat())), a));
    CHECK(etimes(a, AssocArray(nat())).is_zero());
}

TEST_CASE("ones") {
    CHECK(ones({}, {k("c")}, boolsr()).is_zero());
    AssocArray s = ones({k("r")}, {k("c")}, boolsr());
    CHECK(s.nnz() == 1);
    CHECK(s.at(k("r"), k("c")) == Value::boolean(true));
    AssocArray m = ones({k("a"), k("b")}, {k("x")}, nat());
    CHECK(m.nnz() == 2);
    CHECK(m.at(k("a"), k("x")) == iv(1));
    CHECK(m.at(k("b"), k("x")) == iv(1));
    CHECK(m.declared_rows().has_value());
}

TEST_CASE("arrayprod 2x2 against the brute-force formula") {
    // A=[[1,2],[0,3]], B=[[4,0],[5,6]] over keys {1,2}
    AssocArray a = from_entries(nat(), {{k(1), k(1), iv(1)}, {k(1), k(2), iv(2)}, {k(2), k(2), iv(3)}});
    AssocArray b = from_entries(nat(), {{k(1), k(1), iv(4)}, {k(2), k(1), iv(5)}, {k(2), k(2), iv(6)}});
    AssocArray c = arrayprod(a, b);
    CHECK(c.at(k(1), k(1)) == iv(14));
    CHECK(c.at(k(1), k(2)) == iv(12));
    CHECK(c.at(k(2), k(1)) == iv(15));
    CHECK(c.at(k(2), k(2)) == iv(18));
    CHECK(array_equal(c, naive_product(a, b)));

    std::set<Key> keys = {k(1), k(2)};
    CHECK(array_equal(arrayprod(identity_square(keys, nat()), a), a));
    CHECK(array_equal(arrayprod(a, identity_square(keys, nat())), a));
    CHECK(arrayprod(a, AssocArray(nat())).is_zero());
}

TEST_CASE("arrayprod needs matching semirings unless ops are explicit") {
    AssocArray a = from_entries(nat(), {{k(1), k(1), iv(1)}});
    AssocArray b = from_entries(boolsr(), {{k(1), k(1), Value::boolean(true)}});
    CHECK_THROWS_AS(arrayprod(a, b), Error);
}

TEST_CASE("generalized product folds middles in ascending key order") {
    // order-sensitive add-like op exposes the documented fold order
    AssocArray a = from_entries(
        nat(), {{k("r"), k(1), iv(1)}, {k("r"), k(2), iv(2)}, {k("r"), k(3), iv(3)}});
    AssocArray b = from_entries(nat(), {{k(1), k("c"), iv(1)}, {k(2), k("c"), iv(1)}, {k(3), k("c"), iv(1)}});
    OpPair ops{[](const Value& x, const Value& y) { return Value::integer(x.as_int() * 10 + y.as_int()); },
               [](const Value& x, const Value&) { return x; }};
    AssocArray c = arrayprod(a, b, ops);
    CHECK(c.at(k("r"), k("c")) == iv(123));
}

TEST_CASE("identity_map") {
    std::set<Key> keys = {k("a"), k("b")};
    AssocArray i = identity_map(keys, keys, nat());
    CHECK(i.nnz() == 2);
    CHECK(i.at(k("a"), k("a")) == iv(1));

    CHECK(identity_map({k("a"), k("b")}, {k("x")}, std::map<Key, Key>{}, nat()).is_zero());

    AssocArray d = identity_map({k("a"), k("b")}, {k("b"), k("c")}, nat());
    CHECK(d.nnz() == 1);
    CHECK(d.at(k("b"), k("b")) == iv(1));

    std::map<Key, Key> squash = {{k("a"), k("x")}, {k("b"), k("x")}};
    CHECK_THROWS_AS(identity_map({k("a"), k("b")}, {k("x")}, squash, nat()), Error);
}

TEST_CASE("transpose") {
    CHECK(transpose(AssocArray(nat())).is_zero());
    AssocArray a = from_entries(nat(), {{k("r"), k("c"), iv(5)}});
    AssocArray t = transpose(a);
    CHECK(t.at(k("c"), k("r")) == iv(5));
    CHECK(t.nnz() == 1);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        AssocArray r = random_array(nat(), rng);
        CHECK(array_equal(transpose(transpose(r)), r));
    }
}

TEST_CASE("kron") {
    AssocArray a = from_entries(boolsr(), {{k("a"), k("x"), Value::boolean(true)}});
    AssocArray b = from_entries(boolsr(), {{k("b"), k("y"), Value::boolean(true)}});
    AssocArray c = kron(a, b);
    CHECK(c.nnz() == 1);
    CHECK(c.at(Key::pair(k("a"), k("b")), Key::pair(k("x"), k("y"))) == Value::boolean(true));

    CHECK(kron(AssocArray(boolsr()), b).is_zero());

    AssocArray n = from_entries(nat(), {{k(1), k(1), iv(2)}, {k(2), k(1), iv(3)}});
    AssocArray tag = ones({k("t")}, {k("u")}, nat());
    AssocArray tagged = kron(n, tag);
    CHECK(tagged.nnz() == n.nnz());
    CHECK(tagged.at(Key::pair(k(1), k("t")), Key::pair(k(1), k("u"))) == iv(2));
}

TEST_CASE("row support") {
    CHECK(row_support(AssocArray(nat())).empty());
    AssocArray a = from_entries(nat(), {{k("r"), k("c"), iv(1)}, {k("s"), k("d"), iv(2)}});
    CHECK(row_support(a) == std::set<Key>{k("r"), k("s")});
    std::set<Key> keys = {k(1), k(2), k(3)};
    CHECK(row_support(identity_square(keys, nat())) == keys);
}

TEST_CASE("row equality ignores columns where both rows are zero") {
    AssocArray a = from_entries(nat(), {{k("i"), k("c"), iv(1)}});
    AssocArray b = from_entries(nat(), {{k("j"), k("c"), iv(1)}, {k("j2"), k("c"), iv(1)}, {k("j2"), k("d"), iv(2)}});
    CHECK(row_eq(a, k("i"), a, k("i")));
    CHECK(row_eq(a, k("i"), b, k("j")));
    CHECK_FALSE(row_eq(a, k("i"), b, k("j2")));
    CHECK(row_eq(a, k("zz"), b, k("absent"))); // two zero rows are equal
}

TEST_CASE("row_class") {
    AssocArray distinct = from_entries(nat(), {{k(1), k("c"), iv(1)}, {k(2), k("c"), iv(2)}});
    CHECK(row_class(distinct, k(1)) == std::set<Key>{k(1)});

    AssocArray dup = from_entries(
        nat(), {{k(1), k("c"), iv(1)}, {k(2), k("c"), iv(1)}, {k(3), k("c"), iv(9)}});
    CHECK(row_class(dup, k(1)) == std::set<Key>{k(1), k(2)});
    CHECK_THROWS_AS(row_class(dup, k(77)), Error);

    // 5 rows, two equal pairs -> class sizes {2,2,1}
    AssocArray five = from_entries(nat(), {{k(1), k("c"), iv(1)},
                                           {k(2), k("c"), iv(1)},
                                           {k(3), k("c"), iv(2)},
                                           {k(4), k("c"), iv(2)},
                                           {k(5), k("c"), iv(3)}});
    std::multiset<std::size_t> sizes;
    std::set<Key> seen;
    for (const Key& i : row_support(five)) {
        if (seen.count(i)) continue;
        auto cls = row_class(five, i);
        seen.insert(cls.begin(), cls.end());
        sizes.insert(cls.size());
    }
    CHECK(sizes == std::multiset<std::size_t>{1, 2, 2});
}

TEST_CASE("algebra laws on random arrays") {
    std::mt19937_64 rng(17);
    for (const char* srname : {"natural", "boolean", "max_plus"}) {
        SemiringPtr sr = builtin_semiring(srname);
        for (int i = 0; i < 60; ++i) {
            AssocArray a = random_array(sr, rng);
            AssocArray b = random_array(sr, rng);
            AssocArray c = random_array(sr, rng);
            CHECK(array_equal(eplus(eplus(a, b), c), eplus(a, eplus(b, c))));
            CHECK(array_equal(eplus(a, b), eplus(b, a)));
            CHECK(array_equal(etimes(etimes(a, b), c), etimes(a, etimes(b, c))));
            CHECK(array_equal(etimes(a, b), etimes(b, a))); // commutative ⊗ in all three
            CHECK(array_equal(arrayprod(arrayprod(a, b), c), arrayprod(a, arrayprod(b, c))));
            CHECK(array_equal(arrayprod(a, eplus(b, c)),
                              eplus(arrayprod(a, b), arrayprod(a, c))));
            CHECK(array_equal(transpose(arrayprod(a, b)),
                              arrayprod(transpose(b), transpose(a))));
            CHECK(array_equal(arrayprod(a, naive_product(b, c)), arrayprod(arrayprod(a, b), c)));
            for (const AssocArray* arr : {&a, &b, &c}) CHECK(sparsity_ok(*arr));
            CHECK(sparsity_ok(arrayprod(a, b)));
            CHECK(sparsity_ok(eplus(a, b)));
            CHECK(sparsity_ok(etimes(a, b)));
        }
    }
}

TEST_CASE("array product is not commutative") {
    AssocArray a = from_entries(nat(), {{k(1), k(2), iv(1)}});
    AssocArray b = from_entries(nat(), {{k(2), k(3), iv(1)}});
    CHECK_FALSE(array_equal(arrayprod(a, b), arrayprod(b, a)));
}

TEST_CASE("etimes commutes only when the scalar product does") {
    // min_concat's ⊗ is concatenation, so the element-wise product flips
    auto mc = builtin_semiring("min_concat");
    AssocArray a = from_entries(mc, {{k(1), k(1), Value::text("ab")}});
    AssocArray b = from_entries(mc, {{k(1), k(1), Value::text("c")}});
    CHECK(etimes(a, b).at(k(1), k(1)) == Value::text("abc"));
    CHECK(etimes(b, a).at(k(1), k(1)) == Value::text("cab"));
    CHECK_FALSE(array_equal(etimes(a, b), etimes(b, a)));
}

TEST_CASE("debug dump is a sorted triple list") {
    AssocArray a = from_entries(
        nat(), {{k(2), k("c"), iv(3)}, {k(1), k("d"), iv(1)}, {k(1), k("c"), iv(2)}});
    CHECK(a.dump() == "1,c,2\n1,d,1\n2,c,3\n");
}
