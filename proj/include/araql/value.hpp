#ifndef ARAQL_VALUE_HPP
#define ARAQL_VALUE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace araql {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Wrong value variant fed to an operation (e.g. adding text in a numeric
/// semiring). Never a coercion, always an error.
struct TypeError : Error {
    using Error::Error;
};

// Scalar domain shared by all semirings and by relations. Null is the
// additive identity of the relational domain ("absent cell"); Conflict is
// the transient sentinel produced by merge_eq and is never allowed to
// survive into user-visible relations.
class Value {
public:
    enum class Kind { Null, Bool, Int, Real, Text, NegInf, PosInf, Conflict };

    Value() : rep_(NullRep{}) {}

    static Value null() { return Value(); }
    static Value boolean(bool b) { return Value(Rep(b)); }
    static Value integer(std::int64_t i) { return Value(Rep(i)); }
    static Value real(double d) { return Value(Rep(d)); }
    static Value text(std::string s) { return Value(Rep(std::move(s))); }
    static Value neg_inf() { return Value(Rep(NegInfRep{})); }
    static Value pos_inf() { return Value(Rep(PosInfRep{})); }
    static Value conflict() { return Value(Rep(ConflictRep{})); }

    Kind kind() const { return static_cast<Kind>(rep_.index()); }

    bool is_null() const { return kind() == Kind::Null; }
    bool is_bool() const { return kind() == Kind::Bool; }
    bool is_int() const { return kind() == Kind::Int; }
    bool is_real() const { return kind() == Kind::Real; }
    bool is_text() const { return kind() == Kind::Text; }
    bool is_neg_inf() const { return kind() == Kind::NegInf; }
    bool is_pos_inf() const { return kind() == Kind::PosInf; }
    bool is_conflict() const { return kind() == Kind::Conflict; }
    bool is_numeric() const { return is_int() || is_real(); }

    bool as_bool() const { return get<bool>("bool"); }
    std::int64_t as_int() const { return get<std::int64_t>("int"); }
    double as_real() const { return get<double>("real"); }
    const std::string& as_text() const { return get<std::string>("text"); }

    /// Numeric payload with Int promoted to double. Errors on non-numerics.
    double numeric() const;

    /// Exact structural equality: same variant, same payload. Reals compare
    /// bit-for-bit by value; there is no epsilon anywhere in the engine.
    bool operator==(const Value& o) const { return rep_ == o.rep_; }
    bool operator!=(const Value& o) const { return !(*this == o); }

    /// Canonical rendering: Null -> "", Bool -> true/false, Int -> decimal,
    /// Real -> shortest round-trip form with a forced '.', Text verbatim.
    std::string to_string() const;

private:
    struct NullRep {
        bool operator==(const NullRep&) const { return true; }
    };
    struct NegInfRep {
        bool operator==(const NegInfRep&) const { return true; }
    };
    struct PosInfRep {
        bool operator==(const PosInfRep&) const { return true; }
    };
    struct ConflictRep {
        bool operator==(const ConflictRep&) const { return true; }
    };
    using Rep = std::variant<NullRep, bool, std::int64_t, double, std::string,
                             NegInfRep, PosInfRep, ConflictRep>;

    explicit Value(Rep r) : rep_(std::move(r)) {}

    template <class T>
    const T& get(const char* what) const {
        if (const T* p = std::get_if<T>(&rep_)) return *p;
        throw TypeError(std::string("value is not of kind ") + what + ": " + to_string());
    }

    Rep rep_;
};

/// Arbitrary-but-fixed total order over all values: variants ranked in
/// declaration order, payloads compared within a variant. Used for maps,
/// canonical output order and the deterministic "first" aggregate; it is
/// NOT the numeric comparison used by query predicates.
bool canonical_less(const Value& a, const Value& b);

struct CanonicalValueLess {
    bool operator()(const Value& a, const Value& b) const { return canonical_less(a, b); }
};

using BinaryOp = std::function<Value(const Value&, const Value&)>;

// A semiring instance over Value: carrier predicate, the two identities and
// the two operations. zero doubles as the sparsity sentinel of every array
// over this semiring.
struct SemiringSpec {
    std::string name;
    Value zero;
    Value one;
    BinaryOp plus;
    BinaryOp times;
    std::function<bool(const Value&)> contains;
};

using SemiringPtr = std::shared_ptr<const SemiringSpec>;

/// Named builtin semirings: boolean, natural, nonneg_real, max_plus,
/// max_min, min_concat. Unknown names raise an error.
SemiringPtr builtin_semiring(const std::string& name);

/// The heterogeneous domain relations live in. zero = Null, one = Bool true;
/// plus merges consistent values (the ⊕₌-style merge), times has Bool true
/// as identity and treats Null and Bool false as annihilators. Not one of
/// the builtin semirings and not required to satisfy the semiring axioms on
/// the whole tagged union.
SemiringPtr relational_semiring();

/// A value counts as truthy unless it is Null or Bool false. This is the
/// "non-zero" test of the relational {0,1} convention.
bool truthy(const Value& v);

/// Bool true iff both arguments are truthy.
Value wedge(const Value& v, const Value& w);

/// Bool true iff the arguments are exactly equal (Null equals Null).
Value delta(const Value& v, const Value& w);

/// Merge of two cell values: identity on Null, idempotent on equal values,
/// Conflict otherwise. Total on purpose; Conflict is filtered by select.
Value merge_eq(const Value& v, const Value& w);

// Operator pair driving the generalized array product A ⊕.⊗ B when the pair
// is not the semiring's (plus, times) — e.g. (wedge, delta).
struct OpPair {
    BinaryOp add;
    BinaryOp mul;
};

} // namespace araql

#endif
