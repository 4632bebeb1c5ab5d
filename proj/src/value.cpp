#include "araql/value.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace araql {

double Value::numeric() const {
    if (is_int()) return static_cast<double>(as_int());
    if (is_real()) return as_real();
    throw TypeError("value is not numeric: " + to_string());
}

std::string Value::to_string() const {
    switch (kind()) {
        case Kind::Null: return "";
        case Kind::Bool: return as_bool() ? "true" : "false";
        case Kind::Int: return std::to_string(as_int());
        case Kind::Real: {
            char buf[64];
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, as_real());
            std::string s(buf, end);
            // force a Real marker so the CSV reader re-infers the same kind
            if (s.find_first_of(".eE") == std::string::npos) s += ".0";
            return s;
        }
        case Kind::Text: return as_text();
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "inf";
        case Kind::Conflict: return "#conflict";
    }
    return "";
}

bool canonical_less(const Value& a, const Value& b) {
    if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind());
    switch (a.kind()) {
        case Value::Kind::Bool: return a.as_bool() < b.as_bool();
        case Value::Kind::Int: return a.as_int() < b.as_int();
        case Value::Kind::Real: return a.as_real() < b.as_real();
        case Value::Kind::Text: return a.as_text() < b.as_text();
        default: return false; // unit variants
    }
}

bool truthy(const Value& v) {
    return !(v.is_null() || (v.is_bool() && !v.as_bool()));
}

Value wedge(const Value& v, const Value& w) {
    return Value::boolean(truthy(v) && truthy(w));
}

Value delta(const Value& v, const Value& w) {
    return Value::boolean(v == w);
}

Value merge_eq(const Value& v, const Value& w) {
    if (v.is_null()) return w;
    if (w.is_null()) return v;
    if (v == w) return v;
    return Value::conflict();
}

namespace {

[[noreturn]] void bad_operand(const char* sr, const Value& v) {
    throw TypeError(std::string(sr) + " semiring cannot operate on value '" + v.to_string() + "'");
}

// --- boolean ---------------------------------------------------------------

bool want_bool(const Value& v) {
    if (!v.is_bool()) bad_operand("boolean", v);
    return v.as_bool();
}

SemiringPtr make_boolean() {
    auto s = std::make_shared<SemiringSpec>();
    s->name = "boolean";
    s->zero = Value::boolean(false);
    s->one = Value::boolean(true);
    s->plus = [](const Value& a, const Value& b) {
        return Value::boolean(want_bool(a) || want_bool(b));
    };
    s->times = [](const Value& a, const Value& b) {
        return Value::boolean(want_bool(a) && want_bool(b));
    };
    s->contains = [](const Value& v) { return v.is_bool(); };
    return s;
}

// --- natural ---------------------------------------------------------------

std::int64_t want_nat(const Value& v) {
    if (!v.is_int() || v.as_int() < 0) bad_operand("natural", v);
    return v.as_int();
}

SemiringPtr make_natural() {
    auto s = std::make_shared<SemiringSpec>();
    s->name = "natural";
    s->zero = Value::integer(0);
    s->one = Value::integer(1);
    s->plus = [](const Value& a, const Value& b) { return Value::integer(want_nat(a) + want_nat(b)); };
    s->times = [](const Value& a, const Value& b) { return Value::integer(want_nat(a) * want_nat(b)); };
    s->contains = [](const Value& v) { return v.is_int() && v.as_int() >= 0; };
    return s;
}

// --- nonneg_real -----------------------------------------------------------

double want_nonneg(const Value& v) {
    if (!v.is_real() || v.as_real() < 0) bad_operand("nonneg_real", v);
    return v.as_real();
}

SemiringPtr make_nonneg_real() {
    auto s = std::make_shared<SemiringSpec>();
    s->name = "nonneg_real";
    s->zero = Value::real(0.0);
    s->one = Value::real(1.0);
    s->plus = [](const Value& a, const Value& b) { return Value::real(want_nonneg(a) + want_nonneg(b)); };
    s->times = [](const Value& a, const Value& b) { return Value::real(want_nonneg(a) * want_nonneg(b)); };
    s->contains = [](const Value& v) { return v.is_real() && v.as_real() >= 0; };
    return s;
}

// --- extended reals (max_plus, max_min) -------------------------------------

bool is_xreal(const Value& v) { return v.is_real() || v.is_neg_inf() || v.is_pos_inf(); }

void want_xreal(const Value& v, const char* sr) {
    if (!is_xreal(v)) bad_operand(sr, v);
}

// max over -inf < reals < +inf
Value xmax(const Value& a, const Value& b, const char* sr) {
    want_xreal(a, sr);
    want_xreal(b, sr);
    if (a.is_neg_inf()) return b;
    if (b.is_neg_inf()) return a;
    if (a.is_pos_inf() || b.is_pos_inf()) return Value::pos_inf();
    return a.as_real() >= b.as_real() ? a : b;
}

Value xmin(const Value& a, const Value& b, const char* sr) {
    want_xreal(a, sr);
    want_xreal(b, sr);
    if (a.is_neg_inf() || b.is_neg_inf()) return Value::neg_inf();
    if (a.is_pos_inf()) return b;
    if (b.is_pos_inf()) return a;
    return a.as_real() <= b.as_real() ? a : b;
}

// extended addition; -inf dominates +inf so the max_plus zero annihilates
Value xadd(const Value& a, const Value& b) {
    want_xreal(a, "max_plus");
    want_xreal(b, "max_plus");
    if (a.is_neg_inf() || b.is_neg_inf()) return Value::neg_inf();
    if (a.is_pos_inf() || b.is_pos_inf()) return Value::pos_inf();
    return Value::real(a.as_real() + b.as_real());
}

SemiringPtr make_max_plus() {
    auto s = std::make_shared<SemiringSpec>();
    s->name = "max_plus";
    s->zero = Value::neg_inf();
    s->one = Value::real(0.0);
    s->plus = [](const Value& a, const Value& b) { return xmax(a, b, "max_plus"); };
    s->times = [](const Value& a, const Value& b) { return xadd(a, b); };
    s->contains = [](const Value& v) { return is_xreal(v); };
    return s;
}

SemiringPtr make_max_min() {
    auto s = std::make_shared<SemiringSpec>();
    s->name = "max_min";
    s->zero = Value::neg_inf();
    s->one = Value::pos_inf();
    s->plus = [](const Value& a, const Value& b) { return xmax(a, b, "max_min"); };
    s->times = [](const Value& a, const Value& b) { return xmin(a, b, "max_min"); };
    s->contains = [](const Value& v) { return is_xreal(v); };
    return s;
}

// --- min_concat ------------------------------------------------------------

void want_word(const Value& v) {
    if (!(v.is_text() || v.is_pos_inf())) bad_operand("min_concat", v);
}

SemiringPtr make_min_concat() {
    auto s = std::make_shared<SemiringSpec>();
    s->name = "min_concat";
    s->zero = Value::pos_inf(); // formal maximum, identity of lexicographic min
    s->one = Value::text("");
    s->plus = [](const Value& a, const Value& b) {
        want_word(a);
        want_word(b);
        if (a.is_pos_inf()) return b;
        if (b.is_pos_inf()) return a;
        return a.as_text() <= b.as_text() ? a : b;
    };
    s->times = [](const Value& a, const Value& b) {
        want_word(a);
        want_word(b);
        if (a.is_pos_inf() || b.is_pos_inf()) return Value::pos_inf();
        return Value::text(a.as_text() + b.as_text());
    };
    s->contains = [](const Value& v) { return v.is_text() || v.is_pos_inf(); };
    return s;
}

// --- relational ------------------------------------------------------------

SemiringPtr make_relational() {
    auto s = std::make_shared<SemiringSpec>();
    s->name = "relational";
    s->zero = Value::null();
    s->one = Value::boolean(true);
    s->plus = [](const Value& a, const Value& b) { return merge_eq(a, b); };
    s->times = [](const Value& a, const Value& b) -> Value {
        // Null annihilates; Bool false is the embedded boolean zero and
        // annihilates as well; Bool true is the identity. Anything else has
        // no product in this domain.
        if (a.is_null() || b.is_null()) return Value::null();
        if ((a.is_bool() && !a.as_bool()) || (b.is_bool() && !b.as_bool())) return Value::null();
        if (a.is_bool()) return b;
        if (b.is_bool()) return a;
        throw TypeError("relational domain cannot multiply '" + a.to_string() + "' by '" +
                        b.to_string() + "'");
    };
    s->contains = [](const Value& v) { return !v.is_conflict(); };
    return s;
}

} // namespace

SemiringPtr builtin_semiring(const std::string& name) {
    static const std::map<std::string, SemiringPtr> table = {
        {"boolean", make_boolean()},   {"natural", make_natural()},
        {"nonneg_real", make_nonneg_real()}, {"max_plus", make_max_plus()},
        {"max_min", make_max_min()},   {"min_concat", make_min_concat()},
    };
    auto it = table.find(name);
    if (it == table.end()) throw Error("unknown semiring: " + name);
    return it->second;
}

SemiringPtr relational_semiring() {
    static const SemiringPtr s = make_relational();
    return s;
}

} // namespace araql
