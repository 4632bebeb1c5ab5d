#include "araql/queryc.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace araql {

// ===========================================================================
// lexer
// ===========================================================================

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

const std::map<std::string, TokKind>& keyword_table() {
    static const std::map<std::string, TokKind> t = {
        {"select", TokKind::Select}, {"from", TokKind::From},   {"where", TokKind::Where},
        {"as", TokKind::As},         {"union", TokKind::Union}, {"all", TokKind::All},
        {"intersect", TokKind::Intersect}, {"except", TokKind::Except},
        {"group", TokKind::Group},   {"by", TokKind::By},       {"and", TokKind::And},
        {"or", TokKind::Or},         {"not", TokKind::Not},
    };
    return t;
}

} // namespace

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto make = [&](TokKind k) {
        Token t;
        t.kind = k;
        t.line = line;
        t.col = col;
        return t;
    };
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string word = text.substr(i, j - i);
            auto kw = keyword_table().find(lower(word));
            Token t = make(kw == keyword_table().end() ? TokKind::Ident : kw->second);
            t.text = word;
            out.push_back(std::move(t));
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            bool real = false;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j < text.size() && text[j] == '.') {
                real = true;
                ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            }
            std::string body = text.substr(i, j - i);
            Token t = make(TokKind::Number);
            t.text = body;
            if (real) {
                t.literal = Value::real(std::stod(body));
            } else {
                std::int64_t v = 0;
                std::from_chars(body.data(), body.data() + body.size(), v);
                t.literal = Value::integer(v);
            }
            out.push_back(std::move(t));
            advance(j - i);
            continue;
        }
        if (c == '\'') {
            std::string body;
            std::size_t j = i + 1;
            bool closed = false;
            while (j < text.size()) {
                if (text[j] == '\'') {
                    if (j + 1 < text.size() && text[j + 1] == '\'') {
                        body += '\'';
                        j += 2;
                        continue;
                    }
                    closed = true;
                    ++j;
                    break;
                }
                body += text[j++];
            }
            if (!closed) throw ParseError(line, col, "unterminated string literal");
            Token t = make(TokKind::String);
            t.text = body;
            t.literal = Value::text(body);
            out.push_back(std::move(t));
            advance(j - i);
            continue;
        }
        auto two = [&](char a, char b) {
            return c == a && i + 1 < text.size() && text[i + 1] == b;
        };
        TokKind k;
        std::size_t len = 1;
        if (two('<', '>')) { k = TokKind::Ne; len = 2; }
        else if (two('<', '=')) { k = TokKind::Le; len = 2; }
        else if (two('>', '=')) { k = TokKind::Ge; len = 2; }
        else if (c == '<') k = TokKind::Lt;
        else if (c == '>') k = TokKind::Gt;
        else if (c == '=') k = TokKind::Eq;
        else if (c == '*') k = TokKind::Star;
        else if (c == ',') k = TokKind::Comma;
        else if (c == '(') k = TokKind::LParen;
        else if (c == ')') k = TokKind::RParen;
        else if (c == '.') k = TokKind::Dot;
        else if (c == '+') k = TokKind::Plus;
        else if (c == '-') k = TokKind::Minus;
        else if (c == '/') k = TokKind::Slash;
        else throw ParseError(line, col, std::string("illegal character '") + c + "'");
        Token t = make(k);
        t.text = text.substr(i, len);
        out.push_back(std::move(t));
        advance(len);
    }
    Token end;
    end.kind = TokKind::End;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

// ===========================================================================
// AST construction
// ===========================================================================

ExprPtr Expr::column(std::string qualifier, std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Column;
    e->qualifier = std::move(qualifier);
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::lit(Value v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Literal;
    e->literal = std::move(v);
    return e;
}

ExprPtr Expr::func(std::string name, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Func;
    e->name = std::move(name);
    e->args = std::move(args);
    return e;
}

ExprPtr Expr::binary(std::string op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->op = std::move(op);
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr Expr::negate(ExprPtr inner) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Not;
    e->lhs = std::move(inner);
    return e;
}

// ===========================================================================
// parser
// ===========================================================================

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& ts) : ts_(ts) {}

    AstPtr parse_query() {
        AstPtr q = wrap(parse_select_stmt());
        for (;;) {
            if (accept(TokKind::Union)) {
                expect(TokKind::All, "ALL (bag union is UNION ALL)");
                q = setop(QueryAst::Kind::UnionAll, q, wrap(parse_select_stmt()));
            } else if (accept(TokKind::Intersect)) {
                q = setop(QueryAst::Kind::Intersect, q, wrap(parse_select_stmt()));
            } else if (accept(TokKind::Except)) {
                q = setop(QueryAst::Kind::Except, q, wrap(parse_select_stmt()));
            } else {
                break;
            }
        }
        expect(TokKind::End, "end of query");
        return q;
    }

private:
    const std::vector<Token>& ts_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t k = 0) const {
        return ts_[std::min(pos_ + k, ts_.size() - 1)];
    }
    const Token& consume() { return ts_[pos_ == ts_.size() - 1 ? pos_ : pos_++]; }
    bool accept(TokKind k) {
        if (peek().kind != k) return false;
        consume();
        return true;
    }
    const Token& expect(TokKind k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        return consume();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.col, msg + ", got " + got);
    }

    static AstPtr wrap(SelectStmt s) {
        auto q = std::make_shared<QueryAst>();
        q->kind = QueryAst::Kind::Select;
        q->select = std::move(s);
        return q;
    }
    static AstPtr setop(QueryAst::Kind k, AstPtr l, AstPtr r) {
        auto q = std::make_shared<QueryAst>();
        q->kind = k;
        q->left = std::move(l);
        q->right = std::move(r);
        return q;
    }

    SelectStmt parse_select_stmt() {
        expect(TokKind::Select, "SELECT");
        SelectStmt s;
        if (accept(TokKind::Star)) {
            s.star = true;
        } else {
            for (;;) {
                SelectItem item;
                item.expr = parse_additive();
                if (accept(TokKind::As)) item.as = expect(TokKind::Ident, "output name").text;
                s.items.push_back(std::move(item));
                if (!accept(TokKind::Comma)) break;
            }
        }
        expect(TokKind::From, "FROM");
        s.sources.push_back(expect(TokKind::Ident, "relation name").text);
        if (accept(TokKind::Comma))
            s.sources.push_back(expect(TokKind::Ident, "relation name").text);
        if (accept(TokKind::Where)) s.where = parse_or();
        if (accept(TokKind::Group)) {
            expect(TokKind::By, "BY");
            s.group_by = expect(TokKind::Ident, "grouping column").text;
        }
        return s;
    }

    ExprPtr parse_or() {
        ExprPtr e = parse_and();
        while (accept(TokKind::Or)) e = Expr::binary("or", e, parse_and());
        return e;
    }
    ExprPtr parse_and() {
        ExprPtr e = parse_not();
        while (accept(TokKind::And)) e = Expr::binary("and", e, parse_not());
        return e;
    }
    ExprPtr parse_not() {
        if (accept(TokKind::Not)) return Expr::negate(parse_not());
        return parse_comparison();
    }
    ExprPtr parse_comparison() {
        ExprPtr e = parse_additive();
        const char* op = nullptr;
        switch (peek().kind) {
            case TokKind::Eq: op = "="; break;
            case TokKind::Ne: op = "<>"; break;
            case TokKind::Lt: op = "<"; break;
            case TokKind::Le: op = "<="; break;
            case TokKind::Gt: op = ">"; break;
            case TokKind::Ge: op = ">="; break;
            default: return e;
        }
        consume();
        ExprPtr rhs = parse_additive();
        switch (peek().kind) {
            case TokKind::Eq:
            case TokKind::Ne:
            case TokKind::Lt:
            case TokKind::Le:
            case TokKind::Gt:
            case TokKind::Ge: fail("comparisons are non-associative");
            default: break;
        }
        return Expr::binary(op, e, rhs);
    }
    ExprPtr parse_additive() {
        ExprPtr e = parse_multiplicative();
        for (;;) {
            if (accept(TokKind::Plus)) e = Expr::binary("+", e, parse_multiplicative());
            else if (accept(TokKind::Minus)) e = Expr::binary("-", e, parse_multiplicative());
            else return e;
        }
    }
    ExprPtr parse_multiplicative() {
        ExprPtr e = parse_primary();
        for (;;) {
            if (accept(TokKind::Star)) e = Expr::binary("*", e, parse_primary());
            else if (accept(TokKind::Slash)) e = Expr::binary("/", e, parse_primary());
            else return e;
        }
    }
    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::Number:
            case TokKind::String: {
                consume();
                return Expr::lit(t.literal);
            }
            case TokKind::LParen: {
                consume();
                ExprPtr e = parse_or();
                expect(TokKind::RParen, "')'");
                return e;
            }
            case TokKind::Ident: {
                std::string first = consume().text;
                if (accept(TokKind::LParen)) {
                    std::vector<ExprPtr> args;
                    if (peek().kind != TokKind::RParen) {
                        do {
                            args.push_back(parse_additive());
                        } while (accept(TokKind::Comma));
                    }
                    expect(TokKind::RParen, "')'");
                    return Expr::func(lower(first), std::move(args));
                }
                if (accept(TokKind::Dot)) {
                    std::string col = expect(TokKind::Ident, "column name").text;
                    return Expr::column(first, col);
                }
                return Expr::column("", first);
            }
            default: fail("expected an expression");
        }
    }
};

} // namespace

AstPtr parse(const std::vector<Token>& tokens) { return Parser(tokens).parse_query(); }

AstPtr parse(const std::string& text) { return parse(tokenize(text)); }

// ===========================================================================
// canonical printer
// ===========================================================================

namespace {

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Binary:
            if (e.op == "or") return 1;
            if (e.op == "and") return 2;
            if (e.op == "=" || e.op == "<>" || e.op == "<" || e.op == "<=" || e.op == ">" ||
                e.op == ">=")
                return 4;
            if (e.op == "+" || e.op == "-") return 5;
            return 6;
        case Expr::Kind::Not: return 3;
        default: return 7;
    }
}

std::string quote_text(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        out += c;
        if (c == '\'') out += '\'';
    }
    out += "'";
    return out;
}

std::string print_expr(const Expr& e, int parent_prec) {
    std::string body;
    int prec = precedence(e);
    switch (e.kind) {
        case Expr::Kind::Column:
            body = e.qualifier.empty() ? e.name : e.qualifier + "." + e.name;
            break;
        case Expr::Kind::Literal:
            body = e.literal.is_text() ? quote_text(e.literal.as_text()) : e.literal.to_string();
            break;
        case Expr::Kind::Func: {
            body = e.name + "(";
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) body += ", ";
                body += print_expr(*e.args[i], 0);
            }
            body += ")";
            break;
        }
        case Expr::Kind::Not:
            body = "NOT " + print_expr(*e.lhs, prec);
            break;
        case Expr::Kind::Binary: {
            std::string op = e.op == "and" ? "AND" : e.op == "or" ? "OR" : e.op;
            // left-associative: the right child needs parens at equal precedence
            body = print_expr(*e.lhs, prec) + " " + op + " " + print_expr(*e.rhs, prec + 1);
            break;
        }
    }
    if (prec < parent_prec) return "(" + body + ")";
    return body;
}

std::string print_select(const SelectStmt& s) {
    std::string out = "SELECT ";
    if (s.star) {
        out += "*";
    } else {
        for (std::size_t i = 0; i < s.items.size(); ++i) {
            if (i) out += ", ";
            out += print_expr(*s.items[i].expr, 0);
            if (!s.items[i].as.empty()) out += " AS " + s.items[i].as;
        }
    }
    out += " FROM " + s.sources[0];
    if (s.sources.size() == 2) out += ", " + s.sources[1];
    if (s.where) out += " WHERE " + print_expr(*s.where, 0);
    if (!s.group_by.empty()) out += " GROUP BY " + s.group_by;
    return out;
}

} // namespace

std::string to_string(const ExprPtr& e) { return print_expr(*e, 0); }

std::string to_string(const AstPtr& q) {
    switch (q->kind) {
        case QueryAst::Kind::Select: return print_select(q->select);
        case QueryAst::Kind::UnionAll:
            return to_string(q->left) + " UNION ALL " + print_select(q->right->select);
        case QueryAst::Kind::Intersect:
            return to_string(q->left) + " INTERSECT " + print_select(q->right->select);
        case QueryAst::Kind::Except:
            return to_string(q->left) + " EXCEPT " + print_select(q->right->select);
    }
    return {};
}

// ===========================================================================
// expression evaluation (engine side)
// ===========================================================================

bool values_equal_promoted(const Value& a, const Value& b) {
    if (a.is_null() || b.is_null() || a.is_conflict() || b.is_conflict()) return false;
    if (a == b) return true;
    if (a.is_numeric() && b.is_numeric()) return a.numeric() == b.numeric();
    return false;
}

namespace {

// -1/0/1 when comparable; nothing for null, conflict or mixed kinds
std::optional<int> order_values(const Value& a, const Value& b) {
    if (a.is_numeric() && b.is_numeric()) {
        double l = a.numeric(), r = b.numeric();
        return l < r ? -1 : l > r ? 1 : 0;
    }
    if (a.is_text() && b.is_text()) {
        int c = a.as_text().compare(b.as_text());
        return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    return std::nullopt;
}

Value compare_values(const std::string& op, const Value& a, const Value& b) {
    if (op == "=") return Value::boolean(values_equal_promoted(a, b));
    if (op == "<>")
        return Value::boolean(!a.is_null() && !b.is_null() && !a.is_conflict() &&
                              !b.is_conflict() && !values_equal_promoted(a, b));
    auto ord = order_values(a, b);
    if (!ord) return Value::boolean(false);
    if (op == "<") return Value::boolean(*ord < 0);
    if (op == "<=") return Value::boolean(*ord <= 0);
    if (op == ">") return Value::boolean(*ord > 0);
    return Value::boolean(*ord >= 0);
}

Value arith_values(const std::string& op, const Value& a, const Value& b) {
    if (a.is_null() || b.is_null()) return Value::null();
    if (!a.is_numeric() || !b.is_numeric())
        throw Error("arithmetic over non-numeric value '" +
                    (a.is_numeric() ? b : a).to_string() + "'");
    if (op == "/") {
        if (b.numeric() == 0) throw Error("division by zero");
        return Value::real(a.numeric() / b.numeric());
    }
    if (a.is_int() && b.is_int()) {
        std::int64_t l = a.as_int(), r = b.as_int();
        return Value::integer(op == "+" ? l + r : op == "-" ? l - r : l * r);
    }
    double l = a.numeric(), r = b.numeric();
    return Value::real(op == "+" ? l + r : op == "-" ? l - r : l * r);
}

bool is_comparison(const std::string& op) {
    return op == "=" || op == "<>" || op == "<" || op == "<=" || op == ">" || op == ">=";
}

bool want_truth(const Value& v, const char* where) {
    if (!v.is_bool()) throw Error(std::string(where) + " expects a boolean operand");
    return v.as_bool();
}

using ColumnLookup = std::function<Value(const Expr&)>;

Value eval_expr(const Expr& e, const ColumnLookup& col) {
    switch (e.kind) {
        case Expr::Kind::Column: return col(e);
        case Expr::Kind::Literal: return e.literal;
        case Expr::Kind::Func:
            throw Error("aggregate '" + e.name + "' cannot be evaluated per row");
        case Expr::Kind::Not:
            return Value::boolean(!want_truth(eval_expr(*e.lhs, col), "NOT"));
        case Expr::Kind::Binary: {
            if (e.op == "and")
                return Value::boolean(want_truth(eval_expr(*e.lhs, col), "AND") &&
                                      want_truth(eval_expr(*e.rhs, col), "AND"));
            if (e.op == "or")
                return Value::boolean(want_truth(eval_expr(*e.lhs, col), "OR") ||
                                      want_truth(eval_expr(*e.rhs, col), "OR"));
            Value l = eval_expr(*e.lhs, col);
            Value r = eval_expr(*e.rhs, col);
            if (is_comparison(e.op)) return compare_values(e.op, l, r);
            return arith_values(e.op, l, r);
        }
    }
    return Value::null();
}

void walk_columns(const ExprPtr& e, const std::function<void(const Expr&)>& fn) {
    if (!e) return;
    if (e->kind == Expr::Kind::Column) fn(*e);
    walk_columns(e->lhs, fn);
    walk_columns(e->rhs, fn);
    for (const ExprPtr& a : e->args) walk_columns(a, fn);
}

bool contains_func(const ExprPtr& e) {
    if (!e) return false;
    if (e->kind == Expr::Kind::Func) return true;
    if (contains_func(e->lhs) || contains_func(e->rhs)) return true;
    for (const ExprPtr& a : e->args)
        if (contains_func(a)) return true;
    return false;
}

} // namespace

// ===========================================================================
// plans
// ===========================================================================

struct Plan::Node {
    enum class Op {
        Source, Project, Rename, Filter, Join,
        UnionAll, Intersect, Except,
        ExtProject, Combine, Aggregate
    };
    Op op;
    std::vector<NodePtr> kids;
    std::set<Key> schema;

    std::string source_name; // Source
    Relation source{};

    std::set<Key> cols;         // Project
    std::map<Key, Key> renames; // Rename

    RowPredicate pred;   // Filter
    JoinPredicate jpred; // Join
    JoinMode jmode = JoinMode::Tagged;

    std::set<Key> ext_cols; // ExtProject
    std::function<Value(const AssocArray::Row&)> ext_fn;
    Key ext_out;

    Key agg_group, agg_value; // Aggregate
    Aggregator agg;
    std::optional<Key> agg_out;
};

namespace {

Relation exec_node(const Plan::Node& n) {
    using Op = Plan::Node::Op;
    switch (n.op) {
        case Op::Source: return n.source;
        case Op::Project: return project(exec_node(*n.kids[0]), n.cols);
        case Op::Rename: return rename(exec_node(*n.kids[0]), n.renames);
        case Op::Filter: return select(exec_node(*n.kids[0]), n.pred);
        case Op::Join:
            return theta_join(exec_node(*n.kids[0]), exec_node(*n.kids[1]), n.jpred, n.jmode);
        case Op::UnionAll: return union_all(exec_node(*n.kids[0]), exec_node(*n.kids[1]));
        case Op::Intersect: return intersect(exec_node(*n.kids[0]), exec_node(*n.kids[1]));
        case Op::Except: return msdiff(exec_node(*n.kids[0]), exec_node(*n.kids[1]));
        case Op::ExtProject:
            return extended_projection(exec_node(*n.kids[0]), n.ext_cols, n.ext_fn, n.ext_out);
        case Op::Combine: {
            Relation acc = exec_node(*n.kids[0]);
            for (std::size_t i = 1; i < n.kids.size(); ++i) {
                Relation next = exec_node(*n.kids[i]);
                std::set<Key> schema = acc.schema;
                schema.insert(next.schema.begin(), next.schema.end());
                acc = Relation(eplus(acc.data, next.data), std::move(schema));
            }
            return acc;
        }
        case Op::Aggregate:
            return aggregate(exec_node(*n.kids[0]), n.agg_group, n.agg_value, n.agg,
                             /*dedup_groups=*/true, n.agg_out);
    }
    throw Error("corrupt plan");
}

} // namespace

Relation Plan::execute() const { return exec_node(*root_); }

const std::set<Key>& Plan::schema() const { return root_->schema; }

// ===========================================================================
// compiler
// ===========================================================================

namespace {

using Node = Plan::Node;
using NodePtr = Plan::NodePtr;

bool is_aggregate_name(const std::string& n) {
    return n == "sum" || n == "min" || n == "max" || n == "count" || n == "first";
}

// Resolution context for one select's FROM clause.
struct SourceCtx {
    enum class Shape { Single, TaggedJoin, MergedJoin };
    Shape shape = Shape::Single;
    std::string s1, s2;
    std::set<Key> schema1, schema2; // bare column keys per source

    // side of a column reference in a two-source query: 1 or 2
    int side_of(const Expr& c) const {
        Key bare = Key::of(c.name);
        if (!c.qualifier.empty()) {
            if (c.qualifier == s1 && schema1.count(bare)) return 1;
            if (c.qualifier == s2 && schema2.count(bare)) return 2;
            throw CompileError("unknown column '" + c.qualifier + "." + c.name + "'");
        }
        bool in1 = schema1.count(bare) > 0, in2 = schema2.count(bare) > 0;
        if (in1 && in2) throw CompileError("ambiguous column '" + c.name + "'");
        if (!in1 && !in2) throw CompileError("unknown column '" + c.name + "'");
        return in1 ? 1 : 2;
    }

    // key of a column reference within the plan's output schema
    Key resolve(const Expr& c) const {
        Key bare = Key::of(c.name);
        switch (shape) {
            case Shape::Single:
                if (!c.qualifier.empty() && c.qualifier != s1)
                    throw CompileError("unknown source '" + c.qualifier + "'");
                if (!schema1.count(bare)) throw CompileError("unknown column '" + c.name + "'");
                return bare;
            case Shape::MergedJoin: {
                if (!c.qualifier.empty()) {
                    side_of(c); // validates qualifier and membership
                    return bare;
                }
                if (!schema1.count(bare) && !schema2.count(bare))
                    throw CompileError("unknown column '" + c.name + "'");
                return bare;
            }
            case Shape::TaggedJoin: {
                int side = side_of(c);
                return Key::pair(bare, Key::of(std::int64_t{side}));
            }
        }
        throw CompileError("unreachable");
    }
};

// resolved-column table bound into predicate closures; expression nodes are
// shared and stable, so plain node pointers index it
using KeyTable = std::shared_ptr<const std::map<const Expr*, Key>>;

RowPredicate compile_row_predicate(const ExprPtr& where, const SourceCtx& ctx) {
    auto table = std::make_shared<std::map<const Expr*, Key>>();
    RowPredicate out;
    walk_columns(where, [&](const Expr& c) {
        Key k = ctx.resolve(c);
        table->emplace(&c, k);
        out.cols.insert(k);
    });
    KeyTable keys = table;
    out.eval = [where, keys](const AssocArray::Row& row) {
        return eval_expr(*where, [&](const Expr& c) -> Value {
            auto it = row.find(keys->at(&c));
            return it == row.end() ? Value::null() : it->second;
        });
    };
    return out;
}

JoinPredicate compile_join_predicate(const ExprPtr& where, const SourceCtx& ctx) {
    auto table = std::make_shared<std::map<const Expr*, std::pair<int, Key>>>();
    JoinPredicate out;
    walk_columns(where, [&](const Expr& c) {
        int side = ctx.side_of(c);
        Key bare = Key::of(c.name);
        table->emplace(&c, std::make_pair(side, bare));
        (side == 1 ? out.j1 : out.j2).insert(bare);
    });
    auto keys = table;
    out.eval = [where, keys](const AssocArray::Row& r1, const AssocArray::Row& r2) {
        return eval_expr(*where, [&](const Expr& c) -> Value {
            const auto& [side, bare] = keys->at(&c);
            const AssocArray::Row& row = side == 1 ? r1 : r2;
            auto it = row.find(bare);
            return it == row.end() ? Value::null() : it->second;
        });
    };
    return out;
}

// conjuncts of a predicate split on top-level AND
void split_conjuncts(const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (e->kind == Expr::Kind::Binary && e->op == "and") {
        split_conjuncts(e->lhs, out);
        split_conjuncts(e->rhs, out);
    } else {
        out.push_back(e);
    }
}

// A two-source WHERE maps to the merging join exactly when it is a
// conjunction of cross-source equalities on same-named columns covering
// every shared column; then the ⊕₌ merge plus conflict filtering is the
// whole predicate.
bool is_merge_equijoin(const ExprPtr& where, const SourceCtx& ctx) {
    std::set<Key> shared;
    std::set_intersection(ctx.schema1.begin(), ctx.schema1.end(), ctx.schema2.begin(),
                          ctx.schema2.end(), std::inserter(shared, shared.begin()));
    if (shared.empty()) return false;
    std::vector<ExprPtr> conj;
    split_conjuncts(where, conj);
    std::set<Key> equated;
    for (const ExprPtr& c : conj) {
        if (c->kind != Expr::Kind::Binary || c->op != "=") return false;
        const Expr& l = *c->lhs;
        const Expr& r = *c->rhs;
        if (l.kind != Expr::Kind::Column || r.kind != Expr::Kind::Column) return false;
        if (l.qualifier.empty() || r.qualifier.empty()) return false;
        if (l.name != r.name) return false;
        std::set<std::string> quals = {l.qualifier, r.qualifier};
        if (quals != std::set<std::string>{ctx.s1, ctx.s2}) return false;
        if (!shared.count(Key::of(l.name))) return false;
        equated.insert(Key::of(l.name));
    }
    return equated == shared;
}

NodePtr make_node(Node n) { return std::make_shared<Node>(std::move(n)); }

NodePtr compile_select(const SelectStmt& s, const Catalog& catalog) {
    if (s.where && contains_func(s.where))
        throw CompileError("function calls are not allowed in predicates");

    // --- FROM -----------------------------------------------------------
    std::vector<const Relation*> rels;
    for (const std::string& name : s.sources) {
        auto it = catalog.find(name);
        if (it == catalog.end()) throw CompileError("unknown relation '" + name + "'");
        rels.push_back(&it->second);
    }

    SourceCtx ctx;
    ctx.s1 = s.sources[0];
    ctx.schema1 = rels[0]->schema;

    NodePtr plan;
    if (s.sources.size() == 1) {
        Node src;
        src.op = Node::Op::Source;
        src.source_name = ctx.s1;
        src.source = *rels[0];
        src.schema = rels[0]->schema;
        plan = make_node(std::move(src));
        ctx.shape = SourceCtx::Shape::Single;
        if (s.where) {
            Node f;
            f.op = Node::Op::Filter;
            f.pred = compile_row_predicate(s.where, ctx);
            f.schema = plan->schema;
            f.kids = {plan};
            plan = make_node(std::move(f));
        }
    } else {
        if (s.sources[0] == s.sources[1])
            throw CompileError("self-join needs distinct relation names");
        ctx.s2 = s.sources[1];
        ctx.schema2 = rels[1]->schema;

        Node left, right;
        left.op = right.op = Node::Op::Source;
        left.source_name = ctx.s1;
        left.source = *rels[0];
        left.schema = rels[0]->schema;
        right.source_name = ctx.s2;
        right.source = *rels[1];
        right.schema = rels[1]->schema;

        Node join;
        join.op = Node::Op::Join;
        join.kids = {make_node(std::move(left)), make_node(std::move(right))};
        if (s.where && is_merge_equijoin(s.where, ctx)) {
            ctx.shape = SourceCtx::Shape::MergedJoin;
            join.jmode = JoinMode::EqMerge;
            join.jpred = const_join_predicate(true);
            join.schema = ctx.schema1;
            join.schema.insert(ctx.schema2.begin(), ctx.schema2.end());
        } else {
            ctx.shape = SourceCtx::Shape::TaggedJoin;
            join.jmode = JoinMode::Tagged;
            join.jpred = s.where ? compile_join_predicate(s.where, ctx)
                                 : const_join_predicate(true);
            for (const Key& c : ctx.schema1) join.schema.insert(Key::pair(c, Key::of(std::int64_t{1})));
            for (const Key& c : ctx.schema2) join.schema.insert(Key::pair(c, Key::of(std::int64_t{2})));
        }
        plan = make_node(std::move(join));
    }

    // --- GROUP BY --------------------------------------------------------
    if (!s.group_by.empty()) {
        if (s.star || s.items.size() != 1)
            throw CompileError("GROUP BY takes exactly one aggregate select item");
        const SelectItem& item = s.items[0];
        if (item.expr->kind != Expr::Kind::Func || !is_aggregate_name(item.expr->name))
            throw CompileError("GROUP BY needs an aggregate function in the select list");
        if (item.expr->args.size() != 1 || item.expr->args[0]->kind != Expr::Kind::Column)
            throw CompileError("aggregate '" + item.expr->name + "' takes a single column");
        Node agg;
        agg.op = Node::Op::Aggregate;
        agg.kids = {plan};
        agg.agg_group = ctx.resolve(*Expr::column("", s.group_by));
        agg.agg_value = ctx.resolve(*item.expr->args[0]);
        agg.agg = builtin_aggregator(item.expr->name);
        if (!item.as.empty()) agg.agg_out = Key::of(item.as);
        agg.schema = {agg.agg_out ? *agg.agg_out : Key::of(std::int64_t{1})};
        return make_node(std::move(agg));
    }

    // --- select list -----------------------------------------------------
    if (s.star) return plan;

    for (const SelectItem& item : s.items)
        if (contains_func(item.expr))
            throw CompileError("aggregates need GROUP BY");

    bool all_plain = true;
    for (const SelectItem& item : s.items)
        all_plain = all_plain && item.expr->kind == Expr::Kind::Column;

    if (all_plain) {
        std::set<Key> keys;
        std::map<Key, Key> renames;
        bool any_rename = false, rename_expressible = true;
        for (const SelectItem& item : s.items) {
            Key k = ctx.resolve(*item.expr);
            Key out = item.as.empty() ? k : Key::of(item.as);
            any_rename = any_rename || !(out == k);
            if (!keys.insert(k).second) rename_expressible = false; // same source column twice
            renames.emplace(k, out);
        }
        if (!any_rename) {
            Node p;
            p.op = Node::Op::Project;
            p.cols = keys;
            p.kids = {plan};
            p.schema = keys;
            return make_node(std::move(p));
        }
        if (rename_expressible) {
            std::set<Key> targets;
            for (const auto& [k, v] : renames)
                if (!targets.insert(v).second)
                    throw CompileError("duplicate output column '" + v.to_string() + "'");
            Node p;
            p.op = Node::Op::Project;
            p.cols = keys;
            p.kids = {plan};
            p.schema = keys;
            Node r;
            r.op = Node::Op::Rename;
            r.renames = renames;
            r.kids = {make_node(std::move(p))};
            r.schema = targets;
            return make_node(std::move(r));
        }
        // fall through: same column selected twice under different names
    }

    // general item list: one extended projection per item, columns combined
    std::vector<NodePtr> parts;
    std::set<Key> outs;
    for (const SelectItem& item : s.items) {
        Key out;
        if (!item.as.empty()) {
            out = Key::of(item.as);
        } else if (item.expr->kind == Expr::Kind::Column) {
            out = ctx.resolve(*item.expr);
        } else {
            throw CompileError("computed select items need AS");
        }
        if (!outs.insert(out).second)
            throw CompileError("duplicate output column '" + out.to_string() + "'");

        auto table = std::make_shared<std::map<const Expr*, Key>>();
        Node e;
        e.op = Node::Op::ExtProject;
        e.kids = {plan};
        walk_columns(item.expr, [&](const Expr& c) {
            Key k = ctx.resolve(c);
            table->emplace(&c, k);
            e.ext_cols.insert(k);
        });
        KeyTable keys = table;
        ExprPtr expr = item.expr;
        e.ext_fn = [expr, keys](const AssocArray::Row& row) {
            return eval_expr(*expr, [&](const Expr& c) -> Value {
                auto it = row.find(keys->at(&c));
                return it == row.end() ? Value::null() : it->second;
            });
        };
        e.ext_out = out;
        e.schema = {out};
        parts.push_back(make_node(std::move(e)));
    }
    if (parts.size() == 1) return parts[0];
    Node c;
    c.op = Node::Op::Combine;
    c.kids = std::move(parts);
    c.schema = outs;
    return make_node(std::move(c));
}

NodePtr compile_node(const AstPtr& q, const Catalog& catalog) {
    if (q->kind == QueryAst::Kind::Select) return compile_select(q->select, catalog);
    Node n;
    switch (q->kind) {
        case QueryAst::Kind::UnionAll: n.op = Node::Op::UnionAll; break;
        case QueryAst::Kind::Intersect: n.op = Node::Op::Intersect; break;
        case QueryAst::Kind::Except: n.op = Node::Op::Except; break;
        default: throw Error("corrupt query tree");
    }
    n.kids = {compile_node(q->left, catalog), compile_node(q->right, catalog)};
    if (q->kind == QueryAst::Kind::Except) {
        n.schema = n.kids[0]->schema;
    } else {
        n.schema = n.kids[0]->schema;
        n.schema.insert(n.kids[1]->schema.begin(), n.kids[1]->schema.end());
    }
    return make_node(std::move(n));
}

} // namespace

Plan compile(const AstPtr& q, const Catalog& catalog) { return Plan(compile_node(q, catalog)); }

Relation run_query(const std::string& text, const Catalog& catalog) {
    return compile(parse(text), catalog).execute();
}

} // namespace araql
