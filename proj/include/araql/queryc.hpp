#ifndef ARAQL_QUERYC_HPP
#define ARAQL_QUERYC_HPP

#include <memory>
#include <string>
#include <vector>

#include "araql/relalg.hpp"

namespace araql {

/// Lex/parse/compile failure, carrying a 1-based source position.
struct ParseError : Error {
    ParseError(int line, int col, const std::string& msg)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    int line;
    int col;
};

/// Unknown relation/column/function — a compile-time name error.
struct CompileError : Error {
    using Error::Error;
};

enum class TokKind {
    Select, From, Where, As, Union, All, Intersect, Except, Group, By, And, Or, Not,
    Ident, Number, String,
    Star, Comma, LParen, RParen, Dot,
    Eq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Slash,
    End
};

struct Token {
    TokKind kind;
    std::string text; // identifier spelling / literal body
    Value literal;    // Number and String tokens
    int line = 1;
    int col = 1;
};

/// Lexes query text. Keywords are case-insensitive; identifiers keep their
/// spelling; strings are single-quoted with '' as the escape; numbers are
/// integer or decimal literals. Illegal characters raise ParseError.
std::vector<Token> tokenize(const std::string& text);

// --- expression / query AST --------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Column, Literal, Func, Binary, Not };
    Kind kind;

    std::string qualifier; // Column: optional source name
    std::string name;      // Column or Func name
    Value literal;         // Literal

    std::string op; // Binary: + - * / = <> < <= > >= and or
    std::vector<ExprPtr> args;
    ExprPtr lhs;
    ExprPtr rhs;

    static ExprPtr column(std::string qualifier, std::string name);
    static ExprPtr lit(Value v);
    static ExprPtr func(std::string name, std::vector<ExprPtr> args);
    static ExprPtr binary(std::string op, ExprPtr l, ExprPtr r);
    static ExprPtr negate(ExprPtr e);
};

struct SelectItem {
    ExprPtr expr;
    std::string as; // empty when absent
};

struct SelectStmt {
    bool star = false;
    std::vector<SelectItem> items;
    std::vector<std::string> sources; // one or two relation names
    ExprPtr where;                    // null when absent
    std::string group_by;             // empty when absent
};

struct QueryAst;
using AstPtr = std::shared_ptr<const QueryAst>;

struct QueryAst {
    enum class Kind { Select, UnionAll, Intersect, Except };
    Kind kind;
    SelectStmt select; // Kind::Select
    AstPtr left;       // set operations
    AstPtr right;
};

/// Parses one query. Grammar:
///   query   := setexpr
///   setexpr := select (("UNION" "ALL" | "INTERSECT" | "EXCEPT") select)*
///   select  := "SELECT" items "FROM" ident ("," ident)?
///              ("WHERE" pred)? ("GROUP" "BY" ident)?
///   items   := "*" | item ("," item)*
///   item    := expr ("AS" ident)?
/// Predicates combine comparisons with NOT > AND > OR; comparisons are
/// non-associative; arithmetic * / binds tighter than + -.
AstPtr parse(const std::string& text);
AstPtr parse(const std::vector<Token>& tokens);

/// Canonical text form; parse(to_string(q)) reproduces the same tree.
std::string to_string(const AstPtr& q);
std::string to_string(const ExprPtr& e);

// --- compiled plans ----------------------------------------------------------

using Catalog = std::map<std::string, Relation>;

// A compiled query: a tree of relational-algebra operations with resolved
// columns and bound inputs. Evaluation goes through relalg calls only;
// plans never touch tuples directly.
class Plan {
public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    explicit Plan(NodePtr root) : root_(std::move(root)) {}

    Relation execute() const;
    const std::set<Key>& schema() const;
    const NodePtr& root() const { return root_; }

private:
    NodePtr root_;
};

/// Binds a parsed query against a catalog. Unknown relations, unresolvable
/// columns, aggregates without GROUP BY and malformed select lists are
/// compile errors.
Plan compile(const AstPtr& q, const Catalog& catalog);

/// Shorthand: tokenize, parse, compile, execute.
Relation run_query(const std::string& text, const Catalog& catalog);

// Value comparison semantics shared by predicates: equality promotes Int to
// Real; orderings apply between two numerics or two texts; any comparison
// touching Null (or Conflict) is false.
bool values_equal_promoted(const Value& a, const Value& b);

} // namespace araql

#endif
