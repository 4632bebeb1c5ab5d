#ifndef ARAQL_REPL_HPP
#define ARAQL_REPL_HPP

#include <string>

#include "araql/csv.hpp"
#include "araql/queryc.hpp"

namespace araql {

// Command-loop state: named relations plus where they came from.
struct Workspace {
    Catalog catalog;
    std::map<std::string, std::string> provenance; // name -> source path
    std::string data_dir;                          // load paths resolve against this
    std::string out_dir;                           // when set, `let` results are saved here
};

/// Executes one command line and returns its output text. Lines are one of:
///   load NAME path [key=col]     ingest a CSV
///   show NAME                    print a relation
///   let NAME = query             run a query and bind the result
///   equiv weak|strong NAME NAME  equivalence check
///   set NAME                     deduplicate NAME in place
///   demo bfs                     the graph-traversal demo
///   <query>                      run and print
/// plus '#' comments and blank lines. Errors are reported by throwing; the
/// REPL driver catches them, a script driver stops.
std::string run_line(const std::string& line, Workspace& ws);

/// Runs a whole script (one command per line). Output accumulates command
/// results; on error the error line is appended and false returned.
std::pair<std::string, bool> run_script(const std::string& text, Workspace& ws);

/// Deterministic table rendering: header "row,<cols ascending>", then one
/// line per row in ascending row-key order.
std::string render_table(const Relation& rel);

/// Fixture adjacency array of the demo graph, over the boolean semiring.
AssocArray demo_graph();

/// One-hop neighborhood via the transposed-indicator product vᵀ E.
std::set<Key> neighbors(const AssocArray& graph, const Key& from);

/// Prints the nearest neighbors of alice in the fixture graph.
std::string bfs_demo();

} // namespace araql

#endif
