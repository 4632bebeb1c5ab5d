#include "araql/repl.hpp"

#include <sstream>

namespace araql {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

bool starts_with_keyword(const std::string& line, const std::string& kw) {
    if (line.size() < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(line[i])) != kw[i]) return false;
    return line.size() == kw.size() ||
           std::isspace(static_cast<unsigned char>(line[kw.size()]));
}

const Relation& lookup(const Workspace& ws, const std::string& name) {
    auto it = ws.catalog.find(name);
    if (it == ws.catalog.end()) throw Error("unknown relation '" + name + "'");
    return it->second;
}

std::string usage() {
    return "commands: load NAME path [key=col] | show NAME | let NAME = query |\n"
           "          equiv weak|strong NAME NAME | set NAME | demo bfs | <query>\n";
}

std::string join_path(const std::string& dir, const std::string& file) {
    if (dir.empty() || file.empty() || file.front() == '/') return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

std::string guard(const Relation& rel) {
    if (has_conflict(rel.data)) throw Error("conflict sentinel leaked into a relation");
    return {};
}

std::string bind_relation(Workspace& ws, const std::string& name, Relation rel) {
    guard(rel);
    std::size_t rows = rel.data.entries().size();
    if (!ws.out_dir.empty()) save_csv(rel, join_path(ws.out_dir, name + ".csv"));
    ws.catalog[name] = std::move(rel);
    return name + ": " + std::to_string(rows) + " rows\n";
}

} // namespace

std::string render_table(const Relation& rel) {
    guard(rel);
    std::string out = "row";
    for (const Key& c : rel.schema) out += "," + c.to_string();
    out += '\n';
    for (const auto& [r, row] : rel.data.entries()) {
        out += r.to_string();
        for (const Key& c : rel.schema) {
            out += ',';
            auto it = row.find(c);
            if (it != row.end()) out += it->second.to_string();
        }
        out += '\n';
    }
    return out;
}

std::string run_line(const std::string& raw, Workspace& ws) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') return "";

    if (starts_with_keyword(line, "load")) {
        auto words = split_words(line);
        if (words.size() < 3 || words.size() > 4) throw Error("usage: load NAME path [key=col]");
        CsvSpec spec;
        if (words.size() == 4) {
            if (words[3].rfind("key=", 0) != 0) throw Error("usage: load NAME path [key=col]");
            spec.key_column = words[3].substr(4);
        }
        Relation rel = load_csv(join_path(ws.data_dir, words[2]), spec);
        guard(rel);
        std::size_t rows = rel.data.entries().size();
        ws.provenance[words[1]] = words[2];
        ws.catalog[words[1]] = std::move(rel);
        return "loaded " + words[1] + ": " + std::to_string(rows) + " rows\n";
    }
    if (starts_with_keyword(line, "show")) {
        auto words = split_words(line);
        if (words.size() != 2) throw Error("usage: show NAME");
        return render_table(lookup(ws, words[1]));
    }
    if (starts_with_keyword(line, "let")) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw Error("usage: let NAME = query");
        auto words = split_words(line.substr(0, eq));
        if (words.size() != 2) throw Error("usage: let NAME = query");
        Relation rel = run_query(line.substr(eq + 1), ws.catalog);
        return bind_relation(ws, words[1], std::move(rel));
    }
    if (starts_with_keyword(line, "equiv")) {
        auto words = split_words(line);
        if (words.size() != 4 || (words[1] != "weak" && words[1] != "strong"))
            throw Error("usage: equiv weak|strong NAME NAME");
        const Relation& a = lookup(ws, words[2]);
        const Relation& b = lookup(ws, words[3]);
        bool r = words[1] == "weak" ? weak_equiv(a.data, b.data) : strong_equiv(a.data, b.data);
        return r ? "true\n" : "false\n";
    }
    if (starts_with_keyword(line, "set")) {
        auto words = split_words(line);
        if (words.size() != 2) throw Error("usage: set NAME");
        const Relation& a = lookup(ws, words[1]);
        Relation deduped(dedup(a.data), a.schema);
        return bind_relation(ws, words[1], std::move(deduped));
    }
    if (starts_with_keyword(line, "demo")) {
        auto words = split_words(line);
        if (words.size() != 2 || words[1] != "bfs") throw Error("usage: demo bfs");
        return bfs_demo();
    }
    if (starts_with_keyword(line, "select")) {
        Relation rel = run_query(line, ws.catalog);
        return render_table(rel);
    }
    throw Error("unknown command\n" + usage());
}

std::pair<std::string, bool> run_script(const std::string& text, Workspace& ws) {
    std::string out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        try {
            out += run_line(line, ws);
        } catch (const std::exception& e) {
            out += "error: line " + std::to_string(lineno) + ": " + e.what() + "\n";
            return {out, false};
        }
    }
    return {out, true};
}

AssocArray demo_graph() {
    auto boolean = builtin_semiring("boolean");
    const Value t = Value::boolean(true);
    auto k = [](const char* s) { return Key::of(s); };
    std::vector<Triple> edges = {
        {k("alice"), k("bob"), t},  {k("alice"), k("carl"), t},
        {k("bob"), k("dan"), t},    {k("carl"), k("dan"), t},
        {k("carl"), k("ellen"), t}, {k("dan"), k("alice"), t},
    };
    return from_entries(boolean, edges);
}

std::set<Key> neighbors(const AssocArray& graph, const Key& from) {
    AssocArray v = from_entries(graph.semiring(),
                                {{from, Key::of(std::int64_t{1}), graph.semiring()->one}});
    return arrayprod(transpose(v), graph).stored_cols();
}

std::string bfs_demo() {
    std::set<Key> hop = neighbors(demo_graph(), Key::of("alice"));
    std::string out = "alice ->";
    bool first = true;
    for (const Key& k : hop) {
        out += first ? " " : ", ";
        out += k.to_string();
        first = false;
    }
    return out + "\n";
}

} // namespace araql
