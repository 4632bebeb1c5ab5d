#include "araql/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace araql {

namespace {

struct RawCsv {
    std::vector<std::vector<std::string>> records;
    std::vector<int> lines; // 1-based starting line of each record
};

RawCsv parse_csv(const std::string& text, char delim, const std::string& what) {
    RawCsv out;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false, any = false;
    int line = 1, record_line = 1;
    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        out.records.push_back(std::move(record));
        out.lines.push_back(record_line);
        record.clear();
        any = false;
        record_line = line;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
                if (c == '\n') ++line;
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            in_quotes = true;
            any = true;
        } else if (c == delim) {
            end_field();
            any = true;
        } else if (c == '\r') {
            // swallowed; \r\n and \n both end the record below
        } else if (c == '\n') {
            ++line;
            if (any || !field.empty() || !record.empty()) end_record();
            record_line = line;
        } else {
            field += c;
            any = true;
        }
    }
    if (in_quotes) throw CsvError(what + ": unterminated quoted field");
    if (any || !field.empty() || !record.empty()) end_record();
    return out;
}

bool looks_numeric(const std::string& s, bool& is_int) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    bool dot = false, exp = false;
    if (i < s.size() && s[i] == '.') {
        dot = true;
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    }
    if (digits == 0) return false;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        exp = true;
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t edigits = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++edigits;
        if (edigits == 0) return false;
    }
    if (i != s.size()) return false;
    is_int = !dot && !exp;
    return true;
}

std::string csv_quote(const std::string& s, char delim) {
    bool needs = s.find_first_of(std::string("\"\n\r") + delim) != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

} // namespace

Value infer_cell(const std::string& cell) {
    if (cell.empty()) return Value::null();
    bool is_int = false;
    if (looks_numeric(cell, is_int)) {
        if (is_int) {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec == std::errc() && p == cell.data() + cell.size()) return Value::integer(v);
        }
        return Value::real(std::stod(cell));
    }
    return Value::text(cell);
}

Relation load_csv_text(const std::string& text, const CsvSpec& spec, const std::string& what) {
    RawCsv raw = parse_csv(text, spec.delimiter, what);
    if (raw.records.empty()) throw CsvError(what + ": missing header row");

    const std::vector<std::string>& header = raw.records[0];
    std::vector<Key> cols;
    std::set<Key> schema;
    std::optional<std::size_t> key_idx;
    for (std::size_t i = 0; i < header.size(); ++i) {
        Key c = Key::of(header[i]);
        if (!schema.insert(c).second)
            throw CsvError(what + ": duplicate column '" + header[i] + "'");
        cols.push_back(c);
        if (spec.key_column && header[i] == *spec.key_column) key_idx = i;
    }
    if (spec.key_column && !key_idx)
        throw CsvError(what + ": key column '" + *spec.key_column + "' not in header");

    std::vector<Triple> triples;
    std::set<Key> seen_keys;
    for (std::size_t r = 1; r < raw.records.size(); ++r) {
        const auto& rec = raw.records[r];
        if (rec.size() != cols.size())
            throw CsvError(what + ": line " + std::to_string(raw.lines[r]) + ": expected " +
                           std::to_string(cols.size()) + " fields, got " +
                           std::to_string(rec.size()));
        Key row_key = Key::of(static_cast<std::int64_t>(r));
        if (key_idx) {
            Value kv = infer_cell(rec[*key_idx]);
            if (kv.is_null())
                throw CsvError(what + ": line " + std::to_string(raw.lines[r]) +
                               ": empty primary key");
            row_key = key_of_value(kv);
            if (!seen_keys.insert(row_key).second)
                throw CsvError(what + ": duplicate primary key '" + row_key.to_string() + "'");
        }
        for (std::size_t i = 0; i < rec.size(); ++i) {
            Value v = infer_cell(rec[i]);
            if (!v.is_null()) triples.emplace_back(row_key, cols[i], v);
        }
    }
    return Relation(from_entries(relational_semiring(), triples), schema);
}

Relation load_csv(const std::string& path, const CsvSpec& spec) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_csv_text(buf.str(), spec, path);
}

std::string to_csv(const Relation& rel) {
    if (has_conflict(rel.data)) throw Error("conflict sentinel leaked into a relation");
    std::string out;
    bool first = true;
    for (const Key& c : rel.schema) {
        if (!first) out += ',';
        out += csv_quote(c.to_string(), ',');
        first = false;
    }
    out += '\n';
    for (const auto& [r, row] : rel.data.entries()) {
        first = true;
        for (const Key& c : rel.schema) {
            if (!first) out += ',';
            auto it = row.find(c);
            if (it != row.end()) out += csv_quote(it->second.to_string(), ',');
            first = false;
        }
        out += '\n';
    }
    return out;
}

void save_csv(const Relation& rel, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("cannot write '" + path + "'");
    out << to_csv(rel);
    if (!out) throw CsvError("write failed for '" + path + "'");
}

} // namespace araql
