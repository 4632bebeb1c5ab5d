#ifndef ARAQL_CSV_HPP
#define ARAQL_CSV_HPP

#include <optional>
#include <string>

#include "araql/relalg.hpp"

namespace araql {

struct CsvError : Error {
    using Error::Error;
};

struct CsvSpec {
    char delimiter = ',';
    std::optional<std::string> key_column; // row keys; synthetic 1..n when absent
};

/// Loads a relation from RFC-4180-style CSV with a required header row.
/// Header names become text column keys; empty cells are Null (unstored);
/// cells shaped like integer or decimal literals parse numerically, all
/// others stay text. Duplicate primary keys and ragged rows are errors.
Relation load_csv(const std::string& path, const CsvSpec& spec = {});

/// Same parser over in-memory text; `what` labels error messages.
Relation load_csv_text(const std::string& text, const CsvSpec& spec, const std::string& what);

/// Writes header (schema ascending) then rows ascending by row key; Null as
/// an empty cell. Byte-identical across runs for the same relation.
void save_csv(const Relation& rel, const std::string& path);

std::string to_csv(const Relation& rel);

/// Numeric inference used for every cell.
Value infer_cell(const std::string& cell);

} // namespace araql

#endif
