#pragma once

#include <string>
#include <vector>

namespace btcts {

/// A parsed CSV file: header names plus rows of raw string fields. The
/// parser handles plain comma-separated UTF-8 with an optional trailing
/// \r per line; quoting is not interpreted.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // each the same width as header
    std::vector<std::size_t> line_numbers;       // 1-based source line per row

    /// Index of a named column, or throws MissingColumn.
    std::size_t column(const std::string& name) const;
};

/// Read and split a CSV file. Throws FileNotFound or UnparseableRow
/// (width mismatch against the header). A fully empty file comes back
/// with an empty header and no rows.
CsvTable read_csv(const std::string& path);

}  // namespace btcts
