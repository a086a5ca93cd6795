#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wka/numerics.hpp"

namespace wka {

/// Deterministic CSV builder: one header row, stable column order, doubles in
/// exact round-trip form. Identical inputs produce identical bytes.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    CsvTable& begin_row();
    CsvTable& cell(const std::string& v);
    CsvTable& cell(double v);
    CsvTable& cell(std::uint64_t v);
    CsvTable& cell(std::int64_t v);
    CsvTable& cell(int v) { return cell(static_cast<std::int64_t>(v)); }
    CsvTable& cell(bool v) { return cell(std::string(v ? "true" : "false")); }

    std::string str() const;

private:
    std::size_t n_cols_;
    std::size_t row_fill_ = 0;
    std::string out_;
};

/// Atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace wka
