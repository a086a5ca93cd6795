#include "wka/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wka/errors.hpp"

namespace wka {

CsvTable::CsvTable(std::vector<std::string> columns) : n_cols_(columns.size()) {
    if (columns.empty()) throw ValidationError("CSV needs at least one column");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ += ',';
        out_ += columns[i];
    }
    out_ += '\n';
    row_fill_ = n_cols_;
}

CsvTable& CsvTable::begin_row() {
    if (row_fill_ != n_cols_) throw ValidationError("CSV row is incomplete");
    row_fill_ = 0;
    return *this;
}

CsvTable& CsvTable::cell(const std::string& v) {
    if (row_fill_ >= n_cols_) throw ValidationError("CSV row has too many cells");
    if (row_fill_) out_ += ',';
    out_ += v;
    if (++row_fill_ == n_cols_) out_ += '\n';
    return *this;
}

CsvTable& CsvTable::cell(double v) { return cell(format_double(v)); }
CsvTable& CsvTable::cell(std::uint64_t v) { return cell(std::to_string(v)); }
CsvTable& CsvTable::cell(std::int64_t v) { return cell(std::to_string(v)); }

std::string CsvTable::str() const {
    if (row_fill_ != n_cols_) throw ValidationError("CSV ends mid-row");
    return out_;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw ValidationError("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace wka
