#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace quenchfloq::cli {

/// 12 significant digits, lowercase scientific notation; -0 prints as 0.
std::string format_number(double x);

/// In-memory CSV body: header line plus rows, '\n' line endings.
class CsvTable {
public:
    explicit CsvTable(std::string header);

    void add_row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }
    std::size_t rows() const { return rows_; }

private:
    std::string text_;
    std::size_t columns_;
    std::size_t rows_ = 0;
};

struct OutputFile {
    std::filesystem::path name;  // relative to the output directory
    std::string content;
};

/// Writes every file to a temporary sibling first and renames only after all
/// writes succeed, so a failure leaves no partial outputs behind.
/// Throws std::runtime_error on I/O failure.
void write_outputs(const std::filesystem::path& dir, const std::vector<OutputFile>& files);

}  // namespace quenchfloq::cli
