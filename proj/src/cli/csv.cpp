#include "quenchfloq/cli/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace quenchfloq::cli {

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drops the sign of -0
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

CsvTable::CsvTable(std::string header)
    : text_(std::move(header)), columns_(static_cast<std::size_t>(std::count(text_.begin(), text_.end(), ',')) + 1) {
    text_ += '\n';
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
        throw std::logic_error("CsvTable: row has " + std::to_string(cells.size()) + " cells, header has " +
                               std::to_string(columns_));
    }
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) text_ += ',';
        text_ += cells[k];
    }
    text_ += '\n';
    ++rows_;
}

void write_outputs(const std::filesystem::path& dir, const std::vector<OutputFile>& files) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error(dir.string() + ": cannot create output directory: " + ec.message());

    std::vector<fs::path> staged;
    auto discard = [&] {
        for (const auto& p : staged) fs::remove(p, ec);
    };
    for (const auto& f : files) {
        const fs::path target = dir / f.name;
        fs::path tmp = target;
        tmp += ".partial";
        staged.push_back(tmp);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(f.content.data(), static_cast<std::streamsize>(f.content.size()));
        out.close();
        if (!out) {
            discard();
            throw std::runtime_error(target.string() + ": write failed");
        }
    }
    for (std::size_t k = 0; k < files.size(); ++k) {
        fs::rename(staged[k], dir / files[k].name, ec);
        if (ec) {
            discard();
            throw std::runtime_error((dir / files[k].name).string() + ": rename failed: " + ec.message());
        }
    }
}

}  // namespace quenchfloq::cli
