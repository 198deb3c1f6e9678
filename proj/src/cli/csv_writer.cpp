#include "cavity/cli/csv_writer.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace cavity::cli {

std::string format_double(double value) {
    if (value == 0.0) {
        value = 0.0;  // drop the sign of -0
    }
    std::array<char, 64> buf{};
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::string format_shortest(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

void CsvWriter::comment(std::string_view text) {
    text_ += "# ";
    text_ += text;
    text_ += '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) { row(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            text_ += ',';
        }
        text_ += cells[i];
    }
    text_ += '\n';
}

void write_atomically(const std::filesystem::path& path, std::string_view content, bool force) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (fs::exists(path, ec) && !force) {
        throw IoError(path.string() + ": file exists (use --force to overwrite)");
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(tmp.string() + ": cannot open for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw IoError(tmp.string() + ": write failed");
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError(path.string() + ": rename failed: " + ec.message());
    }
}

}  // namespace cavity::cli
