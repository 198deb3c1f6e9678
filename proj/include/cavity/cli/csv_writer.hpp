#pragma once

#include <complex>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cavity::cli {

/// 17 significant digits with a '.' separator, independent of locale.
std::string format_double(double value);

/// Shortest round-trip representation, for tolerances and labels.
std::string format_shortest(double value);

/// Builds CSV text with '#' comment lines and LF line endings.
class CsvWriter {
public:
    void comment(std::string_view text);
    void header(const std::vector<std::string>& columns);
    /// Empty strings become empty cells.
    void row(const std::vector<std::string>& cells);

    const std::string& text() const { return text_; }

private:
    std::string text_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes to a sibling temp file and renames it over `path`. Refuses to
/// replace an existing file unless `force` is set.
void write_atomically(const std::filesystem::path& path, std::string_view content, bool force);

}  // namespace cavity::cli
