#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace oscint {

/// Shortest round-trip decimal form of x ("inf", "-inf", "nan" for non-finite).
std::string format_double(double x);

/// Minimal CSV writer: comma separated, '\n' line ends, no quoting (fields never contain commas).
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& field(std::string_view text);
    CsvWriter& field(double x);
    CsvWriter& field(std::size_t n);
    void end_row();

    const std::string& str() const noexcept { return out_; }

private:
    std::string out_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

}  // namespace oscint
