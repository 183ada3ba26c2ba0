#include "oscint/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace oscint {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, end);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (const auto& h : header) field(h);
    end_row();
}

CsvWriter& CsvWriter::field(std::string_view text) {
    if (in_row_ == columns_) throw std::logic_error("CSV row has too many fields");
    if (in_row_ > 0) out_ += ',';
    out_ += text;
    ++in_row_;
    return *this;
}

CsvWriter& CsvWriter::field(double x) { return field(format_double(x)); }
CsvWriter& CsvWriter::field(std::size_t n) { return field(std::to_string(n)); }

void CsvWriter::end_row() {
    if (in_row_ != columns_) throw std::logic_error("CSV row has too few fields");
    out_ += '\n';
    in_row_ = 0;
}

}  // namespace oscint
