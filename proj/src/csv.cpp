#include "grushin/csv.hpp"

#include <stdexcept>

namespace grushin {

CsvWriter::CsvWriter(const std::string& path, unsigned seed,
                     const std::vector<std::string>& header)
    : out_(path) {
    if (!out_) throw std::runtime_error("csv: cannot open for writing: " + path);
    out_ << "# seed=" << seed << "\n";
    bool first = true;
    for (const std::string& h : header) {
        if (!first) out_ << ',';
        out_ << h;
        first = false;
    }
    out_ << "\n";
}

std::string CsvWriter::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::row_begin() { first_in_row_ = true; }

void CsvWriter::field(double v) {
    if (!first_in_row_) out_ << ',';
    out_ << format_double(v);
    first_in_row_ = false;
}

void CsvWriter::field(long long v) {
    if (!first_in_row_) out_ << ',';
    out_ << v;
    first_in_row_ = false;
}

void CsvWriter::field(const std::string& s) {
    if (!first_in_row_) out_ << ',';
    out_ << s;
    first_in_row_ = false;
}

void CsvWriter::row_end() { out_ << "\n"; }

} // namespace grushin
