#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace grushin {

/// CSV emission with a stable numeric format: '.' decimal separator and 17
/// significant digits, so reruns with the same seed are bitwise identical.
class CsvWriter {
public:
    CsvWriter(const std::string& path, unsigned seed, const std::vector<std::string>& header);

    void row_begin();
    void field(double v);
    void field(long long v);
    void field(const std::string& s);
    void row_end();
    bool good() const { return static_cast<bool>(out_); }

    static std::string format_double(double v);

private:
    std::ofstream out_;
    bool first_in_row_ = true;
};

} // namespace grushin
