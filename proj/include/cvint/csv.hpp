#pragma once
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvint {

// shortest decimal string that round-trips to the same double
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open " + path);
    }
    void header(const std::vector<std::string>& cols) { write_strings(cols); }
    void row(const std::vector<double>& vals) {
        std::string line;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) line += ',';
            line += format_double(vals[i]);
        }
        line += '\n';
        out_ << line;
    }
    void row_strings(const std::vector<std::string>& vals) { write_strings(vals); }

private:
    void write_strings(const std::vector<std::string>& vals) {
        std::string line;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) line += ',';
            line += vals[i];
        }
        line += '\n';
        out_ << line;
    }
    std::ofstream out_;
};

} // namespace cvint
