#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace lrfim {

// Minimal CSV writer with fixed numeric formatting, so identical data
// produces byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : os_(path) {
        if (!os_) throw std::runtime_error("cannot open for writing: " + path);
    }

    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << cells[i];
        }
        os_ << '\n';
    }

    static std::string num(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return buf;
    }
    static std::string num(long long v) { return std::to_string(v); }
    static std::string num(int v) { return std::to_string(v); }

private:
    std::ofstream os_;
};

}  // namespace lrfim
