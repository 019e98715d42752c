#include "sle/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sle {

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp);
        out << content;
        if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("atomic_write: rename failed for " + path);
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void CsvBuilder::add_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
}

std::string curve_ndjson(const std::vector<double>& times,
                         const std::vector<std::complex<double>>& points) {
    if (times.size() != points.size()) {
        throw std::invalid_argument("curve_ndjson: times/points size mismatch");
    }
    std::string out;
    out.reserve(points.size() * 48);
    for (std::size_t i = 0; i < points.size(); ++i) {
        out += "{\"t\": " + format_double(times[i]) + ", \"re\": " +
               format_double(points[i].real()) + ", \"im\": " + format_double(points[i].imag()) +
               "}\n";
    }
    return out;
}

} // namespace sle
