#ifndef SLE_IO_HPP
#define SLE_IO_HPP

#include <complex>
#include <string>
#include <vector>

namespace sle {

/// Writes content to path atomically (temp file + rename).
void atomic_write(const std::string& path, const std::string& content);

/// Formats a double with enough digits to round-trip.
std::string format_double(double v);

/// Simple row-oriented CSV builder with a fixed header.
class CsvBuilder {
public:
    explicit CsvBuilder(std::string header) : body_(std::move(header)) { body_ += '\n'; }
    void add_row(const std::vector<std::string>& cells);
    const std::string& str() const { return body_; }

private:
    std::string body_;
};

/// NDJSON curve export, one {"t": ..., "re": ..., "im": ...} object per line.
std::string curve_ndjson(const std::vector<double>& times,
                         const std::vector<std::complex<double>>& points);

} // namespace sle

#endif
