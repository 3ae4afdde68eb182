// RFC-4180 CSV emission with 17-significant-digit float formatting, so
// repeated runs with the same seed produce byte-identical files.
#ifndef BETASPEC_CSV_HPP
#define BETASPEC_CSV_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace betaspec::csv {

/// Shortest-17 representation: round-trips every double exactly.
std::string format_double(double v);

class Writer {
public:
    explicit Writer(std::ostream& os) : os_(os) {}

    template <typename... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        (write_field(fields, first), ...);
        end_row();
    }

private:
    void write_field(double v, bool& first);
    void write_field(std::size_t v, bool& first);
    void write_field(long v, bool& first);
    void write_field(int v, bool& first);
    void write_field(const std::string& v, bool& first);
    void write_field(const char* v, bool& first);
    void sep(bool& first);
    void end_row();

    std::ostream& os_;
};

} // namespace betaspec::csv

#endif // BETASPEC_CSV_HPP
