#include "betaspec/csv.hpp"

#include <cstdio>
#include <ostream>

namespace betaspec::csv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Writer::sep(bool& first) {
    if (!first) os_ << ',';
    first = false;
}

void Writer::write_field(double v, bool& first) {
    sep(first);
    os_ << format_double(v);
}
void Writer::write_field(std::size_t v, bool& first) {
    sep(first);
    os_ << v;
}
void Writer::write_field(long v, bool& first) {
    sep(first);
    os_ << v;
}
void Writer::write_field(int v, bool& first) {
    sep(first);
    os_ << v;
}
void Writer::write_field(const std::string& v, bool& first) {
    sep(first);
    os_ << v;
}
void Writer::write_field(const char* v, bool& first) {
    sep(first);
    os_ << v;
}

void Writer::end_row() {
    os_ << "\r\n";  // RFC-4180 line ending
}

} // namespace betaspec::csv
