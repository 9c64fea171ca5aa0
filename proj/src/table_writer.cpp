#include "braggcav/table_writer.hpp"

#include <cstdio>

namespace braggcav {

std::string fmt_g12(double v) {
    if (v == 0.0) return "0";  // collapse negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_complex(cplx v) {
    return fmt_g12(v.real()) + "," + fmt_g12(v.imag());
}

TableWriter::TableWriter(const std::string& command) {
    out_ = "# braggcav " + command + "\n";
}

void TableWriter::header(const std::string& key, const std::string& value) {
    out_ += "# " + key + " = " + value + "\n";
}

void TableWriter::header(const std::string& key, double value) {
    header(key, fmt_g12(value));
}

void TableWriter::columns(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        out_ += names[i];
        out_ += i + 1 < names.size() ? "," : "\n";
    }
}

void TableWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        out_ += fmt_g12(values[i]);
        out_ += i + 1 < values.size() ? "," : "\n";
    }
}

void TableWriter::row(const std::string& label, const std::vector<double>& values) {
    out_ += label;
    out_ += values.empty() ? "\n" : ",";
    row(values);
}

}  // namespace braggcav
