#pragma once
//
// Deterministic CSV emission: every value is printed with %.12g so that
// identical inputs produce byte-identical files.

#include <string>
#include <vector>

#include "braggcav/atomic_mirror.hpp"

namespace braggcav {

/// Fixed 12-significant-digit representation of a double.
std::string fmt_g12(double v);

/// "re,im" with fmt_g12 components (used in header echoes).
std::string fmt_complex(cplx v);

class TableWriter {
public:
    /// Starts the file with "# braggcav <command>".
    explicit TableWriter(const std::string& command);

    void header(const std::string& key, const std::string& value);
    void header(const std::string& key, double value);
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    /// Row whose first cell is a label.
    void row(const std::string& label, const std::vector<double>& values);

    [[nodiscard]] const std::string& str() const { return out_; }

private:
    std::string out_;
};

}  // namespace braggcav
