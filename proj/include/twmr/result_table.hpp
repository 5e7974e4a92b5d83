#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace twmr::io {

// One named series; complex series are carried as re/im pairs and emitted
// as <name>_re, <name>_im columns.
struct Column {
    std::string name;
    bool is_complex = false;
    std::vector<double> re;
    std::vector<double> im;

    static Column real(std::string name, std::vector<double> values);
    static Column complex(std::string name, const std::vector<std::complex<double>>& values);
};

// Sweep output plus the complete resolved parameter set that produced it,
// so every emitted file is reproducible on its own.
struct ResultTable {
    std::vector<Column> columns;
    std::vector<std::pair<std::string, std::string>> metadata;

    std::size_t rows() const;
    void add_meta(std::string key, std::string value);
    void add_meta(std::string key, double value);
    void validate() const;
};

enum class Format { csv, json };

// CSV: '#'-prefixed metadata lines, a header row, '.'-decimal values,
// comma separator. JSON mirrors the same schema. Identical tables produce
// byte-identical output.
void write_csv(const ResultTable& table, std::ostream& out);
void write_json(const ResultTable& table, std::ostream& out);

ResultTable read_json(std::istream& in);

// Writes to the path, or to stdout when path is "-". Throws IoError on
// failure.
void emit(const ResultTable& table, Format format, const std::string& path);

// Deterministic shortest-faithful formatting used for all emitted numbers.
std::string format_double(double value);

} // namespace twmr::io
