#include "twmr/result_table.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "twmr/errors.hpp"

namespace twmr::io {

Column Column::real(std::string name, std::vector<double> values) {
    Column c;
    c.name = std::move(name);
    c.is_complex = false;
    c.re = std::move(values);
    return c;
}

Column Column::complex(std::string name, const std::vector<std::complex<double>>& values) {
    Column c;
    c.name = std::move(name);
    c.is_complex = true;
    c.re.reserve(values.size());
    c.im.reserve(values.size());
    for (const auto& v : values) {
        c.re.push_back(v.real());
        c.im.push_back(v.imag());
    }
    return c;
}

std::size_t ResultTable::rows() const { return columns.empty() ? 0 : columns.front().re.size(); }

void ResultTable::add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

void ResultTable::add_meta(std::string key, double value) {
    metadata.emplace_back(std::move(key), format_double(value));
}

void ResultTable::validate() const {
    for (const auto& column : columns) {
        if (column.re.size() != rows()) {
            throw ValidationError("ResultTable: column '" + column.name + "' has a mismatched length");
        }
        if (column.is_complex && column.im.size() != column.re.size()) {
            throw ValidationError("ResultTable: complex column '" + column.name +
                                  "' has mismatched re/im lengths");
        }
    }
}

std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) return "nan";
    return std::string(buffer, ptr);
}

void write_csv(const ResultTable& table, std::ostream& out) {
    table.validate();
    for (const auto& [key, value] : table.metadata) {
        out << "# " << key << " = " << value << "\n";
    }
    bool first = true;
    for (const auto& column : table.columns) {
        if (!first) out << ",";
        first = false;
        if (column.is_complex) {
            out << column.name << "_re," << column.name << "_im";
        } else {
            out << column.name;
        }
    }
    out << "\n";
    for (std::size_t row = 0; row < table.rows(); ++row) {
        first = true;
        for (const auto& column : table.columns) {
            if (!first) out << ",";
            first = false;
            out << format_double(column.re[row]);
            if (column.is_complex) out << "," << format_double(column.im[row]);
        }
        out << "\n";
    }
}

void write_json(const ResultTable& table, std::ostream& out) {
    table.validate();
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.metadata) {
        doc["metadata"][key] = value;
    }
    doc["columns"] = nlohmann::ordered_json::array();
    for (const auto& column : table.columns) {
        nlohmann::ordered_json entry;
        entry["name"] = column.name;
        if (column.is_complex) {
            entry["re"] = column.re;
            entry["im"] = column.im;
        } else {
            entry["values"] = column.re;
        }
        doc["columns"].push_back(std::move(entry));
    }
    out << doc.dump(2) << "\n";
}

ResultTable read_json(std::istream& in) {
    nlohmann::ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw IoError(std::string("read_json: ") + err.what());
    }
    ResultTable table;
    if (doc.contains("metadata")) {
        for (const auto& [key, value] : doc["metadata"].items()) {
            table.metadata.emplace_back(key, value.get<std::string>());
        }
    }
    for (const auto& entry : doc.value("columns", nlohmann::ordered_json::array())) {
        Column column;
        column.name = entry.at("name").get<std::string>();
        if (entry.contains("re")) {
            column.is_complex = true;
            column.re = entry.at("re").get<std::vector<double>>();
            column.im = entry.at("im").get<std::vector<double>>();
        } else {
            column.re = entry.at("values").get<std::vector<double>>();
        }
        table.columns.push_back(std::move(column));
    }
    table.validate();
    return table;
}

void emit(const ResultTable& table, Format format, const std::string& path) {
    const auto write = [&](std::ostream& out) {
        if (format == Format::csv) {
            write_csv(table, out);
        } else {
            write_json(table, out);
        }
        if (!out) throw IoError("emit: write failed for '" + path + "'");
    };
    if (path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(path);
    if (!file) throw IoError("emit: cannot open '" + path + "' for writing");
    write(file);
    file.close();
    if (!file) throw IoError("emit: failed to finalize '" + path + "'");
}

} // namespace twmr::io
