#include "mirrorcut/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mirrorcut/format.hpp"

namespace mirrorcut {

namespace {

std::string json_string(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\r':
            out += "\\r";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
    return out;
}

std::string csv_value(const FieldValue& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&value)) return format_double(*d);
    return csv_escape(std::get<std::string>(value));
}

std::string json_value(const FieldValue& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&value)) {
        if (!std::isfinite(*d)) return "null";
        return format_double(*d);
    }
    return json_string(std::get<std::string>(value));
}

template <class Fn>
void for_each_field(const SweepRecord& record, Fn&& fn) {
    for (const Field& f : record.inputs) fn(f);
    for (const Field& f : record.outputs) fn(f);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

} // namespace

const FieldValue& SweepRecord::at(std::string_view name) const {
    for (const Field& f : inputs) {
        if (f.name == name) return f.value;
    }
    for (const Field& f : outputs) {
        if (f.name == name) return f.value;
    }
    throw std::out_of_range("record has no field '" + std::string(name) + "'");
}

double SweepRecord::number(std::string_view name) const {
    const FieldValue& v = at(name);
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&v)) return *d;
    throw std::invalid_argument("field '" + std::string(name) + "' is not numeric");
}

std::vector<std::string> SweepRecord::column_names() const {
    std::vector<std::string> names{"experiment"};
    for_each_field(*this, [&](const Field& f) { names.push_back(f.name); });
    return names;
}

bool SweepRecord::outputs_finite() const {
    return std::all_of(outputs.begin(), outputs.end(), [](const Field& f) {
        const auto* d = std::get_if<double>(&f.value);
        return d == nullptr || std::isfinite(*d);
    });
}

std::string_view to_string(TwoModeInput input) {
    switch (input) {
    case TwoModeInput::tms:
        return "tms";
    case TwoModeInput::stripped:
        return "stripped";
    case TwoModeInput::vacuum:
        break;
    }
    return "vacuum";
}

std::string csv_escape(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(text);
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(std::ostream& os, std::span<const SweepRecord> records,
               std::span<const std::string> columns) {
    std::vector<std::string> header(columns.begin(), columns.end());
    if (header.empty()) {
        header = records.empty() ? std::vector<std::string>{"experiment"}
                                 : records.front().column_names();
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) os << ',';
        os << csv_escape(header[i]);
    }
    os << '\n';
    for (const SweepRecord& record : records) {
        if (record.column_names() != header) {
            throw std::invalid_argument("record columns do not match the CSV header");
        }
        os << csv_escape(record.experiment);
        for_each_field(record, [&](const Field& f) { os << ',' << csv_value(f.value); });
        os << '\n';
    }
}

void write_json(std::ostream& os, std::span<const SweepRecord> records) {
    os << '[';
    for (std::size_t r = 0; r < records.size(); ++r) {
        if (r > 0) os << ',';
        os << "\n  {\"experiment\":" << json_string(records[r].experiment);
        for_each_field(records[r], [&](const Field& f) {
            os << ',' << json_string(f.name) << ':' << json_value(f.value);
        });
        os << '}';
    }
    os << (records.empty() ? "]\n" : "\n]\n");
}

void write_csv(std::ostream& os, const HeatmapGrid& grid) {
    os << 'n';
    for (int m = 1; m <= grid.size(); ++m) os << ",m" << m;
    os << '\n';
    for (int n = 1; n <= grid.size(); ++n) {
        os << n;
        for (int m = 1; m <= grid.size(); ++m) os << ',' << format_double(grid.values(n - 1, m - 1));
        os << '\n';
    }
}

void write_json(std::ostream& os, const HeatmapGrid& grid) {
    os << "{\"experiment\":\"fig6\",\"state\":" << json_string(to_string(grid.input))
       << ",\"s\":" << format_double(grid.squeezing) << ",\"theta\":" << format_double(grid.angle)
       << ",\"k\":" << grid.k << ",\"k2\":" << grid.k2 << ",\"lambda\":" << grid.cutoff
       << ",\"M\":" << grid.size() << ",\"values\":[";
    for (int n = 0; n < grid.size(); ++n) {
        os << (n > 0 ? ",\n  [" : "\n  [");
        for (int m = 0; m < grid.size(); ++m) {
            if (m > 0) os << ',';
            os << format_double(grid.values(n, m));
        }
        os << ']';
    }
    os << "\n]}\n";
}

void emit(std::span<const SweepRecord> records, OutputFormat format,
          const std::filesystem::path& path, std::span<const std::string> columns) {
    std::ostringstream buf;
    if (format == OutputFormat::csv) {
        write_csv(buf, records, columns);
    } else {
        write_json(buf, records);
    }
    std::ofstream out = open_output(path);
    out << buf.str();
    finish(out, path);
}

void emit(const HeatmapGrid& grid, OutputFormat format, const std::filesystem::path& path) {
    std::ostringstream buf;
    if (format == OutputFormat::csv) {
        write_csv(buf, grid);
    } else {
        write_json(buf, grid);
    }
    std::ofstream out = open_output(path);
    out << buf.str();
    finish(out, path);
}

} // namespace mirrorcut
