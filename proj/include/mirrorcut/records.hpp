#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mirrorcut/linalg.hpp"

namespace mirrorcut {

using FieldValue = std::variant<std::int64_t, double, std::string>;

struct Field {
    std::string name;
    FieldValue value;
};

/// One row of experiment output. Inputs come first in every artifact, then
/// outputs, each in insertion order.
struct SweepRecord {
    std::string experiment;
    std::vector<Field> inputs;
    std::vector<Field> outputs;

    [[nodiscard]] const FieldValue& at(std::string_view name) const;
    /// Numeric field as double (integers widen). Throws for strings.
    [[nodiscard]] double number(std::string_view name) const;
    [[nodiscard]] std::vector<std::string> column_names() const;
    [[nodiscard]] bool outputs_finite() const;
};

enum class TwoModeInput { vacuum, tms, stripped };

[[nodiscard]] std::string_view to_string(TwoModeInput input);

/// E_N(u_n, ubar_m) for n, m = 1..M, plus what was fed in.
struct HeatmapGrid {
    TwoModeInput input = TwoModeInput::vacuum;
    double squeezing = 0.0;
    double angle = 0.0;
    int k = 1;
    int k2 = 2;
    int cutoff = 1;
    Matrix values;

    [[nodiscard]] int size() const { return static_cast<int>(values.rows()); }
};

enum class OutputFormat { csv, json };

/// RFC-4180 quoting: wraps in quotes when the text holds a comma, quote, CR
/// or LF, doubling embedded quotes.
[[nodiscard]] std::string csv_escape(std::string_view text);

/// Header row then one line per record, LF endings. `columns` fixes the
/// header for an empty record list; otherwise it must match the records.
void write_csv(std::ostream& os, std::span<const SweepRecord> records,
               std::span<const std::string> columns = {});
void write_json(std::ostream& os, std::span<const SweepRecord> records);

/// Header "n,m1,...,mM" then M rows.
void write_csv(std::ostream& os, const HeatmapGrid& grid);
void write_json(std::ostream& os, const HeatmapGrid& grid);

/// Writes (or overwrites) `path`. Throws std::runtime_error on I/O failure.
void emit(std::span<const SweepRecord> records, OutputFormat format,
          const std::filesystem::path& path, std::span<const std::string> columns = {});
void emit(const HeatmapGrid& grid, OutputFormat format, const std::filesystem::path& path);

} // namespace mirrorcut
