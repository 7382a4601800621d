#ifndef LASEKIT_CLI_CSV_HPP
#define LASEKIT_CLI_CSV_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lasekit::cli {

/// Shortest text that parses back to the same double. A positive
/// `precision` switches to %g-style output with that many significant digits.
std::string format_double(double value, int precision = 0);

/// Precision requested through LASEKIT_PRECISION, 0 when unset. Throws
/// std::invalid_argument on a malformed value.
int precision_from_env();

std::optional<double> parse_double(std::string_view text);

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct SweepRow {
    double pump = 0.0;
    double photon_number = 0.0;
    std::string regime;
    std::optional<double> ode_photon_number;

    bool operator==(const SweepRow&) const = default;
};

struct SweepTable {
    Metadata metadata;
    std::vector<SweepRow> rows;
    bool has_oracle = false;

    bool operator==(const SweepTable&) const = default;
};

/// `# key=value` lines, then `pump,photon_number,regime[,ode_photon_number]`.
void write_sweep_csv(std::ostream& out, const SweepTable& table, int precision = 0);
/// Inverse of write_sweep_csv; throws std::runtime_error with a line number.
SweepTable read_sweep_csv(std::istream& in);

}  // namespace lasekit::cli

#endif
