#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace lasekit::cli {

std::string format_double(double value, int precision)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::to_chars_result res = precision > 0
                                   ? std::to_chars(buf, buf + sizeof buf, value,
                                                   std::chars_format::general, precision)
                                   : std::to_chars(buf, buf + sizeof buf, value);
    if (res.ec != std::errc())
        throw std::runtime_error("float formatting failed");
    return std::string(buf, res.ptr);
}

int precision_from_env()
{
    const char* raw = std::getenv("LASEKIT_PRECISION");
    if (!raw || !*raw)
        return 0;
    int value = 0;
    const char* end = raw + std::char_traits<char>::length(raw);
    auto res = std::from_chars(raw, end, value);
    if (res.ec != std::errc() || res.ptr != end || value < 1 || value > 17)
        throw std::invalid_argument("LASEKIT_PRECISION must be an integer in [1, 17]");
    return value;
}

std::optional<double> parse_double(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        return std::nullopt;
    return value;
}

namespace {

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepTable& table, int precision)
{
    for (const auto& [key, value] : table.metadata)
        out << "# " << key << '=' << value << '\n';
    out << "pump,photon_number,regime";
    if (table.has_oracle)
        out << ",ode_photon_number";
    out << '\n';
    for (const auto& row : table.rows) {
        out << format_double(row.pump, precision) << ',' << format_double(row.photon_number, precision)
            << ',' << row.regime;
        if (table.has_oracle) {
            out << ',';
            if (row.ode_photon_number)
                out << format_double(*row.ode_photon_number, precision);
        }
        out << '\n';
    }
}

SweepTable read_sweep_csv(std::istream& in)
{
    SweepTable table;
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    auto bad = [&](const std::string& why) {
        return std::runtime_error("sweep CSV line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (header_seen)
                continue;  // trailing comments
            std::string_view body(line);
            body.remove_prefix(1);
            if (!body.empty() && body[0] == ' ')
                body.remove_prefix(1);
            const auto eq = body.find('=');
            if (eq == std::string_view::npos)
                table.metadata.emplace_back(std::string(body), "");
            else
                table.metadata.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
            continue;
        }
        if (!header_seen) {
            if (line == "pump,photon_number,regime")
                table.has_oracle = false;
            else if (line == "pump,photon_number,regime,ode_photon_number")
                table.has_oracle = true;
            else
                throw bad("unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != (table.has_oracle ? 4u : 3u))
            throw bad("wrong field count");
        SweepRow row;
        auto pump = parse_double(fields[0]);
        auto n = parse_double(fields[1]);
        if (!pump || !n)
            throw bad("malformed number");
        row.pump = *pump;
        row.photon_number = *n;
        row.regime = std::string(fields[2]);
        if (table.has_oracle && !fields[3].empty()) {
            row.ode_photon_number = parse_double(fields[3]);
            if (!row.ode_photon_number)
                throw bad("malformed oracle value");
        }
        table.rows.push_back(std::move(row));
    }
    if (!header_seen)
        throw std::runtime_error("sweep CSV has no header line");
    return table;
}

}  // namespace lasekit::cli
