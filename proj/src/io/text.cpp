#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <system_error>

#include "casimir/errors.hpp"
#include "casimir/io.hpp"

namespace casimir::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw DomainError("not a number: '" + std::string(text) + "'");
    return value;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    std::string line;
    os << "tau,u,v,energy\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        line.clear();
        line += format_double(traj.times[i]);
        line += ',';
        line += format_double(traj.u[i]);
        line += ',';
        line += format_double(traj.v[i]);
        line += ',';
        line += format_double(traj.energy[i]);
        line += '\n';
        os << line;
    }
}

Trajectory read_trajectory_csv(std::istream& is) {
    Trajectory traj;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty())
            continue;
        if (!header_seen) {
            const auto cols = split_commas(text);
            if (cols.size() != 4 || cols[0] != "tau" || cols[1] != "u" || cols[2] != "v" ||
                cols[3] != "energy")
                throw ParseError(line_no, "expected header 'tau,u,v,energy'");
            header_seen = true;
            continue;
        }
        const auto cols = split_commas(text);
        if (cols.size() != 4)
            throw ParseError(line_no, "expected 4 fields, found " + std::to_string(cols.size()));
        double vals[4];
        for (std::size_t c = 0; c < 4; ++c) {
            try {
                vals[c] = parse_double(cols[c]);
            } catch (const DomainError& e) {
                throw ParseError(line_no, e.what());
            }
            if (!std::isfinite(vals[c]))
                throw ParseError(line_no, "non-finite value");
        }
        if (!traj.times.empty() && !(vals[0] > traj.times.back()))
            throw ParseError(line_no, "tau must be strictly increasing");
        traj.times.push_back(vals[0]);
        traj.u.push_back(vals[1]);
        traj.v.push_back(vals[2]);
        traj.energy.push_back(vals[3]);
    }
    if (!header_seen)
        throw ParseError(line_no == 0 ? 1 : line_no, "empty trajectory file");
    if (traj.times.size() >= 2)
        traj.dt = traj.times[1] - traj.times[0];
    return traj;
}

KeyValueFile parse_key_value(std::istream& is) {
    KeyValueFile file;
    KeyValueSection* current = &file.globals;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos)
            text = text.substr(0, hash);
        text = trim(text);
        if (text.empty())
            continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw ParseError(line_no, "unterminated section header");
            const auto name = trim(text.substr(1, text.size() - 2));
            if (name.empty())
                throw ParseError(line_no, "empty section name");
            file.sections.push_back(KeyValueSection{std::string(name), line_no, {}, {}});
            current = &file.sections.back();
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, "expected 'key = value'");
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        if (key.empty())
            throw ParseError(line_no, "missing key");
        if (value.empty())
            throw ParseError(line_no, "missing value for '" + std::string(key) + "'");
        const std::string k(key);
        if (current->values.count(k))
            throw ParseError(line_no, "duplicate key '" + k + "'");
        current->values.emplace(k, std::string(value));
        current->lines.emplace(k, line_no);
    }
    return file;
}

} // namespace casimir::io
