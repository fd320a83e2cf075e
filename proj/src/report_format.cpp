#include "sepred/report_format.hpp"

#include <sstream>

#include "sepred/errors.hpp"

namespace sepred {

const std::vector<BoundRow>& bound_rows() {
    static const std::vector<BoundRow> rows = {
        {"lower-schonheim", &BoundReport::lower_schonheim, false},
        {"lower-volume", &BoundReport::lower_volume, false},
        {"upper-prob-basic", &BoundReport::upper_prob_basic, true},
        {"upper-prob-nonzero", &BoundReport::upper_prob_nonzero, true},
        {"upper-prob-hybrid", &BoundReport::upper_prob_hybrid, true},
        {"upper-prob-known", &BoundReport::upper_prob_known, true},
        {"upper-generic", &BoundReport::upper_generic, true},
        {"upper-covering-refined", &BoundReport::upper_covering_refined, true},
        {"upper-covering-known", &BoundReport::upper_covering_known, true},
    };
    return rows;
}

std::string cell(const BoundValue& v) {
    if (v.exceeds_trivial) return "---";
    if (!v.value) return "n/a";
    return v.value->get_str();
}

std::string format_bounds(const std::vector<BoundReport>& reports, TableFormat format, const std::string& title) {
    std::ostringstream out;
    const bool md = format == TableFormat::markdown;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (md) out << (i ? " " : "| ") << cells[i] << " |";
            else out << (i ? "\t" : "") << cells[i];
        }
        out << '\n';
    };
    if (!title.empty()) out << (md ? "### " : "# ") << title << '\n';
    std::vector<std::string> header{"bound"};
    for (const auto& r : reports) header.push_back("l=" + std::to_string(r.l));
    emit(header);
    if (md) emit(std::vector<std::string>(header.size(), "---:"));
    for (const auto& row : bound_rows()) {
        std::vector<std::string> cells{row.name};
        for (const auto& r : reports) cells.push_back(cell(r.*(row.member)));
        emit(cells);
    }
    if (reports.empty()) return out.str();
    const auto& first = reports.front();
    out << (md ? "\n" : "") << "# code " << to_string(first.params) << ", trivial bound q^(n-k) = " << first.trivial.get_str()
        << '\n';
    out << "# --- marks a bound not below the trivial bound\n";
    for (const auto& r : reports) {
        out << "# l=" << r.l << ":";
        const char* sep = " ";
        for (const auto& row : bound_rows()) {
            const BoundValue& v = r.*(row.member);
            if (!v.arg && v.note.empty()) continue;
            out << sep << row.name;
            if (v.arg) out << (row.name.find("covering") != std::string::npos ? " mu=" : " t=") << *v.arg;
            if (!v.note.empty()) out << " [" << v.note << "]";
            sep = "; ";
        }
        out << '\n';
    }
    return out.str();
}

ParsedTable parse_bounds_tsv(const std::string& text) {
    ParsedTable t;
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream fields(line);
        for (std::string f; std::getline(fields, f, '\t');) cells.push_back(f);
        if (!header) {
            if (cells.empty() || cells[0] != "bound") throw ParseError("expected header row", number);
            for (std::size_t i = 1; i < cells.size(); ++i) {
                if (cells[i].rfind("l=", 0) != 0) throw ParseError("bad column " + cells[i], number);
                t.ls.push_back(static_cast<std::uint32_t>(std::stoul(cells[i].substr(2))));
            }
            header = true;
            continue;
        }
        if (cells.size() != t.ls.size() + 1) throw ParseError("wrong cell count", number);
        t.rows.emplace_back(cells[0], std::vector<std::string>(cells.begin() + 1, cells.end()));
    }
    if (!header) throw ParseError("no table", number);
    return t;
}

}  // namespace sepred
