#pragma once

#include <string>
#include <vector>

#include "sepred/bounds.hpp"

namespace sepred {

enum class TableFormat { tsv, markdown };

/// Row names in table order, paired with the BoundReport member they print.
struct BoundRow {
    std::string name;
    BoundValue BoundReport::*member;
    bool upper;
};
const std::vector<BoundRow>& bound_rows();

/// "---" when the bound is not below q^(n-k), "n/a" when absent, else the value.
std::string cell(const BoundValue& v);

/// Bounds as rows, l as columns, followed by '#' provenance lines.
std::string format_bounds(const std::vector<BoundReport>& reports, TableFormat format, const std::string& title = {});

struct ParsedTable {
    std::vector<std::uint32_t> ls;
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
};

/// Reads the body of a TSV table written by format_bounds ('#' lines skipped).
ParsedTable parse_bounds_tsv(const std::string& text);

}  // namespace sepred
