#pragma once

#include <string>
#include <vector>

#include "eymkit/eym.hpp"
#include <json.hpp>

namespace eymkit {

using Json = nlohmann::ordered_json;

// Structured form of a case report; every symbolic value is a canonical string.
Json to_json(const CaseReport& r);
// Markdown is rendered from the structured form, so a parsed JSON report
// renders exactly like the original.
std::string render_markdown(const Json& report);
std::string render_json(const Json& report);

struct TableRow {
  std::vector<std::string> cells;
  bool mismatch = false;
};

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<TableRow> rows;
  std::vector<std::string> diffs;  // golden mismatches, one line each
};

// Tables 1, 2 and 4 come from catalog data (with computed determinants where
// brackets exist); Table 3 lists the computed solutions.
std::vector<Table> build_tables(const Catalog& cat, const std::vector<CaseReport>& reports);
std::string render_tables_markdown(const std::vector<Table>& tables);
Json tables_to_json(const std::vector<Table>& tables);

}  // namespace eymkit
