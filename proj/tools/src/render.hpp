#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "frogcrit/cli.hpp"

namespace frogcrit::cli {

// monostate renders as "-" (plain), empty (CSV) or null (JSON).
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::string schema;
  // Run parameters. Plain output lists them above the table; CSV and JSON
  // Lines repeat them as leading columns of every row.
  std::vector<std::pair<std::string, Cell>> context;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void render(const Table &table, OutputFormat format, std::ostream &out);

} // namespace frogcrit::cli
