// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file wpc/cli/result_table.hpp
//! Typed tabular results with CSV and JSON emitters.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace wpc::cli
{
enum class ColumnKind
{
    number,
    integer,
    text,
    boolean
};

struct Column
{
    std::string name;  //!< carries the unit suffix, e.g. "range_m"
    ColumnKind kind{ColumnKind::number};
    std::string unit;  //!< empty for dimensionless
};

//! Null (monostate) marks a value that does not exist, e.g. an infeasible
//! range.
using TableValue
    = std::variant<std::monostate, double, std::int64_t, std::string, bool>;

struct TableMeta
{
    std::string tool_version;
    std::optional<std::uint64_t> seed;
    std::string scenario_hash;
};

/*!
 * Rows of values under a fixed column schema.
 *
 * Numbers are written with the shortest representation that parses back to
 * the same double, so CSV and JSON emissions carry identical values.
 */
class ResultTable
{
  public:
    explicit ResultTable(std::vector<Column> schema);

    // Throws std::invalid_argument if the row does not match the schema
    void add_row(std::vector<TableValue> row);

    std::vector<Column> const& schema() const { return schema_; }
    std::vector<std::vector<TableValue>> const& rows() const { return rows_; }
    std::size_t column_index(std::string const& name) const;
    TableValue const& at(std::size_t row, std::string const& column) const;
    double number_at(std::size_t row, std::string const& column) const;

    void write_csv(std::ostream& os) const;
    nlohmann::ordered_json to_json(TableMeta const& meta) const;

    // Parse CSV written by write_csv back under this table's schema
    static ResultTable read_csv(std::istream& is, std::vector<Column> schema);

  private:
    std::vector<Column> schema_;
    std::vector<std::vector<TableValue>> rows_;
};

// Shortest round-trip decimal form of a double
std::string format_number(double value);

}  // namespace wpc::cli
