// SPDX-License-Identifier: Apache-2.0
#include "wpc/cli/result_table.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace wpc::cli
{
namespace
{
bool matches(ColumnKind kind, TableValue const& v)
{
    switch (kind)
    {
        case ColumnKind::number:
            return std::holds_alternative<double>(v);
        case ColumnKind::integer:
            return std::holds_alternative<std::int64_t>(v);
        case ColumnKind::text:
            return std::holds_alternative<std::string>(v);
        case ColumnKind::boolean:
            return std::holds_alternative<bool>(v);
    }
    return false;
}

std::string quote_csv(std::string const& text)
{
    if (text.find_first_of(",\"\n\r") == std::string::npos)
    {
        return text;
    }
    std::string out = "\"";
    for (char c : text)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_cell(TableValue const& v)
{
    return std::visit(
        [](auto const& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return {};
            else if constexpr (std::is_same_v<T, double>)
                return format_number(x);
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return std::to_string(x);
            else if constexpr (std::is_same_v<T, std::string>)
                return quote_csv(x);
            else
                return x ? "true" : "false";
        },
        v);
}

// Split one CSV record; quoted fields may contain commas and quotes
std::vector<std::string> split_record(std::string const& line)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        char const c = line[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
            {
                field += '"';
                ++i;
            }
            else if (c == '"')
            {
                quoted = false;
            }
            else
            {
                field += c;
            }
        }
        else if (c == '"')
        {
            quoted = true;
        }
        else if (c == ',')
        {
            fields.push_back(std::move(field));
            field.clear();
        }
        else
        {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

TableValue parse_cell(ColumnKind kind, std::string const& text)
{
    if (text.empty() && kind != ColumnKind::text)
    {
        return std::monostate{};
    }
    switch (kind)
    {
        case ColumnKind::number: {
            double value{};
            auto const [ptr, ec]
                = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw std::invalid_argument("not a number: '" + text + "'");
            return value;
        }
        case ColumnKind::integer: {
            std::int64_t value{};
            auto const [ptr, ec]
                = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw std::invalid_argument("not an integer: '" + text + "'");
            return value;
        }
        case ColumnKind::text:
            return text;
        case ColumnKind::boolean:
            if (text == "true")
                return true;
            if (text == "false")
                return false;
            throw std::invalid_argument("not a boolean: '" + text + "'");
    }
    return std::monostate{};
}
}  // namespace

std::string format_number(double value)
{
    char buf[64];
    auto const [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{})
    {
        throw std::runtime_error("number formatting failed");
    }
    return {buf, ptr};
}

ResultTable::ResultTable(std::vector<Column> schema) : schema_(std::move(schema))
{
    if (schema_.empty())
    {
        throw std::invalid_argument("table schema needs at least one column");
    }
}

void ResultTable::add_row(std::vector<TableValue> row)
{
    if (row.size() != schema_.size())
    {
        throw std::invalid_argument("row has " + std::to_string(row.size())
                                    + " values, schema has "
                                    + std::to_string(schema_.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i)
    {
        if (!std::holds_alternative<std::monostate>(row[i])
            && !matches(schema_[i].kind, row[i]))
        {
            throw std::invalid_argument("value type mismatch in column '"
                                        + schema_[i].name + "'");
        }
    }
    rows_.push_back(std::move(row));
}

std::size_t ResultTable::column_index(std::string const& name) const
{
    for (std::size_t i = 0; i < schema_.size(); ++i)
    {
        if (schema_[i].name == name)
            return i;
    }
    throw std::out_of_range("no column named '" + name + "'");
}

TableValue const& ResultTable::at(std::size_t row, std::string const& column) const
{
    return rows_.at(row).at(column_index(column));
}

double ResultTable::number_at(std::size_t row, std::string const& column) const
{
    return std::get<double>(at(row, column));
}

void ResultTable::write_csv(std::ostream& os) const
{
    for (std::size_t i = 0; i < schema_.size(); ++i)
    {
        os << (i ? "," : "") << quote_csv(schema_[i].name);
    }
    os << '\n';
    for (auto const& row : rows_)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            os << (i ? "," : "") << csv_cell(row[i]);
        }
        os << '\n';
    }
}

nlohmann::ordered_json ResultTable::to_json(TableMeta const& meta) const
{
    using json = nlohmann::ordered_json;
    json schema = json::array();
    for (auto const& c : schema_)
    {
        static char const* const kinds[]
            = {"number", "integer", "text", "boolean"};
        schema.push_back({{"name", c.name},
                          {"type", kinds[static_cast<int>(c.kind)]},
                          {"unit", c.unit}});
    }
    json rows = json::array();
    for (auto const& row : rows_)
    {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            obj[schema_[i].name] = std::visit(
                [](auto const& x) -> json {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, std::monostate>)
                        return nullptr;
                    else
                        return x;
                },
                row[i]);
        }
        rows.push_back(std::move(obj));
    }
    json m = {{"tool_version", meta.tool_version}};
    m["seed"] = meta.seed ? json(*meta.seed) : json(nullptr);
    m["scenario_hash"] = meta.scenario_hash;
    return {{"schema", std::move(schema)},
            {"rows", std::move(rows)},
            {"meta", std::move(m)}};
}

ResultTable ResultTable::read_csv(std::istream& is, std::vector<Column> schema)
{
    ResultTable table(std::move(schema));
    std::string line;
    if (!std::getline(is, line))
    {
        throw std::invalid_argument("CSV input is empty");
    }
    auto const header = split_record(line);
    if (header.size() != table.schema_.size())
    {
        throw std::invalid_argument("CSV header does not match schema");
    }
    for (std::size_t i = 0; i < header.size(); ++i)
    {
        if (header[i] != table.schema_[i].name)
            throw std::invalid_argument("CSV column '" + header[i]
                                        + "' does not match schema");
    }
    while (std::getline(is, line))
    {
        auto const fields = split_record(line);
        if (fields.size() != table.schema_.size())
        {
            throw std::invalid_argument("CSV row width does not match schema");
        }
        std::vector<TableValue> row;
        for (std::size_t i = 0; i < fields.size(); ++i)
        {
            row.push_back(parse_cell(table.schema_[i].kind, fields[i]));
        }
        table.add_row(std::move(row));
    }
    return table;
}

}  // namespace wpc::cli
