#pragma once

// RFC 4180 style quoting: fields containing a comma, quote or newline are
// wrapped in quotes with embedded quotes doubled.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace checkmine::csv {

inline std::string quote(const std::string& field)
{
    if (field.find_first_of(",\"\n\r") == std::string::npos)
        return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

inline void write_row(std::ostream& os, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            os << ',';
        os << quote(fields[i]);
    }
    os << '\n';
}

inline std::vector<std::vector<std::string>> read_all(std::istream& is)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_has_data = false;
    char c = 0;
    while (is.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (is.peek() == '"') {
                    is.get(c);
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            row_has_data = true;
            break;
        case ',':
            row.push_back(std::move(field));
            field.clear();
            row_has_data = true;
            break;
        case '\r':
            break;
        case '\n':
            if (row_has_data || !field.empty()) {
                row.push_back(std::move(field));
                rows.push_back(std::move(row));
            }
            row.clear();
            field.clear();
            row_has_data = false;
            break;
        default:
            field += c;
            row_has_data = true;
        }
    }
    if (row_has_data || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace checkmine::csv
