#include "sparsesel/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sparsesel/error.hpp"

namespace sparsesel::csv {

namespace {

// Reads one record; returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& out, std::size_t line)
{
    out.clear();
    if (in.peek() == std::char_traits<char>::eof()) return false;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (;;) {
        const int ch = in.get();
        if (ch == std::char_traits<char>::eof()) {
            if (quoted)
                throw Error(Errc::parse_error, "unterminated quote in record " + std::to_string(line));
            out.push_back(std::move(field));
            return true;
        }
        const char c = static_cast<char>(ch);
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty() && !was_quoted) {
            quoted = was_quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && in.peek() == '\n') in.get();
            out.push_back(std::move(field));
            return true;
        } else {
            field.push_back(c);
        }
    }
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

} // namespace

Table parse(std::istream& in)
{
    Table t;
    std::vector<std::string> rec;
    std::size_t line = 1;
    if (!read_record(in, t.header, line) || (t.header.size() == 1 && t.header[0].empty()))
        throw Error(Errc::parse_error, "missing header row");
    while (read_record(in, rec, ++line)) {
        if (rec.size() == 1 && rec[0].empty()) continue; // blank line
        if (rec.size() != t.header.size())
            throw Error(Errc::parse_error, "record " + std::to_string(line) + " has " +
                                               std::to_string(rec.size()) + " fields, expected " +
                                               std::to_string(t.header.size()));
        t.rows.push_back(rec);
    }
    return t;
}

Table read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
    return parse(in);
}

double to_double(std::string_view field)
{
    const std::string_view s = trim(field);
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw Error(Errc::parse_error, "not a number: '" + std::string(field) + "'");
    return v;
}

RegressionData to_regression(const Table& table, const std::string& response_column)
{
    std::size_t resp = table.header.size();
    for (std::size_t j = 0; j < table.header.size(); ++j)
        if (table.header[j] == response_column) resp = j;
    if (resp == table.header.size())
        throw Error(Errc::missing_column, "response column '" + response_column + "' not found");

    RegressionData d;
    d.response_name = response_column;
    for (std::size_t j = 0; j < table.header.size(); ++j)
        if (j != resp) d.predictor_names.push_back(table.header[j]);

    const auto n = static_cast<Index>(table.rows.size());
    const auto m = static_cast<Index>(d.predictor_names.size());
    d.x.resize(n, m);
    d.y.resize(n);
    for (Index i = 0; i < n; ++i) {
        const auto& row = table.rows[static_cast<std::size_t>(i)];
        Index col = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j == resp)
                d.y(i) = to_double(row[j]);
            else
                d.x(i, col++) = to_double(row[j]);
        }
    }
    return d;
}

std::string escape(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace sparsesel::csv
