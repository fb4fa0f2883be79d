#include <forbconf/error.hpp>
#include <forbconf/matrix_io.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace forbconf {

std::string format_matrix(const BinMatrix & m)
{
    const auto cols = m.expanded();
    std::string out = std::to_string(m.rows()) + " " + std::to_string(cols.size()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::string row(cols.size(), '0');
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (cols[j][i])
                row[j] = '1';
        out += row;
        out += '\n';
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    return s;
}

bool parse_size(std::string_view tok, std::size_t & out)
{
    if (tok.empty())
        return false;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

BinMatrix parse_matrix(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t line_no = 0;
    for (std::size_t pos = 0;;) {
        const auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        ++line_no;
        const auto line = trim(text.substr(pos, end - pos));
        if (!line.empty() && line.front() != '#')
            lines.emplace_back(line_no, line);
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    if (lines.empty())
        throw Error("malformed header: missing 'm n' line");

    const auto [header_line, header] = lines.front();
    const auto space = header.find_first_of(" \t");
    std::size_t m = 0, n = 0;
    if (space == std::string_view::npos || !parse_size(trim(header.substr(0, space)), m) ||
        !parse_size(trim(header.substr(space + 1)), n))
        throw Error("malformed header at line " + std::to_string(header_line));
    if (m > Column::max_rows)
        throw Error("malformed header at line " + std::to_string(header_line) + ": at most 128 rows");

    const std::size_t body = lines.size() - 1;
    const std::size_t expected = n == 0 ? 0 : m;
    if (body > expected)
        throw Error("unexpected extra row at line " + std::to_string(lines[expected + 1].first));

    std::vector<Column> cols(n, Column(m));
    for (std::size_t i = 0; i < body; ++i) {
        const auto [ln, row] = lines[i + 1];
        if (row.size() != n)
            throw Error("ragged row at line " + std::to_string(ln));
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] != '0' && row[j] != '1')
                throw Error("illegal character '" + std::string(1, row[j]) + "' at line " + std::to_string(ln));
            cols[j].set(i, row[j] == '1');
        }
    }
    if (body < expected)
        throw Error("expected " + std::to_string(m) + " rows, found " + std::to_string(body) + " after line " +
            std::to_string(lines.back().first));
    return BinMatrix(m, cols);
}

BinMatrix read_matrix_file(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_matrix(ss.str());
    } catch (const Error & e) {
        throw Error(path.string() + ": " + e.what());
    }
}

}  // namespace forbconf
