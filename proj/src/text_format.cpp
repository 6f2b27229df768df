#include <cig/text_format.hpp>

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace cig {

namespace {
    class TermParser
    {
    public:
        explicit TermParser(std::string_view text)
            : _text(text)
        {
        }

        auto parse() -> Term
        {
            auto t = expr();
            skip_space();
            if (_pos != _text.size())
                fail("unexpected trailing input");
            return t;
        }

    private:
        std::string_view _text;
        std::size_t _pos = 0;

        [[noreturn]] auto fail(const std::string & why) const -> void
        {
            throw ParseError(why + " at offset " + std::to_string(_pos) + " in '" + std::string{_text} + "'");
        }

        auto skip_space() -> void
        {
            while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
                ++_pos;
        }

        auto peek() -> char
        {
            skip_space();
            return _pos < _text.size() ? _text[_pos] : '\0';
        }

        auto expr() -> Term
        {
            auto t = primary();
            while (peek() == '*') {
                ++_pos;
                t = t * primary();
            }
            return t;
        }

        auto primary() -> Term
        {
            auto c = peek();
            if (c == '(') {
                ++_pos;
                auto first = expr();
                if (peek() == ')') {
                    ++_pos;
                    return first;
                }
                auto second = expr();
                if (peek() != ')')
                    fail("expected ')'");
                ++_pos;
                return first * second;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                auto start = _pos;
                while (_pos < _text.size() &&
                    (std::isalnum(static_cast<unsigned char>(_text[_pos])) || _text[_pos] == '_'))
                    ++_pos;
                return Term::variable(std::string{_text.substr(start, _pos - start)});
            }
            fail(c ? std::string{"unexpected '"} + c + "'" : "unexpected end of term");
        }
    };

    class GroundParser
    {
    public:
        GroundParser(std::string_view text, const CayleyTable & g)
            : _text(text)
            , _g(g)
        {
        }

        auto parse() -> Element
        {
            auto v = expr();
            if (_pos != _text.size())
                fail("unexpected trailing input");
            return v;
        }

    private:
        std::string_view _text;
        const CayleyTable & _g;
        std::size_t _pos = 0;

        [[noreturn]] auto fail(const std::string & why) const -> void
        {
            throw ParseError(why + " in ground expression '" + std::string{_text} + "'");
        }

        auto skip_operator() -> void
        {
            while (_pos < _text.size()) {
                if (_text.substr(_pos, 2) == "·")
                    _pos += 2;
                else if (_text[_pos] == '*' || _text[_pos] == ' ')
                    ++_pos;
                else
                    break;
            }
        }

        auto expr() -> Element
        {
            auto v = atom();
            while (true) {
                skip_operator();
                if (_pos >= _text.size() || _text[_pos] == ')')
                    return v;
                v = _g(v, atom());
            }
        }

        auto atom() -> Element
        {
            if (_pos >= _text.size())
                fail("unexpected end");
            auto c = _text[_pos];
            if (c == '(') {
                ++_pos;
                auto v = expr();
                if (_pos >= _text.size() || _text[_pos] != ')')
                    fail("expected ')'");
                ++_pos;
                return v;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ++_pos;
                auto e = static_cast<Element>(c - '0');
                if (e >= _g.size())
                    fail("element outside the carrier");
                return e;
            }
            fail(std::string{"unexpected '"} + c + "'");
        }
    };

    auto is_comment_or_blank(const std::string & line) -> bool
    {
        auto pos = line.find_first_not_of(" \t\r");
        return pos == std::string::npos || line[pos] == '#';
    }
}

auto parse_term(std::string_view text) -> Term { return TermParser{text}.parse(); }

auto parse_identity(std::string_view text) -> Identity
{
    constexpr std::string_view approx = "≈";
    auto pos = text.find(approx);
    auto width = approx.size();
    if (pos == std::string_view::npos) {
        pos = text.find('=');
        width = 1;
    }
    if (pos == std::string_view::npos)
        throw ParseError("identity needs '=' or '≈': '" + std::string{text} + "'");
    return {parse_term(text.substr(0, pos)), parse_term(text.substr(pos + width))};
}

auto eval_ground(std::string_view text, const CayleyTable & g) -> Element { return GroundParser{text, g}.parse(); }

auto read_alg(std::istream & in, CayleyTable & out) -> bool
{
    std::string line;
    bool found = false;
    while (! found && std::getline(in, line))
        found = ! is_comment_or_blank(line);
    if (! found)
        return false;

    std::size_t n = 0;
    {
        std::istringstream head{line};
        long long value = 0;
        std::string extra;
        if (! (head >> value) || (head >> extra) || value < 1)
            throw ParseError("expected a positive carrier size, got '" + line + "'");
        n = static_cast<std::size_t>(value);
    }
    std::vector<Element> cells;
    cells.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        if (! std::getline(in, line))
            throw ParseError("table ends after " + std::to_string(r) + " of " + std::to_string(n) + " rows");
        std::istringstream row{line};
        long long value = 0;
        std::size_t count = 0;
        while (row >> value) {
            if (value < 0 || static_cast<std::size_t>(value) >= n)
                throw ParseError("entry " + std::to_string(value) + " outside 0.." + std::to_string(n - 1));
            cells.push_back(static_cast<Element>(value));
            ++count;
        }
        if (! row.eof() || count != n)
            throw ParseError("row " + std::to_string(r) + " must hold " + std::to_string(n) + " integers: '" + line + "'");
    }
    out = CayleyTable{n, std::move(cells)};
    return true;
}

auto parse_alg(std::string_view text) -> CayleyTable
{
    std::istringstream in{std::string{text}};
    CayleyTable g;
    if (! read_alg(in, g))
        throw ParseError("no table found");
    return g;
}

auto load_alg(const std::filesystem::path & path) -> CayleyTable
{
    std::ifstream in{path};
    if (! in)
        throw ParseError("cannot open " + path.string());
    CayleyTable g;
    if (! read_alg(in, g))
        throw ParseError("no table found in " + path.string());
    return g;
}

auto to_alg(const CayleyTable & g) -> std::string
{
    std::string out = std::to_string(g.size()) + "\n";
    for (Element a = 0; a < g.size(); ++a) {
        for (Element b = 0; b < g.size(); ++b) {
            if (b)
                out += ' ';
            out += std::to_string(g(a, b));
        }
        out += '\n';
    }
    return out;
}

} // namespace cig
