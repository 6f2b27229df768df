#include <cig/bol_moufang.hpp>

#include <algorithm>
#include <array>

namespace cig {

namespace {
    constexpr std::string_view orderings = "ABCDEF";
    constexpr std::array<std::string_view, 6> words = {"xxyz", "xyxz", "xyyz", "xyzx", "xyzy", "xyzz"};

    // Pairs (i, j) with 1 <= i < j <= 5 in lexicographic order.
    constexpr std::array<std::pair<int, int>, 10> bracket_pairs = {{
        {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5},
    }};

    auto bracket(int shape, const std::array<Term, 4> & w) -> Term
    {
        switch (shape) {
        case 1: return w[0] * (w[1] * (w[2] * w[3]));
        case 2: return w[0] * ((w[1] * w[2]) * w[3]);
        case 3: return (w[0] * w[1]) * (w[2] * w[3]);
        case 4: return (w[0] * (w[1] * w[2])) * w[3];
        case 5: return ((w[0] * w[1]) * w[2]) * w[3];
        }
        throw InvalidArgument("bracketing must be 1..5");
    }

    struct Row
    {
        VarietyName variety;
        const char * name;
        std::vector<const char *> members;
    };

    auto table1() -> const std::vector<Row> &
    {
        static const std::vector<Row> rows = {
            {VarietyName::C, "C", {"B45", "D24", "E12"}},
            {VarietyName::TwoSL, "2SL", {"A13", "A45", "C12", "C45", "F12", "F35"}},
            {VarietyName::X, "X", {"A24", "A25", "B24", "B25", "E14", "E24", "F14", "F24"}},
            {VarietyName::SL, "SL", {"A12", "A15", "A23", "A34", "A35", "B14", "B15", "B34", "B35", "C13", "C14",
                                        "C23", "C24", "C25", "C34", "C35", "D12", "D14", "D23", "D25", "D34", "D45",
                                        "E13", "E15", "E23", "E25", "F13", "F15", "F23", "F34", "F45"}},
            {VarietyName::T2, "T2", {"C15"}},
            {VarietyName::T1, "T1", {"A14", "F25"}},
            {VarietyName::S2, "S2", {"B12", "D15", "E45"}},
            {VarietyName::S1, "S1", {"B13", "B23", "D13", "D35", "E34", "E35"}},
        };
        return rows;
    }

    auto row_of(VarietyName v) -> const Row &
    {
        for (auto & r : table1())
            if (r.variety == v)
                return r;
        throw InvalidArgument("unknown variety");
    }
}

BMIdentity::BMIdentity(char ordering, int i, int j)
    : _ordering(ordering)
    , _i(i)
    , _j(j)
{
    if (orderings.find(ordering) == std::string_view::npos)
        throw InvalidArgument(std::string{"ordering must be one of A..F, got '"} + ordering + "'");
    if (i < 1 || j > 5 || i >= j)
        throw InvalidArgument("bracketings need 1 <= i < j <= 5");
}

auto BMIdentity::parse(std::string_view name) -> BMIdentity
{
    if (name.size() != 3 || ! std::isdigit(static_cast<unsigned char>(name[1])) ||
        ! std::isdigit(static_cast<unsigned char>(name[2])))
        throw ParseError("not a Bol-Moufang name: '" + std::string{name} + "'");
    try {
        return BMIdentity{name[0], name[1] - '0', name[2] - '0'};
    }
    catch (const InvalidArgument & e) {
        throw ParseError(e.what());
    }
}

auto BMIdentity::from_index(std::size_t index) -> BMIdentity
{
    if (index >= bm_count)
        throw InvalidArgument("Bol-Moufang index out of range");
    auto [i, j] = bracket_pairs[index % 10];
    return BMIdentity{orderings[index / 10], i, j};
}

auto BMIdentity::index() const -> std::size_t
{
    auto pair = std::find(bracket_pairs.begin(), bracket_pairs.end(), std::pair{_i, _j}) - bracket_pairs.begin();
    return orderings.find(_ordering) * 10 + static_cast<std::size_t>(pair);
}

auto BMIdentity::name() const -> std::string
{
    return std::string{_ordering} + std::to_string(_i) + std::to_string(_j);
}

auto BMIdentity::identity() const -> Identity
{
    auto word = words[orderings.find(_ordering)];
    std::array<Term, 4> w = {Term::variable(std::string{word[0]}), Term::variable(std::string{word[1]}),
        Term::variable(std::string{word[2]}), Term::variable(std::string{word[3]})};
    return {bracket(_i, w), bracket(_j, w)};
}

auto enumerate_bm() -> std::vector<BMIdentity>
{
    std::vector<BMIdentity> out;
    out.reserve(bm_count);
    for (std::size_t k = 0; k < bm_count; ++k)
        out.push_back(BMIdentity::from_index(k));
    return out;
}

auto dual(const BMIdentity & b) -> BMIdentity
{
    constexpr std::string_view dual_orderings = "FEDCBA"; // A'=F, B'=E, C'=C, D'=D ...
    auto letter = b.ordering();
    char d = letter == 'C' || letter == 'D' ? letter : dual_orderings[orderings.find(letter)];
    // i' = 6 - i, and the sides swap: (Xij)' = X'j'i'.
    return BMIdentity{d, 6 - b.right_bracketing(), 6 - b.left_bracketing()};
}

auto IdentityProfile::to_string() const -> std::string
{
    std::string out(bm_count, '0');
    for (std::size_t k = 0; k < bm_count; ++k)
        if (_bits[k])
            out[k] = '1';
    return out;
}

auto classify_bm(const CayleyTable & g) -> IdentityProfile
{
    IdentityProfile p;
    for (auto & b : enumerate_bm())
        p.set(b.index(), check_identity(g, b.identity()));
    return p;
}

auto all_varieties() -> std::vector<VarietyName>
{
    std::vector<VarietyName> out;
    for (auto & r : table1())
        out.push_back(r.variety);
    return out;
}

auto variety_name(VarietyName v) -> std::string { return row_of(v).name; }

auto parse_variety(std::string_view name) -> VarietyName
{
    for (auto & r : table1())
        if (name == r.name)
            return r.variety;
    throw ParseError("unknown variety '" + std::string{name} + "'");
}

auto table1_members(VarietyName v) -> std::vector<BMIdentity>
{
    std::vector<BMIdentity> out;
    for (auto m : row_of(v).members)
        out.push_back(BMIdentity::parse(m));
    std::sort(out.begin(), out.end(), [](auto & a, auto & b) { return a.index() < b.index(); });
    return out;
}

auto table1_class(const BMIdentity & b) -> VarietyName
{
    auto name = b.name();
    for (auto & r : table1())
        for (auto m : r.members)
            if (name == m)
                return r.variety;
    throw InvalidArgument("identity " + name + " is in no class");
}

auto defining_identity(VarietyName v) -> std::optional<Identity>
{
    if (v == VarietyName::C)
        return std::nullopt;
    return BMIdentity::parse(row_of(v).members.front()).identity();
}

auto included_in(VarietyName lower, VarietyName upper) -> bool
{
    using enum VarietyName;
    if (lower == upper || lower == SL || upper == C)
        return true;
    constexpr std::pair<VarietyName, VarietyName> strict[] = {
        {X, TwoSL},
        {T1, T2},
        {S1, S2},
    };
    return std::find(std::begin(strict), std::end(strict), std::pair{lower, upper}) != std::end(strict);
}

} // namespace cig
