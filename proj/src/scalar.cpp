#include "crpinv/errors.hpp"
#include "crpinv/scalar.hpp"
#include "crpinv/subspace.hpp"

#include <cctype>

namespace crpinv
{
namespace
{

bool valid_integer(const std::string& s)
{
    std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (k == s.size())
        return false;
    for (; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("invalid rational entry '" + text + "'");
    if (num[0] == '+')
        num.erase(0, 1);

    Rational out;
    out.get_num().set_str(num, 10);
    out.get_den().set_str(den, 10);
    if (out.get_den() == 0)
        throw ParseError("zero denominator in '" + text + "'");
    out.canonicalize();
    return out;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string_view to_string(SubspaceKind kind)
{
    switch (kind) {
    case SubspaceKind::ColumnSpace:
        return "column-space";
    case SubspaceKind::RowSpace:
        return "row-space";
    case SubspaceKind::Nullspace:
        return "nullspace";
    case SubspaceKind::LeftNullspace:
        return "left-nullspace";
    }
    return "unknown";
}

} // namespace crpinv
