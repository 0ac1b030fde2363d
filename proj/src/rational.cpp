#include <wcoj/rational.hpp>

#include <wcoj/error.hpp>

#include <cctype>


namespace wcoj {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view s, std::string_view whole)
{
    std::size_t start = (not s.empty() and (s[0] == '-' or s[0] == '+')) ? 1 : 0;
    if (s.size() == start)
        throw InvalidInput("malformed fraction '" + std::string(whole) + "'");
    for (std::size_t i = start; i != s.size(); ++i)
        if (not std::isdigit(static_cast<unsigned char>(s[i])))
            throw InvalidInput("malformed fraction '" + std::string(whole) + "'");
    return boost::multiprecision::cpp_int(std::string(s[0] == '+' ? s.substr(1) : s));
}

}

Rational parse_rational(std::string_view text)
{
    while (not text.empty() and std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (not text.empty() and std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    auto num = parse_integer(text.substr(0, slash), text);
    auto den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string format_rational(const Rational &r)
{
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational &r)
{
    return r.convert_to<double>();
}

}
