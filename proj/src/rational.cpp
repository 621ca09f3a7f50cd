#include "ominal/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace ominal {

std::string to_string(const Rational& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

std::string to_string(const Point& point) {
    std::string out = "(";
    for (size_t i = 0; i < point.size(); ++i) {
        if (i) out += ", ";
        out += to_string(point[i]);
    }
    out += ")";
    return out;
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(text));
        }
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

} // namespace ominal
