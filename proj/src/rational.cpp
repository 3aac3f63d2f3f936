#include "oplab/rational.hpp"

#include <charconv>

namespace oplab {

namespace {

std::int64_t parse_int(std::string_view s, const std::string& whole) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ValidationError("invalid rational literal: '" + whole + "'");
    }
    return value;
}

}  // namespace

Rat parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rat(parse_int(text, text));
    }
    const std::int64_t num = parse_int(std::string_view(text).substr(0, slash), text);
    const std::int64_t den = parse_int(std::string_view(text).substr(slash + 1), text);
    if (den == 0) {
        throw ValidationError("zero denominator in rational literal: '" + text + "'");
    }
    return Rat(num, den);
}

std::string rational_to_string(const Rat& r) {
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace oplab
