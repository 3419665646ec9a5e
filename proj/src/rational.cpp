#include "stocon/rational.hpp"

#include <cctype>
#include <ostream>

#include "stocon/errors.hpp"

namespace stocon {

namespace {

bool is_integer_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

} // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw MalformedInputError("rational with zero denominator");
    v_ = mpq_class(numerator, denominator);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_text(text)) {
            throw MalformedInputError("not a rational: '" + text + "'");
        }
        return Rational(mpq_class(mpz_class(text)));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-') {
        throw MalformedInputError("not a rational: '" + text + "'");
    }
    const mpz_class d(den);
    if (d == 0) throw MalformedInputError("rational with zero denominator: '" + text + "'");
    mpq_class v{mpz_class(num)};
    v /= mpq_class(d);
    return Rational(std::move(v));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw MalformedInputError("division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
}

std::string Rational::str() const {
    return numerator_str() + "/" + denominator_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace stocon
