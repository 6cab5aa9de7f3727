#include "mms/rational.hpp"

#include "mms/error.hpp"

#include <cctype>

namespace mms {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    mpz_class num;
    mpz_class den = 1;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto p = s.substr(0, slash);
        const auto q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) bad(text);
        num = mpz_class(std::string(p), 10);
        den = mpz_class(std::string(q), 10);
        if (den == 0) bad(text);
    } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto ip = s.substr(0, dot);
        const auto fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) bad(text);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) bad(text);
        const std::string digits = std::string(ip) + std::string(fp);
        num = mpz_class(digits, 10);
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    } else {
        if (!all_digits(s)) bad(text);
        num = mpz_class(std::string(s), 10);
    }
    if (negative) num = -num;
    return Rational(num, den);
}

std::string Rational::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

}  // namespace mms
