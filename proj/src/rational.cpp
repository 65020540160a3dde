#include "ia/rational.hpp"

#include <fmt/format.h>

#include <cctype>

#include "ia/errors.hpp"

namespace ia {

std::string format_fraction(const Rational& q) {
    mpq_class c(q);
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string format_decimal(const Rational& q) {
    // 128 bits of mantissa keeps 12 significant digits honest even when
    // the value is far outside double range.
    mpf_class f(q, 128);
    mp_exp_t exp = 0;
    std::string digits = f.get_str(exp, 10, 12);
    if (digits.empty() || digits == "0") return "0";
    bool neg = digits.front() == '-';
    if (neg) digits.erase(0, 1);
    std::string out;
    if (exp > 0 && exp <= 15) {
        if (static_cast<std::size_t>(exp) >= digits.size()) {
            out = digits + std::string(exp - digits.size(), '0');
        } else {
            out = digits.substr(0, exp) + "." + digits.substr(exp);
        }
    } else if (exp <= 0 && exp > -6) {
        out = "0." + std::string(-exp, '0') + digits;
    } else {
        out = digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += fmt::format("e{}", exp - 1);
    }
    return neg ? "-" + out : out;
}

Rational parse_rational(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw InputError("empty number");
    auto bad = [&] { return InputError("not a rational number: '" + text + "'"); };
    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        auto digits_only = [](const std::string& x, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && !x.empty() && (x[0] == '-' || x[0] == '+')) i = 1;
            if (i >= x.size()) return false;
            for (; i < x.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
            }
            return true;
        };
        if (!digits_only(num, true) || !digits_only(den, false)) throw bad();
        if (num[0] == '+') num.erase(0, 1);
        mpz_class d(den);
        if (d == 0) throw InputError("zero denominator in '" + text + "'");
        Rational q(mpz_class(num), d);
        q.canonicalize();
        return q;
    }
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    std::string intpart, frac;
    bool seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            (seen_dot ? frac : intpart) += c;
        } else {
            throw bad();
        }
    }
    if (intpart.empty() && frac.empty()) throw bad();
    mpz_class num(intpart.empty() ? "0" : intpart);
    mpz_class den = 1;
    for (char c : frac) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    Rational q(neg ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
}

}  // namespace ia
