#include "hotshare/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "hotshare/errors.hpp"

namespace hotshare {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// "123.456" style (no sign, no exponent) -> exact rational.
Rat parse_plain_decimal(const std::string& s) {
    auto dot = s.find('.');
    std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw ParseError("empty number");
    if (!ip.empty() && !all_digits(ip)) throw ParseError("bad number: " + s);
    if (!fp.empty() && !all_digits(fp)) throw ParseError("bad number: " + s);
    mpz_class num(ip.empty() ? std::string("0") : ip);
    mpz_class den(1);
    for (char c : fp) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
}

} // namespace

Rat parse_rational(const std::string& text_in) {
    std::string s;
    for (char c : text_in)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty rational literal");

    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) throw ParseError("bad rational literal: " + text_in);

    Rat value;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (!all_digits(ns) || !all_digits(ds)) throw ParseError("bad rational literal: " + text_in);
        mpz_class n(ns), d(ds);
        if (d == 0) throw ParseError("zero denominator: " + text_in);
        value = Rat(n, d);
        value.canonicalize();
    } else {
        // Optional exponent on a decimal literal.
        long exp10 = 0;
        auto e = s.find_first_of("eE");
        if (e != std::string::npos) {
            std::string es = s.substr(e + 1);
            s = s.substr(0, e);
            if (es.empty()) throw ParseError("bad exponent: " + text_in);
            char* end = nullptr;
            exp10 = std::strtol(es.c_str(), &end, 10);
            if (end == nullptr || *end != '\0') throw ParseError("bad exponent: " + text_in);
        }
        value = parse_plain_decimal(s);
        if (exp10 > 0) {
            mpz_class p10(1);
            for (long i = 0; i < exp10; ++i) p10 *= 10;
            value *= Rat(p10);
        } else if (exp10 < 0) {
            mpz_class p10(1);
            for (long i = 0; i < -exp10; ++i) p10 *= 10;
            value /= Rat(p10);
        }
        value.canonicalize();
    }
    if (neg) value = -value;
    return value;
}

std::string rat_to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string rat_to_decimal(const Rat& x, int digits) {
    if (digits < 1) digits = 1;
    if (x == 0) return "0";
    mpz_class num = x.get_num();
    mpz_class den = x.get_den();
    bool neg = num < 0;
    if (neg) num = -num;

    // Find decimal exponent e with 10^e <= num/den < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10)) + 1;
    auto cmp_pow = [&](long k) {
        // compare num/den against 10^k
        mpz_class l = num, r = den;
        if (k >= 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
            r *= p;
        } else {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-k));
            l *= p;
        }
        return cmp(l, r); // <0, 0, >0
    };
    while (cmp_pow(e) < 0) --e;
    while (cmp_pow(e + 1) >= 0) ++e;

    // digits significant digits: value = D * 10^(e - digits + 1), D has `digits` digits.
    long shift = digits - 1 - e;
    mpz_class scaled_num = num, scaled_den = den;
    if (shift >= 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        scaled_num *= p;
    } else {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        scaled_den *= p;
    }
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
    // Round half to even.
    mpz_class twice_r = r * 2;
    int c = cmp(twice_r, scaled_den);
    if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t())))
        q += 1;
    std::string dig = q.get_str();
    if (static_cast<long>(dig.size()) > digits) { // rounding carried into a new digit
        ++e;
        dig.pop_back(); // trailing zero from the carry
    }

    // Render: plain decimal for moderate exponents, scientific otherwise.
    std::string out;
    if (e >= -4 && e < digits + 3) {
        if (e >= 0) {
            long ip = e + 1;
            if (ip >= static_cast<long>(dig.size()))
                out = dig + std::string(ip - dig.size(), '0');
            else
                out = dig.substr(0, ip) + "." + dig.substr(ip);
        } else {
            out = "0." + std::string(-e - 1, '0') + dig;
        }
    } else {
        out = dig.substr(0, 1);
        if (dig.size() > 1) out += "." + dig.substr(1);
        out += "e" + std::to_string(e);
    }
    // Trim trailing zeros in a fractional part (keep bytes canonical).
    if (out.find('.') != std::string::npos && out.find('e') == std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return neg ? "-" + out : out;
}

} // namespace hotshare
