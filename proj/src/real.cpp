#include "modeq/real.hpp"

#include <cstdlib>
#include <stdexcept>

namespace modeq {

Real Real::parse(const std::string& text, long prec_bits) {
    Real r(prec_bits);
    if (mpfr_set_str(r.raw(), text.c_str(), 10, MPFR_RNDN) != 0) {
        throw std::invalid_argument("not a decimal number: '" + text + "'");
    }
    return r;
}

namespace {

std::string format_digits(const char* digits, mpfr_exp_t exp10) {
    std::string d(digits);
    std::string sign;
    if (!d.empty() && d[0] == '-') {
        sign = "-";
        d.erase(0, 1);
    }
    // mpfr_get_str semantics: value = 0.<digits> * 10^exp10
    std::string out = sign + d.substr(0, 1);
    if (d.size() > 1) out += "." + d.substr(1);
    out += "e" + std::to_string(static_cast<long>(exp10 - 1));
    return out;
}

} // namespace

std::string Real::str() const { return str(0); }

std::string Real::str(size_t digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
    if (mpfr_zero_p(v_)) return mpfr_signbit(v_) ? "-0" : "0";
    mpfr_exp_t exp10 = 0;
    char* s = mpfr_get_str(nullptr, &exp10, 10, digits, v_, MPFR_RNDN);
    std::string out = format_digits(s, exp10);
    mpfr_free_str(s);
    return out;
}

} // namespace modeq
