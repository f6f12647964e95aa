#include "eden/rational.hpp"

#include <cctype>
#include <sstream>

#include "eden/common.hpp"

namespace eden {

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

Rat make_rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat rat_from_string(std::string_view s) {
    std::string str(s);
    if (str.empty()) throw decode_error("empty rational literal");
    for (char c : str) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-' && c != '+')
            throw decode_error("bad rational literal: " + str);
    }
    Rat q;
    if (q.set_str(str, 10) != 0) throw decode_error("bad rational literal: " + str);
    if (q.get_den() == 0) throw decode_error("zero denominator: " + str);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

Rat harmonic(uint64_t n) {
    Rat h = 0;
    for (uint64_t i = 1; i <= n; ++i) h += Rat(1, static_cast<unsigned long>(i));
    return h;
}

Int rat_floor(const Rat& q) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

Int rat_ceil(const Rat& q) {
    Int out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

namespace {

// Enclosure of atanh(y) for 0 <= y < 1:
//   lower = partial sum, upper = lower + geometric tail bound.
LnBounds atanh_bounds(const Rat& y, unsigned terms) {
    Rat y2 = y * y;
    Rat pow = y;
    Rat sum = 0;
    for (unsigned j = 0; j < terms; ++j) {
        sum += pow / Rat(2 * j + 1);
        pow *= y2;
    }
    // tail = sum_{j>=terms} y^(2j+1)/(2j+1) <= y^(2*terms+1)/(2*terms+1) * 1/(1-y^2)
    Rat tail = pow / Rat(2 * terms + 1) / (Rat(1) - y2);
    return {sum, sum + tail};
}

}  // namespace

LnBounds ln_bounds(const Rat& x, unsigned terms) {
    if (x <= 0) throw decode_error("ln_bounds requires a positive argument");
    if (x == 1) return {Rat(0), Rat(0)};
    if (x < 1) {
        LnBounds inv = ln_bounds(Rat(1) / x, terms);
        return {-inv.upper, -inv.lower};
    }
    Rat m = x;
    unsigned halvings = 0;
    while (m > 2) {
        m /= 2;
        ++halvings;
    }
    LnBounds b = atanh_bounds((m - 1) / (m + 1), terms);
    b.lower *= 2;
    b.upper *= 2;
    if (halvings > 0) {
        LnBounds ln2 = atanh_bounds(make_rat(1, 3), terms);
        b.lower += Rat(2 * halvings) * ln2.lower;
        b.upper += Rat(2 * halvings) * ln2.upper;
    }
    return b;
}

}  // namespace eden
