#include "voalab/rational.hpp"

#include <cctype>
#include <ostream>
#include <utility>
#include <vector>

namespace voalab {

Rat parse_rat(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty rational literal");
    size_t pos = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (pos == t.size()) throw ParseError("bad rational literal '" + text + "'");
    bool slash = false;
    for (size_t k = pos; k < t.size(); ++k) {
        if (t[k] == '/') {
            if (slash || k + 1 == t.size() || k == pos)
                throw ParseError("bad rational literal '" + text + "'");
            slash = true;
        } else if (!std::isdigit(static_cast<unsigned char>(t[k]))) {
            throw ParseError("bad rational literal '" + text + "'");
        }
    }
    Rat r;
    if (r.set_str(t, 10) != 0) throw ParseError("bad rational literal '" + text + "'");
    if (r.get_den() == 0) throw DivisionByZeroError("rational with zero denominator");
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

std::string GaussScalar::to_string() const {
    if (im_ == 0) return re_.get_str();
    std::string ipart = im_.get_str() + "*i";
    if (re_ == 0) return ipart;
    if (im_ > 0) return re_.get_str() + "+" + ipart;
    return re_.get_str() + "-" + Rat(-im_).get_str() + "*i";
}

std::ostream& operator<<(std::ostream& os, const GaussScalar& s) {
    return os << s.to_string();
}

GaussScalar phase(const Rat& r) {
    Rat q = r * 4;
    if (q.get_den() != 1)
        throw PhaseError("phase exponent " + r.get_str() +
                         " has denominator not dividing 4; not representable in Q(i)");
    Int n = q.get_num() % 4;
    if (n < 0) n += 4;
    switch (n.get_si()) {
        case 0: return GaussScalar(1);
        case 1: return GaussScalar::i();
        case 2: return GaussScalar(-1);
        default: return -GaussScalar::i();
    }
}

GaussScalar parse_gauss(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty scalar literal");

    // Split into at most two signed pieces; each piece is rational or rational*i.
    std::vector<std::pair<char, std::string>> pieces;
    size_t k = 0;
    while (k < t.size()) {
        char sign = '+';
        if (t[k] == '+' || t[k] == '-') sign = t[k++];
        size_t start = k;
        while (k < t.size() && t[k] != '+' && t[k] != '-') ++k;
        pieces.push_back({sign, t.substr(start, k - start)});
    }
    if (pieces.empty() || pieces.size() > 2)
        throw ParseError("bad scalar literal '" + text + "'");

    Rat re(0), im(0);
    bool saw_re = false, saw_im = false;
    for (auto& [sign, body] : pieces) {
        bool imaginary = false;
        std::string num = body;
        if (!body.empty() && body.back() == 'i') {
            imaginary = true;
            num = body.substr(0, body.size() - 1);
            if (!num.empty() && num.back() == '*') num.pop_back();
            if (num.empty()) num = "1";
        }
        Rat v = parse_rat(num);
        if (sign == '-') v = -v;
        if (imaginary) {
            if (saw_im) throw ParseError("bad scalar literal '" + text + "'");
            im = v;
            saw_im = true;
        } else {
            if (saw_re) throw ParseError("bad scalar literal '" + text + "'");
            re = v;
            saw_re = true;
        }
    }
    return GaussScalar(re, im);
}

}  // namespace voalab
