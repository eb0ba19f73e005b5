#include "voalab/qseries.hpp"

#include <sstream>

namespace voalab {

IntSeries& IntSeries::operator+=(const IntSeries& o) {
    if (w4_ != o.w4_) throw DomainError("adding series on different grids");
    for (int p = 0; p <= w4_; ++p) c_[p] += o.c_[p];
    return *this;
}

IntSeries& IntSeries::operator-=(const IntSeries& o) {
    if (w4_ != o.w4_) throw DomainError("subtracting series on different grids");
    for (int p = 0; p <= w4_; ++p) c_[p] -= o.c_[p];
    return *this;
}

IntSeries IntSeries::operator*(const IntSeries& o) const {
    if (w4_ != o.w4_) throw DomainError("multiplying series on different grids");
    IntSeries out(w4_ / 4);
    for (int p = 0; p <= w4_; ++p) {
        if (c_[p].is_zero()) continue;
        for (int q = 0; p + q <= w4_; ++q) {
            if (o.c_[q].is_zero()) continue;
            out.c_[p + q] += c_[p] * o.c_[q];
        }
    }
    return out;
}

IntSeries IntSeries::scaled(const GaussScalar& s) const {
    IntSeries out(w4_ / 4);
    for (int p = 0; p <= w4_; ++p) out.c_[p] = c_[p] * s;
    return out;
}

IntSeries IntSeries::one(int cutoff_w) {
    IntSeries s(cutoff_w);
    s.at4(0) = GaussScalar(1);
    return s;
}

std::string IntSeries::to_string() const {
    std::ostringstream os;
    for (int p = 0; p <= w4_; ++p) {
        if (c_[p].is_zero()) continue;
        os << "q^(" << p << "/4): " << c_[p] << "\n";
    }
    return os.str();
}

namespace {

IntSeries theta_from_vectors(const std::vector<QVec>& pts, const QVec* h, int W) {
    IntSeries out(W);
    for (const auto& lam : pts) {
        Rat wt = inner(lam, lam) / 2;
        Rat grid = wt * 4;
        if (grid.get_den() != 1)
            throw DomainError("theta series weight " + wt.get_str() +
                              " is off the quarter-integer grid");
        long p = grid.get_num().get_si();
        if (p > 4 * W) continue;  // box enumeration can overshoot slightly
        GaussScalar coeff(1);
        if (h) coeff = phase(inner(*h, lam));
        out.at4(static_cast<int>(p)) += coeff;
    }
    return out;
}

}  // namespace

IntSeries theta_series(const Sublattice& s, const QVec& shift, int W) {
    auto pts = coset_vectors_up_to_norm(s, shift, Rat(2 * W));
    return theta_from_vectors(pts, nullptr, W);
}

IntSeries theta_series(const LatticePtr& lat, int W) {
    auto pts = vectors_up_to_norm(lat, Rat(2 * W));
    return theta_from_vectors(pts, nullptr, W);
}

IntSeries phase_theta_series(const Sublattice& s, const QVec& h, int W) {
    auto pts = vectors_up_to_norm(s, Rat(2 * W));
    return theta_from_vectors(pts, &h, W);
}

IntSeries euler_factor(int plus, int minus, int W) {
    IntSeries out = IntSeries::one(W);
    for (int n = 1; n <= W; ++n) {
        IntSeries geom(W);  // 1/(1-q^n) = sum q^{nk}
        for (int k = 0; 4 * n * k <= 4 * W; ++k) geom.at4(4 * n * k) = GaussScalar(1);
        for (int t = 0; t < plus; ++t) out = out * geom;
        IntSeries alt(W);  // 1/(1+q^n) = sum (-1)^k q^{nk}
        for (int k = 0; 4 * n * k <= 4 * W; ++k)
            alt.at4(4 * n * k) = GaussScalar(k % 2 == 0 ? 1 : -1);
        for (int t = 0; t < minus; ++t) out = out * alt;
    }
    return out;
}

IntSeries voa_character(const LatticePtr& lat, int W) {
    return theta_series(lat, W) * euler_factor(lat->rank(), 0, W);
}

IntSeries voa_character(const Sublattice& s, const QVec& shift, int W) {
    return theta_series(s, shift, W) * euler_factor(s.rank(), 0, W);
}

IntSeries twisted_character_closed(const LatticePtr& lat, const QVec& h,
                                   const std::vector<int>& diag, int W) {
    const int d = lat->rank();
    if (static_cast<int>(diag.size()) != d)
        throw DomainError("twisted_character_closed: diagonal length mismatch");
    int minus = 0;
    std::vector<QVec> fixed_gens;
    for (int i = 0; i < d; ++i) {
        if (diag[i] == 1)
            fixed_gens.push_back(QVec::basis(lat, i));
        else if (diag[i] == -1)
            ++minus;
        else
            throw DomainError("twisted_character_closed: diagonal entries must be +-1");
    }
    IntSeries theta = IntSeries::one(W);
    if (!fixed_gens.empty()) {
        Sublattice fix("fixed", lat, fixed_gens);
        theta = phase_theta_series(fix, h, W);
    }
    return theta * euler_factor(d - minus, minus, W);
}

}  // namespace voalab
