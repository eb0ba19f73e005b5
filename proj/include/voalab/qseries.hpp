#ifndef VOALAB_QSERIES_HPP
#define VOALAB_QSERIES_HPP

#include <string>
#include <vector>

#include "voalab/lattice.hpp"

namespace voalab {

// Truncated formal q-series on the quarter-integer exponent grid: the
// coefficient of q^{p/4} sits at index p, 0 <= p <= 4W.  Exact coefficients;
// multiplication truncates at the grid end.
class IntSeries {
public:
    explicit IntSeries(int cutoff_w) : w4_(4 * cutoff_w), c_(w4_ + 1) {}

    int grid_max() const { return w4_; }
    int cutoff() const { return w4_ / 4; }
    const GaussScalar& at4(int p) const { return c_.at(p); }
    GaussScalar& at4(int p) { return c_.at(p); }
    const GaussScalar& coeff_int(int n) const { return c_.at(4 * n); }

    IntSeries& operator+=(const IntSeries& o);
    IntSeries& operator-=(const IntSeries& o);
    friend IntSeries operator+(IntSeries a, const IntSeries& b) { return a += b; }
    friend IntSeries operator-(IntSeries a, const IntSeries& b) { return a -= b; }
    IntSeries operator*(const IntSeries& o) const;
    IntSeries scaled(const GaussScalar& s) const;
    bool operator==(const IntSeries& o) const { return w4_ == o.w4_ && c_ == o.c_; }

    static IntSeries one(int cutoff_w);

    // Lines "q^(p/4): c" for the nonzero coefficients, ascending exponents.
    std::string to_string() const;

private:
    int w4_;
    std::vector<GaussScalar> c_;
};

// Theta series of shift + S truncated at q^W: sum over lambda in the coset of
// q^{<lambda,lambda>/2}.  The shift must keep the weights on the 1/4 grid.
IntSeries theta_series(const Sublattice& s, const QVec& shift, int W);
IntSeries theta_series(const LatticePtr& lat, int W);

// Phase-weighted theta: sum phase(<h,lambda>) q^{<lambda,lambda>/2}.
IntSeries phase_theta_series(const Sublattice& s, const QVec& h, int W);

// prod_{n>=1} (1-q^n)^{-plus} (1+q^n)^{-minus}, truncated.
IntSeries euler_factor(int plus, int minus, int W);

// Graded dimensions of the lattice VOA (or of a shifted-coset module):
// theta over the rank-power Euler product.
IntSeries voa_character(const LatticePtr& lat, int W);
IntSeries voa_character(const Sublattice& s, const QVec& shift, int W);

// Closed-form twisted character of inn_h composed with the lift of a diagonal
// +-1 isometry: phase-weighted theta over the fixed sublattice times the
// sign-adjusted Heisenberg factor.
IntSeries twisted_character_closed(const LatticePtr& lat, const QVec& h,
                                   const std::vector<int>& diag, int W);

}  // namespace voalab

#endif
