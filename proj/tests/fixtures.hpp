#ifndef VOALAB_TEST_FIXTURES_HPP
#define VOALAB_TEST_FIXTURES_HPP

// Shared lattice fixtures for the test suites: the rank-one root lattice, its
// orthogonal powers, and the sublattices and named vectors used throughout.

#include <vector>

#include "voalab/lattice.hpp"

namespace fix {

using namespace voalab;

inline std::vector<std::vector<Int>> diag_gram(const std::vector<long>& d) {
    std::vector<std::vector<Int>> g(d.size(), std::vector<Int>(d.size(), Int(0)));
    for (size_t i = 0; i < d.size(); ++i) g[i][i] = Int(d[i]);
    return g;
}

inline LatticePtr a1() {
    static LatticePtr l = Lattice::create("A1", diag_gram({2}));
    return l;
}

inline LatticePtr a1x2() {
    static LatticePtr l = Lattice::create("A1x2", diag_gram({2, 2}));
    return l;
}

inline LatticePtr a1x3() {
    static LatticePtr l = Lattice::create("A1x3", diag_gram({2, 2, 2}));
    return l;
}

inline LatticePtr a1x4() {
    static LatticePtr l = Lattice::create("A1x4", diag_gram({2, 2, 2, 2}));
    return l;
}

inline LatticePtr gamma12() {
    static LatticePtr l = Lattice::create("Gamma12", diag_gram({12, 4}));
    return l;
}

inline LatticePtr zh8() {
    static LatticePtr l = Lattice::create("ZH", diag_gram({8}));
    return l;
}

inline LatticePtr zgamma6() {
    static LatticePtr l = Lattice::create("Zgamma", diag_gram({6}));
    return l;
}

inline QVec qv(const LatticePtr& l, const std::vector<long>& coords) {
    return QVec::from_ints(l, coords);
}

// sqrt(2)A3 inside A1^4, generated by the consecutive differences.
inline Sublattice sqrt2a3() {
    auto l = a1x4();
    return Sublattice("sqrt2A3", l,
                      {qv(l, {1, -1, 0, 0}), qv(l, {0, 1, -1, 0}), qv(l, {0, 0, 1, -1})});
}

// ZH + sqrt(2)A3 inside A1^4 (full rank, index 4).
inline Sublattice zh_plus_a3() {
    auto l = a1x4();
    return Sublattice("ZH+sqrt2A3", l,
                      {qv(l, {1, 1, 1, 1}), qv(l, {1, -1, 0, 0}), qv(l, {0, 1, -1, 0}),
                       qv(l, {0, 0, 1, -1})});
}

inline Sublattice zh_sub() {
    return Sublattice("ZH", a1x4(), {qv(a1x4(), {1, 1, 1, 1})});
}

// N = <beta_1, beta_2, beta_3> inside A1^3.
inline Sublattice n_sub() {
    auto l = a1x3();
    return Sublattice("N", l, {qv(l, {1, 1, 0}), qv(l, {0, -1, 1}), qv(l, {-1, 1, 0})});
}

// P = Z gamma_1 + Z gamma_2 + Z gamma inside A1^3 (index 6).
inline Sublattice p_sub() {
    auto l = a1x3();
    return Sublattice("P", l, {qv(l, {1, -2, 1}), qv(l, {1, 0, -1}), qv(l, {1, 1, 1})});
}

inline Sublattice zgamma_sub() { return Sublattice("Zgamma", a1x3(), {qv(a1x3(), {1, 1, 1})}); }
inline Sublattice zgamma1_sub() {
    return Sublattice("Zgamma1", a1x3(), {qv(a1x3(), {1, -2, 1})});
}
inline Sublattice zgamma2_sub() {
    return Sublattice("Zgamma2", a1x3(), {qv(a1x3(), {1, 0, -1})});
}

inline Isometry tau_a1x4() {
    auto l = a1x4();
    return Isometry::on_lattice(
        "tau", l, {qv(l, {0, 1, 0, 0}), qv(l, {0, 0, 1, 0}), qv(l, {0, 0, 0, 1}),
                   qv(l, {1, 0, 0, 0})});
}

inline Isometry tau_tilde() {
    auto l = a1x3();
    return Isometry::on_lattice(
        "tauTilde", l, {qv(l, {0, 0, 1}), qv(l, {0, -1, 0}), qv(l, {-1, 0, 0})});
}

inline Isometry t13() {
    auto l = a1x3();
    return Isometry::on_lattice(
        "t13", l, {qv(l, {0, 0, 1}), qv(l, {0, 1, 0}), qv(l, {1, 0, 0})});
}

// N ~ sqrt(2)A3 via beta_i <-> alpha_i - alpha_{i+1}.
inline Isometry nu() {
    auto t = a1x4();
    return Isometry::between("nu", n_sub(), t,
                             {qv(t, {1, -1, 0, 0}), qv(t, {0, 1, -1, 0}), qv(t, {0, 0, 1, -1})});
}

}  // namespace fix

#endif
