#ifndef VOALAB_VERTEX_HPP
#define VOALAB_VERTEX_HPP

#include <vector>

#include "voalab/fock.hpp"

namespace voalab {

// General integer binomial C(m, j) for j >= 0 (m may be negative).
Int binomial(long long m, long long j);

// Heisenberg mode beta(m) applied to a state: creation for m < 0, zero-mode
// pairing for m = 0, contraction via [beta(m), gamma(-n)] = m<beta,gamma>d_{m,n}
// for m > 0.  beta may have rational coordinates.
StateVector heis_apply(const QVec& beta, int m, const StateVector& v);

// Lattice vertex operator mode e^alpha_{(n)} in the split-cocycle class; alpha
// must be a lattice point.  Exact: the z-expansion is finite on every state.
StateVector exp_apply(const QVec& alpha, int n, const StateVector& v);

// General u_{(n)}v for u in the span of the graded monomial basis, by the
// iterate formula reducing one creation mode at a time.
StateVector mode_apply(const StateVector& u, int n, const StateVector& v);

// Virasoro vector of V_L: (1/2) sum_ij (G^{-1})_{ij} b_i(-1) b_j(-1) e^0.
StateVector lattice_virasoro(const LatticePtr& lat);

// Virasoro vector of the sub-VOA attached to the span of independent lattice
// vectors (rational Gram inverse; no orthonormalization needed).
StateVector span_virasoro(const std::vector<QVec>& span);
StateVector sublattice_virasoro(const Sublattice& s);

// Sugawara vector of an sl2 triple of weight-1 states at positive level k:
//   (1/(2(k+2))) * ( (1/2) H(-1)H + E(-1)F + F(-1)E ).
// The level-k relations are verified exactly before construction.
StateVector sugawara_sl2(const StateVector& E, const StateVector& H, const StateVector& F,
                         int k);

struct ConformalCertificate {
    StateVector e;
    Rat central_charge;
    int cutoff;
};

// Certifies e as a conformal vector: e_{(1)}e = 2e, e_{(2)}e = 0, e_{(3)}e =
// (c/2)1, and the Virasoro commutation relations as operator identities on
// every grade <= W-2 for |m|,|n| <= 2.  Throws ConformalError on failure.
ConformalCertificate is_conformal(const StateVector& e, const GradedBasis& basis, int W);

// True iff e1_{(n)} e2 = 0 for all n >= 0 (higher modes vanish by grading).
bool commuting_pair(const StateVector& e1, const StateVector& e2);

// Rewrites a state supported on a sublattice span into another lattice VOA
// along a linear map given on a frame: frame[k].first spans the sublattice in
// the source, frame[k].second is its image in the target; complement spans the
// orthogonal rest of the source.  Throws DomainError if the state has any
// component along the complement.
StateVector transport_state(const StateVector& v,
                            const std::vector<std::pair<QVec, QVec>>& frame,
                            const std::vector<QVec>& complement,
                            const LatticePtr& target);

}  // namespace voalab

#endif
