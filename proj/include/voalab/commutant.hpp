#ifndef VOALAB_COMMUTANT_HPP
#define VOALAB_COMMUTANT_HPP

#include <functional>
#include <string>
#include <vector>

#include "voalab/autos.hpp"
#include "voalab/fock.hpp"
#include "voalab/vertex.hpp"

namespace voalab {

// A graded subspace of V_L computed by the engine (commutant kernel, orbifold
// fixed points, image, intersection), sealed per grade in canonical form.
struct ComputedSubspace {
    std::string provenance;
    const GradedBasis* ambient = nullptr;
    std::vector<Subspace> by_grade;

    int cutoff() const { return static_cast<int>(by_grade.size()) - 1; }
    std::vector<int> dims() const;
    bool operator==(const ComputedSubspace& o) const { return by_grade == o.by_grade; }
};

// Run fn(grade) for every grade in [0, W] on up to `jobs` threads.
void parallel_grades(int W, int jobs, const std::function<void(int)>& fn);

ComputedSubspace whole_space(const GradedBasis& basis, int W);

// Span of the basis monomials whose lattice point satisfies the filter; covers
// sublattice VOAs V_S and coset-module sums inside V_L.
ComputedSubspace point_filtered_subspace(const GradedBasis& basis, int W,
                                         const std::function<bool(const QVec&)>& keep,
                                         std::string provenance);

// Com_V(e) per grade as ker(e_(0): V_n -> V_{n+1}); e must be certified
// conformal by the caller.  Needs one grade of headroom in the basis.
ComputedSubspace commutant_dims(const GradedBasis& basis, const StateVector& e, int W,
                                int jobs = 1);

// Kernel of e_(0) restricted to a computed subspace.
ComputedSubspace commutant_within(const ComputedSubspace& sub, const StateVector& e, int W,
                                  int jobs = 1);

// Gradewise fixed points of G inside sub; every generator must map each grade
// of sub into itself.  The restricted Burnside count is asserted.
ComputedSubspace orbifold(const ComputedSubspace& sub, const AutGroup& g, int W);

// Gradewise image under an automorphism, re-echelonized.
ComputedSubspace image_subspace(const Automorphism& a, const ComputedSubspace& sub);

struct CheckRow {
    std::string check;
    int grade;
    long long lhs, rhs;
    bool ok;
};

std::string format_row(const CheckRow& row);

// Com_V(e1+e2) vs Com_{Com_V(e1)}(e2), gradewise; rows carry both dims.
std::vector<CheckRow> verify_nested(const StateVector& e1, const StateVector& e2,
                                    const GradedBasis& basis, int W, int jobs = 1);

// (Com_V(e))^G vs Com_{V^G}(e), gradewise; every g in G must fix e exactly.
std::vector<CheckRow> verify_orbifold_coset(const StateVector& e, const AutGroup& g,
                                            const GradedBasis& basis, int W, int jobs = 1);

// Full-annihilation cross-check on low grades: every vector of sub is killed
// by all nonnegative modes of the given generating states.
bool annihilation_check(const ComputedSubspace& sub, const std::vector<StateVector>& gens,
                        int max_grade);

}  // namespace voalab

#endif
