#ifndef VOALAB_AUTOS_HPP
#define VOALAB_AUTOS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "voalab/fock.hpp"
#include "voalab/qseries.hpp"
#include "voalab/vertex.hpp"

namespace voalab {

struct AutoNode;

// An automorphism of V_L given as an expression over lifted isometries, inner
// automorphisms, generator-propagated maps, compositions and inverses, with
// per-grade matrices cached against a session basis.
class Automorphism {
public:
    Automorphism() = default;

    static Automorphism identity(const LatticePtr& lat);
    // Lift of a self-isometry: h(-n) -> (gh)(-n), e^mu -> e^{g mu}; sign-free
    // in the split-cocycle class.
    static Automorphism lifted(const Isometry& g);
    // inn_h = exp(2 pi i h_(0)): fixes the Heisenberg part, scales e^mu by
    // phase(<h,mu>).  Requires 4<h,b_i> integral on the lattice basis.
    static Automorphism inner(const QVec& h);
    // Extension of weight-1 images to all grades by letterwise propagation;
    // existence and consistency are verified when matrices are built.
    static Automorphism propagated(std::string label, const LatticePtr& lat,
                                   std::map<Monomial, StateVector> images);
    // The order-2 involution of a rank-one norm-2 tensor block, swapping the
    // Cartan direction with e^alpha + e^{-alpha}.
    static Automorphism sigma_block(const LatticePtr& lat, int block);
    static Automorphism compose(std::vector<Automorphism> factors);  // rightmost acts first
    static Automorphism inverse(Automorphism a);

    bool valid() const { return node_ != nullptr; }
    const LatticePtr& lattice() const;
    std::string describe() const;

    StateVector apply(const StateVector& v, const GradedBasis& basis) const;
    const Matrix& matrix(int grade, const GradedBasis& basis) const;
    GaussScalar trace_on_grade(int n, const GradedBasis& basis) const;
    bool equal_on_grades(const Automorphism& other, const GradedBasis& basis, int W) const;
    // Least k <= bound with a^k = id on all grades <= W.
    int order_of(const GradedBasis& basis, int W, int bound = 64) const;

    // Normal form inn_h * lift(diag) when the expression reduces to one;
    // the hook for closed-form twisted characters.
    std::optional<std::pair<QVec, std::vector<int>>> inn_lift_form() const;

private:
    explicit Automorphism(std::shared_ptr<const AutoNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const AutoNode> node_;
};

// Asserts the automorphism axioms that are cheap to check: fixes the vacuum,
// fixes the Virasoro vector, and is invertible on low grades.
void verify_automorphism(const Automorphism& a, const GradedBasis& basis);

// A finite automorphism group: generators plus the closed element list.
struct AutGroup {
    std::vector<Automorphism> generators;
    std::vector<Automorphism> elements;  // identity first
    int closure_cutoff = 0;              // grades used for the equality predicate
};

AutGroup close_group(std::vector<Automorphism> generators, const GradedBasis& basis, int W,
                     int bound = 64);

// Simultaneous fixed space of the generators at grade n, with the Burnside
// count (average of traces over all elements) asserted against the dimension.
Subspace fixed_space(const AutGroup& g, int n, const GradedBasis& basis);

struct TwistedCharacter {
    IntSeries series;
    bool closed_form;  // false = linear-algebra trace fallback
};

// Trace series sum_n tr(a | V_n) q^n; closed form for inn*lift shapes (then
// asserted against matrix traces), matrix traces otherwise.
TwistedCharacter twisted_character(const Automorphism& a, const GradedBasis& basis, int W);

// (1/|G|) sum_g twisted_character(g); coefficients must be nonnegative
// integers, or the group closure / traces are inconsistent.
IntSeries burnside_orbifold_dims(const AutGroup& g, const GradedBasis& basis, int W);

}  // namespace voalab

#endif
