#ifndef VOALAB_LATTICE_HPP
#define VOALAB_LATTICE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "voalab/rational.hpp"

namespace voalab {

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

// A positive-definite even lattice with an all-even integer Gram matrix.
// The pairwise-even restriction is what makes the trivial 2-cocycle valid,
// so the whole engine can work in the ordinary group algebra C[L].
class Lattice : public std::enable_shared_from_this<Lattice> {
public:
    static LatticePtr create(std::string name, std::vector<std::vector<Int>> gram);

    const std::string& name() const { return name_; }
    int rank() const { return rank_; }
    const Int& gram(int i, int j) const { return gram_[i][j]; }
    const std::vector<std::vector<Int>>& gram() const { return gram_; }
    Int det() const;

private:
    Lattice(std::string name, std::vector<std::vector<Int>> gram);
    std::string name_;
    int rank_;
    std::vector<std::vector<Int>> gram_;
};

// A rational-coordinate vector in the ambient space of a lattice, written in
// the lattice basis.  Integer coordinates mean a lattice point.
struct QVec {
    LatticePtr lat;
    std::vector<Rat> coords;

    QVec() = default;
    QVec(LatticePtr l, std::vector<Rat> c);
    static QVec zero(const LatticePtr& l);
    static QVec basis(const LatticePtr& l, int i);
    static QVec from_ints(const LatticePtr& l, const std::vector<long>& v);

    bool is_integral() const;
    bool is_zero() const;
    std::vector<Int> int_coords() const;  // requires is_integral()

    QVec operator+(const QVec& o) const;
    QVec operator-(const QVec& o) const;
    QVec operator-() const;
    QVec scaled(const Rat& c) const;
    bool operator==(const QVec& o) const;
    bool operator<(const QVec& o) const;  // lexicographic, same lattice only

    std::string to_string() const;
};

// Exact Gram inner product; both vectors must live over the same lattice.
Rat inner(const QVec& x, const QVec& y);

// Integer row-style Hermite normal form: upper echelon, positive pivots,
// entries above a pivot reduced into [0, pivot).  Returns the nonzero rows.
std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> rows);

// A sublattice given by integer generators; an HNF basis is computed once and
// backs membership tests and coset arithmetic.
class Sublattice {
public:
    Sublattice() = default;
    Sublattice(std::string name, LatticePtr parent, std::vector<QVec> generators);

    const std::string& name() const { return name_; }
    const LatticePtr& parent() const { return parent_; }
    const std::vector<QVec>& generators() const { return gens_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    bool is_full_rank() const { return rank() == parent_->rank(); }

    // HNF basis rows, as lattice points of the parent.
    std::vector<QVec> basis() const;
    const std::vector<std::vector<Int>>& basis_rows() const { return basis_; }

    bool contains(const QVec& v) const;
    // Coordinates of v in the HNF basis (exact); nullopt if v is outside Q*S.
    std::optional<std::vector<Rat>> coords_in_basis(const QVec& v) const;

    // Gram matrix of the HNF basis.
    std::vector<std::vector<Int>> basis_gram() const;

    // [parent : S] for full-rank S; verified against the Gram determinant.
    Int index_in_parent() const;

    // Unique representative of v + S inside the HNF fundamental box.
    QVec canonical_rep(const QVec& v) const;

    bool same_span(const Sublattice& other) const { return basis_ == other.basis_; }

private:
    std::string name_;
    LatticePtr parent_;
    std::vector<QVec> gens_;
    std::vector<std::vector<Int>> basis_;  // HNF rows
    std::vector<int> pivot_cols_;
};

// A verified linear isometry between (sub)lattice spans: images of the domain
// basis with an exact Gram match.  Self-isometries of a full lattice are the
// ones that lift to VOA automorphisms.
class Isometry {
public:
    // Full-lattice isometry: images[i] is the image of basis vector i.
    static Isometry on_lattice(std::string name, const LatticePtr& lat,
                               std::vector<QVec> images);
    // Span isometry: images[i] is the image of src.basis()[i] (HNF basis).
    static Isometry between(std::string name, const Sublattice& src,
                            const LatticePtr& dst_parent, std::vector<QVec> images);

    const std::string& name() const { return name_; }
    const LatticePtr& domain_lattice() const { return domain_; }
    const LatticePtr& target_lattice() const { return target_; }
    const std::vector<QVec>& domain_basis() const { return domain_basis_; }
    const std::vector<QVec>& images() const { return images_; }
    bool is_self() const { return self_; }

    // Applies the Q-linear extension; v must lie in the Q-span of the domain.
    QVec apply(const QVec& v) const;

    // Least k <= bound with g^k = id (self-isometries only).
    int order(int bound = 64) const;

private:
    std::string name_;
    LatticePtr domain_, target_;
    std::vector<QVec> domain_basis_;
    std::vector<QVec> images_;
    bool self_ = false;
};

// Restriction of a self-isometry to an invariant sublattice, written in the
// HNF basis of S; throws if S is not invariant.
std::vector<std::vector<Int>> restrict_isometry(const Isometry& g, const Sublattice& s);

// Exactly the points of S (or shift + S) with norm <= bound, sorted
// lexicographically by parent coordinates.  bound is on <v,v>.
std::vector<QVec> vectors_up_to_norm(const LatticePtr& lat, const Rat& bound);
std::vector<QVec> vectors_up_to_norm(const Sublattice& s, const Rat& bound);
std::vector<QVec> coset_vectors_up_to_norm(const Sublattice& s, const QVec& shift,
                                           const Rat& bound);

// Representatives of L/S for full-rank S, first representative 0; the count
// is verified against both the HNF determinant and the Gram index.
std::vector<QVec> coset_decomposition(const LatticePtr& lat, const Sublattice& s);

// Exact inverse of a rational matrix (Gauss-Jordan); throws on singular input.
std::vector<std::vector<Rat>> rational_matrix_inverse(std::vector<std::vector<Rat>> m);

// Inverse Gram matrix of a lattice.
std::vector<std::vector<Rat>> gram_inverse(const Lattice& lat);

// Parsed form of the lattice description file format.
struct LatticeFile {
    std::map<std::string, LatticePtr> lattices;
    std::map<std::string, Sublattice> sublattices;
    std::vector<std::string> order;  // declaration order, for printing
};

LatticeFile parse_lattice_file(const std::string& text);

}  // namespace voalab

#endif
