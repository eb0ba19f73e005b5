#ifndef VOALAB_FOCK_HPP
#define VOALAB_FOCK_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "voalab/lattice.hpp"

namespace voalab {

// A Fock basis monomial: Heisenberg creation modes h_{(-n)} applied to a
// lattice point e^mu.  Modes are kept sorted (direction-major, n-descending)
// so equality is structural.
struct Monomial {
    std::vector<std::pair<int, int>> modes;  // (direction, n>0)
    std::vector<long> point;

    void canonicalize();
    long long mode_weight() const;
    long long weight(const Lattice& lat) const;

    bool operator==(const Monomial& o) const { return point == o.point && modes == o.modes; }
    bool operator<(const Monomial& o) const {
        if (point != o.point) return point < o.point;
        return modes < o.modes;
    }
    std::string to_string() const;
};

Monomial vacuum_monomial(int rank);
Monomial point_monomial(const QVec& mu);  // mu integral

// A finite Q(i)-linear combination of monomials over one lattice.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(LatticePtr lat) : lat_(std::move(lat)) {}

    static StateVector vacuum(const LatticePtr& lat);
    static StateVector monomial(const LatticePtr& lat, Monomial m, GaussScalar c = GaussScalar(1));
    static StateVector point(const QVec& mu, GaussScalar c = GaussScalar(1));

    const LatticePtr& lattice() const { return lat_; }
    const std::map<Monomial, GaussScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add(const Monomial& m, const GaussScalar& c);
    StateVector& operator+=(const StateVector& o);
    StateVector& operator-=(const StateVector& o);
    StateVector scaled(const GaussScalar& c) const;
    friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
    friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
    bool operator==(const StateVector& o) const {
        return lat_ == o.lat_ && terms_ == o.terms_;
    }

    // Weight if every term has the same weight, nullopt otherwise.
    std::optional<long long> homogeneous_weight() const;

    std::string to_string() const;

private:
    LatticePtr lat_;
    std::map<Monomial, GaussScalar> terms_;
};

// Complete monomial basis of V_L per weight n <= W.
class GradedBasis {
public:
    GradedBasis(LatticePtr lat, int cutoff);

    const LatticePtr& lattice() const { return lat_; }
    int cutoff() const { return cutoff_; }
    int dim(int n) const;
    const std::vector<Monomial>& grade(int n) const;
    // (grade, index) of a monomial; throws CutoffError above the cutoff.
    std::pair<int, int> locate(const Monomial& m) const;

private:
    LatticePtr lat_;
    int cutoff_;
    std::vector<std::vector<Monomial>> by_grade_;
    std::map<Monomial, std::pair<int, int>> index_;
};

// ---- exact sparse linear algebra over Q(i) ----

// Sorted (index, coefficient) pairs, no zero coefficients.
using SparseRow = std::vector<std::pair<int, GaussScalar>>;
using Matrix = std::vector<SparseRow>;  // columns

SparseRow row_axpy(const SparseRow& a, const GaussScalar& c, const SparseRow& b);  // a + c*b
SparseRow row_scaled(const SparseRow& a, const GaussScalar& c);
GaussScalar row_coeff(const SparseRow& a, int idx);

// Gaussian/RREF elimination structure with optional history tracking.
class Echelon {
public:
    explicit Echelon(bool full_rref = true, bool with_history = false)
        : full_rref_(full_rref), with_history_(with_history) {}

    // Reduces r against the current rows; fills *hist with the combination of
    // previously inserted rows' histories when tracking.
    SparseRow reduce(SparseRow r, SparseRow* hist = nullptr) const;
    // Returns true if the row was independent (and inserted).
    bool insert(SparseRow r, SparseRow hist = {});
    // Insert a row already reduced against the current rows (skips reduce).
    void insert_reduced(SparseRow r, SparseRow hist = {});

    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseRow>& rows() const { return rows_; }
    const std::vector<SparseRow>& histories() const { return hists_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool operator==(const Echelon& o) const { return rows_ == o.rows_; }

private:
    bool full_rref_, with_history_;
    std::vector<SparseRow> rows_;   // sorted by pivot
    std::vector<SparseRow> hists_;
    std::vector<int> pivots_;
};

// A canonical (reduced-echelon) subspace of one graded piece.
struct Subspace {
    int grade = 0;
    Echelon basis{true, false};

    int dim() const { return basis.dim(); }
    bool operator==(const Subspace& o) const {
        return grade == o.grade && basis == o.basis;
    }
};

Subspace make_subspace(int grade, const std::vector<SparseRow>& spanning);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
bool member(const SparseRow& v, const Subspace& a);

// Exact kernel of the linear map whose columns are given (column j = image of
// source basis vector j).  Connected components of the column/row support
// graph are eliminated independently; the result is canonical RREF.
std::vector<SparseRow> kernel_of_columns(const Matrix& columns);

// Kernel packaged as a canonical Subspace at the source grade.
Subspace kernel_on_grade(const Matrix& images, int source_grade);

// M^{-1} for a square invertible matrix given by columns.
Matrix invert_matrix(const Matrix& columns, int dim);

Matrix matrix_compose(const Matrix& a, const Matrix& b);  // a after b
SparseRow matrix_apply(const Matrix& m, const SparseRow& v);
GaussScalar matrix_trace(const Matrix& m);

// Conversions between StateVectors and indexed rows of one grade.
SparseRow to_row(const StateVector& v, const GradedBasis& basis, int grade);
StateVector from_row(const SparseRow& r, const GradedBasis& basis, int grade);
// Per-grade decomposition (for inhomogeneous states).
std::map<int, SparseRow> decompose(const StateVector& v, const GradedBasis& basis);

}  // namespace voalab

#endif
