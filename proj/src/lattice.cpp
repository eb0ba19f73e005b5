#include "voalab/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace voalab {

namespace {

// Exact determinant of a rational matrix by Gaussian elimination.
Rat rational_det(std::vector<std::vector<Rat>> m) {
    const size_t n = m.size();
    Rat det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rat f = m[r][c] / m[c][c];
            for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

std::vector<std::vector<Rat>> to_rat(const std::vector<std::vector<Int>>& m) {
    std::vector<std::vector<Rat>> out(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (const auto& v : m[i]) out[i].push_back(Rat(v));
    return out;
}

// floor(sqrt(p/q)) for a nonnegative rational, exact.
Int floor_sqrt(const Rat& r) {
    if (r < 0) throw DomainError("floor_sqrt of negative rational");
    Int pq = r.get_num() * r.get_den();
    Int s;
    mpz_sqrt(s.get_mpz_t(), pq.get_mpz_t());
    return s / r.get_den();
}

}  // namespace

std::vector<std::vector<Rat>> rational_matrix_inverse(std::vector<std::vector<Rat>> m) {
    const size_t n = m.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw DomainError("singular matrix in rational_matrix_inverse");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rat d = m[c][c];
        for (size_t k = 0; k < n; ++k) {
            m[c][k] /= d;
            inv[c][k] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rat f = m[r][c];
            for (size_t k = 0; k < n; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

std::vector<std::vector<Rat>> gram_inverse(const Lattice& lat) {
    return rational_matrix_inverse(to_rat(lat.gram()));
}

Lattice::Lattice(std::string name, std::vector<std::vector<Int>> gram)
    : name_(std::move(name)), rank_(static_cast<int>(gram.size())), gram_(std::move(gram)) {}

LatticePtr Lattice::create(std::string name, std::vector<std::vector<Int>> gram) {
    const size_t d = gram.size();
    if (d == 0) throw DomainError("lattice '" + name + "' has rank 0");
    for (const auto& row : gram)
        if (row.size() != d) throw DomainError("lattice '" + name + "': gram not square");
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            if (gram[i][j] != gram[j][i])
                throw DomainError("lattice '" + name + "': gram not symmetric");
            if (gram[i][j] % 2 != 0)
                throw DomainError("lattice '" + name + "': entry (" + std::to_string(i) +
                                  "," + std::to_string(j) +
                                  ") is odd; only pairwise-even lattices are supported");
        }
    // Positive definiteness via exact leading principal minors.
    for (size_t k = 1; k <= d; ++k) {
        std::vector<std::vector<Rat>> sub(k, std::vector<Rat>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) sub[i][j] = Rat(gram[i][j]);
        if (rational_det(std::move(sub)) <= 0)
            throw DomainError("lattice '" + name + "': gram is not positive definite");
    }
    return LatticePtr(new Lattice(std::move(name), std::move(gram)));
}

Int Lattice::det() const {
    Rat d = rational_det(to_rat(gram_));
    return d.get_num();
}

QVec::QVec(LatticePtr l, std::vector<Rat> c) : lat(std::move(l)), coords(std::move(c)) {
    if (static_cast<int>(coords.size()) != lat->rank())
        throw DomainError("vector length does not match lattice rank");
}

QVec QVec::zero(const LatticePtr& l) {
    return QVec(l, std::vector<Rat>(l->rank(), Rat(0)));
}

QVec QVec::basis(const LatticePtr& l, int i) {
    std::vector<Rat> c(l->rank(), Rat(0));
    c.at(i) = 1;
    return QVec(l, std::move(c));
}

QVec QVec::from_ints(const LatticePtr& l, const std::vector<long>& v) {
    std::vector<Rat> c;
    c.reserve(v.size());
    for (long x : v) c.push_back(Rat(x));
    return QVec(l, std::move(c));
}

bool QVec::is_integral() const {
    for (const auto& c : coords)
        if (c.get_den() != 1) return false;
    return true;
}

bool QVec::is_zero() const {
    for (const auto& c : coords)
        if (c != 0) return false;
    return true;
}

std::vector<Int> QVec::int_coords() const {
    std::vector<Int> out;
    out.reserve(coords.size());
    for (const auto& c : coords) {
        if (c.get_den() != 1) throw DomainError("vector is not a lattice point");
        out.push_back(c.get_num());
    }
    return out;
}

QVec QVec::operator+(const QVec& o) const {
    if (lat != o.lat) throw DomainError("vectors over different lattices");
    QVec r = *this;
    for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
}

QVec QVec::operator-(const QVec& o) const {
    if (lat != o.lat) throw DomainError("vectors over different lattices");
    QVec r = *this;
    for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
    return r;
}

QVec QVec::operator-() const {
    QVec r = *this;
    for (auto& c : r.coords) c = -c;
    return r;
}

QVec QVec::scaled(const Rat& c) const {
    QVec r = *this;
    for (auto& x : r.coords) x *= c;
    return r;
}

bool QVec::operator==(const QVec& o) const { return lat == o.lat && coords == o.coords; }

bool QVec::operator<(const QVec& o) const {
    for (size_t i = 0; i < coords.size(); ++i) {
        int c = cmp(coords[i], o.coords[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string QVec::to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ",";
        s += coords[i].get_str();
    }
    return s + ")";
}

Rat inner(const QVec& x, const QVec& y) {
    if (x.lat != y.lat) throw DomainError("inner product across different lattices");
    const int d = x.lat->rank();
    Rat acc(0);
    for (int i = 0; i < d; ++i) {
        if (x.coords[i] == 0) continue;
        Rat row(0);
        for (int j = 0; j < d; ++j) {
            if (y.coords[j] == 0) continue;
            row += Rat(x.lat->gram(i, j)) * y.coords[j];
        }
        acc += x.coords[i] * row;
    }
    return acc;
}

std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> rows) {
    if (rows.empty()) return rows;
    const size_t ncols = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
        // Euclidean reduction of column c below row r.
        while (true) {
            size_t p = rows.size();
            for (size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (p == rows.size() ||
                                        cmp(abs(rows[i][c]), abs(rows[p][c])) < 0))
                    p = i;
            if (p == rows.size()) break;
            std::swap(rows[r], rows[p]);
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Int q = rows[i][c] / rows[r][c];  // truncated division is fine here
                for (size_t k = 0; k < ncols; ++k) rows[i][k] -= q * rows[r][k];
                if (rows[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (size_t k = 0; k < ncols; ++k) rows[r][k] = -rows[r][k];
        // Reduce the entries above the pivot into [0, pivot).
        for (size_t i = 0; i < r; ++i) {
            if (rows[i][c] == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q == 0) continue;
            for (size_t k = 0; k < ncols; ++k) rows[i][k] -= q * rows[r][k];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

Sublattice::Sublattice(std::string name, LatticePtr parent, std::vector<QVec> generators)
    : name_(std::move(name)), parent_(std::move(parent)), gens_(std::move(generators)) {
    std::vector<std::vector<Int>> rows;
    for (const auto& g : gens_) {
        if (g.lat != parent_) throw DomainError("sublattice generator over wrong lattice");
        if (!g.is_integral())
            throw DomainError("sublattice '" + name_ + "': generator " + g.to_string() +
                              " is not a lattice point");
        rows.push_back(g.int_coords());
    }
    basis_ = hnf_rows(std::move(rows));
    pivot_cols_.clear();
    for (const auto& row : basis_) {
        int p = 0;
        while (row[p] == 0) ++p;
        pivot_cols_.push_back(p);
    }
}

std::vector<QVec> Sublattice::basis() const {
    std::vector<QVec> out;
    for (const auto& row : basis_) {
        std::vector<Rat> c;
        for (const auto& v : row) c.push_back(Rat(v));
        out.emplace_back(parent_, std::move(c));
    }
    return out;
}

std::optional<std::vector<Rat>> Sublattice::coords_in_basis(const QVec& v) const {
    if (v.lat != parent_) throw DomainError("vector over wrong lattice");
    std::vector<Rat> rem = v.coords;
    std::vector<Rat> coeff(basis_.size(), Rat(0));
    for (size_t i = 0; i < basis_.size(); ++i) {
        int p = pivot_cols_[i];
        if (rem[p] == 0) continue;
        Rat c = rem[p] / Rat(basis_[i][p]);
        coeff[i] = c;
        for (int k = p; k < parent_->rank(); ++k) rem[k] -= c * Rat(basis_[i][k]);
    }
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    return coeff;
}

bool Sublattice::contains(const QVec& v) const {
    if (!v.is_integral()) return false;
    auto c = coords_in_basis(v);
    if (!c) return false;
    for (const auto& x : *c)
        if (x.get_den() != 1) return false;
    return true;
}

std::vector<std::vector<Int>> Sublattice::basis_gram() const {
    auto b = basis();
    std::vector<std::vector<Int>> g(b.size(), std::vector<Int>(b.size()));
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) {
            Rat v = inner(b[i], b[j]);
            g[i][j] = v.get_num();
        }
    return g;
}

Int Sublattice::index_in_parent() const {
    if (!is_full_rank())
        throw DomainError("sublattice '" + name_ + "' is not full rank in its parent");
    Int idx(1);
    for (size_t i = 0; i < basis_.size(); ++i) idx *= basis_[i][pivot_cols_[i]];
    // Cross-check: det(gram_S) = idx^2 * det(gram_L), exactly.
    Rat lhs = rational_det(to_rat(basis_gram()));
    Rat rhs = Rat(idx * idx) * Rat(parent_->det());
    if (lhs != rhs)
        throw ConsistencyError("index of '" + name_ + "' fails the Gram determinant check");
    return idx;
}

QVec Sublattice::canonical_rep(const QVec& v) const {
    if (v.lat != parent_) throw DomainError("vector over wrong lattice");
    if (!v.is_integral()) throw DomainError("coset representative must be a lattice point");
    std::vector<Int> x = v.int_coords();
    for (size_t i = 0; i < basis_.size(); ++i) {
        int p = pivot_cols_[i];
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), x[p].get_mpz_t(), basis_[i][p].get_mpz_t());
        if (q == 0) continue;
        for (int k = 0; k < parent_->rank(); ++k) x[k] -= q * basis_[i][k];
    }
    std::vector<Rat> c;
    for (const auto& e : x) c.push_back(Rat(e));
    return QVec(parent_, std::move(c));
}

namespace {

// Picks a maximal linearly independent subset of vectors (rational echelon).
std::vector<size_t> independent_subset(const std::vector<QVec>& vecs) {
    std::vector<std::vector<Rat>> ech;
    std::vector<size_t> chosen;
    for (size_t i = 0; i < vecs.size(); ++i) {
        std::vector<Rat> row = vecs[i].coords;
        for (const auto& e : ech) {
            size_t p = 0;
            while (p < e.size() && e[p] == 0) ++p;
            if (p < row.size() && row[p] != 0) {
                Rat f = row[p] / e[p];
                for (size_t k = 0; k < row.size(); ++k) row[k] -= f * e[k];
            }
        }
        bool nonzero = false;
        for (const auto& x : row) nonzero = nonzero || x != 0;
        if (nonzero) {
            ech.push_back(row);
            std::sort(ech.begin(), ech.end(), [](const auto& a, const auto& b) {
                size_t pa = 0, pb = 0;
                while (pa < a.size() && a[pa] == 0) ++pa;
                while (pb < b.size() && b[pb] == 0) ++pb;
                return pa < pb;
            });
            chosen.push_back(i);
        }
    }
    return chosen;
}

// Solves v = sum c_i * basis_i over Q; nullopt if v is outside the span.
std::optional<std::vector<Rat>> solve_in_span(const std::vector<QVec>& basis, const QVec& v) {
    const size_t n = basis.size();
    const size_t d = v.coords.size();
    // Augmented system basis^T * c = v, solved by elimination.
    std::vector<std::vector<Rat>> m(d, std::vector<Rat>(n + 1, Rat(0)));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < d; ++i) m[i][j] = basis[j].coords[i];
    for (size_t i = 0; i < d; ++i) m[i][n] = v.coords[i];
    std::vector<size_t> pivot_of_col(n, d);
    size_t r = 0;
    for (size_t c = 0; c < n && r < d; ++c) {
        size_t p = r;
        while (p < d && m[p][c] == 0) ++p;
        if (p == d) continue;
        std::swap(m[p], m[r]);
        for (size_t i = 0; i < d; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (size_t k = c; k <= n; ++k) m[i][k] -= f * m[r][k];
        }
        pivot_of_col[c] = r;
        ++r;
    }
    std::vector<Rat> sol(n, Rat(0));
    for (size_t c = 0; c < n; ++c)
        if (pivot_of_col[c] < d) sol[c] = m[pivot_of_col[c]][n] / m[pivot_of_col[c]][c];
    // Verify (also catches inconsistent rows).
    for (size_t i = 0; i < d; ++i) {
        Rat acc(0);
        for (size_t j = 0; j < n; ++j) acc += basis[j].coords[i] * sol[j];
        if (acc != v.coords[i]) return std::nullopt;
    }
    return sol;
}

}  // namespace

Isometry Isometry::on_lattice(std::string name, const LatticePtr& lat,
                              std::vector<QVec> images) {
    if (static_cast<int>(images.size()) != lat->rank())
        throw IsometryError("isometry '" + name + "': need one image per basis vector");
    Isometry g;
    g.name_ = std::move(name);
    g.domain_ = lat;
    g.target_ = lat;
    for (int i = 0; i < lat->rank(); ++i) g.domain_basis_.push_back(QVec::basis(lat, i));
    g.images_ = std::move(images);
    g.self_ = true;
    for (const auto& im : g.images_) {
        if (im.lat != lat) throw IsometryError("isometry '" + g.name_ + "': image over wrong lattice");
        if (!im.is_integral())
            throw IsometryError("isometry '" + g.name_ + "': image " + im.to_string() +
                                " is not a lattice point");
    }
    for (int i = 0; i < lat->rank(); ++i)
        for (int j = 0; j < lat->rank(); ++j)
            if (inner(g.images_[i], g.images_[j]) != Rat(lat->gram(i, j)))
                throw IsometryError("isometry '" + g.name_ + "': gram mismatch at pair (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    // Bijectivity: the image matrix must be unimodular.
    std::vector<std::vector<Rat>> m(lat->rank(), std::vector<Rat>(lat->rank()));
    for (int i = 0; i < lat->rank(); ++i)
        for (int j = 0; j < lat->rank(); ++j) m[i][j] = g.images_[j].coords[i];
    Rat d = rational_det(std::move(m));
    if (d != 1 && d != -1)
        throw IsometryError("isometry '" + g.name_ + "' is not surjective (det " +
                            d.get_str() + ")");
    return g;
}

Isometry Isometry::between(std::string name, const Sublattice& src,
                           const LatticePtr& dst_parent, std::vector<QVec> images) {
    if (images.size() != src.generators().size())
        throw IsometryError("isometry '" + name + "': need one image per generator");
    for (const auto& im : images) {
        if (im.lat != dst_parent)
            throw IsometryError("isometry '" + name + "': image over wrong lattice");
        if (!im.is_integral())
            throw IsometryError("isometry '" + name + "': image is not a lattice point");
    }
    const auto& gens = src.generators();
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j)
            if (inner(gens[i], gens[j]) != inner(images[i], images[j]))
                throw IsometryError("isometry '" + name + "': gram mismatch at pair (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    auto chosen = independent_subset(gens);
    Isometry g;
    g.name_ = std::move(name);
    g.domain_ = src.parent();
    g.target_ = dst_parent;
    for (size_t i : chosen) {
        g.domain_basis_.push_back(gens[i]);
        g.images_.push_back(images[i]);
    }
    g.self_ = false;
    // The dependent generators must map consistently with the linear extension.
    for (size_t i = 0; i < gens.size(); ++i) {
        auto sol = solve_in_span(g.domain_basis_, gens[i]);
        if (!sol) throw IsometryError("isometry '" + g.name_ + "': internal span failure");
        QVec expect = QVec::zero(dst_parent);
        for (size_t k = 0; k < sol->size(); ++k)
            expect = expect + g.images_[k].scaled((*sol)[k]);
        if (!(expect == images[i]))
            throw IsometryError("isometry '" + g.name_ +
                                "': generator images are not linearly consistent");
    }
    return g;
}

QVec Isometry::apply(const QVec& v) const {
    if (v.lat != domain_) throw DomainError("isometry applied to vector over wrong lattice");
    if (self_) {
        QVec out = QVec::zero(target_);
        for (size_t i = 0; i < domain_basis_.size(); ++i)
            if (v.coords[i] != 0) out = out + images_[i].scaled(v.coords[i]);
        return out;
    }
    auto sol = solve_in_span(domain_basis_, v);
    if (!sol)
        throw DomainError("isometry '" + name_ + "': vector " + v.to_string() +
                          " is outside the domain span");
    QVec out = QVec::zero(target_);
    for (size_t k = 0; k < sol->size(); ++k) out = out + images_[k].scaled((*sol)[k]);
    return out;
}

int Isometry::order(int bound) const {
    if (!self_) throw DomainError("order is defined for self-isometries only");
    std::vector<QVec> cur = domain_basis_;
    for (int k = 1; k <= bound; ++k) {
        for (auto& v : cur) v = apply(v);
        bool ident = true;
        for (size_t i = 0; i < cur.size(); ++i) ident = ident && cur[i] == domain_basis_[i];
        if (ident) return k;
    }
    throw DomainError("isometry '" + name_ + "': order exceeds bound " + std::to_string(bound));
}

std::vector<std::vector<Int>> restrict_isometry(const Isometry& g, const Sublattice& s) {
    if (!g.is_self() || g.domain_lattice() != s.parent())
        throw DomainError("restrict_isometry: domain mismatch");
    auto b = s.basis();
    std::vector<std::vector<Int>> m(b.size(), std::vector<Int>(b.size()));
    for (size_t j = 0; j < b.size(); ++j) {
        QVec im = g.apply(b[j]);
        auto c = s.coords_in_basis(im);
        if (!c) throw DomainError("sublattice '" + s.name() + "' is not invariant under '" +
                                  g.name() + "'");
        for (size_t i = 0; i < b.size(); ++i) {
            if ((*c)[i].get_den() != 1)
                throw DomainError("sublattice '" + s.name() + "' is not invariant under '" +
                                  g.name() + "'");
            m[i][j] = (*c)[i].get_num();
        }
    }
    return m;
}

namespace {

// Shared box enumeration: integer points x with (x + shift) of norm <= bound
// under the given Gram form; returns (x + shift) in basis coordinates.
std::vector<std::vector<Rat>> enumerate_box(const std::vector<std::vector<Int>>& gram,
                                            const std::vector<Rat>& shift, const Rat& bound) {
    const int d = static_cast<int>(gram.size());
    std::vector<std::vector<Rat>> out;
    if (bound < 0) return out;
    auto ginv = rational_matrix_inverse(to_rat(gram));
    std::vector<long> lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        Rat radius2 = bound * ginv[i][i];
        Int r = floor_sqrt(radius2);
        // Conservative box around -shift_i.
        Rat center = -shift[i];
        Int c_floor;
        mpz_fdiv_q(c_floor.get_mpz_t(), center.get_num().get_mpz_t(),
                   center.get_den().get_mpz_t());
        lo[i] = static_cast<long>(c_floor.get_si() - r.get_si() - 1);
        hi[i] = static_cast<long>(c_floor.get_si() + r.get_si() + 2);
    }
    std::vector<long> x(d, 0);
    std::vector<Rat> v(d);
    auto norm_of = [&](const std::vector<Rat>& w) {
        Rat acc(0);
        for (int i = 0; i < d; ++i) {
            if (w[i] == 0) continue;
            Rat row(0);
            for (int j = 0; j < d; ++j)
                if (w[j] != 0) row += Rat(gram[i][j]) * w[j];
            acc += w[i] * row;
        }
        return acc;
    };
    // Plain nested loops over the box; ranks here are at most 4.
    std::vector<long> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = lo[i];
    while (true) {
        for (int i = 0; i < d; ++i) v[i] = Rat(idx[i]) + shift[i];
        if (norm_of(v) <= bound) out.push_back(v);
        int k = d - 1;
        while (k >= 0 && idx[k] == hi[k]) {
            idx[k] = lo[k];
            --k;
        }
        if (k < 0) break;
        ++idx[k];
    }
    return out;
}

}  // namespace

std::vector<QVec> vectors_up_to_norm(const LatticePtr& lat, const Rat& bound) {
    std::vector<Rat> shift(lat->rank(), Rat(0));
    auto raw = enumerate_box(lat->gram(), shift, bound);
    std::vector<QVec> out;
    for (auto& c : raw) out.emplace_back(lat, std::move(c));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<QVec> vectors_up_to_norm(const Sublattice& s, const Rat& bound) {
    return coset_vectors_up_to_norm(s, QVec::zero(s.parent()), bound);
}

std::vector<QVec> coset_vectors_up_to_norm(const Sublattice& s, const QVec& shift,
                                           const Rat& bound) {
    // Work in the HNF basis of S; the shift must lie in Q*S.
    auto basis = s.basis();
    auto shift_coords = s.coords_in_basis(shift);
    if (!shift_coords)
        throw DomainError("coset shift " + shift.to_string() + " is outside the span of '" +
                          s.name() + "'");
    auto raw = enumerate_box(s.basis_gram(), *shift_coords, bound);
    std::vector<QVec> out;
    for (const auto& c : raw) {
        QVec v = QVec::zero(s.parent());
        for (size_t i = 0; i < basis.size(); ++i)
            if (c[i] != 0) v = v + basis[i].scaled(c[i]);
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<QVec> coset_decomposition(const LatticePtr& lat, const Sublattice& s) {
    if (s.parent() != lat) throw DomainError("coset decomposition: sublattice of a different lattice");
    Int index = s.index_in_parent();  // throws unless full rank; Gram-verified
    const auto& rows = s.basis_rows();
    const int d = lat->rank();
    std::vector<Int> diag(d);
    for (int i = 0; i < d; ++i) diag[i] = rows[i][i];
    std::vector<QVec> reps;
    std::vector<Int> x(d, 0);
    while (true) {
        std::vector<Rat> c;
        for (const auto& e : x) c.push_back(Rat(e));
        reps.emplace_back(lat, std::move(c));
        int k = d - 1;
        while (k >= 0 && x[k] == diag[k] - 1) {
            x[k] = 0;
            --k;
        }
        if (k < 0) break;
        ++x[k];
    }
    if (Int(reps.size()) != index)
        throw ConsistencyError("coset count does not match the lattice index");
    // First representative is 0 by construction; keep the box order otherwise.
    std::sort(reps.begin(), reps.end());
    return reps;
}

LatticeFile parse_lattice_file(const std::string& text) {
    LatticeFile out;
    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            lines.push_back(line);
        }
    }
    auto tokens_of = [](const std::string& line) {
        std::vector<std::string> t;
        std::istringstream is(line);
        std::string w;
        while (is >> w) t.push_back(w);
        return t;
    };
    auto int_row = [&](const std::string& line) -> std::optional<std::vector<Int>> {
        auto t = tokens_of(line);
        if (t.empty()) return std::nullopt;
        std::vector<Int> row;
        for (const auto& w : t) {
            try {
                Rat r = parse_rat(w);
                if (r.get_den() != 1) return std::nullopt;
                row.push_back(r.get_num());
            } catch (const Error&) {
                return std::nullopt;
            }
        }
        return row;
    };
    size_t k = 0;
    while (k < lines.size()) {
        auto t = tokens_of(lines[k]);
        if (t.empty()) {
            ++k;
            continue;
        }
        if (t[0] == "lattice") {
            if (t.size() != 4 || t[2] != "rank")
                throw ParseError("bad lattice header: '" + lines[k] + "'");
            int d = std::stoi(t[3]);
            std::vector<std::vector<Int>> gram;
            ++k;
            while (static_cast<int>(gram.size()) < d && k < lines.size()) {
                auto row = int_row(lines[k]);
                if (!row) {
                    if (tokens_of(lines[k]).empty()) {
                        ++k;
                        continue;
                    }
                    break;
                }
                if (static_cast<int>(row->size()) != d)
                    throw ParseError("gram row of wrong length for lattice '" + t[1] + "'");
                gram.push_back(std::move(*row));
                ++k;
            }
            if (static_cast<int>(gram.size()) != d)
                throw ParseError("lattice '" + t[1] + "': expected " + std::to_string(d) +
                                 " gram rows");
            out.lattices[t[1]] = Lattice::create(t[1], std::move(gram));
            out.order.push_back("lattice " + t[1]);
        } else if (t[0] == "sublattice") {
            if (t.size() != 4 || t[2] != "of")
                throw ParseError("bad sublattice header: '" + lines[k] + "'");
            auto parent = out.lattices.find(t[3]);
            if (parent == out.lattices.end())
                throw ParseError("sublattice '" + t[1] + "': unknown parent '" + t[3] + "'");
            std::vector<QVec> gens;
            ++k;
            while (k < lines.size()) {
                auto row = int_row(lines[k]);
                if (!row) {
                    if (tokens_of(lines[k]).empty()) {
                        ++k;
                        continue;
                    }
                    break;
                }
                if (static_cast<int>(row->size()) != parent->second->rank())
                    throw ParseError("generator row of wrong length for sublattice '" +
                                     t[1] + "'");
                std::vector<Rat> c;
                for (const auto& e : *row) c.push_back(Rat(e));
                gens.emplace_back(parent->second, std::move(c));
                ++k;
            }
            if (gens.empty())
                throw ParseError("sublattice '" + t[1] + "' has no generators");
            out.sublattices[t[1]] = Sublattice(t[1], parent->second, std::move(gens));
            out.order.push_back("sublattice " + t[1]);
        } else {
            throw ParseError("unknown directive '" + t[0] + "'");
        }
    }
    return out;
}

}  // namespace voalab
