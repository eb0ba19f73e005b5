#include "voalab/fock.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace voalab {

void Monomial::canonicalize() {
    std::sort(modes.begin(), modes.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;  // n descending within a direction
    });
}

long long Monomial::mode_weight() const {
    long long w = 0;
    for (const auto& [d, n] : modes) w += n;
    return w;
}

long long Monomial::weight(const Lattice& lat) const {
    Int norm(0);
    const int d = lat.rank();
    for (int i = 0; i < d; ++i) {
        if (point[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (point[j] == 0) continue;
            norm += Int(point[i]) * lat.gram(i, j) * Int(point[j]);
        }
    }
    Int w = norm / 2 + Int(static_cast<long>(mode_weight()));
    return w.get_si();
}

std::string Monomial::to_string() const {
    std::ostringstream os;
    for (const auto& [d, n] : modes) os << "h" << d + 1 << "(-" << n << ")";
    os << "e(";
    for (size_t i = 0; i < point.size(); ++i) {
        if (i) os << ",";
        os << point[i];
    }
    os << ")";
    return os.str();
}

Monomial vacuum_monomial(int rank) {
    Monomial m;
    m.point.assign(rank, 0);
    return m;
}

Monomial point_monomial(const QVec& mu) {
    Monomial m;
    for (const auto& c : mu.int_coords()) m.point.push_back(static_cast<long>(c.get_si()));
    return m;
}

StateVector StateVector::vacuum(const LatticePtr& lat) {
    StateVector v(lat);
    v.add(vacuum_monomial(lat->rank()), GaussScalar(1));
    return v;
}

StateVector StateVector::monomial(const LatticePtr& lat, Monomial m, GaussScalar c) {
    StateVector v(lat);
    m.canonicalize();
    v.add(m, c);
    return v;
}

StateVector StateVector::point(const QVec& mu, GaussScalar c) {
    StateVector v(mu.lat);
    v.add(point_monomial(mu), c);
    return v;
}

void StateVector::add(const Monomial& m, const GaussScalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

StateVector& StateVector::operator+=(const StateVector& o) {
    if (lat_ == nullptr) lat_ = o.lat_;
    if (!o.terms_.empty() && lat_ != o.lat_)
        throw DomainError("adding states over different lattices");
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
    if (lat_ == nullptr) lat_ = o.lat_;
    if (!o.terms_.empty() && lat_ != o.lat_)
        throw DomainError("subtracting states over different lattices");
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

StateVector StateVector::scaled(const GaussScalar& c) const {
    StateVector out(lat_);
    if (c.is_zero()) return out;
    for (const auto& [m, x] : terms_) out.terms_.emplace(m, x * c);
    return out;
}

std::optional<long long> StateVector::homogeneous_weight() const {
    std::optional<long long> w;
    for (const auto& [m, c] : terms_) {
        long long mw = m.weight(*lat_);
        if (!w)
            w = mw;
        else if (*w != mw)
            return std::nullopt;
    }
    return w;
}

std::string StateVector::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")*" << m.to_string();
    }
    return os.str();
}

namespace {

void partitions_desc(int m, int maxpart, std::vector<int>& cur,
                     const std::function<void(const std::vector<int>&)>& emit) {
    if (m == 0) {
        emit(cur);
        return;
    }
    for (int p = std::min(m, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions_desc(m - p, p, cur, emit);
        cur.pop_back();
    }
}

void fock_monomials(int dir, int d, int m, Monomial& cur,
                    const std::function<void(const Monomial&)>& emit) {
    if (dir == d) {
        if (m == 0) emit(cur);
        return;
    }
    for (int take = 0; take <= m; ++take) {
        std::vector<int> parts;
        partitions_desc(take, take, parts, [&](const std::vector<int>& p) {
            size_t before = cur.modes.size();
            for (int n : p) cur.modes.push_back({dir, n});
            fock_monomials(dir + 1, d, m - take, cur, emit);
            cur.modes.resize(before);
        });
    }
}

}  // namespace

GradedBasis::GradedBasis(LatticePtr lat, int cutoff) : lat_(std::move(lat)), cutoff_(cutoff) {
    if (cutoff < 0) throw DomainError("basis cutoff must be nonnegative");
    by_grade_.resize(cutoff + 1);
    auto pts = vectors_up_to_norm(lat_, Rat(2 * cutoff));
    for (const auto& mu : pts) {
        Monomial base = point_monomial(mu);
        Rat half_norm = inner(mu, mu) / 2;
        long long w0 = half_norm.get_num().get_si();
        for (int n = static_cast<int>(w0); n <= cutoff; ++n) {
            Monomial cur = base;
            fock_monomials(0, lat_->rank(), n - static_cast<int>(w0), cur,
                           [&](const Monomial& m) { by_grade_[n].push_back(m); });
        }
    }
    for (int n = 0; n <= cutoff; ++n) {
        std::sort(by_grade_[n].begin(), by_grade_[n].end());
        for (size_t i = 0; i < by_grade_[n].size(); ++i)
            index_.emplace(by_grade_[n][i], std::make_pair(n, static_cast<int>(i)));
    }
}

int GradedBasis::dim(int n) const {
    if (n < 0 || n > cutoff_)
        throw CutoffError("grade " + std::to_string(n) + " outside basis cutoff " +
                          std::to_string(cutoff_));
    return static_cast<int>(by_grade_[n].size());
}

const std::vector<Monomial>& GradedBasis::grade(int n) const {
    if (n < 0 || n > cutoff_)
        throw CutoffError("grade " + std::to_string(n) + " outside basis cutoff " +
                          std::to_string(cutoff_));
    return by_grade_[n];
}

std::pair<int, int> GradedBasis::locate(const Monomial& m) const {
    auto it = index_.find(m);
    if (it != index_.end()) return it->second;
    long long w = m.weight(*lat_);
    if (w > cutoff_)
        throw CutoffError("monomial of weight " + std::to_string(w) +
                          " exceeds basis cutoff " + std::to_string(cutoff_));
    throw ConsistencyError("monomial " + m.to_string() + " missing from its grade");
}

SparseRow row_axpy(const SparseRow& a, const GaussScalar& c, const SparseRow& b) {
    if (c.is_zero() || b.empty()) return a;
    SparseRow out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            GaussScalar v = c * b[j].second;
            if (!v.is_zero()) out.push_back({b[j].first, std::move(v)});
            ++j;
        } else {
            GaussScalar v = a[i].second + c * b[j].second;
            if (!v.is_zero()) out.push_back({a[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

SparseRow row_scaled(const SparseRow& a, const GaussScalar& c) {
    SparseRow out;
    if (c.is_zero()) return out;
    out.reserve(a.size());
    for (const auto& [i, v] : a) out.push_back({i, v * c});
    return out;
}

GaussScalar row_coeff(const SparseRow& a, int idx) {
    auto it = std::lower_bound(a.begin(), a.end(), idx,
                               [](const auto& p, int x) { return p.first < x; });
    if (it != a.end() && it->first == idx) return it->second;
    return GaussScalar(0);
}

SparseRow Echelon::reduce(SparseRow r, SparseRow* hist) const {
    size_t i = 0;
    while (i < r.size()) {
        int idx = r[i].first;
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), idx);
        if (it == pivots_.end() || *it != idx) {
            ++i;
            continue;
        }
        size_t k = static_cast<size_t>(it - pivots_.begin());
        GaussScalar c = -r[i].second;
        r = row_axpy(r, c, rows_[k]);
        if (hist && with_history_) *hist = row_axpy(*hist, c, hists_[k]);
        i = static_cast<size_t>(
            std::lower_bound(r.begin(), r.end(), idx,
                             [](const auto& p, int x) { return p.first < x; }) -
            r.begin());
    }
    return r;
}

bool Echelon::insert(SparseRow r, SparseRow hist) {
    r = reduce(std::move(r), with_history_ ? &hist : nullptr);
    if (r.empty()) return false;
    insert_reduced(std::move(r), std::move(hist));
    return true;
}

void Echelon::insert_reduced(SparseRow r, SparseRow hist) {
    GaussScalar lead_inv = r.front().second.inv();
    r = row_scaled(r, lead_inv);
    if (with_history_) hist = row_scaled(hist, lead_inv);
    int pivot = r.front().first;
    if (full_rref_) {
        for (size_t k = 0; k < rows_.size(); ++k) {
            GaussScalar c = row_coeff(rows_[k], pivot);
            if (c.is_zero()) continue;
            rows_[k] = row_axpy(rows_[k], -c, r);
            if (with_history_) hists_[k] = row_axpy(hists_[k], -c, hist);
        }
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
    size_t at = static_cast<size_t>(pos - pivots_.begin());
    pivots_.insert(pos, pivot);
    rows_.insert(rows_.begin() + at, std::move(r));
    if (with_history_) hists_.insert(hists_.begin() + at, std::move(hist));
}

Subspace make_subspace(int grade, const std::vector<SparseRow>& spanning) {
    Subspace s;
    s.grade = grade;
    for (const auto& r : spanning) s.basis.insert(r);
    return s;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.grade != b.grade) throw DomainError("intersecting subspaces of different grades");
    // Kernel of [A | -B] over the coefficient space picks out common vectors.
    Matrix cols;
    for (const auto& r : a.basis.rows()) cols.push_back(r);
    for (const auto& r : b.basis.rows()) cols.push_back(row_scaled(r, GaussScalar(-1)));
    auto ker = kernel_of_columns(cols);
    const int na = a.basis.dim();
    std::vector<SparseRow> vecs;
    for (const auto& k : ker) {
        SparseRow v;
        for (const auto& [idx, c] : k)
            if (idx < na) v = row_axpy(v, c, a.basis.rows()[idx]);
        if (!v.empty()) vecs.push_back(std::move(v));
    }
    Subspace out = make_subspace(a.grade, vecs);
    // Exact rank-nullity, checked on every call.
    Subspace s = subspace_sum(a, b);
    if (s.dim() + out.dim() != a.dim() + b.dim())
        throw ConsistencyError("rank-nullity failure in subspace intersection");
    return out;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.grade != b.grade) throw DomainError("summing subspaces of different grades");
    Subspace s;
    s.grade = a.grade;
    for (const auto& r : a.basis.rows()) s.basis.insert(r);
    for (const auto& r : b.basis.rows()) s.basis.insert(r);
    return s;
}

bool member(const SparseRow& v, const Subspace& a) { return a.basis.reduce(v).empty(); }

std::vector<SparseRow> kernel_of_columns(const Matrix& columns) {
    const int ncols = static_cast<int>(columns.size());
    // Union-find over columns, joined through shared target rows.
    std::vector<int> parent(ncols);
    for (int i = 0; i < ncols; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<int, int> row_owner;
    for (int j = 0; j < ncols; ++j)
        for (const auto& [idx, c] : columns[j]) {
            auto [it, fresh] = row_owner.try_emplace(idx, j);
            if (!fresh) parent[find(j)] = find(it->second);
        }
    std::map<int, std::vector<int>> groups;
    for (int j = 0; j < ncols; ++j) groups[find(j)].push_back(j);

    Echelon canonical(true, false);
    for (auto& [root, cols] : groups) {
        Echelon elim(false, true);
        for (int j : cols) {
            SparseRow hist{{j, GaussScalar(1)}};
            SparseRow reduced = elim.reduce(columns[j], &hist);
            if (reduced.empty())
                canonical.insert(std::move(hist));
            else
                elim.insert_reduced(std::move(reduced), std::move(hist));
        }
    }
    return canonical.rows();
}

Subspace kernel_on_grade(const Matrix& images, int source_grade) {
    Subspace s;
    s.grade = source_grade;
    for (auto& r : kernel_of_columns(images)) s.basis.insert(r);
    return s;
}

Matrix invert_matrix(const Matrix& columns, int dim) {
    Echelon ech(true, true);
    for (int j = 0; j < static_cast<int>(columns.size()); ++j)
        if (!ech.insert(columns[j], SparseRow{{j, GaussScalar(1)}}))
            throw DomainError("matrix is singular; cannot invert");
    if (ech.dim() != dim) throw DomainError("matrix is singular; cannot invert");
    Matrix inv(dim);
    for (int k = 0; k < dim; ++k) inv[ech.pivots()[k]] = ech.histories()[k];
    return inv;
}

SparseRow matrix_apply(const Matrix& m, const SparseRow& v) {
    std::map<int, GaussScalar> acc;
    for (const auto& [j, c] : v) {
        if (j >= static_cast<int>(m.size()))
            throw DomainError("matrix_apply: index out of range");
        for (const auto& [i, x] : m[j]) {
            auto [it, fresh] = acc.try_emplace(i, c * x);
            if (!fresh) it->second += c * x;
        }
    }
    SparseRow out;
    for (auto& [i, x] : acc)
        if (!x.is_zero()) out.push_back({i, std::move(x)});
    return out;
}

Matrix matrix_compose(const Matrix& a, const Matrix& b) {
    Matrix out(b.size());
    for (size_t j = 0; j < b.size(); ++j) out[j] = matrix_apply(a, b[j]);
    return out;
}

GaussScalar matrix_trace(const Matrix& m) {
    GaussScalar t(0);
    for (size_t j = 0; j < m.size(); ++j) t += row_coeff(m[j], static_cast<int>(j));
    return t;
}

SparseRow to_row(const StateVector& v, const GradedBasis& basis, int grade) {
    SparseRow out;
    for (const auto& [m, c] : v.terms()) {
        auto [g, i] = basis.locate(m);
        if (g != grade)
            throw DomainError("state has a term of weight " + std::to_string(g) +
                              " in a grade-" + std::to_string(grade) + " context");
        out.push_back({i, c});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

StateVector from_row(const SparseRow& r, const GradedBasis& basis, int grade) {
    StateVector v(basis.lattice());
    for (const auto& [i, c] : r) v.add(basis.grade(grade)[i], c);
    return v;
}

std::map<int, SparseRow> decompose(const StateVector& v, const GradedBasis& basis) {
    std::map<int, std::map<int, GaussScalar>> acc;
    for (const auto& [m, c] : v.terms()) {
        auto [g, i] = basis.locate(m);
        acc[g][i] = c;
    }
    std::map<int, SparseRow> out;
    for (auto& [g, row] : acc) {
        SparseRow r;
        for (auto& [i, c] : row) r.push_back({i, std::move(c)});
        out.emplace(g, std::move(r));
    }
    return out;
}

}  // namespace voalab
