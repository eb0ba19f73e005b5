#include "voalab/commutant.hpp"

#include <sstream>
#include <thread>

namespace voalab {

std::vector<int> ComputedSubspace::dims() const {
    std::vector<int> out;
    out.reserve(by_grade.size());
    for (const auto& s : by_grade) out.push_back(s.dim());
    return out;
}

void parallel_grades(int W, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 1) {
        for (int n = 0; n <= W; ++n) fn(n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(W + 1);
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            for (int n = t; n <= W; n += jobs) {
                try {
                    fn(n);
                } catch (...) {
                    errors[n] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

ComputedSubspace whole_space(const GradedBasis& basis, int W) {
    ComputedSubspace out;
    out.provenance = "V_" + basis.lattice()->name();
    out.ambient = &basis;
    for (int n = 0; n <= W; ++n) {
        std::vector<SparseRow> rows;
        for (int i = 0; i < basis.dim(n); ++i) rows.push_back({{i, GaussScalar(1)}});
        out.by_grade.push_back(make_subspace(n, rows));
    }
    return out;
}

ComputedSubspace point_filtered_subspace(const GradedBasis& basis, int W,
                                         const std::function<bool(const QVec&)>& keep,
                                         std::string provenance) {
    ComputedSubspace out;
    out.provenance = std::move(provenance);
    out.ambient = &basis;
    const LatticePtr& lat = basis.lattice();
    for (int n = 0; n <= W; ++n) {
        std::vector<SparseRow> rows;
        const auto& monos = basis.grade(n);
        for (int i = 0; i < static_cast<int>(monos.size()); ++i) {
            std::vector<Rat> c;
            for (long x : monos[i].point) c.push_back(Rat(x));
            if (keep(QVec(lat, std::move(c)))) rows.push_back({{i, GaussScalar(1)}});
        }
        out.by_grade.push_back(make_subspace(n, rows));
    }
    return out;
}

namespace {

// Columns of e_(0): V_n -> V_{n+1} over the monomial basis.
Matrix zero_mode_columns(const GradedBasis& basis, const StateVector& e, int n) {
    const auto& monos = basis.grade(n);
    Matrix cols(monos.size());
    for (size_t i = 0; i < monos.size(); ++i) {
        StateVector img = mode_apply(e, 0, StateVector::monomial(basis.lattice(), monos[i]));
        cols[i] = to_row(img, basis, n + 1);
    }
    return cols;
}

}  // namespace

ComputedSubspace commutant_dims(const GradedBasis& basis, const StateVector& e, int W,
                                int jobs) {
    if (W + 1 > basis.cutoff())
        throw CutoffError("commutant at weight " + std::to_string(W) +
                          " needs basis cutoff " + std::to_string(W + 1) +
                          " (e_(0) raises the weight by one)");
    ComputedSubspace out;
    out.provenance = "commutant";
    out.ambient = &basis;
    out.by_grade.resize(W + 1);
    parallel_grades(W, jobs, [&](int n) {
        out.by_grade[n] = kernel_on_grade(zero_mode_columns(basis, e, n), n);
    });
    return out;
}

ComputedSubspace commutant_within(const ComputedSubspace& sub, const StateVector& e, int W,
                                  int jobs) {
    const GradedBasis& basis = *sub.ambient;
    if (W > sub.cutoff()) throw CutoffError("commutant_within beyond the subspace cutoff");
    if (W + 1 > basis.cutoff())
        throw CutoffError("commutant_within needs one grade of basis headroom");
    ComputedSubspace out;
    out.provenance = sub.provenance + " | commutant";
    out.ambient = &basis;
    out.by_grade.resize(W + 1);
    parallel_grades(W, jobs, [&](int n) {
        const auto& rows = sub.by_grade[n].basis.rows();
        Matrix cols(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            StateVector v = from_row(rows[i], basis, n);
            cols[i] = to_row(mode_apply(e, 0, v), basis, n + 1);
        }
        auto coeff_kernel = kernel_of_columns(cols);
        std::vector<SparseRow> vecs;
        for (const auto& k : coeff_kernel) {
            SparseRow v;
            for (const auto& [idx, c] : k) v = row_axpy(v, c, rows[idx]);
            vecs.push_back(std::move(v));
        }
        out.by_grade[n] = make_subspace(n, vecs);
    });
    return out;
}

ComputedSubspace orbifold(const ComputedSubspace& sub, const AutGroup& g, int W) {
    const GradedBasis& basis = *sub.ambient;
    if (W > sub.cutoff()) throw CutoffError("orbifold beyond the subspace cutoff");
    ComputedSubspace out;
    out.provenance = sub.provenance + " | fixed";
    out.ambient = &basis;
    for (int n = 0; n <= W; ++n) {
        const auto& rows = sub.by_grade[n].basis.rows();
        const auto& pivots = sub.by_grade[n].basis.pivots();
        const int k = static_cast<int>(rows.size());
        // Restrict each generator to the subspace; RREF makes the coordinate
        // solve a pivot read-off.
        std::vector<Matrix> restricted;
        for (const auto& gen : g.generators) {
            const Matrix& m = gen.matrix(n, basis);
            Matrix r(k);
            for (int i = 0; i < k; ++i) {
                SparseRow img = matrix_apply(m, rows[i]);
                if (!member(img, sub.by_grade[n]))
                    throw DomainError("generator '" + gen.describe() +
                                      "' does not preserve " + sub.provenance +
                                      " at grade " + std::to_string(n));
                for (int t = 0; t < k; ++t) {
                    GaussScalar c = row_coeff(img, pivots[t]);
                    if (!c.is_zero()) r[i].push_back({t, c});
                }
            }
            restricted.push_back(std::move(r));
        }
        Matrix stacked(k);
        int offset = 0;
        for (const auto& r : restricted) {
            for (int i = 0; i < k; ++i) {
                SparseRow delta =
                    row_axpy(r[i], GaussScalar(-1), SparseRow{{i, GaussScalar(1)}});
                for (const auto& [idx, c] : delta) stacked[i].push_back({idx + offset, c});
            }
            offset += k;
        }
        auto coeff_kernel = kernel_of_columns(stacked);
        std::vector<SparseRow> vecs;
        for (const auto& kv : coeff_kernel) {
            SparseRow v;
            for (const auto& [idx, c] : kv) v = row_axpy(v, c, rows[idx]);
            vecs.push_back(std::move(v));
        }
        out.by_grade.push_back(make_subspace(n, vecs));

        // Burnside for the restricted action over the full element list.
        GaussScalar total(0);
        for (const auto& e : g.elements) {
            const Matrix& m = e.matrix(n, basis);
            GaussScalar tr(0);
            for (int i = 0; i < k; ++i)
                tr += row_coeff(matrix_apply(m, rows[i]), pivots[i]);
            total += tr;
        }
        GaussScalar avg = total * GaussScalar(make_rat(1, static_cast<long>(g.elements.size())));
        if (!(avg == GaussScalar(out.by_grade[n].dim())))
            throw ConsistencyError("restricted Burnside count " + avg.to_string() +
                                   " != fixed dimension at grade " + std::to_string(n));
    }
    return out;
}

ComputedSubspace image_subspace(const Automorphism& a, const ComputedSubspace& sub) {
    const GradedBasis& basis = *sub.ambient;
    ComputedSubspace out;
    out.provenance = a.describe() + "(" + sub.provenance + ")";
    out.ambient = &basis;
    for (int n = 0; n <= sub.cutoff(); ++n) {
        const Matrix& m = a.matrix(n, basis);
        std::vector<SparseRow> vecs;
        for (const auto& r : sub.by_grade[n].basis.rows())
            vecs.push_back(matrix_apply(m, r));
        out.by_grade.push_back(make_subspace(n, vecs));
    }
    return out;
}

std::string format_row(const CheckRow& row) {
    std::ostringstream os;
    os << "check=" << row.check << " grade=" << row.grade << " lhs=" << row.lhs
       << " rhs=" << row.rhs << " status=" << (row.ok ? "OK" : "FAIL");
    return os.str();
}

std::vector<CheckRow> verify_nested(const StateVector& e1, const StateVector& e2,
                                    const GradedBasis& basis, int W, int jobs) {
    if (!commuting_pair(e1, e2))
        throw DomainError("verify_nested: the conformal vectors do not commute");
    ComputedSubspace joint = commutant_dims(basis, e1 + e2, W, jobs);
    ComputedSubspace outer = commutant_dims(basis, e1, W, jobs);
    ComputedSubspace nested = commutant_within(outer, e2, W, jobs);
    std::vector<CheckRow> rows;
    for (int n = 0; n <= W; ++n) {
        bool equal = joint.by_grade[n] == nested.by_grade[n];
        rows.push_back({"nested-commutant", n, joint.by_grade[n].dim(),
                        nested.by_grade[n].dim(), equal});
    }
    return rows;
}

std::vector<CheckRow> verify_orbifold_coset(const StateVector& e, const AutGroup& g,
                                            const GradedBasis& basis, int W, int jobs) {
    for (const auto& gen : g.generators)
        if (!(gen.apply(e, basis) == e))
            throw DomainError("verify_orbifold_coset: generator '" + gen.describe() +
                              "' does not fix the conformal vector");
    ComputedSubspace com = commutant_dims(basis, e, W, jobs);
    ComputedSubspace lhs = orbifold(com, g, W);
    ComputedSubspace fixed = orbifold(whole_space(basis, W), g, W);
    ComputedSubspace rhs = commutant_within(fixed, e, W, jobs);
    std::vector<CheckRow> rows;
    for (int n = 0; n <= W; ++n) {
        bool equal = lhs.by_grade[n] == rhs.by_grade[n];
        rows.push_back({"orbifold-coset", n, lhs.by_grade[n].dim(), rhs.by_grade[n].dim(),
                        equal});
    }
    return rows;
}

bool annihilation_check(const ComputedSubspace& sub, const std::vector<StateVector>& gens,
                        int max_grade) {
    const GradedBasis& basis = *sub.ambient;
    for (int n = 0; n <= std::min(max_grade, sub.cutoff()); ++n) {
        for (const auto& r : sub.by_grade[n].basis.rows()) {
            StateVector v = from_row(r, basis, n);
            for (const auto& u : gens) {
                auto wu = u.homogeneous_weight();
                long long top = (wu ? *wu : 1) + n;
                for (long long m = 0; m < top; ++m)
                    if (!mode_apply(u, static_cast<int>(m), v).is_zero()) return false;
            }
        }
    }
    return true;
}

}  // namespace voalab
