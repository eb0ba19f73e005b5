#include "voalab/autos.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace voalab {

struct AutoNode {
    enum class Kind { Lifted, Inner, Propagated, Compose, Inverse };
    Kind kind;
    LatticePtr lat;
    std::string label;

    std::vector<QVec> lift_images;                // Lifted
    QVec h;                                       // Inner
    std::map<Monomial, StateVector> prop_images;  // Propagated
    std::vector<std::shared_ptr<const AutoNode>> children;

    mutable std::mutex cache_mu;
    mutable std::map<std::pair<const GradedBasis*, int>, Matrix> cache;
};

namespace {

using NodePtr = std::shared_ptr<const AutoNode>;

bool is_identity_matrix(const Matrix& m) {
    for (size_t j = 0; j < m.size(); ++j)
        if (!(m[j].size() == 1 && m[j][0].first == static_cast<int>(j) &&
              m[j][0].second.is_one()))
            return false;
    return true;
}

StateVector apply_lifted(const AutoNode& node, const StateVector& v) {
    StateVector out(node.lat);
    const int d = node.lat->rank();
    for (const auto& [mono, coeff] : v.terms()) {
        QVec mu = QVec::zero(node.lat);
        for (int i = 0; i < d; ++i)
            if (mono.point[i] != 0) mu = mu + node.lift_images[i].scaled(Rat(mono.point[i]));
        StateVector term = StateVector::point(mu, coeff);
        for (const auto& [dir, n] : mono.modes)
            term = heis_apply(node.lift_images[dir], -n, term);
        out += term;
    }
    return out;
}

StateVector apply_inner(const AutoNode& node, const StateVector& v) {
    StateVector out(node.lat);
    for (const auto& [mono, coeff] : v.terms()) {
        std::vector<Rat> c;
        c.reserve(mono.point.size());
        for (long x : mono.point) c.push_back(Rat(x));
        GaussScalar ph = phase(inner(node.h, QVec(node.lat, std::move(c))));
        out.add(mono, coeff * ph);
    }
    return out;
}

// Propagation: extends the weight-1 images grade by grade, verifying that the
// letterwise map is well defined on every spanning-word relation.
Matrix build_propagated(const AutoNode& node, int grade, const GradedBasis& basis,
                        const std::function<const Matrix&(int)>& matrix_of) {
    const LatticePtr& lat = node.lat;
    const int dim_n = basis.dim(grade);
    if (grade == 0) return Matrix{SparseRow{{0, GaussScalar(1)}}};
    if (grade == 1) {
        Matrix m;
        for (const auto& mono : basis.grade(1)) {
            auto it = node.prop_images.find(mono);
            if (it == node.prop_images.end())
                throw PropagationError("propagation '" + node.label +
                                       "': missing image for weight-1 basis vector " +
                                       mono.to_string());
            m.push_back(to_row(it->second, basis, 1));
        }
        Echelon rank_check(false, false);
        for (const auto& col : m) rank_check.insert(col);
        if (rank_check.dim() != dim_n)
            throw PropagationError("propagation '" + node.label +
                                   "': weight-1 images are not invertible");
        return m;
    }

    Echelon elim(false, true);
    std::vector<SparseRow> y_of;  // image rows, aligned with candidate ids
    for (int j = 1; j <= grade; ++j) {
        const Matrix& prev = matrix_of(grade - j);
        const auto& lower = basis.grade(grade - j);
        for (const auto& a : basis.grade(1)) {
            StateVector a_state = StateVector::monomial(lat, a);
            const StateVector& phi_a = node.prop_images.at(a);
            for (size_t iu = 0; iu < lower.size(); ++iu) {
                StateVector u_state = StateVector::monomial(lat, lower[iu]);
                StateVector x = mode_apply(a_state, -j, u_state);
                StateVector phi_u = from_row(prev[iu], basis, grade - j);
                StateVector y = mode_apply(phi_a, -j, phi_u);
                SparseRow x_row = to_row(x, basis, grade);
                SparseRow y_row = to_row(y, basis, grade);
                int id = static_cast<int>(y_of.size());
                y_of.push_back(y_row);
                SparseRow hist{{id, GaussScalar(1)}};
                SparseRow reduced = elim.reduce(std::move(x_row), &hist);
                if (reduced.empty()) {
                    SparseRow combo;
                    for (const auto& [cid, c] : hist) combo = row_axpy(combo, c, y_of[cid]);
                    if (!combo.empty())
                        throw PropagationError(
                            "propagation '" + node.label +
                            "': images are inconsistent on a relation at grade " +
                            std::to_string(grade));
                } else {
                    elim.insert_reduced(std::move(reduced), std::move(hist));
                }
            }
        }
    }
    if (elim.dim() != dim_n)
        throw PropagationError("propagation '" + node.label +
                               "': weight-1 modes span only " + std::to_string(elim.dim()) +
                               " of " + std::to_string(dim_n) + " dimensions at grade " +
                               std::to_string(grade));
    Matrix result(dim_n);
    for (int i = 0; i < dim_n; ++i) {
        SparseRow hist;
        SparseRow red = elim.reduce(SparseRow{{i, GaussScalar(1)}}, &hist);
        if (!red.empty())
            throw ConsistencyError("propagation '" + node.label + "': basis solve failed");
        SparseRow col;
        for (const auto& [cid, c] : hist) col = row_axpy(col, -c, y_of[cid]);
        result[i] = col;
    }
    Echelon rank_check(false, false);
    for (const auto& col : result) rank_check.insert(col);
    if (rank_check.dim() != dim_n)
        throw PropagationError("propagation '" + node.label +
                               "': grade-" + std::to_string(grade) + " matrix is singular");
    return result;
}

}  // namespace

const LatticePtr& Automorphism::lattice() const { return node_->lat; }

std::string Automorphism::describe() const { return node_->label; }

Automorphism Automorphism::identity(const LatticePtr& lat) {
    auto n = std::make_shared<AutoNode>();
    n->kind = AutoNode::Kind::Compose;
    n->lat = lat;
    n->label = "id";
    return Automorphism(n);
}

Automorphism Automorphism::lifted(const Isometry& g) {
    if (!g.is_self())
        throw IsometryError("only self-isometries lift to VOA automorphisms");
    auto n = std::make_shared<AutoNode>();
    n->kind = AutoNode::Kind::Lifted;
    n->lat = g.domain_lattice();
    n->label = "lift(" + g.name() + ")";
    n->lift_images = g.images();
    return Automorphism(n);
}

Automorphism Automorphism::inner(const QVec& h) {
    auto n = std::make_shared<AutoNode>();
    n->kind = AutoNode::Kind::Inner;
    n->lat = h.lat;
    n->label = "inner(" + h.to_string() + ")";
    n->h = h;
    for (int i = 0; i < h.lat->rank(); ++i) {
        Rat pairing = voalab::inner(h, QVec::basis(h.lat, i));
        if (Rat(pairing * 4).get_den() != 1)
            throw PhaseError("inner(" + h.to_string() + "): <h,b_" + std::to_string(i) +
                             "> = " + pairing.get_str() + " has denominator not dividing 4");
    }
    return Automorphism(n);
}

Automorphism Automorphism::propagated(std::string label, const LatticePtr& lat,
                                      std::map<Monomial, StateVector> images) {
    auto n = std::make_shared<AutoNode>();
    n->kind = AutoNode::Kind::Propagated;
    n->lat = lat;
    n->label = std::move(label);
    n->prop_images = std::move(images);
    return Automorphism(n);
}

Automorphism Automorphism::sigma_block(const LatticePtr& lat, int block) {
    const int d = lat->rank();
    if (block < 0 || block >= d) throw DomainError("sigma: block index out of range");
    if (lat->gram(block, block) != 2)
        throw DomainError("sigma: block must have norm 2");
    for (int j = 0; j < d; ++j)
        if (j != block && lat->gram(block, j) != 0)
            throw DomainError("sigma: block must be orthogonal to the rest of the lattice");

    std::map<Monomial, StateVector> images;
    StateVector vac = StateVector::vacuum(lat);
    QVec alpha = QVec::basis(lat, block);
    StateVector alpha_state = heis_apply(alpha, -1, vac);
    StateVector ep = StateVector::point(alpha);
    StateVector em = StateVector::point(-alpha);

    for (int i = 0; i < d; ++i) {
        Monomial dir;
        dir.point.assign(d, 0);
        dir.modes = {{i, 1}};
        images[dir] = (i == block) ? ep + em : heis_apply(QVec::basis(lat, i), -1, vac);
    }
    for (const auto& mu : vectors_up_to_norm(lat, Rat(2))) {
        if (mu.is_zero()) continue;
        if (voalab::inner(mu, mu) != 2) continue;
        Monomial pm = point_monomial(mu);
        if (mu.coords[block] == 0) {
            images[pm] = StateVector::monomial(lat, pm);
            continue;
        }
        if (!(mu == alpha) && !(mu == -alpha))
            throw DomainError("sigma: weight-one point " + mu.to_string() +
                              " mixes the block with other directions");
        GaussScalar half{make_rat(1, 2)};
        if (mu == alpha)
            images[pm] = alpha_state.scaled(half) - ep.scaled(half) + em.scaled(half);
        else
            images[pm] = alpha_state.scaled(half) + ep.scaled(half) - em.scaled(half);
    }
    return propagated("sigma(" + std::to_string(block + 1) + ")", lat, std::move(images));
}

Automorphism Automorphism::compose(std::vector<Automorphism> factors) {
    if (factors.empty()) throw DomainError("compose: empty factor list");
    auto n = std::make_shared<AutoNode>();
    n->kind = AutoNode::Kind::Compose;
    n->lat = factors[0].lattice();
    std::string label;
    for (auto& f : factors) {
        if (f.lattice() != n->lat) throw DomainError("compose: mixed lattices");
        if (!label.empty()) label += "*";
        label += f.describe();
        n->children.push_back(f.node_);
    }
    n->label = label;
    return Automorphism(n);
}

Automorphism Automorphism::inverse(Automorphism a) {
    auto n = std::make_shared<AutoNode>();
    n->kind = AutoNode::Kind::Inverse;
    n->lat = a.lattice();
    n->label = "inv(" + a.describe() + ")";
    n->children.push_back(a.node_);
    return Automorphism(n);
}

const Matrix& Automorphism::matrix(int grade, const GradedBasis& basis) const {
    const AutoNode& node = *node_;
    {
        std::lock_guard<std::mutex> lock(node.cache_mu);
        auto it = node.cache.find({&basis, grade});
        if (it != node.cache.end()) return it->second;
    }
    Matrix m;
    switch (node.kind) {
        case AutoNode::Kind::Lifted:
        case AutoNode::Kind::Inner: {
            const auto& monos = basis.grade(grade);
            m.resize(monos.size());
            for (size_t i = 0; i < monos.size(); ++i) {
                StateVector v = StateVector::monomial(node.lat, monos[i]);
                StateVector img = node.kind == AutoNode::Kind::Lifted
                                      ? apply_lifted(node, v)
                                      : apply_inner(node, v);
                m[i] = to_row(img, basis, grade);
            }
            break;
        }
        case AutoNode::Kind::Compose: {
            if (node.children.empty()) {
                m.resize(basis.dim(grade));
                for (int i = 0; i < basis.dim(grade); ++i) m[i] = {{i, GaussScalar(1)}};
            } else {
                Automorphism last(node.children.back());
                m = last.matrix(grade, basis);
                for (int k = static_cast<int>(node.children.size()) - 2; k >= 0; --k) {
                    Automorphism f(node.children[k]);
                    m = matrix_compose(f.matrix(grade, basis), m);
                }
            }
            break;
        }
        case AutoNode::Kind::Inverse: {
            Automorphism child(node.children[0]);
            m = invert_matrix(child.matrix(grade, basis), basis.dim(grade));
            break;
        }
        case AutoNode::Kind::Propagated: {
            std::function<const Matrix&(int)> rec = [&](int g) -> const Matrix& {
                return this->matrix(g, basis);
            };
            m = build_propagated(node, grade, basis, rec);
            break;
        }
    }
    std::lock_guard<std::mutex> lock(node.cache_mu);
    auto [it, fresh] = node.cache.try_emplace({&basis, grade}, std::move(m));
    return it->second;
}

StateVector Automorphism::apply(const StateVector& v, const GradedBasis& basis) const {
    const AutoNode& node = *node_;
    switch (node.kind) {
        case AutoNode::Kind::Lifted:
            return apply_lifted(node, v);
        case AutoNode::Kind::Inner:
            return apply_inner(node, v);
        case AutoNode::Kind::Compose: {
            StateVector cur = v;
            for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
                cur = Automorphism(*it).apply(cur, basis);
            return cur;
        }
        case AutoNode::Kind::Inverse:
        case AutoNode::Kind::Propagated: {
            StateVector out(node.lat);
            for (const auto& [g, row] : decompose(v, basis))
                out += from_row(matrix_apply(matrix(g, basis), row), basis, g);
            return out;
        }
    }
    throw ConsistencyError("unreachable automorphism kind");
}

GaussScalar Automorphism::trace_on_grade(int n, const GradedBasis& basis) const {
    return matrix_trace(matrix(n, basis));
}

bool Automorphism::equal_on_grades(const Automorphism& other, const GradedBasis& basis,
                                   int W) const {
    for (int g = 0; g <= W; ++g)
        if (!(matrix(g, basis) == other.matrix(g, basis))) return false;
    return true;
}

int Automorphism::order_of(const GradedBasis& basis, int W, int bound) const {
    std::vector<Matrix> power(W + 1);
    for (int g = 0; g <= W; ++g) power[g] = matrix(g, basis);
    for (int k = 1; k <= bound; ++k) {
        bool ident = true;
        for (int g = 0; g <= W && ident; ++g) ident = is_identity_matrix(power[g]);
        if (ident) return k;
        for (int g = 0; g <= W; ++g) power[g] = matrix_compose(matrix(g, basis), power[g]);
    }
    throw DomainError("automorphism '" + describe() + "': order exceeds bound " +
                      std::to_string(bound));
}

std::optional<std::pair<QVec, std::vector<int>>> Automorphism::inn_lift_form() const {
    const AutoNode& node = *node_;
    const int d = node.lat->rank();
    switch (node.kind) {
        case AutoNode::Kind::Inner:
            return std::make_pair(node.h, std::vector<int>(d, 1));
        case AutoNode::Kind::Lifted: {
            std::vector<int> diag(d);
            for (int i = 0; i < d; ++i) {
                const QVec& im = node.lift_images[i];
                int val = 0;
                for (int j = 0; j < d; ++j) {
                    if (im.coords[j] == 0) continue;
                    if (j != i || (im.coords[j] != 1 && im.coords[j] != -1))
                        return std::nullopt;
                    val = im.coords[j] == 1 ? 1 : -1;
                }
                if (val == 0) return std::nullopt;
                diag[i] = val;
            }
            return std::make_pair(QVec::zero(node.lat), diag);
        }
        case AutoNode::Kind::Compose: {
            QVec h = QVec::zero(node.lat);
            std::vector<int> diag(d, 1);
            for (const auto& child : node.children) {
                auto sub = Automorphism(child).inn_lift_form();
                if (!sub) return std::nullopt;
                // (h, D) o (h', D') = (h + D h', D D')
                QVec dh = sub->first;
                for (int i = 0; i < d; ++i)
                    if (diag[i] == -1) dh.coords[i] = -dh.coords[i];
                h = h + dh;
                for (int i = 0; i < d; ++i) diag[i] *= sub->second[i];
            }
            return std::make_pair(h, diag);
        }
        case AutoNode::Kind::Inverse: {
            auto sub = Automorphism(node.children[0]).inn_lift_form();
            if (!sub) return std::nullopt;
            // (h, D)^{-1} = (-D^{-1} h, D^{-1}); D is its own inverse here.
            QVec h = -sub->first;
            for (int i = 0; i < d; ++i)
                if (sub->second[i] == -1) h.coords[i] = -h.coords[i];
            return std::make_pair(h, sub->second);
        }
        case AutoNode::Kind::Propagated:
            return std::nullopt;
    }
    return std::nullopt;
}

void verify_automorphism(const Automorphism& a, const GradedBasis& basis) {
    const LatticePtr& lat = a.lattice();
    StateVector vac = StateVector::vacuum(lat);
    if (!(a.apply(vac, basis) == vac))
        throw ConsistencyError("automorphism '" + a.describe() + "' does not fix the vacuum");
    if (basis.cutoff() >= 2) {
        StateVector omega = lattice_virasoro(lat);
        if (!(a.apply(omega, basis) == omega))
            throw ConsistencyError("automorphism '" + a.describe() +
                                   "' does not fix the Virasoro vector");
    }
}

AutGroup close_group(std::vector<Automorphism> generators, const GradedBasis& basis, int W,
                     int bound) {
    AutGroup g;
    if (generators.empty()) throw DomainError("close_group: no generators");
    const LatticePtr lat = generators[0].lattice();
    g.generators = generators;
    g.closure_cutoff = W;
    g.elements.push_back(Automorphism::identity(lat));
    auto known = [&](const Automorphism& a) {
        for (const auto& e : g.elements)
            if (e.equal_on_grades(a, basis, W)) return true;
        return false;
    };
    size_t next = 0;
    while (next < g.elements.size()) {
        Automorphism base = g.elements[next++];
        for (const auto& gen : g.generators) {
            Automorphism prod = Automorphism::compose({base, gen});
            if (!known(prod)) {
                g.elements.push_back(prod);
                if (static_cast<int>(g.elements.size()) > bound)
                    throw DomainError("group closure exceeds bound " + std::to_string(bound));
            }
        }
    }
    return g;
}

Subspace fixed_space(const AutGroup& g, int n, const GradedBasis& basis) {
    const int dim_n = basis.dim(n);
    Matrix stacked(dim_n);
    int offset = 0;
    for (const auto& gen : g.generators) {
        const Matrix& m = gen.matrix(n, basis);
        for (int j = 0; j < dim_n; ++j) {
            SparseRow shifted = row_axpy(m[j], GaussScalar(-1), SparseRow{{j, GaussScalar(1)}});
            for (const auto& [idx, c] : shifted) stacked[j].push_back({idx + offset, c});
        }
        offset += dim_n;
    }
    Subspace fixed = kernel_on_grade(stacked, n);

    // Burnside: dim V^G = (1/|G|) sum_g tr(g).
    GaussScalar total(0);
    for (const auto& e : g.elements) total += e.trace_on_grade(n, basis);
    GaussScalar average = total * GaussScalar(make_rat(1, static_cast<long>(g.elements.size())));
    if (!(average == GaussScalar(fixed.dim())))
        throw ConsistencyError("Burnside count " + average.to_string() + " != fixed dimension " +
                               std::to_string(fixed.dim()) + " at grade " + std::to_string(n));
    return fixed;
}

TwistedCharacter twisted_character(const Automorphism& a, const GradedBasis& basis, int W) {
    if (W > basis.cutoff())
        throw CutoffError("twisted character cutoff exceeds the basis cutoff");
    auto form = a.inn_lift_form();
    if (form) {
        IntSeries s = twisted_character_closed(a.lattice(), form->first, form->second, W);
        for (int n = 0; n <= W; ++n)
            if (!(s.coeff_int(n) == a.trace_on_grade(n, basis)))
                throw ConsistencyError("closed-form twisted character disagrees with the "
                                       "matrix trace at grade " +
                                       std::to_string(n));
        return {s, true};
    }
    IntSeries s(W);
    for (int n = 0; n <= W; ++n) s.at4(4 * n) = a.trace_on_grade(n, basis);
    return {s, false};
}

IntSeries burnside_orbifold_dims(const AutGroup& g, const GradedBasis& basis, int W) {
    IntSeries total(W);
    for (const auto& e : g.elements) total += twisted_character(e, basis, W).series;
    IntSeries avg = total.scaled(GaussScalar(make_rat(1, static_cast<long>(g.elements.size()))));
    for (int p = 0; p <= avg.grid_max(); ++p) {
        const GaussScalar& c = avg.at4(p);
        if (c.is_zero()) continue;
        if (p % 4 != 0 || !c.is_real() || c.re().get_den() != 1 || c.re() < 0)
            throw ConsistencyError("Burnside series has a bad coefficient at q^(" +
                                   std::to_string(p) + "/4): " + c.to_string());
    }
    return avg;
}

}  // namespace voalab
