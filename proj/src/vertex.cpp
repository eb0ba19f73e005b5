#include "voalab/vertex.hpp"

#include <algorithm>
#include <map>

namespace voalab {

Int binomial(long long m, long long j) {
    if (j < 0) return Int(0);
    if (m >= 0 && j > m) return Int(0);
    if (m < 0) {
        // C(m, j) = (-1)^j C(-m+j-1, j)
        Int c = binomial(-m + j - 1, j);
        return (j % 2 == 0) ? c : Int(-c);
    }
    Int r(1);
    for (long long t = 1; t <= j; ++t) {
        r *= Int(static_cast<long>(m - t + 1));
        r /= Int(static_cast<long>(t));  // exact at every step
    }
    return r;
}

namespace {

// beta(m) on a single monomial, for a basis direction `dir`.
void heis_apply_basis_dir(int dir, int m, const Monomial& mono, const GaussScalar& coeff,
                          const Lattice& lat, StateVector& out) {
    if (m < 0) {
        Monomial next = mono;
        next.modes.push_back({dir, -m});
        next.canonicalize();
        out.add(next, coeff);
        return;
    }
    if (m == 0) {
        Rat pairing(0);
        for (int j = 0; j < lat.rank(); ++j)
            if (mono.point[j] != 0) pairing += Rat(lat.gram(dir, j)) * Rat(mono.point[j]);
        if (pairing != 0) out.add(mono, coeff * GaussScalar(pairing));
        return;
    }
    for (size_t k = 0; k < mono.modes.size(); ++k) {
        const auto& [d2, n] = mono.modes[k];
        if (n != m) continue;
        Rat pairing = Rat(m) * Rat(lat.gram(dir, d2));
        if (pairing == 0) continue;
        Monomial next = mono;
        next.modes.erase(next.modes.begin() + k);
        out.add(next, coeff * GaussScalar(pairing));
    }
}

}  // namespace

StateVector heis_apply(const QVec& beta, int m, const StateVector& v) {
    if (v.lattice() && beta.lat != v.lattice())
        throw DomainError("heis_apply: direction over a different lattice");
    StateVector out(beta.lat);
    for (int i = 0; i < beta.lat->rank(); ++i) {
        if (beta.coords[i] == 0) continue;
        GaussScalar c(beta.coords[i]);
        for (const auto& [mono, x] : v.terms())
            heis_apply_basis_dir(i, m, mono, x * c, *beta.lat, out);
    }
    return out;
}

namespace {

// Layers of the creation exponential: exp(sum_{m>0} a(-m)/m z^m) = sum h_p z^p
// with h_0 = X and p*h_p = sum_{m<=p} a(-m) h_{p-m} (all modes commute).
std::vector<StateVector> creation_exp_layers(const QVec& alpha, const StateVector& x,
                                             long long pmax) {
    std::vector<StateVector> h;
    h.push_back(x);
    for (long long p = 1; p <= pmax; ++p) {
        StateVector acc(x.lattice());
        for (long long m = 1; m <= p; ++m)
            acc += heis_apply(alpha, static_cast<int>(-m), h[p - m]);
        h.push_back(acc.scaled(GaussScalar(make_rat(1, p))));
    }
    return h;
}

}  // namespace

StateVector exp_apply(const QVec& alpha, int n, const StateVector& v) {
    const LatticePtr lat = alpha.lat;
    if (v.lattice() && lat != v.lattice())
        throw DomainError("exp_apply: point over a different lattice");
    if (!alpha.is_integral())
        throw DomainError("exp_apply: " + alpha.to_string() + " is not a lattice point");
    std::vector<long> ashift;
    for (const auto& c : alpha.int_coords()) ashift.push_back(static_cast<long>(c.get_si()));

    StateVector out(lat);
    for (const auto& [mono, coeff] : v.terms()) {
        // z^{<alpha,mu>} followed by the translation e^mu -> e^{alpha+mu}.
        Rat s0r(0);
        for (int i = 0; i < lat->rank(); ++i) {
            if (ashift[i] == 0) continue;
            for (int j = 0; j < lat->rank(); ++j)
                if (mono.point[j] != 0)
                    s0r += Rat(ashift[i]) * Rat(lat->gram(i, j)) * Rat(mono.point[j]);
        }
        long long s0 = s0r.get_num().get_si();
        Monomial shifted = mono;
        for (int i = 0; i < lat->rank(); ++i) shifted.point[i] += ashift[i];

        // Annihilation side E^+(-alpha,z) = prod_m exp(-alpha(m)/m z^{-m});
        // only levels present among the modes can contract.
        std::map<long long, StateVector> layers;
        layers[s0] = StateVector::monomial(lat, shifted, coeff);
        std::vector<int> levels;
        for (const auto& [d, lv] : mono.modes) levels.push_back(lv);
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        for (int m : levels) {
            std::map<long long, StateVector> next;
            for (const auto& [s, x] : layers) {
                StateVector cur = x;     // alpha(m)^t applied t times
                Rat factor(1);           // (-1/m)^t / t!
                long long t = 0;
                while (!cur.is_zero()) {
                    StateVector scaled = cur.scaled(GaussScalar(factor));
                    auto [it, fresh] = next.try_emplace(s - (long long)m * t, scaled);
                    if (!fresh) it->second += scaled;
                    ++t;
                    cur = heis_apply(alpha, m, cur);
                    factor *= make_rat(-1, m) / Rat(static_cast<long>(t));
                }
            }
            layers = std::move(next);
        }

        // Creation side E^-(-alpha,z): pick the z-power landing on mode n.
        for (const auto& [s, x] : layers) {
            long long p = -(long long)n - 1 - s;
            if (p < 0) continue;
            auto h = creation_exp_layers(alpha, x, p);
            out += h[p];
        }
    }
    return out;
}

namespace {

StateVector mode_apply_mono(const Monomial& mu, long long n, const StateVector& v,
                            const LatticePtr& lat) {
    if (v.is_zero()) return StateVector(lat);
    if (mu.modes.empty()) {
        std::vector<Rat> c;
        c.reserve(mu.point.size());
        for (long x : mu.point) c.push_back(Rat(x));
        return exp_apply(QVec(lat, std::move(c)), static_cast<int>(n), v);
    }
    // Strip the first creation mode: mu = b(-k) rest, then use the iterate
    // formula
    //   (a_(-k) b)_(n) = sum_j C(k+j-1,j) [ a_(-k-j) b_(n+j)
    //                                       - (-1)^k b_(n-k-j) a_(j) ].
    const auto [dir, k] = mu.modes.front();
    Monomial rest = mu;
    rest.modes.erase(rest.modes.begin());
    QVec b = QVec::basis(lat, dir);

    long long wt_rest = rest.weight(*lat);
    long long maxwt_v = 0, maxlevel_v = 0;
    for (const auto& [mv, cv] : v.terms()) {
        maxwt_v = std::max(maxwt_v, mv.weight(*lat));
        for (const auto& [d2, lv] : mv.modes)
            maxlevel_v = std::max<long long>(maxlevel_v, lv);
    }

    StateVector out(lat);
    for (long long j = 0; wt_rest + maxwt_v - (n + j) - 1 >= 0; ++j) {
        StateVector inner_part = mode_apply_mono(rest, n + j, v, lat);
        if (inner_part.is_zero()) continue;
        GaussScalar cbin{Rat(binomial(k + j - 1, j))};
        out += heis_apply(b, static_cast<int>(-k - j), inner_part).scaled(cbin);
    }
    const long sign = (k % 2 == 0) ? -1 : 1;  // -(-1)^k
    for (long long j = 0; j <= maxlevel_v; ++j) {
        StateVector bj = heis_apply(b, static_cast<int>(j), v);
        if (bj.is_zero()) continue;
        StateVector term = mode_apply_mono(rest, n - k - j, bj, lat);
        if (term.is_zero()) continue;
        GaussScalar cbin{Rat(sign) * Rat(binomial(k + j - 1, j))};
        out += term.scaled(cbin);
    }
    return out;
}

}  // namespace

StateVector mode_apply(const StateVector& u, int n, const StateVector& v) {
    LatticePtr lat = u.lattice() ? u.lattice() : v.lattice();
    if (u.lattice() && v.lattice() && u.lattice() != v.lattice())
        throw DomainError("mode_apply: states over different lattices");
    StateVector out(lat);
    for (const auto& [mu, cu] : u.terms()) out += mode_apply_mono(mu, n, v, lat).scaled(cu);
    return out;
}

StateVector lattice_virasoro(const LatticePtr& lat) {
    std::vector<QVec> span;
    for (int i = 0; i < lat->rank(); ++i) span.push_back(QVec::basis(lat, i));
    return span_virasoro(span);
}

StateVector span_virasoro(const std::vector<QVec>& span) {
    if (span.empty()) throw DomainError("span_virasoro: empty span");
    const LatticePtr lat = span[0].lat;
    const size_t r = span.size();
    std::vector<std::vector<Rat>> gram(r, std::vector<Rat>(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) gram[i][j] = inner(span[i], span[j]);
    auto ginv = rational_matrix_inverse(std::move(gram));
    StateVector out(lat);
    StateVector vac = StateVector::vacuum(lat);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            if (ginv[i][j] == 0) continue;
            StateVector term = heis_apply(span[i], -1, heis_apply(span[j], -1, vac));
            out += term.scaled(GaussScalar(Rat(ginv[i][j] / 2)));
        }
    return out;
}

StateVector sublattice_virasoro(const Sublattice& s) { return span_virasoro(s.basis()); }

StateVector sugawara_sl2(const StateVector& E, const StateVector& H, const StateVector& F,
                         int k) {
    if (k <= 0) throw AffineTripleError("level must be a positive integer");
    const LatticePtr lat = E.lattice();
    StateVector vac = StateVector::vacuum(lat);
    StateVector zero(lat);
    auto expect = [&](const char* what, const StateVector& got, const StateVector& want) {
        if (!(got == want))
            throw AffineTripleError(std::string("affine sl2 relation failed: ") + what);
    };
    expect("H(0)E = 2E", mode_apply(H, 0, E), E.scaled(GaussScalar(2)));
    expect("H(0)F = -2F", mode_apply(H, 0, F), F.scaled(GaussScalar(-2)));
    expect("H(0)H = 0", mode_apply(H, 0, H), zero);
    expect("E(0)F = H", mode_apply(E, 0, F), H);
    expect("E(0)E = 0", mode_apply(E, 0, E), zero);
    expect("F(0)F = 0", mode_apply(F, 0, F), zero);
    expect("H(1)H = 2k", mode_apply(H, 1, H), vac.scaled(GaussScalar(2 * k)));
    expect("E(1)F = k", mode_apply(E, 1, F), vac.scaled(GaussScalar(k)));
    expect("E(1)E = 0", mode_apply(E, 1, E), zero);
    expect("F(1)F = 0", mode_apply(F, 1, F), zero);
    expect("H(1)E = 0", mode_apply(H, 1, E), zero);
    expect("H(1)F = 0", mode_apply(H, 1, F), zero);

    StateVector sum = mode_apply(H, -1, H).scaled(GaussScalar(make_rat(1, 2)));
    sum += mode_apply(E, -1, F);
    sum += mode_apply(F, -1, E);
    return sum.scaled(GaussScalar(make_rat(1, 2 * (k + 2))));
}

ConformalCertificate is_conformal(const StateVector& e, const GradedBasis& basis, int W) {
    auto w = e.homogeneous_weight();
    if (!w || *w != 2)
        throw ConformalError("wt(e) = 2", 2, "vector is not homogeneous of weight 2");
    const LatticePtr lat = e.lattice();

    if (!(mode_apply(e, 1, e) == e.scaled(GaussScalar(2))))
        throw ConformalError("e_(1)e = 2e", 2, "");
    if (!mode_apply(e, 2, e).is_zero()) throw ConformalError("e_(2)e = 0", 2, "");
    StateVector e3 = mode_apply(e, 3, e);
    Rat c(0);
    if (!e3.is_zero()) {
        if (e3.size() != 1 || !(e3.terms().begin()->first == vacuum_monomial(lat->rank())))
            throw ConformalError("e_(3)e = (c/2)1", 0, "result is not a vacuum multiple");
        const GaussScalar& half_c = e3.terms().begin()->second;
        if (!half_c.is_real())
            throw ConformalError("e_(3)e = (c/2)1", 0, "imaginary central term");
        c = half_c.re() * 2;
    }

    // Virasoro commutators as operator identities, grade by grade.
    for (int g = 0; g + 2 <= W; ++g) {
        for (const auto& mono : basis.grade(g)) {
            StateVector v = StateVector::monomial(lat, mono);
            std::map<int, StateVector> lnv;  // L_n v
            for (int m = -4; m <= 4; ++m) lnv[m] = mode_apply(e, m + 1, v);
            for (int m = -2; m <= 2; ++m)
                for (int n = m + 1; n <= 2; ++n) {
                    StateVector lhs =
                        mode_apply(e, m + 1, lnv[n]) - mode_apply(e, n + 1, lnv[m]);
                    StateVector rhs = lnv[m + n].scaled(GaussScalar(m - n));
                    if (m + n == 0) {
                        Rat central = Rat((long)m * m * m - m) * c / 12;
                        rhs += v.scaled(GaussScalar(central));
                    }
                    if (!(lhs == rhs))
                        throw ConformalError("[L_" + std::to_string(m) + ", L_" +
                                                 std::to_string(n) + "]",
                                             g, "commutator mismatch");
                }
        }
    }
    return ConformalCertificate{e, c, W};
}

bool commuting_pair(const StateVector& e1, const StateVector& e2) {
    auto w1 = e1.homogeneous_weight();
    auto w2 = e2.homogeneous_weight();
    long long top = (w1 ? *w1 : 0) + (w2 ? *w2 : 0);
    for (long long n = 0; n < top; ++n)
        if (!mode_apply(e1, static_cast<int>(n), e2).is_zero()) return false;
    return true;
}

StateVector transport_state(const StateVector& v,
                            const std::vector<std::pair<QVec, QVec>>& frame,
                            const std::vector<QVec>& complement,
                            const LatticePtr& target) {
    if (frame.empty()) throw DomainError("transport_state: empty frame");
    const LatticePtr src = frame[0].first.lat;
    const int d = src->rank();
    const int r = static_cast<int>(frame.size());
    if (r + static_cast<int>(complement.size()) != d)
        throw DomainError("transport_state: frame plus complement must have full rank");

    std::vector<std::vector<Rat>> T(d, std::vector<Rat>(d));
    for (int k = 0; k < d; ++k) {
        const QVec& f = k < r ? frame[k].first : complement[k - r];
        if (f.lat != src) throw DomainError("transport_state: frame over wrong lattice");
        for (int i = 0; i < d; ++i) T[i][k] = f.coords[i];
    }
    auto Tinv = rational_matrix_inverse(std::move(T));

    // Rewrite the whole state over the frame first: complement components must
    // cancel in the total, not per input monomial.
    std::map<Monomial, GaussScalar> frame_terms;  // modes carry frame indices
    for (const auto& [mono, coeff] : v.terms()) {
        std::vector<std::pair<GaussScalar, std::vector<std::pair<int, int>>>> expansion;
        expansion.push_back({coeff, {}});
        for (const auto& [dir, nlevel] : mono.modes) {
            std::vector<std::pair<GaussScalar, std::vector<std::pair<int, int>>>> next;
            for (const auto& [c0, modes0] : expansion)
                for (int k = 0; k < d; ++k) {
                    if (Tinv[k][dir] == 0) continue;
                    auto modes = modes0;
                    modes.push_back({k, nlevel});
                    next.push_back({c0 * GaussScalar(Tinv[k][dir]), std::move(modes)});
                }
            expansion = std::move(next);
        }
        for (auto& [c0, modes0] : expansion) {
            Monomial fm;
            fm.point = mono.point;
            fm.modes = std::move(modes0);
            fm.canonicalize();
            auto [it, fresh] = frame_terms.try_emplace(fm, c0);
            if (!fresh) {
                it->second += c0;
                if (it->second.is_zero()) frame_terms.erase(it);
            }
        }
    }

    StateVector out(target);
    for (const auto& [fm, c0] : frame_terms) {
        for (const auto& [k, nl] : fm.modes)
            if (k >= r)
                throw DomainError(
                    "transport_state: state has a surviving component along the "
                    "complement directions");
        std::vector<Rat> pc(d, Rat(0));
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                if (fm.point[i] != 0) pc[k] += Tinv[k][i] * Rat(fm.point[i]);
        for (int k = r; k < d; ++k)
            if (pc[k] != 0)
                throw DomainError("transport_state: point lies outside the sublattice");
        QVec tgt_point = QVec::zero(target);
        for (int k = 0; k < r; ++k) {
            if (pc[k].get_den() != 1)
                throw DomainError("transport_state: point has fractional frame coordinates");
            tgt_point = tgt_point + frame[k].second.scaled(pc[k]);
        }
        if (!tgt_point.is_integral())
            throw DomainError("transport_state: image point is not integral");
        StateVector term = StateVector::point(tgt_point, c0);
        for (const auto& [k, nl] : fm.modes) term = heis_apply(frame[k].second, -nl, term);
        out += term;
    }
    return out;
}

}  // namespace voalab
