#pragma once

#include "qalg/homology.hpp"
#include "qalg/polyutil.hpp"

namespace qalg {

template <class F>
ModuleMap<F> map_add(const ModuleMap<F>& a, const ModuleMap<F>& b)
{
    ModuleMap<F> out = a;
    for (std::size_t blk = 0; blk < a.source().blocks().size(); ++blk)
        if (a.has_block(static_cast<int>(blk)))
            out.block(static_cast<int>(blk)) =
                a.block(static_cast<int>(blk)).add(b.block(static_cast<int>(blk)));
    return out;
}

/* Endomorphism algebra End(M)_0 with a canonical basis, its radical (via the
 * trace form of the regular representation; valid in characteristic 0 or
 * p > dim End), and the semisimple quotient. */
template <class F>
class EndAlgebra {
public:
    explicit EndAlgebra(const ModulePtr<F>& Mp) : M_(Mp), f_(&Mp->field())
    {
        const auto& M = *Mp;
        auto H = hom_space(M, M);
        n_ = M.total_dim();
        if (H.empty()) {
            dim_ = 0;
            return;
        }
        // canonical basis: RREF of the flattened endomorphism matrices
        int hd = n_ * n_;
        Matrix<F> rows(*f_, static_cast<int>(H.size()), hd);
        for (std::size_t r = 0; r < H.size(); ++r) {
            Matrix<F> m = H[r].full_matrix();
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) rows.at(static_cast<int>(r), i * n_ + j) = m.at(i, j);
        }
        rref_ = row_space(rows);
        pivots_.clear();
        for (int r = 0; r < rref_.rows(); ++r)
            for (int j = 0; j < hd; ++j)
                if (!f_->is_zero(rref_.at(r, j))) {
                    pivots_.push_back(j);
                    break;
                }
        dim_ = rref_.rows();
        basis_.clear();
        for (int r = 0; r < dim_; ++r) {
            Matrix<F> m(*f_, n_, n_);
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) m.at(i, j) = rref_.at(r, i * n_ + j);
            basis_.push_back(std::move(m));
        }
        compute_radical();
    }

    int dim() const { return dim_; }
    int bar_dim() const { return bar_dim_; }
    const Matrix<F>& basis(int i) const { return basis_[i]; }

    std::vector<Elem_t<F>> coords_of(const Matrix<F>& m) const
    {
        std::vector<Elem_t<F>> flat(n_ * n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) flat[i * n_ + j] = m.at(i, j);
        auto c = reduce_against_rref(rref_, pivots_, flat);
        if (!c) throw error("EndAlgebra: matrix not an endomorphism");
        return *c;
    }
    Matrix<F> from_coords(const std::vector<Elem_t<F>>& c) const
    {
        Matrix<F> m(*f_, n_, n_);
        for (int i = 0; i < dim_; ++i)
            if (!f_->is_zero(c[i])) m = m.add(basis_[i].scale(c[i]));
        return m;
    }

    // reduce an element modulo the radical, in the complement coordinates
    std::vector<Elem_t<F>> bar_coords(std::vector<Elem_t<F>> c) const
    {
        for (int r = 0; r < j_rref_.rows(); ++r) {
            const auto& piv = j_pivots_[r];
            const Elem_t<F> x = c[piv];
            if (f_->is_zero(x)) continue;
            for (int j = 0; j < dim_; ++j) c[j] = f_->sub(c[j], f_->mul(x, j_rref_.at(r, j)));
        }
        std::vector<Elem_t<F>> bar(bar_positions_.size());
        for (std::size_t i = 0; i < bar_positions_.size(); ++i) bar[i] = c[bar_positions_[i]];
        return bar;
    }
    std::vector<Elem_t<F>> bar_lift(const std::vector<Elem_t<F>>& bar) const
    {
        std::vector<Elem_t<F>> c(dim_, f_->zero());
        for (std::size_t i = 0; i < bar_positions_.size(); ++i) c[bar_positions_[i]] = bar[i];
        return c;
    }
    std::vector<Elem_t<F>> bar_mul(const std::vector<Elem_t<F>>& a,
                                   const std::vector<Elem_t<F>>& b) const
    {
        Matrix<F> prod = from_coords(bar_lift(a)).mul(from_coords(bar_lift(b)));
        return bar_coords(coords_of(prod));
    }
    std::vector<Elem_t<F>> bar_identity() const { return bar_coords(coords_of(Matrix<F>::identity(*f_, n_))); }

    // regular representation of the semisimple quotient on itself
    Matrix<F> bar_mult_matrix(const std::vector<Elem_t<F>>& z) const
    {
        Matrix<F> L(*f_, bar_dim_, bar_dim_);
        for (int i = 0; i < bar_dim_; ++i) {
            std::vector<Elem_t<F>> e(bar_dim_, f_->zero());
            e[i] = f_->one();
            auto r = bar_mul(z, e);  // left multiplication, rows = images
            for (int j = 0; j < bar_dim_; ++j) L.at(i, j) = r[j];
        }
        return L.transpose();  // act on coordinate columns
    }

private:
    void compute_radical()
    {
        if constexpr (std::is_same_v<F, Fp>) {
            if (f_->characteristic() <= dim_)
                throw field_too_small("field too small: need p > dim End = " + std::to_string(dim_));
        }
        // structure constants and the regular-representation trace form
        std::vector<std::vector<std::vector<Elem_t<F>>>> c(dim_);
        for (int i = 0; i < dim_; ++i) {
            c[i].resize(dim_);
            for (int j = 0; j < dim_; ++j) c[i][j] = coords_of(basis_[i].mul(basis_[j]));
        }
        auto Lmat = [&](int i) {
            Matrix<F> L(*f_, dim_, dim_);
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k) L.at(k, j) = c[i][j][k];
            return L;
        };
        std::vector<Matrix<F>> L;
        for (int i = 0; i < dim_; ++i) L.push_back(Lmat(i));
        Matrix<F> gram(*f_, dim_, dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                Matrix<F> p = L[i].mul(L[j]);
                Elem_t<F> tr = f_->zero();
                for (int k = 0; k < dim_; ++k) tr = f_->add(tr, p.at(k, k));
                gram.at(i, j) = tr;
            }
        auto [rk, ker] = gram.rank_and_kernel();
        (void)rk;
        // J basis rows in E coordinates, echelonized
        Matrix<F> jrows = ker.transpose();
        j_rref_ = row_space(jrows);
        j_pivots_.clear();
        for (int r = 0; r < j_rref_.rows(); ++r)
            for (int j = 0; j < dim_; ++j)
                if (!f_->is_zero(j_rref_.at(r, j))) {
                    j_pivots_.push_back(j);
                    break;
                }
        std::vector<bool> isp(dim_, false);
        for (int p : j_pivots_) isp[p] = true;
        bar_positions_.clear();
        for (int i = 0; i < dim_; ++i)
            if (!isp[i]) bar_positions_.push_back(i);
        bar_dim_ = static_cast<int>(bar_positions_.size());
    }

    ModulePtr<F> M_;
    const F* f_;
    int n_ = 0, dim_ = 0, bar_dim_ = 0;
    std::vector<Matrix<F>> basis_;
    Matrix<F> rref_;
    std::vector<int> pivots_;
    Matrix<F> j_rref_;
    std::vector<int> j_pivots_;
    std::vector<int> bar_positions_;
};

namespace detail {

/* A nontrivial idempotent of the split semisimple quotient, as bar coords.
 * Center splitting first; isotypic blocks by minimal-polynomial splitting of a
 * deterministic candidate enumeration. */
template <class F>
std::optional<std::vector<Elem_t<F>>> find_bar_idempotent(const F& f, const EndAlgebra<F>& E)
{
    const int n = E.bar_dim();
    if (n <= 1) return std::nullopt;
    auto id = E.bar_identity();

    auto is_scalar = [&](const std::vector<Elem_t<F>>& z) {
        // z in span(identity)?
        Matrix<F> cols(f, n, 1);
        for (int i = 0; i < n; ++i) cols.at(i, 0) = id[i];
        return cols.express_in_columns(z).has_value();
    };
    auto idempotent_from_coprime = [&](const std::vector<Elem_t<F>>& z, const Poly<F>& f1,
                                       const Poly<F>& f2) -> std::optional<std::vector<Elem_t<F>>> {
        auto [g, u, v] = poly_ext_gcd(f, f1, f2);
        if (g.deg() != 0) return std::nullopt;
        // e = u(z) f1(z): evaluate the polynomial u*f1 at z in the bar algebra
        Poly<F> uf1 = poly_mul(f, u, f1);
        std::vector<Elem_t<F>> acc(n, f.zero());
        std::vector<Elem_t<F>> pw = id;
        for (int i = 0; i <= uf1.deg(); ++i) {
            for (int k = 0; k < n; ++k) acc[k] = f.add(acc[k], f.mul(uf1.c[i], pw[k]));
            pw = E.bar_mul(pw, z);
        }
        // nontrivial?
        bool zero = true, one = true;
        for (int k = 0; k < n; ++k) {
            if (!f.is_zero(acc[k])) zero = false;
            if (!f.eq(acc[k], id[k])) one = false;
        }
        if (zero || one) return std::nullopt;
        return acc;
    };
    auto try_element = [&](const std::vector<Elem_t<F>>& z) -> std::optional<std::vector<Elem_t<F>>> {
        if (is_scalar(z)) return std::nullopt;
        Poly<F> mp = min_poly(E.bar_mult_matrix(z));
        if (mp.deg() <= 1) return std::nullopt;
        if constexpr (std::is_same_v<F, Fp>) {
            Poly<F> sq = poly_gcd(f, mp, poly_derivative(f, mp));
            Poly<F> sf = poly_divmod(f, mp, sq).first;
            auto factors = berlekamp_squarefree(f, sf);
            if (factors.size() < 2) return std::nullopt;
            // f1 = full multiplicity of the first factor inside mp
            Poly<F> f1{{f.one()}};
            Poly<F> rest = mp;
            while (true) {
                auto [q, r] = poly_divmod(f, rest, factors[0]);
                if (!r.is_zero()) break;
                rest = q;
                f1 = poly_mul(f, f1, factors[0]);
            }
            return idempotent_from_coprime(z, f1, rest);
        } else {
            Poly<F> sq = poly_gcd(f, mp, poly_derivative(f, mp));
            Poly<F> sf = poly_divmod(f, mp, sq).first;
            auto roots = rational_roots(f, sf);
            for (const auto& r : roots) {
                Poly<F> lin{{f.neg(r), f.one()}};
                Poly<F> f1{{f.one()}};
                Poly<F> rest = mp;
                while (true) {
                    auto [q, rm] = poly_divmod(f, rest, lin);
                    if (!rm.is_zero()) break;
                    rest = q;
                    f1 = poly_mul(f, f1, lin);
                }
                if (rest.deg() == 0) continue;  // mp = (t-r)^m, no split
                auto e = idempotent_from_coprime(z, f1, rest);
                if (e) return e;
            }
            return std::nullopt;
        }
    };

    // center of the quotient
    {
        std::vector<std::vector<Elem_t<F>>> rows;
        for (int b = 0; b < n; ++b) {
            std::vector<Elem_t<F>> eb(n, f.zero());
            eb[b] = f.one();
            Matrix<F> Lb = E.bar_mult_matrix(eb);
            // z central iff L_z commutes with everything; build [z*eb - eb*z] rows
            for (int i = 0; i < n; ++i) {
                // row for coordinate i of (z * e_b - e_b * z), z = unknown coords
                std::vector<Elem_t<F>> row(n, f.zero());
                for (int zc = 0; zc < n; ++zc) {
                    std::vector<Elem_t<F>> ez(n, f.zero());
                    ez[zc] = f.one();
                    auto ab = E.bar_mul(ez, eb);
                    auto ba = E.bar_mul(eb, ez);
                    row[zc] = f.sub(ab[i], ba[i]);
                }
                rows.push_back(row);
            }
        }
        Matrix<F> sys(f, static_cast<int>(rows.size()), n);
        for (int i = 0; i < sys.rows(); ++i)
            for (int j = 0; j < n; ++j) sys.at(i, j) = rows[i][j];
        auto [rk, ker] = sys.rank_and_kernel();
        (void)rk;
        for (int c = 0; c < ker.cols(); ++c) {
            std::vector<Elem_t<F>> z(n);
            for (int i = 0; i < n; ++i) z[i] = ker.at(i, c);
            auto e = try_element(z);
            if (e) return e;
        }
    }
    // isotypic: enumerate basis elements, pairwise products and sums
    std::vector<std::vector<Elem_t<F>>> cands;
    for (int i = 0; i < n; ++i) {
        std::vector<Elem_t<F>> e(n, f.zero());
        e[i] = f.one();
        cands.push_back(e);
    }
    int base = n;
    for (int i = 0; i < base; ++i)
        for (int j = 0; j < base; ++j) {
            cands.push_back(E.bar_mul(cands[i], cands[j]));
            std::vector<Elem_t<F>> s(n);
            for (int k = 0; k < n; ++k) s[k] = f.add(cands[i][k], cands[j][k]);
            cands.push_back(s);
        }
    for (const auto& z : cands) {
        auto e = try_element(z);
        if (e) return e;
    }
    throw error("decompose: could not split a nontrivial endomorphism algebra");
}

}  // namespace detail

template <class F>
struct Piece {
    ModulePtr<F> module;
    ModuleMap<F> incl;  // piece -> ambient
    ModuleMap<F> proj;  // ambient -> piece
};

/* Split M into indecomposable direct summands with inclusion/projection maps.
 * Indecomposability is certified by End(M)/J(End M) = k. */
template <class F>
std::vector<Piece<F>> decompose(const ModulePtr<F>& Mp)
{
    std::vector<Piece<F>> out;
    if (Mp->is_zero_module()) return out;
    EndAlgebra<F> E(Mp);
    const F& f = Mp->field();
    if (E.bar_dim() == 1) {
        Piece<F> p;
        p.module = Mp;
        p.incl = identity_map(*Mp);
        p.proj = identity_map(*Mp);
        out.push_back(std::move(p));
        return out;
    }
    auto bar_e = detail::find_bar_idempotent(f, E);
    if (!bar_e) throw error("decompose: expected a nontrivial idempotent");
    // lift to an idempotent of End(M): Newton iteration e <- 3e^2 - 2e^3
    Matrix<F> e = E.from_coords(E.bar_lift(*bar_e));
    Matrix<F> id = Matrix<F>::identity(f, Mp->total_dim());
    for (int it = 0; it < 64; ++it) {
        Matrix<F> e2 = e.mul(e);
        if (e2 == e) break;
        e = e2.scale(f.from_int(3)).sub(e2.mul(e).scale(f.from_int(2)));
        if (it == 63) throw error("decompose: idempotent lifting did not converge");
    }
    if (!(e.mul(e) == e)) throw error("decompose: idempotent lifting failed");

    auto split_part = [&](const Matrix<F>& proj_mat) -> Piece<F> {
        const auto& M = *Mp;
        std::vector<Matrix<F>> spans(M.blocks().size());
        for (std::size_t b = 0; b < M.blocks().size(); ++b) {
            const auto& blk = M.blocks()[b];
            Matrix<F> rows(f, blk.dim, blk.dim);
            for (int i = 0; i < blk.dim; ++i)
                for (int j = 0; j < blk.dim; ++j)
                    rows.at(i, j) = proj_mat.at(blk.offset + i, blk.offset + j);
            spans[b] = rows;
        }
        auto sub = submodule(Mp, spans);
        Piece<F> p;
        p.module = sub.module;
        p.incl = sub.map;
        // projection: x -> x*proj_mat expressed in the submodule basis
        ModuleMap<F> proj(Mp.get(), sub.module.get());
        for (std::size_t b = 0; b < M.blocks().size(); ++b) {
            const auto& blk = M.blocks()[b];
            int sb = sub.module->block_index(blk.vertex, blk.degree);
            if (sb < 0) continue;
            Matrix<F> basis_t = sub.map.block(sb).transpose();
            Matrix<F> pm(f, blk.dim, sub.module->blocks()[sb].dim);
            for (int i = 0; i < blk.dim; ++i) {
                std::vector<Elem_t<F>> v(blk.dim);
                for (int j = 0; j < blk.dim; ++j) v[j] = proj_mat.at(blk.offset + i, blk.offset + j);
                auto sol = basis_t.solve(v);
                if (!sol.solution) throw error("decompose: projection failed");
                for (int j = 0; j < pm.cols(); ++j) pm.at(i, j) = (*sol.solution)[j];
            }
            proj.block(static_cast<int>(b)) = pm;
        }
        p.proj = std::move(proj);
        return p;
    };

    Piece<F> p1 = split_part(e);
    Piece<F> p2 = split_part(id.sub(e));
    if (p1.module->total_dim() + p2.module->total_dim() != Mp->total_dim())
        throw error("decompose: split dimensions inconsistent");
    for (auto* part : {&p1, &p2}) {
        auto rec = decompose(part->module);
        for (auto& q : rec) {
            Piece<F> g;
            g.module = q.module;
            g.incl = compose(q.incl, part->incl);
            g.proj = compose(part->proj, q.proj);
            out.push_back(std::move(g));
        }
    }
    return out;
}

/* Isomorphism test for indecomposables by the composition pairing:
 * X ≅ Y iff some composite X -> Y -> X of Hom-basis elements is invertible. */
template <class F>
std::optional<ModuleMap<F>> indecomposable_iso(const GradedModule<F>& X, const GradedModule<F>& Y)
{
    if (X.dim_table() != Y.dim_table()) return std::nullopt;
    auto HXY = hom_space(X, Y);
    if (HXY.empty()) return std::nullopt;
    auto HYX = hom_space(Y, X);
    for (const auto& fm : HXY)
        for (const auto& gm : HYX) {
            ModuleMap<F> h = compose(fm, gm);
            if (h.rank() == X.total_dim()) return fm;
        }
    return std::nullopt;
}

/* Full isomorphism test with witness: decompose both sides and match pieces. */
template <class F>
std::optional<ModuleMap<F>> module_isomorphism(const ModulePtr<F>& Mp, const ModulePtr<F>& Np)
{
    if (Mp->dim_table() != Np->dim_table()) return std::nullopt;
    if (Mp->is_zero_module()) return identity_map(*Mp);
    auto dm = decompose(Mp);
    auto dn = decompose(Np);
    if (dm.size() != dn.size()) return std::nullopt;
    std::vector<bool> used(dn.size(), false);
    ModuleMap<F> W(Mp.get(), Np.get());
    for (auto& pm : dm) {
        bool matched = false;
        for (std::size_t j = 0; j < dn.size(); ++j) {
            if (used[j]) continue;
            auto iso = indecomposable_iso(*pm.module, *dn[j].module);
            if (!iso) continue;
            used[j] = true;
            matched = true;
            // fix source/target of iso to the piece modules
            W = map_add(W, compose(pm.proj, compose(*iso, dn[j].incl)));
            break;
        }
        if (!matched) return std::nullopt;
    }
    if (!W.is_isomorphism()) throw error("internal: assembled witness is not an isomorphism");
    return W;
}

/* Decomposition into isomorphism classes with multiplicities. */
template <class F>
std::vector<std::pair<ModulePtr<F>, int>> decompose_classes(const ModulePtr<F>& Mp)
{
    auto pieces = decompose(Mp);
    std::vector<std::pair<ModulePtr<F>, int>> out;
    for (auto& p : pieces) {
        bool found = false;
        for (auto& [rep, mult] : out)
            if (indecomposable_iso(*rep, *p.module)) {
                ++mult;
                found = true;
                break;
            }
        if (!found) out.push_back({p.module, 1});
    }
    return out;
}

}  // namespace qalg
