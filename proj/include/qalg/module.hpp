#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qalg/algebra.hpp"

namespace qalg {

struct field_too_small : error {
    using error::error;
};

template <class F>
using AlgebraPtr = std::shared_ptr<const GradedAlgebra<F>>;

/* Graded right module as a quiver representation: one block of coordinates per
 * (vertex, degree) with finite support, and a matrix per algebra generator
 * mapping block (u,n) to (w,n+deg g). Row-vector convention: vectors are rows,
 * the action multiplies on the right. */
template <class F>
class GradedModule {
public:
    using Elem = typename F::Elem;
    using Mat = Matrix<F>;

    struct Block {
        int vertex;
        long degree;
        int dim;
        int offset;  // start of this block in flattened coordinates
    };

    GradedModule() = default;
    GradedModule(AlgebraPtr<F> alg, std::vector<std::pair<std::pair<int, long>, int>> dims)
        : A_(std::move(alg))
    {
        std::sort(dims.begin(), dims.end());
        int off = 0;
        for (const auto& [key, d] : dims) {
            if (d <= 0) continue;
            blocks_.push_back({key.first, key.second, d, off});
            off += d;
        }
        total_ = off;
        const auto& A = *A_;
        act_.assign(A.generators().size(), {});
        for (std::size_t g = 0; g < A.generators().size(); ++g) {
            act_[g].assign(blocks_.size(), Mat());
            for (std::size_t b = 0; b < blocks_.size(); ++b) {
                auto [tb, shape] = target_block(static_cast<int>(g), static_cast<int>(b));
                if (tb >= 0) act_[g][b] = Mat(A.field(), shape.first, shape.second);
            }
        }
    }

    const AlgebraPtr<F>& algebra_ptr() const { return A_; }
    const GradedAlgebra<F>& algebra() const { return *A_; }
    const F& field() const { return A_->field(); }
    int total_dim() const { return total_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    bool is_zero_module() const { return total_ == 0; }

    int block_index(int vertex, long degree) const
    {
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            if (blocks_[i].vertex == vertex && blocks_[i].degree == degree)
                return static_cast<int>(i);
        return -1;
    }
    int block_dim(int vertex, long degree) const
    {
        int b = block_index(vertex, degree);
        return b < 0 ? 0 : blocks_[b].dim;
    }

    // where generator g sends block b, with the matrix shape (source dim, target dim)
    std::pair<int, std::pair<int, int>> target_block(int g, int b) const
    {
        const auto& A = *A_;
        const auto& ge = A.basis(A.generators()[g]);
        const Block& blk = blocks_[b];
        if (blk.vertex != ge.source) return {-1, {0, 0}};
        int tb = block_index(ge.target, blk.degree + ge.degree);
        if (tb < 0) return {-1, {0, 0}};
        return {tb, {blk.dim, blocks_[tb].dim}};
    }

    Mat& act(int g, int b) { return act_[g][b]; }
    const Mat& act(int g, int b) const { return act_[g][b]; }
    bool has_act(int g, int b) const { return act_[g][b].rows() > 0 && act_[g][b].cols() > 0; }

    // graded dimension table, canonical; equal tables are a necessary condition for isomorphism
    std::vector<std::pair<std::pair<int, long>, int>> dim_table() const
    {
        std::vector<std::pair<std::pair<int, long>, int>> t;
        for (const Block& b : blocks_) t.push_back({{b.vertex, b.degree}, b.dim});
        return t;
    }

    /* full action matrix of one generator on flattened coordinates */
    Mat gen_matrix(int g) const
    {
        Mat m(field(), total_, total_);
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            auto [tb, shape] = target_block(g, static_cast<int>(b));
            if (tb < 0) continue;
            const Mat& a = act_[g][b];
            for (int i = 0; i < shape.first; ++i)
                for (int j = 0; j < shape.second; ++j)
                    m.at(blocks_[b].offset + i, blocks_[tb].offset + j) = a.at(i, j);
        }
        return m;
    }

    /* full action matrix of an arbitrary basis element, through its generator expression */
    Mat elem_matrix(int basis_idx) const
    {
        const auto& A = *A_;
        const F& f = field();
        Mat out(f, total_, total_);
        // start from the idempotent e_{source}: projection onto blocks at that vertex
        const auto& be = A.basis(basis_idx);
        for (const auto& [c, seq] : A.gen_expr(basis_idx).terms) {
            Mat cur(f, total_, total_);
            for (const Block& b : blocks_)
                if (b.vertex == be.source)
                    for (int i = 0; i < b.dim; ++i) cur.at(b.offset + i, b.offset + i) = f.one();
            for (int g : seq) cur = cur.mul(gen_matrix(g));
            out = out.add(cur.scale(c));
        }
        return out;
    }

    /* verify the representation satisfies the algebra's multiplication table */
    void validate_action() const
    {
        const auto& A = *A_;
        for (int i = 0; i < A.dim(); ++i)
            for (int j = 0; j < A.dim(); ++j) {
                Mat lhs = elem_matrix(i).mul(elem_matrix(j));
                Mat rhs(field(), total_, total_);
                for (const auto& t : A.mult(i, j)) rhs = rhs.add(elem_matrix(t.idx).scale(t.c));
                if (!(lhs == rhs)) throw error("module action does not respect multiplication");
            }
    }

private:
    AlgebraPtr<F> A_;
    std::vector<Block> blocks_;
    int total_ = 0;
    std::vector<std::vector<Mat>> act_;  // [generator][source block]
};

/* Degree-0 morphism of graded modules: one matrix per common (vertex, degree)
 * block, rows = source coordinates. */
template <class F>
class ModuleMap {
public:
    using Mat = Matrix<F>;

    ModuleMap() = default;
    ModuleMap(const GradedModule<F>* src, const GradedModule<F>* tgt) : src_(src), tgt_(tgt)
    {
        mats_.resize(src->blocks().size());
        for (std::size_t b = 0; b < src->blocks().size(); ++b) {
            const auto& blk = src->blocks()[b];
            int tb = tgt->block_index(blk.vertex, blk.degree);
            if (tb >= 0) mats_[b] = Mat(src->field(), blk.dim, tgt->blocks()[tb].dim);
        }
    }

    const GradedModule<F>& source() const { return *src_; }
    const GradedModule<F>& target() const { return *tgt_; }
    Mat& block(int b) { return mats_[b]; }
    const Mat& block(int b) const { return mats_[b]; }
    bool has_block(int b) const { return mats_[b].rows() > 0 && mats_[b].cols() > 0; }

    Mat full_matrix() const
    {
        Mat m(src_->field(), src_->total_dim(), tgt_->total_dim());
        for (std::size_t b = 0; b < mats_.size(); ++b) {
            if (!has_block(static_cast<int>(b))) continue;
            const auto& sb = src_->blocks()[b];
            int tb = tgt_->block_index(sb.vertex, sb.degree);
            const auto& tblk = tgt_->blocks()[tb];
            for (int i = 0; i < sb.dim; ++i)
                for (int j = 0; j < tblk.dim; ++j)
                    m.at(sb.offset + i, tblk.offset + j) = mats_[b].at(i, j);
        }
        return m;
    }

    int rank() const { return full_matrix().rank(); }
    bool is_injective() const { return rank() == src_->total_dim(); }
    bool is_surjective() const { return rank() == tgt_->total_dim(); }
    bool is_isomorphism() const
    {
        return src_->total_dim() == tgt_->total_dim() && rank() == src_->total_dim();
    }
    bool is_zero() const
    {
        for (const auto& m : mats_)
            if (m.rows() > 0 && !m.is_zero()) return false;
        return true;
    }

    // does the map commute with all generator actions?
    bool commutes() const
    {
        const auto& A = src_->algebra();
        const F& f = src_->field();
        for (std::size_t g = 0; g < A.generators().size(); ++g) {
            Mat lhs = src_->gen_matrix(static_cast<int>(g)).mul(full_matrix());
            Mat rhs = full_matrix().mul(tgt_->gen_matrix(static_cast<int>(g)));
            if (!(lhs == rhs)) return false;
        }
        (void)f;
        return true;
    }

private:
    const GradedModule<F>* src_ = nullptr;
    const GradedModule<F>* tgt_ = nullptr;
    std::vector<Mat> mats_;
};

/* Modules and maps are passed around by shared_ptr so that ModuleMap's raw
 * source/target pointers stay valid; MapEnv bundles them. */
template <class F>
struct Arr {
    std::shared_ptr<const GradedModule<F>> src, tgt;
    ModuleMap<F> map;  // block matrices reference *src, *tgt
};

template <class F>
using ModulePtr = std::shared_ptr<const GradedModule<F>>;

// ---------------------------------------------------------------------------
// constructions

template <class F>
GradedModule<F> zero_module(AlgebraPtr<F> A)
{
    return GradedModule<F>(std::move(A), {});
}

template <class F>
GradedModule<F> simple_module(AlgebraPtr<F> A, int vertex, long degree)
{
    return GradedModule<F>(std::move(A), {{{vertex, degree}, 1}});
}

/* e_v A with its generator placed in degree `degree` (top in that degree). */
template <class F>
GradedModule<F> projective_module(AlgebraPtr<F> A, int vertex, long degree)
{
    const auto& alg = *A;
    const F& f = alg.field();
    // collect basis elements with source = vertex, grouped by (target, degree)
    std::vector<int> elems;
    for (int i = 0; i < alg.dim(); ++i)
        if (alg.basis(i).source == vertex) elems.push_back(i);
    std::map<std::pair<int, long>, std::vector<int>> grouped;
    for (int i : elems) grouped[{alg.basis(i).target, alg.basis(i).degree + degree}].push_back(i);
    std::vector<std::pair<std::pair<int, long>, int>> dims;
    for (const auto& [k, v] : grouped) dims.push_back({k, static_cast<int>(v.size())});
    GradedModule<F> M(A, dims);
    // position of basis element inside its block
    std::map<int, std::pair<int, int>> pos;  // elem -> (block, row)
    for (const auto& [k, v] : grouped) {
        int b = M.block_index(k.first, k.second);
        for (std::size_t r = 0; r < v.size(); ++r) pos[v[r]] = {b, static_cast<int>(r)};
    }
    for (std::size_t g = 0; g < alg.generators().size(); ++g) {
        int gb = alg.generators()[g];
        for (int i : elems) {
            auto [b, r] = pos[i];
            auto [tb, shape] = M.target_block(static_cast<int>(g), b);
            if (tb < 0) continue;
            for (const auto& t : alg.mult(i, gb)) {
                auto [tb2, r2] = pos[t.idx];
                if (tb2 != tb) throw error("internal: projective block mismatch");
                M.act(static_cast<int>(g), b).at(r, r2) = t.c;
            }
        }
    }
    return M;
}

template <class F>
GradedModule<F> shift_module(const GradedModule<F>& M, long a)
{
    std::vector<std::pair<std::pair<int, long>, int>> dims;
    for (const auto& b : M.blocks()) dims.push_back({{b.vertex, b.degree - a}, b.dim});
    GradedModule<F> N(M.algebra_ptr(), dims);
    for (std::size_t g = 0; g < M.algebra().generators().size(); ++g)
        for (std::size_t b = 0; b < M.blocks().size(); ++b) {
            const auto& blk = M.blocks()[b];
            int nb = N.block_index(blk.vertex, blk.degree - a);
            if (M.has_act(static_cast<int>(g), static_cast<int>(b)))
                N.act(static_cast<int>(g), nb) = M.act(static_cast<int>(g), static_cast<int>(b));
        }
    return N;
}

template <class F>
GradedModule<F> direct_sum(AlgebraPtr<F> A, const std::vector<const GradedModule<F>*>& parts)
{
    std::map<std::pair<int, long>, int> dims;
    for (const auto* p : parts)
        for (const auto& b : p->blocks()) dims[{b.vertex, b.degree}] += b.dim;
    std::vector<std::pair<std::pair<int, long>, int>> dv(dims.begin(), dims.end());
    GradedModule<F> M(A, dv);
    // offsets of each part inside each block
    std::map<std::pair<int, long>, int> used;
    std::vector<std::map<std::pair<int, long>, int>> part_off(parts.size());
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (const auto& b : parts[p]->blocks()) {
            part_off[p][{b.vertex, b.degree}] = used[{b.vertex, b.degree}];
            used[{b.vertex, b.degree}] += b.dim;
        }
    const auto& alg = *A;
    for (std::size_t g = 0; g < alg.generators().size(); ++g)
        for (std::size_t p = 0; p < parts.size(); ++p)
            for (std::size_t b = 0; b < parts[p]->blocks().size(); ++b) {
                const auto& blk = parts[p]->blocks()[b];
                auto [tb, shape] = parts[p]->target_block(static_cast<int>(g), static_cast<int>(b));
                if (tb < 0) continue;
                const auto& tblk = parts[p]->blocks()[tb];
                int mb = M.block_index(blk.vertex, blk.degree);
                int mtb = M.block_index(tblk.vertex, tblk.degree);
                int ro = part_off[p][{blk.vertex, blk.degree}];
                int co = part_off[p][{tblk.vertex, tblk.degree}];
                (void)mtb;
                const auto& a = parts[p]->act(static_cast<int>(g), static_cast<int>(b));
                for (int i = 0; i < shape.first; ++i)
                    for (int j = 0; j < shape.second; ++j)
                        M.act(static_cast<int>(g), mb).at(ro + i, co + j) = a.at(i, j);
            }
    return M;
}

/* Dual module over the opposite algebra. Requires Aop to be A.opposite() (same
 * generator order). Block (v,n) becomes (v,-n); the action of the opposite
 * generator is the transpose. */
template <class F>
GradedModule<F> dual_module(const GradedModule<F>& M, AlgebraPtr<F> Aop)
{
    std::vector<std::pair<std::pair<int, long>, int>> dims;
    for (const auto& b : M.blocks()) dims.push_back({{b.vertex, -b.degree}, b.dim});
    GradedModule<F> N(Aop, dims);
    const auto& A = M.algebra();
    for (std::size_t g = 0; g < A.generators().size(); ++g) {
        const auto& ge = A.basis(A.generators()[g]);
        for (std::size_t b = 0; b < M.blocks().size(); ++b) {
            auto [tb, shape] = M.target_block(static_cast<int>(g), static_cast<int>(b));
            if (tb < 0) continue;
            // act_g: M(u,n) -> M(w,n+d); dual: N(w,-n-d) -> N(u,-n), transpose
            const auto& blk = M.blocks()[b];
            int nb = N.block_index(ge.target, -(blk.degree + ge.degree));
            N.act(static_cast<int>(g), nb) = M.act(static_cast<int>(g), static_cast<int>(b)).transpose();
        }
    }
    return N;
}

/* D(A e_v) with socle at (v, degree): the injective envelope of S(v, degree). */
template <class F>
GradedModule<F> injective_module(AlgebraPtr<F> A, AlgebraPtr<F> Aop, int vertex, long degree)
{
    GradedModule<F> Pop = projective_module(Aop, vertex, 0);
    GradedModule<F> D = dual_module(Pop, A);
    return shift_module(D, -degree);
}

// ---------------------------------------------------------------------------
// sub/quotient machinery

/* Submodule spanned rowwise by `span` (one matrix of rows per block of M; may
 * be empty). The span must be action-stable; the inclusion map is returned. */
template <class F>
struct SubQuot {
    ModulePtr<F> module;
    ModuleMap<F> map;  // inclusion (sub) or projection (quotient)
};

template <class F>
SubQuot<F> submodule(const std::shared_ptr<const GradedModule<F>>& Mp,
                     std::vector<Matrix<F>> span_rows)
{
    const auto& M = *Mp;
    const F& f = M.field();
    // canonicalize each block span
    std::vector<Matrix<F>> bases(M.blocks().size());
    std::vector<std::pair<std::pair<int, long>, int>> dims;
    for (std::size_t b = 0; b < M.blocks().size(); ++b) {
        if (span_rows[b].rows() == 0) continue;
        bases[b] = row_space(span_rows[b]);
        if (bases[b].rows() > 0)
            dims.push_back({{M.blocks()[b].vertex, M.blocks()[b].degree}, bases[b].rows()});
    }
    auto S = std::make_shared<GradedModule<F>>(M.algebra_ptr(), dims);
    // induced action: image of each sub-basis row under act, expressed in the target sub-basis
    const auto& A = M.algebra();
    for (std::size_t g = 0; g < A.generators().size(); ++g)
        for (std::size_t b = 0; b < M.blocks().size(); ++b) {
            if (bases[b].rows() == 0) continue;
            auto [tb, shape] = M.target_block(static_cast<int>(g), static_cast<int>(b));
            int sb = S->block_index(M.blocks()[b].vertex, M.blocks()[b].degree);
            if (tb < 0) continue;
            int stb = S->block_index(M.blocks()[tb].vertex, M.blocks()[tb].degree);
            Matrix<F> img = bases[b].mul(M.act(static_cast<int>(g), static_cast<int>(b)));
            if (stb < 0) {
                if (!img.is_zero()) throw error("submodule: span not action-stable");
                continue;
            }
            // solve img = X * bases[tb]
            Matrix<F> bt = bases[tb].transpose();
            Matrix<F> X(f, img.rows(), bases[tb].rows());
            for (int i = 0; i < img.rows(); ++i) {
                auto sol = bt.solve(img.row(i));
                if (!sol.solution) throw error("submodule: span not action-stable");
                for (int j = 0; j < X.cols(); ++j) X.at(i, j) = (*sol.solution)[j];
            }
            S->act(static_cast<int>(g), sb) = X;
        }
    SubQuot<F> out;
    out.module = S;
    out.map = ModuleMap<F>(S.get(), &M);
    for (std::size_t b = 0; b < M.blocks().size(); ++b) {
        if (bases[b].rows() == 0) continue;
        int sb = S->block_index(M.blocks()[b].vertex, M.blocks()[b].degree);
        out.map.block(sb) = bases[b];
    }
    return out;
}

/* Quotient of M by the span (rows per block). Representatives are the
 * non-pivot coordinates of the canonical echelon form, so the construction is
 * deterministic. Returns the projection M -> Q. */
template <class F>
SubQuot<F> quotient(const std::shared_ptr<const GradedModule<F>>& Mp,
                    std::vector<Matrix<F>> span_rows)
{
    const auto& M = *Mp;
    const F& f = M.field();
    std::vector<Matrix<F>> rref(M.blocks().size());
    std::vector<std::vector<int>> pivots(M.blocks().size());
    std::vector<std::vector<int>> freecoords(M.blocks().size());
    std::vector<std::pair<std::pair<int, long>, int>> dims;
    for (std::size_t b = 0; b < M.blocks().size(); ++b) {
        const auto& blk = M.blocks()[b];
        Matrix<F> r = span_rows[b].rows() ? row_space(span_rows[b]) : Matrix<F>(f, 0, blk.dim);
        rref[b] = r;
        std::vector<bool> isp(blk.dim, false);
        for (int i = 0; i < r.rows(); ++i)
            for (int j = 0; j < blk.dim; ++j)
                if (!f.is_zero(r.at(i, j))) {
                    pivots[b].push_back(j);
                    isp[j] = true;
                    break;
                }
        for (int j = 0; j < blk.dim; ++j)
            if (!isp[j]) freecoords[b].push_back(j);
        if (!freecoords[b].empty())
            dims.push_back({{blk.vertex, blk.degree}, static_cast<int>(freecoords[b].size())});
    }
    auto Q = std::make_shared<GradedModule<F>>(M.algebra_ptr(), dims);
    // projection: kill pivot coordinates after reducing; on block b the matrix
    // sends coordinate j to (unit if free, minus the rref row tail if pivot)
    auto proj_block = [&](std::size_t b) {
        const auto& blk = M.blocks()[b];
        Matrix<F> P(f, blk.dim, static_cast<int>(freecoords[b].size()));
        std::map<int, int> freeidx;
        for (std::size_t k = 0; k < freecoords[b].size(); ++k)
            freeidx[freecoords[b][k]] = static_cast<int>(k);
        for (int j = 0; j < blk.dim; ++j) {
            auto it = freeidx.find(j);
            if (it != freeidx.end()) {
                P.at(j, it->second) = f.one();
            } else {
                // j is the pivot of some rref row r: x_j == -sum over free coords
                for (int r = 0; r < rref[b].rows(); ++r)
                    if (pivots[b][r] == j) {
                        for (const auto& [fc, fi] : freeidx)
                            P.at(j, fi) = f.neg(rref[b].at(r, fc));
                        break;
                    }
            }
        }
        return P;
    };
    std::vector<Matrix<F>> P(M.blocks().size());
    for (std::size_t b = 0; b < M.blocks().size(); ++b)
        if (!freecoords[b].empty()) P[b] = proj_block(b);
    // induced action on Q: representative (free unit) -> act -> project
    const auto& A = M.algebra();
    for (std::size_t g = 0; g < A.generators().size(); ++g)
        for (std::size_t b = 0; b < M.blocks().size(); ++b) {
            if (freecoords[b].empty()) continue;
            int qb = Q->block_index(M.blocks()[b].vertex, M.blocks()[b].degree);
            auto [tb, shape] = M.target_block(static_cast<int>(g), static_cast<int>(b));
            if (tb < 0) continue;
            if (freecoords[tb].empty()) continue;
            int qtb = Q->block_index(M.blocks()[tb].vertex, M.blocks()[tb].degree);
            if (qtb < 0) continue;
            Matrix<F> rep(f, static_cast<int>(freecoords[b].size()), M.blocks()[b].dim);
            for (std::size_t k = 0; k < freecoords[b].size(); ++k)
                rep.at(static_cast<int>(k), freecoords[b][k]) = f.one();
            Q->act(static_cast<int>(g), qb) =
                rep.mul(M.act(static_cast<int>(g), static_cast<int>(b))).mul(P[tb]);
        }
    SubQuot<F> out;
    out.module = Q;
    out.map = ModuleMap<F>(&M, Q.get());
    for (std::size_t b = 0; b < M.blocks().size(); ++b)
        if (!freecoords[b].empty()) {
            int qb = Q->block_index(M.blocks()[b].vertex, M.blocks()[b].degree);
            (void)qb;
            out.map.block(static_cast<int>(b)) = P[b];
        }
    return out;
}

// ---------------------------------------------------------------------------
// Hom spaces

template <class F>
std::vector<ModuleMap<F>> hom_space(const GradedModule<F>& M, const GradedModule<F>& N)
{
    const F& f = M.field();
    const auto& A = M.algebra();
    if (&A != &N.algebra()) throw error("hom_space: modules over different algebras");
    // unknowns: entries of X_b for common blocks
    struct Var {
        int mb;      // block index in M
        int nb;      // block index in N
        int offset;  // into the unknown vector
        int rows, cols;
    };
    std::vector<Var> vars;
    int nvars = 0;
    std::vector<int> var_of_mblock(M.blocks().size(), -1);
    for (std::size_t b = 0; b < M.blocks().size(); ++b) {
        const auto& blk = M.blocks()[b];
        int nb = N.block_index(blk.vertex, blk.degree);
        if (nb < 0) continue;
        var_of_mblock[b] = static_cast<int>(vars.size());
        vars.push_back({static_cast<int>(b), nb, nvars, blk.dim, N.blocks()[nb].dim});
        nvars += blk.dim * N.blocks()[nb].dim;
    }
    std::vector<std::vector<Elem_t<F>>> rows;
    auto add_rows = [&](int g, std::size_t b) {
        const auto& ge = A.basis(A.generators()[g]);
        const auto& blk = M.blocks()[b];
        if (blk.vertex != ge.source) return;
        int ntb = N.block_index(ge.target, blk.degree + ge.degree);
        if (ntb < 0) return;  // both terms land in a zero block
        int mtb = M.block_index(ge.target, blk.degree + ge.degree);
        int v_src = var_of_mblock[b];
        int v_tgt = mtb >= 0 ? var_of_mblock[mtb] : -1;
        int nb = N.block_index(blk.vertex, blk.degree);
        int nrows = blk.dim, ncols = N.blocks()[ntb].dim;
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) {
                std::vector<Elem_t<F>> row(nvars, f.zero());
                bool any = false;
                // (act^M_g · X_tgt)_{ij} = sum_k act_{ik} X_{kj}
                if (v_tgt >= 0 && mtb >= 0 && M.has_act(g, static_cast<int>(b))) {
                    const auto& a = M.act(g, static_cast<int>(b));
                    for (int k = 0; k < a.cols(); ++k)
                        if (!f.is_zero(a.at(i, k))) {
                            row[vars[v_tgt].offset + k * vars[v_tgt].cols + j] =
                                f.add(row[vars[v_tgt].offset + k * vars[v_tgt].cols + j], a.at(i, k));
                            any = true;
                        }
                }
                // -(X_src · act^N_g)_{ij} = -sum_k X_{ik} act_{kj}
                if (v_src >= 0 && nb >= 0 && N.has_act(g, nb)) {
                    const auto& a = N.act(g, nb);
                    for (int k = 0; k < a.rows(); ++k)
                        if (!f.is_zero(a.at(k, j))) {
                            row[vars[v_src].offset + i * vars[v_src].cols + k] = f.sub(
                                row[vars[v_src].offset + i * vars[v_src].cols + k], a.at(k, j));
                            any = true;
                        }
                }
                if (any) rows.push_back(std::move(row));
            }
    };
    for (std::size_t g = 0; g < A.generators().size(); ++g)
        for (std::size_t b = 0; b < M.blocks().size(); ++b) add_rows(static_cast<int>(g), b);

    Matrix<F> sys(f, static_cast<int>(rows.size()), nvars);
    for (int i = 0; i < sys.rows(); ++i)
        for (int j = 0; j < nvars; ++j) sys.at(i, j) = rows[i][j];
    auto [rk, ker] = sys.rank_and_kernel();
    (void)rk;
    std::vector<ModuleMap<F>> basis;
    for (int c = 0; c < ker.cols(); ++c) {
        ModuleMap<F> m(&M, &N);
        for (const Var& v : vars) {
            auto& blk = m.block(v.mb);
            for (int i = 0; i < v.rows; ++i)
                for (int j = 0; j < v.cols; ++j) blk.at(i, j) = ker.at(v.offset + i * v.cols + j, c);
        }
        basis.push_back(std::move(m));
    }
    return basis;
}

template <class F>
int hom_dim(const GradedModule<F>& M, const GradedModule<F>& N)
{
    return static_cast<int>(hom_space(M, N).size());
}

template <class F>
ModuleMap<F> compose(const ModuleMap<F>& f1, const ModuleMap<F>& f2)
{
    // f1: X -> Y, f2: Y -> Z
    const auto& X = f1.source();
    const auto& Z = f2.target();
    ModuleMap<F> out(&X, &Z);
    for (std::size_t b = 0; b < X.blocks().size(); ++b) {
        const auto& blk = X.blocks()[b];
        int yb = f1.target().block_index(blk.vertex, blk.degree);
        int zb = Z.block_index(blk.vertex, blk.degree);
        if (yb < 0 || zb < 0) continue;
        if (!f1.has_block(static_cast<int>(b)) || !f2.has_block(yb)) continue;
        out.block(static_cast<int>(b)) = f1.block(static_cast<int>(b)).mul(f2.block(yb));
    }
    return out;
}

template <class F>
ModuleMap<F> identity_map(const GradedModule<F>& M)
{
    ModuleMap<F> m(&M, &M);
    for (std::size_t b = 0; b < M.blocks().size(); ++b)
        m.block(static_cast<int>(b)) = Matrix<F>::identity(M.field(), M.blocks()[b].dim);
    return m;
}

}  // namespace qalg
