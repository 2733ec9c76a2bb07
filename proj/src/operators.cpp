#include "homlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "homlab/errors.hpp"

namespace homlab {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

IntSparse signed_boundary(const SimplicialComplex& k, int r)
{
    IntSparse m(k.size(r - 1), 0);
    for (const Simplex& s : k.layer(r)) {
        IntSparse::Column col;
        for (std::size_t p = 0; p <= static_cast<std::size_t>(r); ++p)
            col.push_back({*k.index_of(s.facet(p)), (p % 2 == 0) ? 1 : -1});
        m.append_column(std::move(col));
    }
    return m;
}

} // namespace

BoundaryMatrix boundary_matrix(const SimplicialComplex& k, int r)
{
    if (r < 1 || k.size(r) == 0 || k.size(r - 1) == 0)
        throw Error(ErrorKind::EmptyLayer, "boundary matrix needs nonempty layers r and r-1, got r=" +
                                               std::to_string(r));
    return {r, signed_boundary(k, r)};
}

IntSparse boundary_or_zero(const SimplicialComplex& k, int r)
{
    if (r <= 0)
        return IntSparse(0, k.size(0));
    return signed_boundary(k, r);
}

IntSparse coboundary(const SimplicialComplex& k, int r)
{
    return boundary_or_zero(k, r + 1).transpose();
}

IntSparse laplacian(const SimplicialComplex& k, int r)
{
    if (r < 0 || k.size(r) == 0)
        throw Error(ErrorKind::EmptyLayer, "Laplacian needs a nonempty layer, got r=" + std::to_string(r));
    const IntSparse up = boundary_or_zero(k, r + 1);
    const IntSparse down = boundary_or_zero(k, r);
    return up * up.transpose() + down.transpose() * down;
}

double laplacian_normalizer(const SimplicialComplex& k, int r)
{
    const double rr = r;
    const double upper = static_cast<double>(std::max<std::size_t>(k.size(r + 1), 1));
    return 2.0 * (rr + 1.0) * (rr + 2.0) * static_cast<double>(k.size(r)) * upper;
}

RealSparse normalized_laplacian(const SimplicialComplex& k, int r)
{
    RealSparse l = laplacian(k, r).to_eigen();
    l /= laplacian_normalizer(k, r);
    return l;
}

PersistentBlocks persistent_blocks(const FiltrationPair& f, int r)
{
    if (r < 0 || f.k2.size(r) == 0)
        throw Error(ErrorKind::EmptyLayer, "persistent blocks need a nonempty layer r=" + std::to_string(r) +
                                               " in K2");
    const std::size_t old_rows = f.k1.size(r);
    const std::size_t old_cols = f.k1.size(r + 1);
    const IntSparse full = boundary_or_zero(f.k2, r + 1);

    for (std::size_t j = 0; j < old_cols; ++j)
        for (const auto& [i, v] : full.column(j))
            if (i >= old_rows)
                throw Error(ErrorKind::StructuralViolation,
                            "old (r+1)-simplex " + f.k2.layer(r + 1)[j].to_string() + " has a face outside K1");

    PersistentBlocks blocks;
    blocks.r = r;
    blocks.b = full.block(0, old_rows, 0, old_cols);
    blocks.rb = full.block(0, old_rows, old_cols, full.cols());
    blocks.g = full.block(old_rows, full.rows(), old_cols, full.cols());

    if (!(blocks.b == boundary_or_zero(f.k1, r + 1)))
        throw Error(ErrorKind::StructuralViolation, "top-left block differs from the boundary of K1");
    return blocks;
}

RealMatrix symmetric_pinv(const RealMatrix& m, double tol)
{
    if (m.rows() == 0)
        return m;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
    const RealVector& ev = es.eigenvalues();
    const double cutoff = tol * ev.cwiseAbs().maxCoeff();
    RealVector inv = RealVector::Zero(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) > cutoff)
            inv(i) = 1.0 / ev(i);
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

RealMatrix schur_complement(const RealMatrix& m, const std::vector<std::size_t>& eliminated, double tol)
{
    if (eliminated.empty())
        return m;
    const auto n = static_cast<std::size_t>(m.rows());
    std::vector<bool> in_i(n, false);
    for (std::size_t i : eliminated)
        in_i.at(i) = true;
    std::vector<Eigen::Index> keep, drop;
    for (std::size_t i = 0; i < n; ++i)
        (in_i[i] ? drop : keep).push_back(idx(i));

    const RealMatrix kk = m(keep, keep);
    const RealMatrix kd = m(keep, drop);
    const RealMatrix dd = m(drop, drop);
    return kk - kd * symmetric_pinv(dd, tol) * kd.transpose();
}

PersistentLaplacian persistent_laplacian(const FiltrationPair& f, int r, double tol)
{
    if (r < 0 || f.k1.size(r) == 0)
        throw Error(ErrorKind::EmptyLayer, "persistent Laplacian needs a nonempty layer r=" + std::to_string(r) +
                                               " in K1");
    const PersistentBlocks blocks = persistent_blocks(f, r);
    const RealMatrix b = blocks.b.to_dense();
    const RealMatrix rb = blocks.rb.to_dense();
    const RealMatrix g = blocks.g.to_dense();

    PersistentLaplacian out;
    out.up = b * b.transpose() + rb * rb.transpose();
    if (g.rows() > 0 && g.cols() > 0) {
        const RealMatrix ggt = g * g.transpose();
        out.up -= rb * g.transpose() * symmetric_pinv(ggt, tol) * g * rb.transpose();

        Eigen::SelfAdjointEigenSolver<RealMatrix> es(ggt, Eigen::EigenvaluesOnly);
        const RealVector& ev = es.eigenvalues();
        const double top = ev.maxCoeff();
        double low = top;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (ev(i) > tol * top)
                low = std::min(low, ev(i));
        out.gram_condition = top > 0 ? top / low : 1.0;
    }
    const RealMatrix down = boundary_or_zero(f.k1, r).to_dense();
    out.down = down.transpose() * down;
    out.total = out.up + out.down;
    return out;
}

RealMatrix persistent_up_via_schur(const FiltrationPair& f, int r, double tol)
{
    const RealMatrix full = boundary_or_zero(f.k2, r + 1).to_dense();
    std::vector<std::size_t> fresh;
    for (std::size_t i = f.k1.size(r); i < f.k2.size(r); ++i)
        fresh.push_back(i);
    return schur_complement(full * full.transpose(), fresh, tol);
}

RealVector project_to_kernel(const RealMatrix& d, const RealVector& w, double tol)
{
    if (d.rows() == 0 || d.cols() == 0)
        return w;
    const RealVector dw = d * w;
    const RealMatrix gram = d * d.transpose();
    return w - d.transpose() * (symmetric_pinv(gram, tol) * dw);
}

} // namespace homlab
