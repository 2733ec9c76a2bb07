#include <catch_amalgamated.hpp>

#include <random>

#include <Eigen/Eigenvalues>

#include "homlab/errors.hpp"
#include "homlab/generators.hpp"
#include "homlab/operators.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

oracle::Mat to_oracle(const IntSparse& m)
{
    oracle::Mat out = oracle::zeros(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.column(j))
            out[i][j] = static_cast<long>(v);
    return out;
}

std::vector<SimplicialComplex> random_rips(std::size_t count, std::uint64_t seed)
{
    std::vector<SimplicialComplex> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> thr(0.3, 0.7);
    for (std::size_t i = 0; out.size() < count; ++i) {
        const auto pts = random_point_cloud(8, 2, rng());
        SimplicialComplex k = vietoris_rips(pts, thr(rng), 3);
        if (k.total_size() <= 200)
            out.push_back(std::move(k));
    }
    return out;
}

} // namespace

TEST_CASE("boundary matches the vertex-deletion oracle")
{
    for (const auto& [name, k] : fixtures::canonical()) {
        INFO(name);
        for (int r = 1; r <= k.dimension(); ++r)
            CHECK(to_oracle(boundary_matrix(k, r).entries) == oracle::boundary(k, r));
    }
}

TEST_CASE("five-point boundary signs")
{
    const SimplicialComplex k = fixtures::five_point();
    const IntSparse d = boundary_matrix(k, 2).entries;
    // ∂[0,1,2] = [1,2] − [0,2] + [0,1]
    CHECK(d.at(0, 0) == 1);
    CHECK(d.at(1, 0) == -1);
    CHECK(d.at(2, 0) == 1);
    // ∂[1,2,3] = [2,3] − [1,3] + [1,2]
    CHECK(d.at(7, 2) == 1);
    CHECK(d.at(6, 2) == -1);
    CHECK(d.at(2, 2) == 1);
}

TEST_CASE("boundary of a boundary vanishes and Frobenius norms count faces")
{
    for (const SimplicialComplex& k : random_rips(30, 7)) {
        for (int r = 1; r <= k.dimension(); ++r) {
            const IntSparse d = boundary_matrix(k, r).entries;
            CHECK(d.frobenius_squared() == static_cast<std::int64_t>((r + 1) * k.size(r)));
            if (r + 1 <= k.dimension())
                CHECK((d * boundary_matrix(k, r + 1).entries).is_zero());
        }
        for (int r = 1; r + 1 <= k.dimension(); ++r)
            CHECK((coboundary(k, r) * coboundary(k, r - 1)).is_zero());
    }
}

TEST_CASE("boundary_matrix rejects empty layers")
{
    const SimplicialComplex k = hollow_triangle();
    CHECK_THROWS_AS(boundary_matrix(k, 2), Error);
    CHECK_THROWS_AS(boundary_matrix(k, 0), Error);
    CHECK(boundary_or_zero(k, 0).rows() == 0);
    CHECK(boundary_or_zero(k, 2).cols() == 0);
    CHECK(boundary_or_zero(k, 2).rows() == 3);
}

TEST_CASE("Laplacian is the sum of up and down parts")
{
    for (const auto& [name, k] : fixtures::canonical()) {
        INFO(name);
        for (int r = 0; r <= k.dimension(); ++r) {
            const RealMatrix up = boundary_or_zero(k, r + 1).to_dense();
            const RealMatrix down = boundary_or_zero(k, r).to_dense();
            RealMatrix expect = up * up.transpose();
            if (down.rows() > 0)
                expect += down.transpose() * down;
            CHECK((laplacian(k, r).to_dense() - expect).norm() == 0.0);
        }
    }
}

TEST_CASE("normalizer of the hollow triangle")
{
    const SimplicialComplex k = hollow_triangle();
    // r=1: 2·2·3·|S_1|·1 with the empty top layer counted as 1
    CHECK(laplacian_normalizer(k, 1) == 2.0 * 2 * 3 * 3 * 1);
    CHECK(laplacian_normalizer(k, 0) == 2.0 * 1 * 2 * 3 * 3);
    const RealSparse n = normalized_laplacian(k, 1);
    CHECK(RealMatrix(n).norm() <= 1.0);
}

TEST_CASE("pseudoinverse satisfies the Penrose identities")
{
    const RealMatrix b = boundary_or_zero(torus(), 2).to_dense();
    const RealMatrix m = b * b.transpose();
    const RealMatrix p = symmetric_pinv(m);
    CHECK((m * p * m - m).norm() <= 1e-8 * m.norm());
    CHECK((p * m * p - p).norm() <= 1e-8 * p.norm());
}

TEST_CASE("persistent up-Laplacian equals the Schur complement")
{
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = random_point_cloud(7, 2, rng());
        const SimplicialComplex k1 = vietoris_rips(pts, 0.45, 2);
        const SimplicialComplex k2 = vietoris_rips(pts, 0.7, 2);
        const FiltrationPair f = validate_filtration(k1, k2);
        for (int r = 0; r <= k1.dimension(); ++r) {
            const RealMatrix a = persistent_laplacian(f, r).up;
            const RealMatrix b = persistent_up_via_schur(f, r);
            CHECK((a - b).norm() <= 1e-8);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("persistent blocks reproduce K1's boundary")
{
    const FiltrationPair f = validate_filtration(hollow_triangle(), filled_triangle());
    const PersistentBlocks blocks = persistent_blocks(f, 1);
    CHECK(blocks.b.cols() == 0);
    CHECK(blocks.rb.rows() == 3);
    CHECK(blocks.rb.cols() == 1);
    CHECK(blocks.g.rows() == 0);
    const PersistentLaplacian pl = persistent_laplacian(f, 1);
    // The loop is filled in K2: no kernel survives.
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(pl.total);
    CHECK(es.eigenvalues().minCoeff() > 1e-6);
}

TEST_CASE("projection onto a kernel is idempotent and lands in the kernel")
{
    const RealMatrix d = coboundary(fixtures::filled_square(), 1).to_dense();
    RealVector w(d.cols());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w(i) = std::sin(1.0 + static_cast<double>(i));
    const RealVector p = project_to_kernel(d, w);
    CHECK((d * p).norm() <= 1e-10);
    CHECK((project_to_kernel(d, p) - p).norm() <= 1e-10);
}
