#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "chaoskit/contraction.hpp"
#include "chaoskit/identities.hpp"
#include "chaoskit/symmetric_tensor.hpp"
#include "chaoskit/tensor_io.hpp"
#include "support/dense_oracle.hpp"
#include "support/rm33_pair.hpp"

using namespace chaoskit;
using namespace chaoskit::testing;

namespace {

SymmetricTensor basis_vector(int i, int d) {
    SymmetricTensor e(1, d);
    e.set({i}, 1.0);
    return e;
}

}  // namespace

TEST_CASE("multi-index basics") {
    CHECK(orbit_size({1, 1}) == 1.0);
    CHECK(orbit_size({1, 2}) == 2.0);
    CHECK(orbit_size({1, 2, 2, 5}) == 12.0);
    CHECK(orbit_size({}) == 1.0);
    CHECK(merge_sorted({1, 3}, {2, 3}) == MultiIndex{1, 2, 3, 3});
    CHECK(multiset_difference({1, 2, 2, 3}, {2, 3}) == MultiIndex{1, 2});

    int count = 0;
    for_each_sub_multiset({1, 1, 2}, 2, [&](MultiIndex sub, MultiIndex rest) {
        ++count;
        CHECK(merge_sorted(sub, rest) == MultiIndex{1, 1, 2});
    });
    CHECK(count == 2);  // {1,1} and {1,2}
}

TEST_CASE("tensor_power") {
    SECTION("basis vector squared") {
        const auto t = tensor_power({1.0, 0.0}, 2);
        CHECK(t.nnz() == 1);
        CHECK(t.at({1, 1}) == 1.0);
    }
    SECTION("identity case q=1") {
        const auto t = tensor_power({0.3, -2.0}, 1);
        CHECK(t.at({1}) == 0.3);
        CHECK(t.at({2}) == -2.0);
    }
    SECTION("ones vector: squared norm is (|h|^2)^q") {
        const auto t = tensor_power({1.0, 1.0}, 2);
        CHECK(t.at({1, 1}) == 1.0);
        CHECK(t.at({1, 2}) == 1.0);
        CHECK(t.at({2, 2}) == 1.0);
        CHECK(t.norm_sq() == 4.0);
    }
    SECTION("order zero is the scalar 1") {
        const auto t = tensor_power({2.0, 3.0}, 0);
        CHECK(t.at({}) == 1.0);
    }
    CHECK_THROWS_AS(tensor_power({}, 2), std::invalid_argument);
}

TEST_CASE("contract") {
    SECTION("unit vector self-pairing gives scalar 1") {
        const auto e1 = basis_vector(1, 2);
        const auto c = contract(e1, e1, 1);
        CHECK(c.order() == 0);
        CHECK(c.at({}, {}) == 1.0);
    }
    SECTION("off-diagonal order-2 tensor") {
        SymmetricTensor f(2, 2);
        f.set({1, 2}, 1.0);
        const auto c = contract(f, f, 1);
        CHECK(c.at({1}, {1}) == 1.0);
        CHECK(c.at({2}, {2}) == 1.0);
        CHECK(c.at({1}, {2}) == 0.0);
        CHECK(c.norm_sq() == 2.0);
    }
    SECTION("antisymmetric pair") {
        const auto [f1, f2] = antisymmetric_pair();
        const auto c = contract(f1, f2, 1);
        CHECK(c.at({1}, {2}) == -0.5);
        CHECK(c.at({2}, {1}) == 0.5);
        CHECK(c.at({1}, {1}) == 0.0);
        CHECK(c.norm_sq() == 0.5);
        CHECK(symmetrize(c).nnz() == 0);
    }
    SECTION("r = 0 is the plain tensor product with norm |f||g|") {
        RngStream rng(11, "test", 0);
        const auto f = random_symmetric_tensor(rng, 2, 3, 4);
        const auto g = random_symmetric_tensor(rng, 3, 3, 5);
        const auto c = contract(f, g, 0);
        CHECK_THAT(c.norm(), Catch::Matchers::WithinRel(f.norm() * g.norm(), 1e-13));
    }
    SECTION("argument validation") {
        const auto e1 = basis_vector(1, 2);
        const auto e3 = basis_vector(1, 3);
        CHECK_THROWS_AS(contract(e1, e1, 2), std::invalid_argument);
        CHECK_THROWS_AS(contract(e1, e1, -1), std::invalid_argument);
        CHECK_THROWS_AS(contract(e1, e3, 0), std::invalid_argument);
    }
}

TEST_CASE("symmetrize") {
    SECTION("idempotent on an embedded symmetric tensor") {
        RngStream rng(3, "test", 1);
        const auto f = random_symmetric_tensor(rng, 3, 3, 6);
        const auto once = symmetrize(split_bipartite(f, 1));
        for (const auto& [m, v] : f.coeffs())
            CHECK_THAT(once.at(m), Catch::Matchers::WithinAbs(v, 1e-14));
        const auto twice = symmetrize(split_bipartite(once, 2));
        for (const auto& [m, v] : once.coeffs())
            CHECK_THAT(twice.at(m), Catch::Matchers::WithinAbs(v, 1e-14));
    }
    SECTION("rank-one cross product averages to one half") {
        const auto c = contract(basis_vector(1, 2), basis_vector(2, 2), 0);
        const auto s = symmetrize(c);
        CHECK(s.at({1, 2}) == 0.5);
        CHECK(s.norm_sq() == 0.5);
    }
}

TEST_CASE("inner and norm") {
    const auto e1 = basis_vector(1, 2);
    const auto e2 = basis_vector(2, 2);
    CHECK(inner(tensor_power({1, 0}, 2), tensor_power({0, 1}, 2)) == 0.0);

    const auto [f1, f2] = antisymmetric_pair();
    CHECK(inner(f1, f2) == 0.0);

    SymmetricTensor f(2, 2);
    f.set({1, 2}, 1.0);
    CHECK(f.norm_sq() == 2.0);

    CHECK_THROWS_AS(inner(e1, tensor_power({1, 0}, 2)), std::invalid_argument);
}

TEST_CASE("contraction_norm_sq_dual") {
    const auto e1 = basis_vector(1, 2);
    CHECK(contraction_norm_sq_dual(e1, e1, 1) == 1.0);

    const auto [f1, f2] = antisymmetric_pair();
    CHECK_THAT(contraction_norm_sq_dual(f1, f2, 1), Catch::Matchers::WithinAbs(0.5, 1e-14));

    SymmetricTensor f(2, 2);
    f.set({1, 2}, 1.0);
    CHECK_THAT(contraction_norm_sq_dual(f, f, 1), Catch::Matchers::WithinAbs(2.0, 1e-14));
}

TEST_CASE("add and scale") {
    RngStream rng(17, "test", 2);
    const auto f = random_symmetric_tensor(rng, 2, 4, 5);
    const auto g = random_symmetric_tensor(rng, 2, 4, 5);

    CHECK_THAT(scale(f, -2.5).norm(), Catch::Matchers::WithinRel(2.5 * f.norm(), 1e-13));
    CHECK(add(f, scale(f, -1.0)).nnz() == 0);

    // inner distributes over addition
    const auto h = random_symmetric_tensor(rng, 2, 4, 5);
    CHECK_THAT(inner(add(f, g), h),
               Catch::Matchers::WithinAbs(inner(f, h) + inner(g, h), 1e-12));
}

TEST_CASE("dense oracle agreement for small shapes") {
    RngStream rng(29, "dense-oracle", 0);
    for (int p = 1; p <= 3; ++p) {
        for (int q = 1; p + q <= 6 && q <= 3; ++q) {
            for (int d = 2; d <= 4; ++d) {
                const auto f = random_symmetric_tensor(rng, p, d, 4);
                const auto g = random_symmetric_tensor(rng, q, d, 4);
                for (int r = 0; r <= std::min(p, q); ++r) {
                    const auto sparse = contract(f, g, r);
                    const auto dense = dense_contract(to_dense(f), to_dense(g), r);
                    CHECK(max_abs_diff(to_dense(sparse), dense) <= 1e-12);

                    const auto sym_sparse = to_dense(symmetrize(sparse));
                    const auto sym_dense = dense_symmetrize(dense);
                    CHECK(max_abs_diff(sym_sparse, sym_dense) <= 1e-12);
                }
                if (p == q)
                    CHECK(std::abs(inner(f, g) - dense_inner(to_dense(f), to_dense(g))) <=
                          1e-12);
            }
        }
    }
}

TEST_CASE("positional inner across different block splits matches the dense sum") {
    RngStream rng(41, "pos-inner", 0);
    for (int t = 0; t < 10; ++t) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 3);
        const int q = 1 + static_cast<int>(rng.next_u64() % 2);
        const auto f = random_symmetric_tensor(rng, 2 * q, d, 5);
        const auto g = random_symmetric_tensor(rng, q, d, 4);
        for (int r = 1; r <= q; ++r) {
            const auto a = contract(f, g, r);  // blocks (2q-r, q-r)
            const auto b = contract(g, f, r);  // blocks (q-r, 2q-r)
            const double sparse = inner(a, b);
            const double dense =
                dense_inner(dense_contract(to_dense(f), to_dense(g), r),
                            dense_contract(to_dense(g), to_dense(f), r));
            CHECK_THAT(sparse, Catch::Matchers::WithinAbs(dense, 1e-11));
        }
    }
}

TEST_CASE("algebraic identity properties on random tensors") {
    RngStream rng(5, "props", 0);
    for (int t = 0; t < 25; ++t) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 5);
        const int p = 1 + static_cast<int>(rng.next_u64() % 4);
        const int q = 1 + static_cast<int>(rng.next_u64() % 4);
        const auto f = random_symmetric_tensor(rng, p, d, 5);
        const auto g = random_symmetric_tensor(rng, q, d, 5);

        // dual-route norm
        for (int r = 0; r <= std::min(p, q); ++r)
            CHECK(contraction_dual_residual(f, g, r) <= 1e-10);

        // contractivity of symmetrization at r = 0
        const auto prod = contract(f, g, 0);
        CHECK(symmetrize(prod).norm() <= prod.norm() + 1e-12);
        CHECK_THAT(prod.norm(), Catch::Matchers::WithinRel(f.norm() * g.norm(), 1e-12));
    }
}

TEST_CASE("tensor text format") {
    SymmetricTensor f(2, 3);
    f.set({1, 2}, 0.25);
    f.set({3, 3}, -1.5);

    const std::string text = format_tensor(f);
    const auto parsed = parse_tensor(text);
    CHECK(parsed.order() == 2);
    CHECK(parsed.dim() == 3);
    CHECK(parsed.at({1, 2}) == 0.25);
    CHECK(parsed.at({3, 3}) == -1.5);

    SECTION("comments and blank lines are skipped") {
        const auto t = parse_tensor("# comment\n\n1 2\n\n1 0.5\n# tail\n2 -0.5\n");
        CHECK(t.order() == 1);
        CHECK(t.at({1}) == 0.5);
        CHECK(t.at({2}) == -0.5);
    }
    SECTION("order-0 literal") {
        const auto t = parse_tensor("0 4\n2.5\n");
        CHECK(t.at({}) == 2.5);
    }
    SECTION("parse errors") {
        CHECK_THROWS(parse_tensor(""));
        CHECK_THROWS(parse_tensor("2 2\n1 0.5\n"));           // missing index
        CHECK_THROWS(parse_tensor("1 2\n1 0.5 9\n"));         // trailing token
        CHECK_THROWS(parse_tensor("1 2\n5 0.5\n"));           // index out of range
    }
}
