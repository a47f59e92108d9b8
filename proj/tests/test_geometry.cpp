#include "doctest.h"
#include "pairgraft/geometry.hpp"

using namespace pairgraft;

TEST_CASE("qubit count formulas hold for all topologies and sizes") {
    for (int d : {3, 5, 7, 9}) {
        CHECK(build_layout(Topology::RotatedGood, d).num_qubits() == size_t(4 * d * d - 4 * d + 1));
        CHECK(build_layout(Topology::RotatedBad, d).num_qubits() == size_t(4 * d * d - 3));
        CHECK(build_layout(Topology::Unrotated, d).num_qubits() == size_t(8 * d * d - 8 * d + 1));
    }
    for (int L : {4, 6, 8}) {
        Layout t = build_layout(Topology::Torus, L);
        CHECK(t.num_qubits() == size_t(4 * L * L));
        int data = 0;
        for (const auto& q : t.qubits) data += q.role == Role::Data;
        CHECK(data == L * L);
        CHECK(t.plaquettes.size() == size_t(L * L));
    }
}

TEST_CASE("rotated-good boundary structure") {
    Layout lay = build_layout(Topology::RotatedGood, 3);
    int z2 = 0, x2 = 0, four = 0;
    for (const auto& p : lay.plaquettes) {
        if (p.shape == Shape::FourGon) ++four;
        if (p.shape == Shape::TwoGon && p.pauli == PauliType::Z) {
            ++z2;
            // vertical pair: both data share a column
            auto d = p.data_qubits();
            CHECK(lay.qubits[d[0]].coord.c2 == lay.qubits[d[1]].coord.c2);
            CHECK(p.n_aux() == 1);
        }
        if (p.shape == Shape::TwoGon && p.pauli == PauliType::X) {
            ++x2;
            auto d = p.data_qubits();
            CHECK(lay.qubits[d[0]].coord.r2 == lay.qubits[d[1]].coord.r2);
        }
    }
    CHECK(four == 4);
    CHECK(z2 == 2);
    CHECK(x2 == 2);
}

TEST_CASE("rotated-bad boundary two-gons keep the full chain") {
    Layout lay = build_layout(Topology::RotatedBad, 3);
    for (const auto& p : lay.plaquettes) {
        if (p.shape == Shape::TwoGon) {
            CHECK(p.n_aux() == 3);
            auto d = p.data_qubits();
            if (p.pauli == PauliType::Z)
                CHECK(lay.qubits[d[0]].coord.r2 == lay.qubits[d[1]].coord.r2);
            else
                CHECK(lay.qubits[d[0]].coord.c2 == lay.qubits[d[1]].coord.c2);
        }
    }
}

TEST_CASE("logical strings") {
    SUBCASE("rotated good: horizontal Z of length d") {
        Layout lay = build_layout(Topology::RotatedGood, 3);
        auto ls = logical_strings(lay);
        REQUIRE(ls.size() == 2);
        CHECK(ls[0].pauli == PauliType::Z);
        CHECK(ls[0].path.size() == 3);
        int r2 = lay.qubits[ls[0].path[0]].coord.r2;
        for (int q : ls[0].path) CHECK(lay.qubits[q].coord.r2 == r2);
    }
    SUBCASE("rotated bad: Z string along a column") {
        Layout lay = build_layout(Topology::RotatedBad, 3);
        auto ls = logical_strings(lay);
        int c2 = lay.qubits[ls[0].path[0]].coord.c2;
        for (int q : ls[0].path) CHECK(lay.qubits[q].coord.c2 == c2);
    }
    SUBCASE("torus: four strings of length L") {
        Layout lay = build_layout(Topology::Torus, 4);
        auto ls = logical_strings(lay);
        REQUIRE(ls.size() == 4);
        for (const auto& s : ls) CHECK(s.path.size() == 4);
    }
}

TEST_CASE("invalid sizes are rejected") {
    CHECK_THROWS(build_layout(Topology::RotatedGood, 4));
    CHECK_THROWS(build_layout(Topology::RotatedGood, 1));
    CHECK_THROWS(build_layout(Topology::Torus, 5));
    CHECK_THROWS(build_layout(Topology::Torus, 2));
}
