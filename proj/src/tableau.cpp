#include "pairgraft/tableau.hpp"

#include <algorithm>
#include <stdexcept>

namespace pairgraft {

int product_phase_exponent(const PauliString& a, const PauliString& b) {
    // P = i^(x.z) X^x Z^z per qubit; moving X^xb through Z^za costs (-1)^(za.xb).
    long y1 = 0, y2 = 0, y3 = 0, cross = 0;
    for (size_t w = 0; w < a.xs.size(); ++w) {
        uint64_t ax = a.xs[w], az = a.zs[w], bx = b.xs[w], bz = b.zs[w];
        y1 += __builtin_popcountll(ax & az);
        y2 += __builtin_popcountll(bx & bz);
        y3 += __builtin_popcountll((ax ^ bx) & (az ^ bz));
        cross += __builtin_popcountll(az & bx);
    }
    return int(((y1 + y2 - y3 + 2 * cross) % 4 + 4) % 4);
}

long Tableau::pivot_bit(const PauliString& p) const {
    for (size_t w = 0; w < p.xs.size(); ++w) {
        uint64_t any = p.xs[w] | p.zs[w];
        if (!any) continue;
        size_t q = w * 64 + __builtin_ctzll(any);
        return long(2 * q + (p.x_bit(q) ? 0 : 1));
    }
    return -1;
}

void Tableau::remove_pivot(int row_idx) {
    long b = pivot_bit(rows_[row_idx].pauli);
    if (b >= 0 && b < long(pivot_of_.size()) && pivot_of_[b] == row_idx) pivot_of_[b] = -1;
}

// Reduce rows_[idx] against seated rows until its pivot slot is free, then
// seat it. The row must stay independent of the seated set.
void Tableau::seat_row(int idx) {
    for (;;) {
        long b = pivot_bit(rows_[idx].pauli);
        if (b < 0) throw std::logic_error("stabilizer row became dependent");
        if (long(pivot_of_.size()) <= b) pivot_of_.resize(b + 1, -1);
        int other = pivot_of_[b];
        if (other < 0) {
            pivot_of_[b] = idx;
            return;
        }
        const Row& o = rows_[other];
        int ph = product_phase_exponent(rows_[idx].pauli, o.pauli);
        rows_[idx].pauli.mul_in_place(o.pauli);
        rows_[idx].sign.xor_in(o.sign);
        rows_[idx].sign_const ^= o.sign_const ^ (ph == 2);
    }
}

void Tableau::seed(const PauliString& p) {
    Row r;
    r.pauli = p;
    rows_.push_back(std::move(r));
    seat_row(int(rows_.size()) - 1);
}

std::vector<PauliString> Tableau::generators() const {
    std::vector<PauliString> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.pauli);
    return out;
}

bool Tableau::contains(const PauliString& p) const {
    PauliString v = p;
    while (!v.is_identity()) {
        long b = pivot_bit(v);
        if (b < 0 || b >= long(pivot_of_.size()) || pivot_of_[b] < 0) return false;
        v.mul_in_place(rows_[pivot_of_[b]].pauli);
    }
    return true;
}

OutcomeExpr Tableau::apply_measurement(const PauliString& p) {
    if (p.num_qubits != n_) throw std::invalid_argument("pauli size mismatch");
    if (p.is_identity()) return OutcomeExpr{false, {}};

    std::vector<int> anti;
    for (size_t i = 0; i < rows_.size(); ++i)
        if (!rows_[i].pauli.commutes_with(p)) anti.push_back(int(i));

    if (anti.empty()) {
        // Reduce p by the pivots; deterministic iff it lands on identity.
        PauliString v = p;
        BitRow sign;
        bool sign_const = false;
        for (;;) {
            if (v.is_identity()) {
                OutcomeExpr e;
                e.constant = sign_const;
                e.random_bits = sign.ones();
                return e;
            }
            long b = pivot_bit(v);
            if (b >= long(pivot_of_.size()) || pivot_of_[b] < 0) break;
            const Row& row = rows_[pivot_of_[b]];
            // (-1)^m p = product of group rows; fold their signs in.
            int ph = product_phase_exponent(v, row.pauli);
            v.mul_in_place(row.pauli);
            sign.xor_in(row.sign);
            sign_const ^= row.sign_const ^ (ph == 2);
        }
        // Independent and commuting: random outcome, group grows.
        int bit = next_random_++;
        Row r;
        r.pauli = p;
        r.sign.flip(size_t(bit));
        rows_.push_back(std::move(r));
        seat_row(int(rows_.size()) - 1);
        OutcomeExpr e;
        e.random_bits.push_back(uint32_t(bit));
        return e;
    }

    // Anticommuting case: fold the pivot onto the other anticommuting rows,
    // then replace the pivot row by (-1)^m p with a fresh random bit m.
    int pivot = anti[0];
    for (int i : anti) remove_pivot(i);
    for (size_t k = 1; k < anti.size(); ++k) {
        Row& r = rows_[anti[k]];
        const Row& pv = rows_[pivot];
        int ph = product_phase_exponent(r.pauli, pv.pauli);
        r.pauli.mul_in_place(pv.pauli);
        r.sign.xor_in(pv.sign);
        r.sign_const ^= pv.sign_const ^ (ph == 2);
    }
    int bit = next_random_++;
    rows_[pivot].pauli = p;
    rows_[pivot].sign = BitRow();
    rows_[pivot].sign.flip(size_t(bit));
    rows_[pivot].sign_const = false;
    seat_row(pivot);
    for (size_t k = 1; k < anti.size(); ++k) seat_row(anti[k]);
    OutcomeExpr e;
    e.random_bits.push_back(uint32_t(bit));
    return e;
}

}  // namespace pairgraft
