#pragma once

#include <cstdint>
#include <vector>

#include "pairgraft/pauli.hpp"

namespace pairgraft {

// Measurement outcome as an affine F2 expression over fresh random bits.
// Deterministic outcomes have an empty random part.
struct OutcomeExpr {
    bool constant = false;
    std::vector<uint32_t> random_bits;

    bool deterministic() const { return random_bits.empty(); }
};

// Instantaneous stabilizer group with symbolic signs. Starts rank zero
// (maximally mixed) unless seeded with initial stabilizers, so determinism
// found here is determinism for every input state.
class Tableau {
  public:
    explicit Tableau(size_t num_qubits) : n_(num_qubits) {}

    size_t num_qubits() const { return n_; }
    size_t rank() const { return rows_.size(); }
    int num_random_bits() const { return next_random_; }

    // Adds P (sign +1) as an initial stabilizer; must commute with and be
    // independent of the current generators.
    void seed(const PauliString& p);

    OutcomeExpr apply_measurement(const PauliString& p);

    // Generators without sign information, for ISG comparisons.
    std::vector<PauliString> generators() const;

    // True if `p` (up to sign) is in the generated group.
    bool contains(const PauliString& p) const;

  private:
    struct Row {
        PauliString pauli;
        BitRow sign;      // F2 expression over random bits
        bool sign_const = false;
    };

    size_t n_;
    std::vector<Row> rows_;
    // pivot (lowest set bit, qubit-interleaved x/z order) -> row index
    std::vector<int> pivot_of_;
    int next_random_ = 0;

    long pivot_bit(const PauliString& p) const;
    void seat_row(int idx);
    void remove_pivot(int row_idx);
};

// Phase exponent of i in the product a*b relative to the canonical form of
// a XOR b, mod 4. For commuting Hermitian Paulis this is 0 or 2.
int product_phase_exponent(const PauliString& a, const PauliString& b);

}  // namespace pairgraft
