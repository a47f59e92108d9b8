#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace pairgraft {

// Pauli string over n qubits, stored as packed X/Z bit-vectors.
// P = i^phase * prod_q X_q^x[q] Z_q^z[q]; we only track the sign mod {+1,-1}
// where needed (Hermitian products), not the full i-phase.
struct PauliString {
    size_t num_qubits = 0;
    std::vector<uint64_t> xs;
    std::vector<uint64_t> zs;

    PauliString() = default;
    explicit PauliString(size_t n) : num_qubits(n), xs(words(n), 0), zs(words(n), 0) {}

    static size_t words(size_t n) { return (n + 63) / 64; }

    bool x_bit(size_t q) const { return (xs[q >> 6] >> (q & 63)) & 1; }
    bool z_bit(size_t q) const { return (zs[q >> 6] >> (q & 63)) & 1; }
    void set_x(size_t q, bool v) {
        uint64_t m = uint64_t{1} << (q & 63);
        if (v) xs[q >> 6] |= m; else xs[q >> 6] &= ~m;
    }
    void set_z(size_t q, bool v) {
        uint64_t m = uint64_t{1} << (q & 63);
        if (v) zs[q >> 6] |= m; else zs[q >> 6] &= ~m;
    }
    // 0=I, 1=X, 2=Y, 3=Z
    int letter(size_t q) const {
        bool x = x_bit(q), z = z_bit(q);
        return x ? (z ? 2 : 1) : (z ? 3 : 0);
    }
    void set_letter(size_t q, int l) {
        set_x(q, l == 1 || l == 2);
        set_z(q, l == 2 || l == 3);
    }

    void mul_in_place(const PauliString& o) {
        assert(o.num_qubits == num_qubits);
        for (size_t w = 0; w < xs.size(); ++w) {
            xs[w] ^= o.xs[w];
            zs[w] ^= o.zs[w];
        }
    }

    bool commutes_with(const PauliString& o) const {
        assert(o.num_qubits == num_qubits);
        uint64_t acc = 0;
        for (size_t w = 0; w < xs.size(); ++w) {
            acc ^= (xs[w] & o.zs[w]) ^ (zs[w] & o.xs[w]);
        }
        return __builtin_parityll(acc) == 0;
    }

    bool is_identity() const {
        for (size_t w = 0; w < xs.size(); ++w) {
            if (xs[w] | zs[w]) return false;
        }
        return true;
    }

    size_t weight() const {
        size_t c = 0;
        for (size_t w = 0; w < xs.size(); ++w) c += __builtin_popcountll(xs[w] | zs[w]);
        return c;
    }

    bool operator==(const PauliString& o) const { return xs == o.xs && zs == o.zs; }

    std::string str() const {
        static const char* letters = "IXYZ";
        std::string s;
        s.reserve(num_qubits);
        for (size_t q = 0; q < num_qubits; ++q) s.push_back(letters[letter(q)]);
        return s;
    }
};

// Dense GF(2) row used by the stabilizer engine and detector discovery.
struct BitRow {
    std::vector<uint64_t> w;

    BitRow() = default;
    explicit BitRow(size_t nbits) : w((nbits + 63) / 64, 0) {}

    bool get(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void flip(size_t i) {
        if (i >> 6 >= w.size()) w.resize((i >> 6) + 1, 0);
        w[i >> 6] ^= uint64_t{1} << (i & 63);
    }
    void xor_in(const BitRow& o) {
        if (o.w.size() > w.size()) w.resize(o.w.size(), 0);
        for (size_t i = 0; i < o.w.size(); ++i) w[i] ^= o.w[i];
    }
    bool empty() const {
        for (uint64_t x : w) if (x) return false;
        return true;
    }
    // index of lowest set bit, or -1
    long lowest() const {
        for (size_t i = 0; i < w.size(); ++i) {
            if (w[i]) return long(i * 64 + __builtin_ctzll(w[i]));
        }
        return -1;
    }
    std::vector<uint32_t> ones() const {
        std::vector<uint32_t> out;
        for (size_t i = 0; i < w.size(); ++i) {
            uint64_t x = w[i];
            while (x) {
                out.push_back(uint32_t(i * 64 + __builtin_ctzll(x)));
                x &= x - 1;
            }
        }
        return out;
    }
    size_t popcount() const {
        size_t c = 0;
        for (uint64_t x : w) c += __builtin_popcountll(x);
        return c;
    }
};

}  // namespace pairgraft
