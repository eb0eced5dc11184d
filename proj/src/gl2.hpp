#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rational.hpp"

namespace ktwin {

// 2x2 matrix over Z/nZ, entries reduced into [0, n).
struct MatrixModN {
    uint64_t n = 1;
    uint64_t a = 0, b = 0, c = 0, d = 0;

    uint64_t det() const;          // reduced mod n
    uint64_t tr() const;           // reduced mod n
    bool invertible() const;       // gcd(det, n) == 1
    uint64_t key() const;          // packs entries; requires n <= 65535
    std::string str() const;       // "a,b;c,d"
    friend bool operator==(const MatrixModN&, const MatrixModN&) = default;
};

MatrixModN make_matrix(uint64_t n, uint64_t a, uint64_t b, uint64_t c, uint64_t d);
MatrixModN parse_matrix(std::string_view text, uint64_t n);

inline constexpr uint64_t kGl2BruteForceCap = 400;    // n^4 scan limit
inline constexpr uint64_t kClosureCap = 10000000;     // closure element limit

// |GL2(Z/nZ)| = prod over l^e || n of l^(4e-3) (l-1)(l^2-1). Raises Overflow
// rather than wrapping.
uint64_t gl2_order(uint64_t n);

// #{g in GL2(Z/nZ) : det g + 1 - tr g = 0 mod n} by scanning all n^4 matrices.
uint64_t count_C_bruteforce(uint64_t n);

// Same count through the closed per-prime-power densities when every exponent
// of n is <= 2; falls back to the scan otherwise.
uint64_t count_C(uint64_t n);

Rational density_C_prime(uint64_t ell);          // (l^2-2)/((l-1)(l^2-1))
Rational density_C_prime_squared(uint64_t ell);  // (l^3-l-1)/(l^2(l^2-1)(l-1))

// Breadth-first closure of the generated subgroup. All generators must share
// a modulus and be invertible.
std::vector<MatrixModN> subgroup_closure(std::span<const MatrixModN> gens,
                                         uint64_t cap = kClosureCap);

// Mod-M_E Galois image: the full group or an explicit generated subgroup.
// Sizes are materialized lazily and cached.
class GaloisImageSpec {
public:
    enum class Mode { full, generators };

    static GaloisImageSpec full_image(uint64_t m_e);
    static GaloisImageSpec from_generators(uint64_t m_e, std::vector<MatrixModN> gens);

    uint64_t m_e() const { return m_e_; }
    Mode mode() const { return mode_; }
    const std::vector<MatrixModN>& generators() const { return gens_; }

    uint64_t group_size() const;
    uint64_t omega_size() const;
    Rational prob_coprime() const;  // 1 - |Omega(M_E)|/|G(M_E)|
    std::string mode_label() const;

private:
    uint64_t m_e_ = 1;
    Mode mode_ = Mode::full;
    std::vector<MatrixModN> gens_;
    mutable std::optional<uint64_t> group_size_;
    mutable std::optional<uint64_t> omega_size_;
};

// #{g in the image : gcd(det g + 1 - tr g, m_e) != 1}
uint64_t count_Omega(const GaloisImageSpec& image);

}  // namespace ktwin
