#include "gl2.hpp"

#include <charconv>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "arith.hpp"
#include "errors.hpp"

namespace ktwin {

namespace {

using u128 = unsigned __int128;

uint64_t checked_mul(uint64_t a, uint64_t b) {
    u128 r = u128(a) * b;
    if (r > UINT64_MAX) raise(errc::overflow, "64-bit product overflow");
    return static_cast<uint64_t>(r);
}

}  // namespace

uint64_t MatrixModN::det() const {
    uint64_t ad = mulmod(a, d, n);
    uint64_t bc = mulmod(b, c, n);
    return ad >= bc ? ad - bc : ad + n - bc;
}

uint64_t MatrixModN::tr() const { return (a + d) % n; }

bool MatrixModN::invertible() const { return std::gcd(det(), n) == 1; }

uint64_t MatrixModN::key() const {
    return ((a * n + b) * n + c) * n + d;
}

std::string MatrixModN::str() const {
    return std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," +
           std::to_string(d);
}

MatrixModN make_matrix(uint64_t n, uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
    if (n == 0) raise(errc::invalid_argument, "matrix modulus must be >= 1");
    return MatrixModN{n, a % n, b % n, c % n, d % n};
}

MatrixModN parse_matrix(std::string_view text, uint64_t n) {
    // "a,b;c,d"
    uint64_t v[4];
    size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        char sep = (i == 1) ? ';' : ',';
        size_t cut = (i == 3) ? std::string_view::npos : text.find(sep, pos);
        std::string_view tok =
            (cut == std::string_view::npos) ? text.substr(pos) : text.substr(pos, cut - pos);
        if (tok.empty() || ((i < 3) && cut == std::string_view::npos))
            raise(errc::invalid_argument, "matrix spec must look like 'a,b;c,d'");
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v[i]);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            raise(errc::invalid_argument, "bad entry in matrix spec: '" + std::string(tok) + "'");
        pos = (cut == std::string_view::npos) ? text.size() : cut + 1;
    }
    return make_matrix(n, v[0], v[1], v[2], v[3]);
}

uint64_t gl2_order(uint64_t n) {
    if (n == 0) raise(errc::invalid_argument, "gl2_order requires n >= 1");
    uint64_t result = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        // p^(4e-3) * (p-1) * (p^2-1)
        uint64_t local = checked_mul(p - 1, checked_mul(p, p) - 1);
        for (int i = 0; i < 4 * e - 3; ++i) local = checked_mul(local, p);
        result = checked_mul(result, local);
    }
    return result;
}

namespace {

MatrixModN identity(uint64_t n) { return MatrixModN{n, 1 % n, 0, 0, 1 % n}; }

MatrixModN mat_mul(const MatrixModN& x, const MatrixModN& y) {
    uint64_t n = x.n;
    return MatrixModN{n,
                      (mulmod(x.a, y.a, n) + mulmod(x.b, y.c, n)) % n,
                      (mulmod(x.a, y.b, n) + mulmod(x.b, y.d, n)) % n,
                      (mulmod(x.c, y.a, n) + mulmod(x.d, y.c, n)) % n,
                      (mulmod(x.c, y.b, n) + mulmod(x.d, y.d, n)) % n};
}

// Scans all n^4 matrices, counting invertible ones whose residue
// det + 1 - tr satisfies pred. Shared by the C(n) and Omega(m) counters.
template <class Pred>
uint64_t scan_gl2(uint64_t n, Pred pred) {
    if (n == 1) return pred(0) ? 1 : 0;
    if (n > kGl2BruteForceCap)
        raise(errc::cap_exceeded,
              "brute-force scan capped at n <= " + std::to_string(kGl2BruteForceCap));
    std::vector<uint8_t> unit(n);
    for (uint64_t r = 0; r < n; ++r) unit[r] = std::gcd(r, n) == 1;

    uint64_t count = 0;
    for (uint64_t a = 0; a < n; ++a) {
        for (uint64_t d = 0; d < n; ++d) {
            uint64_t ad = a * d % n;
            uint64_t tr = (a + d) % n;
            for (uint64_t b = 0; b < n; ++b) {
                for (uint64_t c = 0; c < n; ++c) {
                    uint64_t bc = b * c % n;
                    uint64_t det = ad >= bc ? ad - bc : ad + n - bc;
                    if (!unit[det]) continue;
                    uint64_t res = (det + 1 + n - tr) % n;
                    if (pred(res)) ++count;
                }
            }
        }
    }
    return count;
}

}  // namespace

uint64_t count_C_bruteforce(uint64_t n) {
    if (n == 0) raise(errc::invalid_argument, "count_C requires n >= 1");
    return scan_gl2(n, [](uint64_t res) { return res == 0; });
}

Rational density_C_prime(uint64_t ell) {
    if (!is_prime_u64(ell)) raise(errc::invalid_argument, "density_C_prime requires a prime");
    int64_t l = static_cast<int64_t>(ell);
    return Rational(l * l - 2, (l - 1) * (l * l - 1));
}

Rational density_C_prime_squared(uint64_t ell) {
    if (!is_prime_u64(ell))
        raise(errc::invalid_argument, "density_C_prime_squared requires a prime");
    if (ell > 55000) raise(errc::overflow, "denominator exceeds 64-bit range");
    int64_t l = static_cast<int64_t>(ell);
    return Rational(l * l * l - l - 1, l * l * (l * l - 1) * (l - 1));
}

uint64_t count_C(uint64_t n) {
    if (n == 0) raise(errc::invalid_argument, "count_C requires n >= 1");
    if (n == 1) return 1;
    FactoredInteger f = factorize(n);
    bool closed_form = true;
    for (const auto& [p, e] : f.factors)
        if (e > 2) closed_form = false;
    if (!closed_form) return count_C_bruteforce(n);

    // |C| is multiplicative: l(l^2-2) at primes, l^3(l^3-l-1) at prime squares.
    uint64_t result = 1;
    for (const auto& [p, e] : f.factors) {
        uint64_t local;
        if (e == 1) {
            local = checked_mul(p, checked_mul(p, p) - 2);
        } else {
            local = checked_mul(checked_mul(p, checked_mul(p, p)),
                                checked_mul(p, checked_mul(p, p)) - p - 1);
        }
        result = checked_mul(result, local);
    }
    return result;
}

std::vector<MatrixModN> subgroup_closure(std::span<const MatrixModN> gens, uint64_t cap) {
    if (gens.empty()) raise(errc::invalid_argument, "closure needs at least one generator");
    uint64_t n = gens.front().n;
    if (n > 65535) raise(errc::cap_exceeded, "closure modulus capped at 65535");
    for (const auto& g : gens) {
        if (g.n != n) raise(errc::invalid_argument, "generators must share one modulus");
        if (!g.invertible())
            raise(errc::not_invertible, "generator " + g.str() + " is singular mod " +
                                            std::to_string(n));
    }

    std::vector<MatrixModN> members;
    std::unordered_set<uint64_t> seen;
    std::deque<size_t> queue;
    members.push_back(identity(n));
    seen.insert(members[0].key());
    queue.push_back(0);
    while (!queue.empty()) {
        MatrixModN m = members[queue.front()];
        queue.pop_front();
        for (const auto& g : gens) {
            MatrixModN next = mat_mul(m, g);
            if (seen.insert(next.key()).second) {
                if (members.size() >= cap)
                    raise(errc::cap_exceeded,
                          "closure exceeds cap of " + std::to_string(cap) + " elements");
                members.push_back(next);
                queue.push_back(members.size() - 1);
            }
        }
    }
    return members;
}

GaloisImageSpec GaloisImageSpec::full_image(uint64_t m_e) {
    if (m_e == 0) raise(errc::invalid_argument, "m_e must be >= 1");
    GaloisImageSpec s;
    s.m_e_ = m_e;
    s.mode_ = Mode::full;
    return s;
}

GaloisImageSpec GaloisImageSpec::from_generators(uint64_t m_e, std::vector<MatrixModN> gens) {
    if (m_e == 0) raise(errc::invalid_argument, "m_e must be >= 1");
    GaloisImageSpec s;
    s.m_e_ = m_e;
    s.mode_ = Mode::generators;
    for (auto& g : gens) {
        if (g.n != m_e) raise(errc::invalid_argument, "generator modulus must equal m_e");
        if (!g.invertible())
            raise(errc::not_invertible, "generator " + g.str() + " is singular mod " +
                                            std::to_string(m_e));
    }
    s.gens_ = std::move(gens);
    return s;
}

uint64_t GaloisImageSpec::group_size() const {
    if (!group_size_) {
        if (mode_ == Mode::full) {
            group_size_ = gl2_order(m_e_);
        } else {
            group_size_ = subgroup_closure(gens_).size();
        }
    }
    return *group_size_;
}

uint64_t GaloisImageSpec::omega_size() const {
    if (!omega_size_) omega_size_ = count_Omega(*this);
    return *omega_size_;
}

Rational GaloisImageSpec::prob_coprime() const {
    uint64_t g = group_size();
    uint64_t o = omega_size();
    return Rational(1) - Rational(static_cast<int64_t>(o), static_cast<int64_t>(g));
}

std::string GaloisImageSpec::mode_label() const {
    if (mode_ == Mode::full) return "full(m_e=" + std::to_string(m_e_) + ")";
    return "generators(m_e=" + std::to_string(m_e_) + ",k=" + std::to_string(gens_.size()) + ")";
}

uint64_t count_Omega(const GaloisImageSpec& image) {
    uint64_t m = image.m_e();
    if (m == 1) return 0;
    if (image.mode() == GaloisImageSpec::Mode::full) {
        return scan_gl2(m, [m](uint64_t res) { return std::gcd(res, m) != 1; });
    }
    uint64_t count = 0;
    for (const auto& g : subgroup_closure(image.generators())) {
        uint64_t det = g.det();
        uint64_t tr = g.tr();
        uint64_t res = (det + 1 + m - tr) % m;
        if (std::gcd(res, m) != 1) ++count;
    }
    return count;
}

}  // namespace ktwin
