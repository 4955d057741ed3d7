#include "periodlab/cusps.hpp"

#include "periodlab/arith.hpp"

namespace periodlab {

GammaMatrix::GammaMatrix(BigInt a_, BigInt b_, BigInt c_, BigInt d_, std::int64_t level_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)), level(level_) {
    normalize();
}

void GammaMatrix::normalize() {
    BigInt det = a * d - b * c;
    if (!(det == BigInt(1)))
        throw Error("GammaMatrix: determinant must be 1, got " + det.to_string());
    if (c.sign() < 0 || (c.is_zero() && a.sign() < 0)) {
        a.negate();
        b.negate();
        c.negate();
        d.negate();
    }
    if (level > 1) {
        // N | c, with c within int64 range (all callers satisfy this)
        if (!c.fits_int64())
            throw WrongLevelError("GammaMatrix: c too large for level check");
        if (c.as_int64() % level != 0)
            throw WrongLevelError("GammaMatrix: level " + std::to_string(level) +
                                  " does not divide c = " + c.to_string());
    }
}

GammaMatrix GammaMatrix::identity(std::int64_t level) {
    return GammaMatrix(BigInt(1), BigInt(0), BigInt(0), BigInt(1), level);
}

GammaMatrix GammaMatrix::from_int(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                                  std::int64_t level) {
    return GammaMatrix(BigInt(a), BigInt(b), BigInt(c), BigInt(d), level);
}

GammaMatrix mat_mul(const GammaMatrix& g1, const GammaMatrix& g2) {
    if (g1.level != g2.level) throw LevelMismatchError("mat_mul: levels differ");
    return GammaMatrix(g1.a * g2.a + g1.b * g2.c, g1.a * g2.b + g1.b * g2.d,
                       g1.c * g2.a + g1.d * g2.c, g1.c * g2.b + g1.d * g2.d, g1.level);
}

GammaMatrix mat_inv(const GammaMatrix& g) {
    return GammaMatrix(g.d, -g.b, -g.c, g.a, g.level);
}

Cusp make_cusp(std::int64_t a, std::int64_t c) {
    if (c < 1) throw NotACuspError("cusp denominator must be positive");
    std::int64_t am = a % c;
    if (am < 0) am += c;
    if (gcd64(am, c) != 1 && !(am == 0 && c == 1))
        throw NotACuspError("gcd(" + std::to_string(a) + ", " + std::to_string(c) + ") != 1");
    Cusp r;
    r.a = am;
    r.c = c;
    r.dd = inverse_mod(am == 0 ? 1 : am, c);  // c = 1: inverse of anything is 0
    return r;
}

Cusp Cusp::dual() const {
    Cusp r;
    r.a = dual_numerator();
    r.c = c;
    // dual of the dual is the original: dd of -dd/c is c - a (mod c)
    r.dd = c == 1 ? 0 : (a == 0 ? 0 : c - a);
    return r;
}

GammaMatrix cusp_matrix(std::int64_t a, std::int64_t c, std::int64_t level) {
    if (c <= 0) throw NotACuspError("cusp_matrix: c must be positive");
    if (gcd64(a, c) != 1)
        throw NotACuspError("cusp_matrix: gcd(" + std::to_string(a) + ", " + std::to_string(c) +
                            ") != 1");
    if (level > 0 && c % level != 0)
        throw WrongLevelError("cusp_matrix: level " + std::to_string(level) +
                              " does not divide c = " + std::to_string(c));
    std::int64_t d = inverse_mod(a, c);  // in [0, c)
    // b = (a d - 1)/c is integral by construction
    __int128 bnum = static_cast<__int128>(a) * d - 1;
    BigInt b = BigInt::from_int128(bnum / c);
    return GammaMatrix(BigInt(a), std::move(b), BigInt(c), BigInt(d), level);
}

GammaMatrix cusp_matrix(const Cusp& cusp, std::int64_t level) {
    return cusp_matrix(cusp.a, cusp.c, level);
}

std::vector<Cusp> enumerate_omega_c(std::int64_t c) {
    if (c < 1) throw NotACuspError("enumerate_omega_c: c must be >= 1");
    std::vector<Cusp> out;
    if (c == 1) {
        out.push_back(Cusp{0, 1, 0});
        return out;
    }
    // gcd-free unit sieve: mark residues sharing a prime with c
    std::vector<bool> shares(static_cast<std::size_t>(c), false);
    for (auto [p, e] : factorize(c))
        for (std::int64_t m = 0; m < c; m += p) shares[static_cast<std::size_t>(m)] = true;
    for (std::int64_t a = 1; a < c; ++a)
        if (!shares[static_cast<std::size_t>(a)])
            out.push_back(Cusp{a, c, inverse_mod(a, c)});
    return out;
}

}  // namespace periodlab
