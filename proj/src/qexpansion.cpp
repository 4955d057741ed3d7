#include "periodlab/qexpansion.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "periodlab/arith.hpp"

namespace periodlab {

QExpansion::QExpansion(int weight, std::int64_t level, std::vector<BigInt> coeffs,
                       bool normalized_eigenform)
    : weight_(weight), level_(level), coeffs_(std::move(coeffs)),
      eigenform_(normalized_eigenform) {
    if (weight_ < 4 || weight_ % 2 != 0)
        throw UnsupportedWeightError("weight must be even and >= 4, got " + std::to_string(weight_));
    if (level_ < 1)
        throw Error("level must be >= 1, got " + std::to_string(level_));
    if (coeffs_.empty())
        throw InvalidTruncationError("coefficient count must be >= 1");
    if (eigenform_ && !(coeffs_[0] == BigInt(1)))
        throw InvariantViolationError("normalized eigenform must have a(1) = 1", 1);
}

const BigInt& QExpansion::a(std::size_t n) const {
    if (n == 0 || n > coeffs_.size())
        throw InsufficientCoefficientsError(
            "coefficient a(" + std::to_string(n) + ") beyond truncation M = " +
                std::to_string(coeffs_.size()),
            n);
    return coeffs_[n - 1];
}

QExpansion build_delta(std::size_t coeff_count) {
    if (coeff_count == 0) throw InvalidTruncationError("build_delta: M must be >= 1");
    // tau(n) = [q^{n-1}] prod (1-q^m)^24; the base product is pentagonal-sparse
    // and the 24th power goes by repeated squaring of truncated series.
    TruncatedSeries base = TruncatedSeries::eta_quotient_base(coeff_count - 1);
    TruncatedSeries p24 = base.pow(24);
    std::vector<BigInt> coeffs(coeff_count);
    for (std::size_t n = 0; n < coeff_count; ++n) coeffs[n] = p24[n];
    return QExpansion(12, 1, std::move(coeffs), true);
}

TruncatedSeries build_eisenstein(int w, std::size_t truncation) {
    if (w != 4 && w != 6)
        throw UnsupportedWeightError("build_eisenstein: only E_4 and E_6 supported, got w = " +
                                     std::to_string(w));
    TruncatedSeries e(truncation);
    e[0] = BigInt(1);
    const unsigned j = w == 4 ? 3u : 5u;
    const std::int64_t scale = w == 4 ? 240 : -504;
    // sigma_j(n) exactly; fits u64 for j=5 up to n ~ 10^3.5... use BigInt sums
    // so large truncations stay exact.
    for (std::size_t d = 1; d <= truncation; ++d) {
        BigInt dj = BigInt::pow(d, j);
        for (std::size_t n = d; n <= truncation; n += d) e[n] += dj;
    }
    for (std::size_t n = 1; n <= truncation; ++n) e[n] *= BigInt(scale);
    return e;
}

QExpansion build_level_one_eigenform(int k, std::size_t coeff_count) {
    // 12 + 4a + 6b = k with the one-dimensional cusp spaces
    int a = 0, b = 0;
    switch (k) {
        case 12: a = 0; b = 0; break;
        case 16: a = 1; b = 0; break;
        case 18: a = 0; b = 1; break;
        case 20: a = 2; b = 0; break;
        case 22: a = 1; b = 1; break;
        case 26: a = 2; b = 1; break;
        default:
            throw UnsupportedWeightError(
                "build_level_one_eigenform: weight " + std::to_string(k) +
                " not in {12,16,18,20,22,26}; use load_form for other forms");
    }
    if (coeff_count == 0) throw InvalidTruncationError("build_level_one_eigenform: M must be >= 1");
    QExpansion delta = build_delta(coeff_count);
    // work with a(n+1) laid out at index n so series products line up
    TruncatedSeries acc(coeff_count - 1);
    for (std::size_t n = 0; n < coeff_count; ++n) acc[n] = delta.a(n + 1);
    for (int i = 0; i < a; ++i) acc *= build_eisenstein(4, coeff_count - 1);
    for (int i = 0; i < b; ++i) acc *= build_eisenstein(6, coeff_count - 1);
    std::vector<BigInt> coeffs(coeff_count);
    for (std::size_t n = 0; n < coeff_count; ++n) coeffs[n] = acc[n];
    return QExpansion(k, 1, std::move(coeffs), true);
}

BoundsReport verify_coefficient_bounds(const QExpansion& f) {
    BoundsReport rep;
    const std::size_t m = f.truncation();
    auto d = divisor_count_sieve(m);
    const double half_exp = (f.weight() - 1) / 2.0;
    double hecke_sum = 0.0;
    for (std::size_t n = 1; n <= m; ++n) {
        double an = std::fabs(f.a_double(n));
        double bound = static_cast<double>(d[n]) * std::pow(static_cast<double>(n), half_exp);
        double ratio = an / bound;
        if (ratio > rep.deligne_max_ratio) {
            rep.deligne_max_ratio = ratio;
            rep.deligne_argmax = n;
        }
        hecke_sum += an * an;
        double hr = hecke_sum / std::pow(static_cast<double>(n), static_cast<double>(f.weight()));
        if (hr > rep.hecke_max_ratio) {
            rep.hecke_max_ratio = hr;
            rep.hecke_argmax = n;
        }
    }
    return rep;
}

void validate_invariants(const QExpansion& f) {
    const std::size_t m = f.truncation();
    if (!f.is_normalized_eigenform()) return;  // shape checks ran in the ctor
    if (!(f.a(1) == BigInt(1)))
        throw InvariantViolationError("a(1) != 1 for declared eigenform", 1);

    // Deligne as the exact rational inequality |a(n)|^2 <= d(n)^2 n^{k-1}
    auto d = divisor_count_sieve(m);
    for (std::size_t n = 1; n <= m; ++n) {
        BigInt lhs = f.a(n) * f.a(n);
        BigInt rhs = BigInt(static_cast<std::int64_t>(d[n]) * d[n]) *
                     BigInt::pow(n, static_cast<unsigned>(f.weight() - 1));
        if (BigInt::cmp_abs(lhs, rhs) > 0)
            throw InvariantViolationError("Deligne bound violated", static_cast<std::int64_t>(n));
    }

    // multiplicativity over every coprime pair in range
    for (std::size_t p = 2; p * 2 <= m; ++p)
        for (std::size_t q = p + 1; p * q <= m; ++q) {
            if (gcd64(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)) != 1) continue;
            if (!(f.a(p * q) == f.a(p) * f.a(q)))
                throw InvariantViolationError("multiplicativity a(mn) = a(m)a(n) failed",
                                              static_cast<std::int64_t>(p * q));
        }

    // Hecke recursion a(p^{r+1}) = a(p) a(p^r) - p^{k-1} a(p^{r-1}) at good primes
    for (std::size_t p = 2; p * p <= m; ++p) {
        auto fac = factorize(static_cast<std::int64_t>(p));
        if (fac.size() != 1 || fac[0].second != 1) continue;  // p not prime
        if (f.level() % static_cast<std::int64_t>(p) == 0) continue;
        BigInt pk = BigInt::pow(p, static_cast<unsigned>(f.weight() - 1));
        for (std::size_t pr = p; pr * p <= m; pr *= p) {
            BigInt expect = f.a(p) * f.a(pr) - pk * f.a(pr / p);
            if (!(f.a(pr * p) == expect))
                throw InvariantViolationError("Hecke recursion failed",
                                              static_cast<std::int64_t>(pr * p));
        }
    }
}

void save_form(const QExpansion& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "weight=" << f.weight() << " level=" << f.level()
        << " eigenform=" << (f.is_normalized_eigenform() ? 1 : 0)
        << " count=" << f.truncation() << "\n";
    for (std::size_t n = 1; n <= f.truncation(); ++n)
        out << n << " " << f.a(n).to_string() << "\n";
}

QExpansion load_form(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line[0] == '#') continue;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError("missing header line", line_no);
    int weight = 0;
    std::int64_t level = 0, eig = -1, count = 0;
    {
        std::istringstream hs(line);
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw ParseError("bad header token '" + tok + "'", line_no);
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            try {
                if (key == "weight") weight = std::stoi(val);
                else if (key == "level") level = std::stoll(val);
                else if (key == "eigenform") eig = std::stoll(val);
                else if (key == "count") count = std::stoll(val);
                else throw ParseError("unknown header key '" + key + "'", line_no);
            } catch (const std::invalid_argument&) {
                throw ParseError("bad header value '" + val + "'", line_no);
            }
        }
    }
    if (weight == 0 || level == 0 || eig < 0 || count <= 0)
        throw ParseError("header must set weight, level, eigenform, count", line_no);

    std::vector<BigInt> coeffs(static_cast<std::size_t>(count));
    for (std::int64_t n = 1; n <= count; ++n) {
        if (!next_line()) throw ParseError("expected coefficient line for n = " + std::to_string(n), line_no + 1);
        std::istringstream ls(line);
        std::int64_t idx;
        std::string value;
        if (!(ls >> idx >> value)) throw ParseError("malformed coefficient line", line_no);
        if (idx != n) throw ParseError("coefficient index out of order: got " + std::to_string(idx) +
                                           ", expected " + std::to_string(n),
                                       line_no);
        try {
            coeffs[static_cast<std::size_t>(n - 1)] = BigInt::from_string(value);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("bad integer: ") + e.what(), line_no);
        }
    }

    QExpansion f(weight, level, std::move(coeffs), eig != 0);
    validate_invariants(f);
    return f;
}

}  // namespace periodlab
