#include "reesdiag/rational.hpp"

#include "reesdiag/errors.hpp"

namespace reesdiag {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::VariableMismatch: return "VariableMismatch";
        case ErrorKind::PrecisionIncrease: return "PrecisionIncrease";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::NotABasis: return "NotABasis";
        case ErrorKind::NotDiagonalizing: return "NotDiagonalizing";
        case ErrorKind::NotInTorsor: return "NotInTorsor";
        case ErrorKind::NotDiagonalizableMod: return "NotDiagonalizableMod";
        case ErrorKind::NotWeightCompatible: return "NotWeightCompatible";
        case ErrorKind::NestingViolated: return "NestingViolated";
        case ErrorKind::NotGradedBasis: return "NotGradedBasis";
        case ErrorKind::NotASimplex: return "NotASimplex";
        case ErrorKind::IncidenceViolation: return "IncidenceViolation";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SchemaVersionError: return "SchemaVersionError";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
        case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) fail(ErrorKind::ParseError, "empty rational literal");
    for (char c : s) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            fail(ErrorKind::ParseError, "bad rational literal '" + s + "'");
    }
    try {
        Rational q(s);
        if (q.get_den() == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::ParseError, "bad rational literal '" + s + "'");
    }
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

long rational_floor(const Rational& q) {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z.get_si();
}

long rational_ceil(const Rational& q) {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z.get_si();
}

unsigned long rational_denominator(const Rational& q) {
    return q.get_den().get_ui();
}

unsigned long lcm_ul(unsigned long a, unsigned long b) {
    mpz_class r;
    mpz_class za(static_cast<unsigned long>(a)), zb(static_cast<unsigned long>(b));
    mpz_lcm(r.get_mpz_t(), za.get_mpz_t(), zb.get_mpz_t());
    return r.get_ui();
}

bool is_zero_vec(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

} // namespace reesdiag
