#include "reesdiag/valuation.hpp"

#include "reesdiag/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace reesdiag {

OrdValue eval_valuation(const MonomialValuation& v, const LaurentPoly& f) {
    if (f.is_zero()) return OrdValue{true, Rational(f.precision())};
    bool first = true;
    Rational best(0);
    for (const auto& [m, c] : f.terms()) {
        if (static_cast<int>(m.exps.size()) != static_cast<int>(v.weights.size()))
            fail(ErrorKind::VariableMismatch, "valuation weights do not match variable count");
        Rational val(m.tdeg);
        for (size_t i = 0; i < v.weights.size(); ++i) val += v.weights[i] * m.exps[i];
        if (first || val < best) best = val;
        first = false;
    }
    return OrdValue{false, best};
}

namespace {

// All torus exponent vectors appearing in the sections.
std::vector<std::vector<long>> support_union(const std::vector<LaurentPoly>& sections) {
    std::set<std::vector<long>> seen;
    for (const auto& s : sections)
        for (const auto& [m, c] : s.terms()) seen.insert(m.exps);
    return {seen.begin(), seen.end()};
}

} // namespace

bool sections_independent(const std::vector<LaurentPoly>& sections, int num_vars,
                          long precision) {
    if (sections.empty()) return true;
    int k = static_cast<int>(sections.size());
    for (const auto& s : sections) {
        if (s.num_vars() != num_vars)
            fail(ErrorKind::VariableMismatch, "section on the wrong torus");
        if (s.is_zero()) return false;
    }
    auto betas = support_union(sections);
    std::map<std::vector<long>, size_t> col;
    for (size_t i = 0; i < betas.size(); ++i) col[betas[i]] = i;
    // Rank over Q(t) via evaluation: a k x k minor is a polynomial of
    // t-degree < k * precision, so full rank at any one of k*precision + 1
    // distinct points certifies independence, and rank deficiency at all
    // of them certifies dependence.
    long tries = k * precision + 1;
    for (long p = 1; p <= tries; ++p) {
        Rational theta(p);
        QMatrix m(sections.size(), QVec(betas.size(), Rational(0)));
        for (size_t i = 0; i < sections.size(); ++i)
            for (const auto& [mon, c] : sections[i].terms()) {
                Rational tpow(1);
                for (long e = 0; e < mon.tdeg; ++e) tpow *= theta;
                m[i][col[mon.exps]] += c * tpow;
            }
        if (rank(m) == k) return true;
    }
    return false;
}

SectionSpace SectionSpace::create(std::vector<LaurentPoly> sections, int num_vars,
                                  long precision) {
    if (!sections_independent(sections, num_vars, precision))
        fail(ErrorKind::NotABasis, "sections are linearly dependent");
    SectionSpace s;
    s.sections_ = std::move(sections);
    s.num_vars_ = num_vars;
    s.precision_ = precision;
    return s;
}

DvrFiltration induced_filtration(const MonomialValuation& v, const SectionSpace& space) {
    const auto& sections = space.sections();
    if (sections.empty()) fail(ErrorKind::InvariantViolation, "empty section space");
    int rank_n = space.rank();
    long precision = space.precision();

    // Term values k + <w, beta>, per section.
    std::vector<std::vector<std::pair<Monomial, Rational>>> terms(sections.size());
    Rational bot;
    long d = 1;
    long max_tdeg = 0;
    bool first = true;
    for (size_t i = 0; i < sections.size(); ++i) {
        OrdValue o = eval_valuation(v, sections[i]);
        if (o.infinite) fail(ErrorKind::InvariantViolation, "section vanishes mod t^N");
        if (first || o.value < bot) bot = o.value;
        first = false;
        for (const auto& [m, c] : sections[i].terms()) {
            Rational val(m.tdeg);
            for (size_t j = 0; j < v.weights.size(); ++j) val += v.weights[j] * m.exps[j];
            terms[i].emplace_back(m, val);
            d = static_cast<long>(lcm_ul(static_cast<unsigned long>(d),
                                         rational_denominator(val)));
            max_tdeg = std::max(max_tdeg, m.tdeg);
        }
    }
    Rational bot_snapped(rational_floor(bot * d), d);
    bot_snapped.canonicalize();
    if (bot_snapped != bot) {
        // bot is a term value, so it lies on the grid; keep the snap as a
        // guard for future-proofing
        bot = bot_snapped;
    }

    auto solve_step = [&](const Rational& lambda) -> Submodule {
        long floor = std::max<long>(0, rational_ceil(lambda - bot));
        if (floor > precision)
            fail(ErrorKind::PrecisionExhausted,
                 "induced filtration step needs floor beyond ring precision");
        if (floor == 0) return Submodule::full(rank_n);
        // unknowns a_{i,k}, i < rank, k < floor; conditions kill every
        // combination coefficient of value < lambda
        size_t ncols = static_cast<size_t>(rank_n) * static_cast<size_t>(floor);
        std::map<std::pair<long, std::vector<long>>, QVec> conditions;
        for (size_t i = 0; i < sections.size(); ++i)
            for (const auto& [mon, val] : terms[i])
                for (long k = 0; k < floor; ++k) {
                    if (val + k >= lambda) continue;
                    auto key = std::make_pair(mon.tdeg + k, mon.exps);
                    auto [it, fresh] = conditions.emplace(key, QVec(ncols, Rational(0)));
                    it->second[i * static_cast<size_t>(floor) + static_cast<size_t>(k)] +=
                        sections[i].terms().at(mon);
                }
        QMatrix rows;
        rows.reserve(conditions.size());
        for (auto& [key, row] : conditions) rows.push_back(std::move(row));
        QMatrix kern = kernel(rows, static_cast<int>(ncols));
        std::vector<SVec> gens;
        for (const auto& krow : kern)
            gens.push_back(Submodule::unflatten(krow, rank_n, floor, precision));
        return Submodule::from_generators(rank_n, gens, floor);
    };

    std::vector<std::pair<Rational, Submodule>> jumps;
    Rational step(1, d);
    Rational lambda = bot;
    jumps.emplace_back(lambda, Submodule::full(rank_n));
    while (true) {
        lambda += step;
        Submodule f = solve_step(lambda);
        jumps.emplace_back(lambda, f);
        if (f.reduce_mod_t().dim() == 0) break; // F ⊆ tV: bounded regime
        if (rational_ceil(lambda - bot) > precision + max_tdeg)
            fail(ErrorKind::PrecisionExhausted,
                 "induced filtration does not reach the bounded regime within precision");
    }
    return DvrFiltration::from_jumps(rank_n, d, std::move(jumps), precision);
}

Rational log_discrepancy_on_cone(const std::vector<DivisorData>& divisors, const QVec& alpha) {
    if (divisors.size() != alpha.size())
        fail(ErrorKind::DimensionMismatch, "one coefficient per divisor expected");
    Rational acc(0);
    for (size_t j = 0; j < divisors.size(); ++j) {
        if (alpha[j] < 0) fail(ErrorKind::InvariantViolation, "cone coefficients must be >= 0");
        acc += alpha[j] * divisors[j].log_discrepancy;
    }
    return acc;
}

bool skeleton_membership(const std::vector<DivisorData>& divisors, const QVec& alpha) {
    if (log_discrepancy_on_cone(divisors, alpha) != 0) return false;
    Rational mass(0);
    for (size_t j = 0; j < divisors.size(); ++j) mass += alpha[j] * divisors[j].b;
    return mass == 1;
}

Rational metric_shift_value(const std::vector<DivisorData>& divisors, const QVec& alpha,
                            const std::vector<long>& d_coeffs) {
    if (divisors.size() != alpha.size() || divisors.size() != d_coeffs.size())
        fail(ErrorKind::DimensionMismatch, "divisors, alpha and D must align");
    Rational mass(0);
    for (size_t j = 0; j < divisors.size(); ++j) mass += alpha[j] * divisors[j].b;
    if (mass == 0) fail(ErrorKind::InvariantViolation, "degenerate barycentric coordinates");
    Rational acc(0);
    for (size_t j = 0; j < divisors.size(); ++j) acc += alpha[j] / mass * d_coeffs[j];
    return acc;
}

std::vector<Rational> metric_shift(const std::vector<Rational>& values,
                                   const std::vector<Rational>& shifts) {
    if (values.size() != shifts.size())
        fail(ErrorKind::DimensionMismatch, "one shift per value expected");
    std::vector<Rational> out;
    out.reserve(values.size());
    for (size_t i = 0; i < values.size(); ++i) out.push_back(values[i] + shifts[i]);
    return out;
}

} // namespace reesdiag
