#include "repzoo/exactpoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace repzoo {

RationalPoly::RationalPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { canonicalize(); }

RationalPoly::RationalPoly(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) { canonicalize(); }

RationalPoly RationalPoly::constant(const Rational& c) { return RationalPoly(std::vector<Rational>{c}); }

RationalPoly RationalPoly::monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::x() { return monomial(1, 1); }

void RationalPoly::canonicalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

Rational RationalPoly::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

bool RationalPoly::has_integer_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return is_integer(c); });
}

Rational RationalPoly::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RationalPoly RationalPoly::operator-() const {
    RationalPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    canonicalize();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    canonicalize();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& rhs) {
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    coeffs_ = std::move(out);
    canonicalize();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    canonicalize();
    return *this;
}

std::strong_ordering operator<=>(const RationalPoly& a, const RationalPoly& b) {
    const auto& x = a.coeffs_;
    const auto& y = b.coeffs_;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (x[i] < y[i]) return std::strong_ordering::less;
        if (y[i] < x[i]) return std::strong_ordering::greater;
    }
    return x.size() <=> y.size();
}

std::string RationalPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << to_display_string(mag);
            continue;
        }
        if (mag != 1) os << to_display_string(mag) << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
    if (b.is_zero()) throw ConfigError("polynomial division by zero");
    std::vector<Rational> rem = a.coefficients();
    const auto& den = b.coefficients();
    if (rem.size() < den.size()) return {RationalPoly(), a};
    std::vector<Rational> quot(rem.size() - den.size() + 1);
    const Rational& lead = den.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        Rational c = rem[k + den.size() - 1] / lead;
        quot[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= c * den[j];
    }
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

std::optional<RationalPoly> divide_exact(const RationalPoly& a, const RationalPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

SamplePointSet::SamplePointSet(std::vector<std::pair<Integer, Rational>> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (points_[i].first == points_[i - 1].first)
            throw ConfigError("malformed sample set: duplicate argument " + points_[i].first.str());
}

RationalPoly interpolate(const SamplePointSet& samples) {
    if (samples.empty()) throw ConfigError("interpolation needs at least one sample point");
    const auto& pts = samples.points();
    RationalPoly result;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        RationalPoly basis = RationalPoly::constant(1);
        Rational denom = 1;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            basis *= RationalPoly{Rational(-pts[j].first), Rational(1)};
            denom *= Rational(pts[i].first - pts[j].first);
        }
        result += basis * (pts[i].second / denom);
    }
    return result;
}

// ---------------------------------------------------------------------------
// PORC functions

namespace {

std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

Rational eval_at_power(const RationalPoly& p, const Integer& q, std::uint64_t d) {
    return p(Rational(ipow(q, static_cast<unsigned>(d))));
}

}  // namespace

PorcFunction::PorcFunction(Integer base, std::vector<RationalPoly> constituents, bool counting)
    : base_(std::move(base)), constituents_(std::move(constituents)) {
    if (base_ < 2) throw ConfigError("PORC base must be at least 2");
    if (constituents_.empty()) throw ConfigError("PORC function needs at least one constituent");
    if (counting) {
        for (std::uint64_t d = 1; d <= 20; ++d)
            if (!is_integer(value(d)))
                throw MathError("counting PORC function takes non-integer value at d=" + std::to_string(d));
    }
}

Rational PorcFunction::value(std::uint64_t d) const { return eval_at_power(constituent_for(d), base_, d); }

PorcFunction PorcFunction::lifted(std::size_t new_period) const {
    if (new_period == 0 || new_period % period() != 0)
        throw ConfigError("lifted period must be a multiple of " + std::to_string(period()));
    std::vector<RationalPoly> out(new_period);
    for (std::size_t m = 0; m < new_period; ++m) out[m] = constituents_[m % period()];
    return PorcFunction(base_, std::move(out));
}

PorcFunction operator*(const PorcFunction& f, const PorcFunction& g) {
    if (f.base() != g.base()) throw ConfigError("PORC product needs a common base");
    std::size_t n = lcm_size(f.period(), g.period());
    std::vector<RationalPoly> out(n);
    for (std::size_t m = 0; m < n; ++m) out[m] = f.constituent_for(m) * g.constituent_for(m);
    return PorcFunction(f.base(), std::move(out));
}

PorcFunction porc_quotient(const PorcFunction& f, const PorcFunction& g) {
    if (f.base() != g.base()) throw ConfigError("PORC quotient needs a common base");
    std::size_t n = lcm_size(f.period(), g.period());
    std::vector<RationalPoly> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        const auto& num = f.constituent_for(m);
        const auto& den = g.constituent_for(m);
        if (den.is_zero())
            throw MathError("non-PORC quotient: zero divisor constituent in residue class " + std::to_string(m));
        auto q = divide_exact(num, den);
        if (!q)
            throw MathError("non-PORC quotient: " + den.to_string() + " does not divide " + num.to_string() +
                            " in residue class " + std::to_string(m) + " mod " + std::to_string(n));
        out[m] = std::move(*q);
    }
    return PorcFunction(f.base(), std::move(out));
}

std::vector<std::uint64_t> prime_power_roots(const RationalPoly& p, const Integer& q) {
    if (p.is_zero()) throw ConfigError("prime_power_roots of the zero polynomial");
    if (q < 2) throw ConfigError("prime_power_roots needs q >= 2");
    // Every root x satisfies |x| <= 1 + max |a_i / a_n|.
    Rational bound = 0;
    const auto& c = p.coefficients();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        Rational r = c[i] / c.back();
        if (r < 0) r = -r;
        bound = std::max(bound, r);
    }
    bound += 1;
    std::vector<std::uint64_t> roots;
    Integer power = q;
    for (std::uint64_t d = 1; Rational(power) <= bound; ++d, power *= q)
        if (p(Rational(power)) == 0) roots.push_back(d);
    return roots;
}

PorcConsolidation porc_consolidate(const std::vector<PorcFunction>& family, std::size_t period_bound,
                                   std::size_t value_count_bound, std::uint64_t horizon) {
    if (family.empty()) throw ConfigError("porc_consolidate needs a non-empty family");
    const Integer& q = family.front().base();
    std::size_t period = 1;
    for (const auto& f : family) {
        if (f.base() != q) throw ConfigError("porc_consolidate: family members have different bases");
        if (f.period() > period_bound)
            throw ConfigError("porc_consolidate: member period " + std::to_string(f.period()) + " exceeds bound " +
                              std::to_string(period_bound));
        period = lcm_size(period, f.period());
    }

    // Distinct constituents per residue class, and the index beyond which they separate.
    std::vector<std::vector<RationalPoly>> classes(period);
    std::uint64_t crossover = 1;
    for (std::size_t m = 0; m < period; ++m) {
        std::set<RationalPoly> distinct;
        for (const auto& f : family) distinct.insert(f.constituent_for(m));
        classes[m].assign(distinct.begin(), distinct.end());
        const auto& g = classes[m];
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = a + 1; b < g.size(); ++b)
                for (std::uint64_t d : prime_power_roots(g[a] - g[b], q))
                    if (d % period == m) crossover = std::max(crossover, d + 1);
    }

    // The value-count hypothesis, checked on the horizon and on one full period past the crossover.
    std::uint64_t check_to = std::max<std::uint64_t>(horizon, crossover + period - 1);
    for (std::uint64_t d = 1; d <= check_to; ++d) {
        std::set<Rational> values;
        for (const auto& f : family) values.insert(f.value(d));
        if (values.size() > value_count_bound)
            throw MathError("value count bound " + std::to_string(value_count_bound) + " violated at d=" +
                            std::to_string(d) + " (" + std::to_string(values.size()) + " distinct values)");
    }

    std::set<RationalPoly> out;
    for (const auto& g : classes) out.insert(g.begin(), g.end());
    std::set<Rational> constants;
    for (const auto& f : family)
        for (std::uint64_t d = 1; d < crossover; ++d) constants.insert(f.value(d));
    for (const auto& c : constants) out.insert(RationalPoly::constant(c));

    PorcConsolidation result;
    result.polynomials.assign(out.begin(), out.end());
    result.period = period;
    result.crossover = crossover;
    result.exceptional_constants = constants.size();
    return result;
}

void to_json(nlohmann::json& j, const RationalPoly& p) {
    j = nlohmann::json::array();
    for (const auto& c : p.coefficients()) j.push_back(to_fraction_string(c));
}

void from_json(const nlohmann::json& j, RationalPoly& p) {
    if (!j.is_array()) throw ConfigError("polynomial JSON must be an array of \"num/den\" strings");
    std::vector<Rational> c;
    for (const auto& e : j) {
        if (!e.is_string()) throw ConfigError("polynomial coefficient must be a string");
        c.push_back(parse_rational(e.get<std::string>()));
    }
    p = RationalPoly(std::move(c));
}

}  // namespace repzoo
