#include "repzoo/lietype.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "repzoo/localring.hpp"
#include "repzoo/matgrp.hpp"

namespace repzoo {

std::string to_string(Twist t) { return t == Twist::Split ? "split" : "graph"; }

Twist parse_twist(const std::string& text) {
    if (text == "split") return Twist::Split;
    if (text == "graph" || text == "twisted" || text == "unitary") return Twist::Graph;
    throw ConfigError("unknown twist '" + text + "' (expected split or graph)");
}

RootDatum RootDatum::gl(int n) {
    if (n < 1) throw ConfigError("GL(n) needs n >= 1");
    RootDatum d;
    d.family = LieFamily::GL;
    d.n = n;
    d.rank = n;
    for (int i = 0; i + 1 < n; ++i) {
        std::vector<std::int64_t> a(static_cast<std::size_t>(n), 0);
        a[static_cast<std::size_t>(i)] = 1;
        a[static_cast<std::size_t>(i + 1)] = -1;
        d.simple_roots.push_back(a);
        d.simple_coroots.push_back(a);
    }
    d.positive_roots = n * (n - 1) / 2;
    d.central_rank = 1;
    return d;
}

RootDatum RootDatum::sl(int n) {
    if (n < 2) throw ConfigError("SL(n) needs n >= 2");
    RootDatum d;
    d.family = LieFamily::SL;
    d.n = n;
    d.rank = n - 1;
    const auto r = static_cast<std::size_t>(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        std::vector<std::int64_t> a(r, 0), c(r, 0);
        a[static_cast<std::size_t>(i)] += 1;
        c[static_cast<std::size_t>(i)] += 1;
        if (i + 1 < n - 1) {
            a[static_cast<std::size_t>(i + 1)] -= 1;
            c[static_cast<std::size_t>(i + 1)] -= 1;
        } else {
            // e_n = -(e_1 + ... + e_{n-1}) in X.
            for (auto& v : a) v += 1;
        }
        d.simple_roots.push_back(a);
        d.simple_coroots.push_back(c);
    }
    d.positive_roots = n * (n - 1) / 2;
    d.central_rank = 0;
    return d;
}

RootDatum RootDatum::parse(const std::string& family) {
    auto scheme = parse_group_scheme(family);
    if (scheme.family == SchemeFamily::GL) return gl(scheme.n);
    if (scheme.family == SchemeFamily::SL) return sl(scheme.n);
    throw ConfigError("root data are available for GL<n> and SL<n> only");
}

std::string RootDatum::label() const { return (family == LieFamily::GL ? "GL" : "SL") + std::to_string(n); }

IntMatrix RootDatum::cartan_matrix() const {
    const std::size_t k = simple_roots.size();
    IntMatrix c(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            c[i][j] = std::inner_product(simple_roots[i].begin(), simple_roots[i].end(), simple_coroots[j].begin(), std::int64_t{0});
    return c;
}

namespace {

// Column for the image of e_i (0-based, i < n) in the coordinates of X.
std::vector<std::int64_t> basis_image(const RootDatum& d, int i, std::int64_t sign) {
    std::vector<std::int64_t> col(static_cast<std::size_t>(d.rank), 0);
    if (d.family == LieFamily::GL || i < d.n - 1) {
        col[static_cast<std::size_t>(i)] = sign;
    } else {
        for (auto& v : col) v = -sign;
    }
    return col;
}

IntMatrix from_columns(const std::vector<std::vector<std::int64_t>>& cols) {
    const std::size_t r = cols.size();
    IntMatrix m(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t i = 0; i < r; ++i) m[i][c] = cols[c][i];
    return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size();
    IntMatrix c(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation c(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) c[j] = a[static_cast<std::size_t>(b[j])];
    return c;
}

Permutation inverse(const Permutation& a) {
    Permutation c(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) c[static_cast<std::size_t>(a[j])] = static_cast<int>(j);
    return c;
}

Permutation longest(int n) {
    Permutation w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = n - 1 - j;
    return w;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

RationalPoly positive_leading(RationalPoly p) {
    if (!p.is_zero() && p.leading() < 0) p = -p;
    return p;
}

// |det(q A - 1)| as a polynomial in q.
RationalPoly det_polynomial(const IntMatrix& a) {
    const std::size_t n = a.size();
    if (n == 0) return RationalPoly::constant(1);
    std::vector<std::pair<Integer, Rational>> pts;
    for (std::size_t t = 0; t <= n; ++t) {
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(static_cast<long long>(t)) * a[i][j] - (i == j ? 1 : 0);
        pts.emplace_back(Integer(static_cast<long long>(t)), determinant(std::move(m)));
    }
    return positive_leading(interpolate(SamplePointSet(std::move(pts))));
}

}  // namespace

IntMatrix RootDatum::weyl_matrix(const Permutation& w) const {
    if (static_cast<int>(w.size()) != n) throw ConfigError("Weyl element has the wrong size");
    std::vector<std::vector<std::int64_t>> cols;
    for (int i = 0; i < rank; ++i) cols.push_back(basis_image(*this, w[static_cast<std::size_t>(i)], 1));
    return from_columns(cols);
}

IntMatrix RootDatum::twist_matrix(Twist t) const {
    std::vector<std::vector<std::int64_t>> cols;
    for (int i = 0; i < rank; ++i)
        cols.push_back(t == Twist::Split ? basis_image(*this, i, 1) : basis_image(*this, n - 1 - i, -1));
    return from_columns(cols);
}

int inversions(const Permutation& w) {
    int k = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[i] > w[j]) ++k;
    return k;
}

// ---------------------------------------------------------------------------

TwistedWeylGroup::TwistedWeylGroup(RootDatum datum, Twist twist) : datum_(std::move(datum)), twist_(twist) {
    const int n = datum_.n;
    Permutation id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 0);
    std::map<Permutation, int> dist{{id, 0}};
    std::deque<Permutation> queue{id};
    while (!queue.empty()) {
        Permutation w = queue.front();
        queue.pop_front();
        elements_.push_back(w);
        lengths_.push_back(dist[w]);
        for (int i = 0; i + 1 < n; ++i) {
            Permutation s = id;
            std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i + 1)]);
            Permutation ws = compose(w, s);
            if (!dist.count(ws)) {
                dist[ws] = dist[w] + 1;
                queue.push_back(ws);
            }
        }
    }
    for (std::size_t k = 0; k < elements_.size(); ++k)
        if (lengths_[k] != inversions(elements_[k])) throw InternalError("Weyl group length disagrees with the inversion count");

    // Twisted conjugacy: w ~ x w tau(x)^-1 with tau(x) = w0 x w0 for the graph twist.
    const Permutation w0 = longest(n);
    auto tau = [&](const Permutation& x) { return twist_ == Twist::Split ? x : compose(compose(w0, x), w0); };
    std::vector<char> seen(elements_.size(), 0);
    for (std::size_t k = 0; k < elements_.size(); ++k) {
        if (seen[k]) continue;
        std::set<std::size_t> cls;
        for (const auto& x : elements_) cls.insert(index_of(compose(compose(x, elements_[k]), inverse(tau(x)))));
        for (auto c : cls) seen[c] = 1;
        classes_.emplace_back(cls.begin(), cls.end());
    }
}

std::size_t TwistedWeylGroup::index_of(const Permutation& w) const {
    auto it = std::find(elements_.begin(), elements_.end(), w);
    if (it == elements_.end()) throw ConfigError("not an element of the Weyl group");
    return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<std::size_t> TwistedWeylGroup::fixed_elements() const {
    std::vector<std::size_t> out;
    const Permutation w0 = longest(datum_.n);
    for (std::size_t k = 0; k < elements_.size(); ++k)
        if (twist_ == Twist::Split || compose(compose(w0, elements_[k]), w0) == elements_[k]) out.push_back(k);
    return out;
}

std::vector<std::vector<int>> TwistedWeylGroup::simple_root_orbits() const {
    std::vector<std::vector<int>> out;
    const int k = datum_.n - 1;
    for (int i = 0; i < k; ++i) {
        int j = twist_ == Twist::Split ? i : k - 1 - i;
        if (j < i) continue;
        out.push_back(i == j ? std::vector<int>{i} : std::vector<int>{i, j});
    }
    return out;
}

RationalPoly TwistedWeylGroup::poincare_polynomial() const {
    RationalPoly p;
    for (int l : lengths_) p += RationalPoly::monomial(1, static_cast<std::size_t>(l));
    return p;
}

RationalPoly central_torus_order(const TwistedWeylGroup& w) {
    const RootDatum& d = w.datum();
    if (d.central_rank == 0) return RationalPoly::constant(1);
    // The central quotient of X is Z via the coordinate sum; tau acts on it by +-1.
    const std::int64_t eps = w.twist() == Twist::Split ? 1 : -1;
    return det_polynomial(IntMatrix{{eps}});
}

RationalPoly order_polynomial(const TwistedWeylGroup& w) {
    RationalPoly p = central_torus_order(w);
    p *= RationalPoly::monomial(1, static_cast<std::size_t>(w.datum().positive_roots));
    for (const auto& orbit : w.simple_root_orbits())
        p *= RationalPoly::monomial(1, orbit.size()) - RationalPoly::constant(1);
    RationalPoly sum;
    for (std::size_t k : w.fixed_elements()) sum += RationalPoly::monomial(1, static_cast<std::size_t>(w.lengths()[k]));
    return p * sum;
}

RationalPoly torus_order(const TwistedWeylGroup& w, const Permutation& element) {
    const RootDatum& d = w.datum();
    return det_polynomial(matmul(d.weyl_matrix(element), d.twist_matrix(w.twist())));
}

RationalPoly dl_degree(const TwistedWeylGroup& w, const Permutation& element) {
    auto prime_to_p = divide_exact(order_polynomial(w), RationalPoly::monomial(1, static_cast<std::size_t>(w.datum().positive_roots)));
    if (!prime_to_p) throw InternalError("order polynomial is not divisible by q^N");
    auto f = divide_exact(*prime_to_p, torus_order(w, element));
    if (!f) throw InternalError("torus order does not divide the order polynomial");
    return positive_leading(*f);
}

// ---------------------------------------------------------------------------

void to_json(nlohmann::json& j, const CandidateSet& c) {
    j = nlohmann::json{{"polys", c.polys}, {"bound", c.bound}, {"weyl_order", c.weyl_order}, {"provenance", c.provenance}};
}

CandidateSet candidate_set(const TwistedWeylGroup& w, std::optional<int> max_degree, std::uint64_t budget) {
    CandidateSet out;
    out.weyl_order = w.order();
    const auto wo = static_cast<std::int64_t>(w.order());
    std::int64_t bound = 0;
    while ((bound + 1) * (bound + 1) <= wo * wo * wo) ++bound;
    out.bound = bound;

    // f_w is constant on twisted classes, so sum_w a_w f_w = sum_C b_C f_C with
    // |b_C| <= |C| * bound, and every such b_C is attained.
    const auto& classes = w.twisted_classes();
    std::vector<std::vector<std::int64_t>> f;  // integer coefficients of f_C
    std::size_t width = 0;
    for (const auto& cls : classes) {
        RationalPoly fc = dl_degree(w, w.elements()[cls.front()]);
        if (!fc.has_integer_coefficients()) throw InternalError("degree polynomial with non-integer coefficients");
        std::vector<std::int64_t> coeffs;
        for (const auto& c : fc.coefficients()) coeffs.push_back(static_cast<std::int64_t>(numerator(c)));
        width = std::max(width, coeffs.size());
        f.push_back(std::move(coeffs));
    }
    for (auto& coeffs : f) coeffs.resize(width, 0);

    long double total = 1;
    for (const auto& cls : classes) total *= static_cast<long double>(2 * bound * static_cast<std::int64_t>(cls.size()) + 1);
    if (total > static_cast<long double>(budget))
        throw ConfigError("candidate coefficient box has " + std::to_string(static_cast<unsigned long long>(total)) +
                          " points, above the budget " + std::to_string(budget) +
                          "; use a smaller root datum or raise the budget with a degree filter");

    std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> unique;  // numerators -> b
    std::vector<std::int64_t> b(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) b[c] = -bound * static_cast<std::int64_t>(classes[c].size());
    std::vector<std::int64_t> numer(width);
    const Integer probe = Integer(1) << 20;
    while (true) {
        ++out.enumerated;
        std::fill(numer.begin(), numer.end(), 0);
        for (std::size_t c = 0; c < classes.size(); ++c)
            if (b[c])
                for (std::size_t t = 0; t < width; ++t) numer[t] += b[c] * f[c][t];
        if (!unique.count(numer)) unique.emplace(numer, b);
        std::size_t c = 0;
        for (; c < classes.size(); ++c) {
            if (++b[c] <= bound * static_cast<std::int64_t>(classes[c].size())) break;
            b[c] = -bound * static_cast<std::int64_t>(classes[c].size());
        }
        if (c == classes.size()) break;
    }

    std::vector<std::pair<RationalPoly, std::vector<std::int64_t>>> kept;
    for (const auto& [numerators, coeffs_b] : unique) {
        std::vector<Rational> coeffs;
        for (auto v : numerators) coeffs.emplace_back(Rational(static_cast<long long>(v)) / wo);
        RationalPoly p(std::move(coeffs));
        if (p(Rational(probe)) <= 0) continue;
        if (max_degree && p.degree() > *max_degree) continue;
        // Spread b_C over the members of C, each |a_w| <= bound.
        std::vector<std::int64_t> a(w.order(), 0);
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const auto size = static_cast<std::int64_t>(classes[c].size());
            std::int64_t mag = coeffs_b[c] < 0 ? -coeffs_b[c] : coeffs_b[c];
            std::int64_t sign = coeffs_b[c] < 0 ? -1 : 1;
            for (std::int64_t k = 0; k < size; ++k)
                a[classes[c][static_cast<std::size_t>(k)]] = sign * (mag / size + (k < mag % size ? 1 : 0));
        }
        kept.emplace_back(std::move(p), std::move(a));
    }
    std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [p, a] : kept) {
        out.polys.push_back(std::move(p));
        out.provenance.push_back(std::move(a));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::optional<std::pair<int, int>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    std::uint64_t p = 2;
    while (q % p) ++p;
    int f = 0;
    std::uint64_t m = q;
    while (m % p == 0) {
        m /= p;
        ++f;
    }
    if (m != 1) return std::nullopt;
    return std::make_pair(static_cast<int>(p), f);
}

void to_json(nlohmann::json& j, const ContainmentReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& pq : r.results) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& x : pq.witnesses)
            w.push_back({{"degree", x.degree}, {"candidate", x.candidate ? nlohmann::json(*x.candidate) : nlohmann::json(nullptr)}});
        rows.push_back({{"q", pq.q}, {"degrees", pq.degrees}, {"witnesses", w}, {"contained", pq.contained}});
    }
    j = nlohmann::json{{"results", rows}, {"contained", r.contained}};
}

ContainmentReport verify_containment(const RootDatum& datum, Twist twist, const std::vector<std::uint64_t>& qs,
                                     const CandidateSet& candidates) {
    if (twist != Twist::Split) throw ConfigError("containment is checked against matrix groups, i.e. split forms only");
    ContainmentReport report;
    for (std::uint64_t q : qs) {
        auto pf = prime_power(q);
        if (!pf) throw ConfigError(std::to_string(q) + " is not a prime power");
        GroupScheme scheme{datum.family == LieFamily::GL ? SchemeFamily::GL : SchemeFamily::SL, datum.n};
        auto g = build_group(scheme, RingSpec::unramified(pf->first, pf->second, 1));
        ContainmentReport::PerQ row;
        row.q = q;
        row.degrees = character_degrees(*g);
        const Rational qv = Rational(Integer(q));
        for (std::uint64_t d : row.degrees.degrees()) {
            ContainmentWitness wit{d, std::nullopt};
            for (std::size_t i = 0; i < candidates.polys.size(); ++i)
                if (candidates.polys[i](qv) == Rational(Integer(d))) {
                    wit.candidate = i;
                    break;
                }
            if (!wit.candidate) row.contained = false;
            row.witnesses.push_back(wit);
        }
        report.contained = report.contained && row.contained;
        report.results.push_back(std::move(row));
    }
    return report;
}

}  // namespace repzoo
