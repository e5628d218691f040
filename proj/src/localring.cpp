#include "repzoo/localring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace repzoo {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    a %= m;
    return a < 0 ? a + m : a;
}

std::int64_t ipow64(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Remainder of a modulo monic g over F_p, both ascending.
std::vector<int> poly_mod_p(std::vector<int> a, const std::vector<int>& g, int p) {
    int dg = static_cast<int>(g.size()) - 1;
    for (int d = static_cast<int>(a.size()) - 1; d >= dg; --d) {
        int c = a[static_cast<std::size_t>(d)] % p;
        if (c == 0) continue;
        for (int i = 0; i <= dg; ++i) {
            auto& slot = a[static_cast<std::size_t>(d - dg + i)];
            slot = static_cast<int>(mod(slot - static_cast<std::int64_t>(c) * g[static_cast<std::size_t>(i)], p));
        }
    }
    a.resize(static_cast<std::size_t>(std::max(dg, 0)));
    return a;
}

}  // namespace

std::string to_string(RingKind kind) {
    switch (kind) {
        case RingKind::Unramified: return "unramified";
        case RingKind::EqChar: return "eqchar";
        case RingKind::Eisenstein: return "eisenstein";
    }
    return "unknown";
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible_mod_p(const std::vector<int>& poly, int p) {
    int deg = static_cast<int>(poly.size()) - 1;
    if (deg < 1) return false;
    if (poly.back() % p == 0) return false;
    for (int k = 1; 2 * k <= deg; ++k) {
        std::int64_t count = ipow64(p, k);
        for (std::int64_t code = 0; code < count; ++code) {
            std::vector<int> g(static_cast<std::size_t>(k) + 1, 0);
            std::int64_t c = code;
            for (int i = 0; i < k; ++i, c /= p) g[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
            g[static_cast<std::size_t>(k)] = 1;
            auto rem = poly_mod_p(poly, g, p);
            if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; })) return false;
        }
    }
    return true;
}

std::vector<int> default_modulus(int p, int f) {
    if (p < 2 || f < 1) throw ConfigError("default_modulus needs p >= 2 and f >= 1");
    std::int64_t count = ipow64(p, f);
    for (std::int64_t code = 0; code < count; ++code) {
        std::vector<int> h(static_cast<std::size_t>(f) + 1, 0);
        std::int64_t c = code;
        for (int i = 0; i < f; ++i, c /= p) h[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
        h[static_cast<std::size_t>(f)] = 1;
        if (is_irreducible_mod_p(h, p)) return h;
    }
    throw InternalError("no irreducible polynomial of degree " + std::to_string(f) + " mod " + std::to_string(p));
}

RingSpec RingSpec::unramified(int p, int f, int r) {
    RingSpec s{RingKind::Unramified, p, f, 1, r, {}};
    if (is_prime(static_cast<std::uint64_t>(std::max(p, 0))) && f >= 1) s.modulus = default_modulus(p, f);
    validate(s);
    return s;
}

RingSpec RingSpec::eqchar(int p, int f, int r) {
    RingSpec s{RingKind::EqChar, p, f, 0, r, {}};
    if (is_prime(static_cast<std::uint64_t>(std::max(p, 0))) && f >= 1) s.modulus = default_modulus(p, f);
    validate(s);
    return s;
}

RingSpec RingSpec::eisenstein(int p, int f, int e, int r) {
    RingSpec s{RingKind::Eisenstein, p, f, e, r, {}};
    if (is_prime(static_cast<std::uint64_t>(std::max(p, 0))) && f >= 1) s.modulus = default_modulus(p, f);
    validate(s, Ramification::AllowWild);
    return s;
}

std::uint64_t RingSpec::q() const { return static_cast<std::uint64_t>(ipow64(p, f)); }

std::uint64_t RingSpec::cardinality() const {
    std::uint64_t n = 1;
    for (int i = 0; i < r; ++i) n *= q();
    return n;
}

RingSpec RingSpec::at_level(int level) const {
    RingSpec s = *this;
    s.r = level;
    validate(s);
    return s;
}

std::string RingSpec::label() const {
    std::ostringstream os;
    switch (kind) {
        case RingKind::Unramified: os << "unram:" << p << "," << f << "," << r; break;
        case RingKind::EqChar: os << "eqchar:" << p << "," << f << "," << r; break;
        case RingKind::Eisenstein: os << "eis:" << p << "," << f << "," << e << "," << r; break;
    }
    return os.str();
}

void validate(const RingSpec& s, Ramification ram) {
    if (s.p < 2 || !is_prime(static_cast<std::uint64_t>(s.p)))
        throw ConfigError("ring spec: p=" + std::to_string(s.p) + " is not prime");
    if (s.f < 1) throw ConfigError("ring spec: residue degree f must be >= 1");
    if (s.r < 1) throw ConfigError("ring spec: level r must be >= 1");
    if (static_cast<int>(s.modulus.size()) != s.f + 1 || s.modulus.back() != 1)
        throw ConfigError("ring spec: modulus must be monic of degree f=" + std::to_string(s.f));
    for (int c : s.modulus)
        if (c < 0 || c >= s.p) throw ConfigError("ring spec: modulus coefficients must lie in [0, p)");
    if (!is_irreducible_mod_p(s.modulus, s.p)) throw ConfigError("ring spec: modulus is reducible mod p");
    switch (s.kind) {
        case RingKind::Unramified:
            if (s.e != 1) throw ConfigError("ring spec: unramified rings have e = 1");
            break;
        case RingKind::EqChar:
            if (s.e != 0) throw ConfigError("ring spec: equal-characteristic rings carry no ramification index");
            break;
        case RingKind::Eisenstein:
            if (s.e < 2) throw ConfigError("ring spec: Eisenstein rings need e >= 2");
            if (ram == Ramification::Tame && s.e % s.p == 0) throw ConfigError("ring spec: wild ramification (p divides e) is unsupported");
            break;
    }
    // Keep codes and coordinate arithmetic inside 64 bits.
    long double bits = static_cast<long double>(s.r) * s.f * std::log2(static_cast<long double>(s.p));
    if (bits > 62) throw ConfigError("ring spec: ring too large for 64-bit element codes");
}

namespace {

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("malformed integer '" + item + "' in '" + text + "'");
        }
    }
    return out;
}

}  // namespace

RingSpec parse_ring_spec(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("ring spec '" + text + "' must look like kind:p,f,r");
    std::string kind = text.substr(0, colon);
    auto args = parse_int_list(text.substr(colon + 1));
    if (kind == "unram" || kind == "unramified") {
        if (args.size() != 3) throw ConfigError("unram ring needs p,f,r");
        return RingSpec::unramified(args[0], args[1], args[2]);
    }
    if (kind == "eqchar" || kind == "eq") {
        if (args.size() != 3) throw ConfigError("eqchar ring needs p,f,r");
        return RingSpec::eqchar(args[0], args[1], args[2]);
    }
    if (kind == "eis" || kind == "eisenstein") {
        if (args.size() != 4) throw ConfigError("eis ring needs p,f,e,r");
        return RingSpec::eisenstein(args[0], args[1], args[2], args[3]);
    }
    throw ConfigError("unknown ring kind '" + kind + "'");
}

void to_json(nlohmann::json& j, const RingSpec& s) {
    j = nlohmann::json{{"kind", to_string(s.kind)}, {"p", s.p}, {"f", s.f}, {"r", s.r}, {"modulus", s.modulus}};
    if (s.kind == RingKind::EqChar)
        j["e"] = nullptr;
    else
        j["e"] = s.e;
}

void from_json(const nlohmann::json& j, RingSpec& s) {
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "unramified")
            s.kind = RingKind::Unramified;
        else if (kind == "eqchar")
            s.kind = RingKind::EqChar;
        else if (kind == "eisenstein")
            s.kind = RingKind::Eisenstein;
        else
            throw ConfigError("unknown ring kind '" + kind + "'");
        s.p = j.at("p").get<int>();
        s.f = j.at("f").get<int>();
        s.r = j.at("r").get<int>();
        if (s.kind == RingKind::EqChar)
            s.e = 0;
        else if (s.kind == RingKind::Unramified)
            s.e = j.contains("e") && !j["e"].is_null() ? j["e"].get<int>() : 1;
        else
            s.e = j.at("e").get<int>();
        if (j.contains("modulus") && !j["modulus"].is_null())
            s.modulus = j["modulus"].get<std::vector<int>>();
        else
            s.modulus = default_modulus(s.p, s.f);
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(std::string("malformed ring spec JSON: ") + ex.what());
    }
    validate(s);
}

// ---------------------------------------------------------------------------

QuotientRing::QuotientRing(RingSpec spec, Ramification ram) : spec_(std::move(spec)) {
    validate(spec_, ram);
    const int p = spec_.p, f = spec_.f, r = spec_.r;
    switch (spec_.kind) {
        case RingKind::Unramified: e_eff_ = 1; break;
        case RingKind::EqChar: e_eff_ = r; break;
        case RingKind::Eisenstein: e_eff_ = spec_.e; break;
    }
    digits_ = std::min(e_eff_, r);
    top_modulus_ = ipow64(p, ceil_div(r, e_eff_));
    std::uint64_t place = 1;
    for (int j = 0; j < digits_; ++j) {
        std::int64_t m = ipow64(p, ceil_div(r - j, e_eff_));
        for (int t = 0; t < f; ++t) {
            radix_.push_back(m);
            place_.push_back(place);
            place *= static_cast<std::uint64_t>(m);
        }
    }
    q_ = spec_.q();
    size_ = place;
    if (size_ != spec_.cardinality()) throw InternalError("ring size mismatch for " + spec_.label());
}

QuotientRing::Digits QuotientRing::decode(RingElement a) const {
    Digits d(radix_.size());
    std::uint64_t c = a.code;
    for (std::size_t i = 0; i < radix_.size(); ++i) {
        auto m = static_cast<std::uint64_t>(radix_[i]);
        d[i] = static_cast<std::int64_t>(c % m);
        c /= m;
    }
    return d;
}

void QuotientRing::normalize(Digits& d) const {
    for (std::size_t i = 0; i < radix_.size(); ++i) d[i] = mod(d[i], radix_[i]);
}

RingElement QuotientRing::encode(const Digits& d) const {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < radix_.size(); ++i) code += static_cast<std::uint64_t>(d[i]) * place_[i];
    return RingElement{code};
}

RingElement QuotientRing::element(std::uint64_t code) const {
    if (code >= size_) throw ConfigError("element code out of range for " + spec_.label());
    return RingElement{code};
}

std::vector<RingElement> QuotientRing::elements() const {
    std::vector<RingElement> out(size_);
    for (std::uint64_t c = 0; c < size_; ++c) out[c] = RingElement{c};
    return out;
}

std::vector<std::int64_t> QuotientRing::coordinates(RingElement a) const { return decode(a); }

RingElement QuotientRing::from_coordinates(std::span<const std::int64_t> coords) const {
    if (coords.size() != radix_.size()) throw ConfigError("coordinate vector has wrong length");
    Digits d(coords.begin(), coords.end());
    normalize(d);
    return encode(d);
}

RingElement QuotientRing::one() const { return from_integer(1); }

RingElement QuotientRing::from_integer(std::int64_t n) const {
    Digits d(radix_.size(), 0);
    d[0] = n;
    normalize(d);
    return encode(d);
}

RingElement QuotientRing::uniformizer() const {
    if (spec_.kind == RingKind::Unramified) return from_integer(spec_.p);
    Digits d(radix_.size(), 0);
    if (digits_ >= 2) d[static_cast<std::size_t>(spec_.f)] = 1;
    return encode(d);
}

RingElement QuotientRing::lift_residue(std::span<const std::int64_t> residue_coords) const {
    if (residue_coords.size() != static_cast<std::size_t>(spec_.f))
        throw ConfigError("residue coordinate vector must have length f");
    Digits d(radix_.size(), 0);
    for (int t = 0; t < spec_.f; ++t) d[static_cast<std::size_t>(t)] = mod(residue_coords[static_cast<std::size_t>(t)], spec_.p);
    return encode(d);
}

RingElement QuotientRing::add(RingElement a, RingElement b) const {
    Digits x = decode(a), y = decode(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    normalize(x);
    return encode(x);
}

RingElement QuotientRing::neg(RingElement a) const {
    Digits x = decode(a);
    for (auto& v : x) v = -v;
    normalize(x);
    return encode(x);
}

RingElement QuotientRing::sub(RingElement a, RingElement b) const { return add(a, neg(b)); }

RingElement QuotientRing::mul(RingElement a, RingElement b) const {
    const int f = spec_.f;
    const std::int64_t m = top_modulus_;
    const auto& h = spec_.modulus;
    Digits x = decode(a), y = decode(b);
    Digits acc(radix_.size(), 0);
    std::vector<std::int64_t> prod(static_cast<std::size_t>(2 * f - 1));
    for (int j = 0; j < digits_; ++j) {
        for (int k = 0; k < digits_; ++k) {
            int s = j + k;
            bool times_p = false;
            if (s >= e_eff_) {
                s -= e_eff_;
                times_p = true;
            }
            if (s >= digits_) continue;
            std::fill(prod.begin(), prod.end(), 0);
            bool nonzero = false;
            for (int u = 0; u < f; ++u) {
                std::int64_t xu = x[static_cast<std::size_t>(j * f + u)];
                if (xu == 0) continue;
                for (int v = 0; v < f; ++v) {
                    std::int64_t yv = y[static_cast<std::size_t>(k * f + v)];
                    if (yv == 0) continue;
                    auto& slot = prod[static_cast<std::size_t>(u + v)];
                    slot = (slot + xu * yv) % m;
                    nonzero = true;
                }
            }
            if (!nonzero) continue;
            for (int deg = 2 * f - 2; deg >= f; --deg) {
                std::int64_t c = prod[static_cast<std::size_t>(deg)];
                if (c == 0) continue;
                prod[static_cast<std::size_t>(deg)] = 0;
                for (int i = 0; i < f; ++i) {
                    auto& slot = prod[static_cast<std::size_t>(deg - f + i)];
                    slot = mod(slot - c * h[static_cast<std::size_t>(i)], m);
                }
            }
            for (int u = 0; u < f; ++u) {
                std::int64_t c = prod[static_cast<std::size_t>(u)];
                if (times_p) c = (c * spec_.p) % m;
                auto& slot = acc[static_cast<std::size_t>(s * f + u)];
                slot = (slot + c) % m;
            }
        }
    }
    normalize(acc);
    return encode(acc);
}

RingElement QuotientRing::pow(RingElement a, std::uint64_t n) const {
    RingElement result = one();
    RingElement base = a;
    while (n) {
        if (n & 1u) result = mul(result, base);
        n >>= 1;
        if (n) base = mul(base, base);
    }
    return result;
}

bool QuotientRing::is_unit(RingElement a) const {
    Digits x = decode(a);
    for (int t = 0; t < spec_.f; ++t)
        if (x[static_cast<std::size_t>(t)] % spec_.p != 0) return true;
    return false;
}

RingElement QuotientRing::inverse(RingElement a) const {
    if (!is_unit(a)) throw MathError("element " + std::to_string(a.code) + " of " + spec_.label() + " is not a unit");
    return pow(a, unit_count() - 1);
}

std::uint64_t QuotientRing::additive_order(RingElement a) const {
    RingElement acc = a;
    std::uint64_t n = 1;
    while (acc != zero()) {
        acc = add(acc, a);
        ++n;
    }
    return n;
}

RingElement QuotientRing::reduce(RingElement a, const QuotientRing& lower) const {
    const RingSpec& ls = lower.spec();
    if (ls.kind != spec_.kind || ls.p != spec_.p || ls.f != spec_.f || ls.e != spec_.e ||
        ls.modulus != spec_.modulus || ls.r > spec_.r)
        throw ConfigError("cannot reduce " + spec_.label() + " onto " + ls.label());
    Digits x = decode(a);
    Digits y(lower.radix_.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod(x[i], lower.radix_[i]);
    return lower.encode(y);
}

// ---------------------------------------------------------------------------

RingTables::RingTables(const QuotientRing& ring) : n_(static_cast<std::uint32_t>(ring.size())) {
    if (ring.size() > kMaxSize) throw ConfigError("ring " + ring.spec().label() + " too large for dense tables");
    const std::size_t n = n_;
    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    inv_.resize(n);
    unit_.resize(n);
    for (std::uint32_t a = 0; a < n_; ++a) {
        RingElement x{a};
        neg_[a] = static_cast<std::uint16_t>(ring.neg(x).code);
        unit_[a] = ring.is_unit(x) ? 1 : 0;
        for (std::uint32_t b = 0; b < n_; ++b) {
            RingElement y{b};
            add_[a * n + b] = static_cast<std::uint16_t>(ring.add(x, y).code);
            mul_[a * n + b] = static_cast<std::uint16_t>(ring.mul(x, y).code);
        }
    }
    const auto one = static_cast<std::uint16_t>(ring.one().code);
    for (std::uint32_t a = 0; a < n_; ++a) {
        if (!unit_[a]) continue;
        for (std::uint32_t b = 0; b < n_; ++b)
            if (mul_[a * n + b] == one) {
                inv_[a] = static_cast<std::uint16_t>(b);
                break;
            }
    }
}

// ---------------------------------------------------------------------------

TruncationIsomorphism iso_check_truncated(const RingSpec& spec) {
    if (spec.kind != RingKind::Eisenstein) throw ConfigError("iso_check_truncated needs an Eisenstein ring spec");
    validate(spec, Ramification::AllowWild);
    TruncationIsomorphism out;
    out.target = spec;
    out.source = spec;
    out.source.kind = RingKind::EqChar;
    out.source.e = 0;

    QuotientRing target(spec, Ramification::AllowWild);
    QuotientRing source(out.source);
    const std::uint64_t char_target = target.additive_order(target.one());
    const auto p = static_cast<std::uint64_t>(spec.p);

    if (spec.e < spec.r) {
        out.isomorphic = false;
        out.reason = "e=" + std::to_string(spec.e) + " < r=" + std::to_string(spec.r) +
                     ": additive order of 1 is " + std::to_string(char_target) + " in the target but " +
                     std::to_string(p) + " in F_q[t]/(t^r)";
        out.verified = char_target != p;
        return out;
    }

    const int f = spec.f, r = spec.r;
    const RingElement pi = target.uniformizer();
    std::vector<RingElement> pi_powers(static_cast<std::size_t>(r));
    pi_powers[0] = target.one();
    for (int k = 1; k < r; ++k) pi_powers[static_cast<std::size_t>(k)] = target.mul(pi_powers[static_cast<std::size_t>(k - 1)], pi);

    out.map.resize(source.size());
    std::vector<std::uint8_t> hit(target.size(), 0);
    bool bijective = true;
    for (std::uint64_t c = 0; c < source.size(); ++c) {
        auto coords = source.coordinates(RingElement{c});
        RingElement image = target.zero();
        for (int k = 0; k < r; ++k) {
            std::span<const std::int64_t> digit(coords.data() + k * f, static_cast<std::size_t>(f));
            image = target.add(image, target.mul(target.lift_residue(digit), pi_powers[static_cast<std::size_t>(k)]));
        }
        out.map[c] = image.code;
        if (hit[image.code]) bijective = false;
        hit[image.code] = 1;
    }

    auto phi = [&](RingElement x) { return RingElement{out.map[x.code]}; };
    bool hom = phi(source.one()) == target.one();
    // Additive generators y^i t^k of the source.
    for (int k = 0; k < r && hom; ++k) {
        for (int i = 0; i < f && hom; ++i) {
            std::vector<std::int64_t> coords(source.coordinate_count(), 0);
            coords[static_cast<std::size_t>(k * f + i)] = 1;
            RingElement g = source.from_coordinates(coords);
            for (std::uint64_t c = 0; c < source.size(); ++c) {
                RingElement y{c};
                if (phi(source.add(g, y)) != target.add(phi(g), phi(y)) ||
                    phi(source.mul(g, y)) != target.mul(phi(g), phi(y))) {
                    hom = false;
                    break;
                }
            }
        }
    }
    out.verified = bijective && hom;
    out.isomorphic = out.verified;
    out.image_of_t = pi;
    out.reason = out.verified ? "e=" + std::to_string(spec.e) + " >= r=" + std::to_string(r) + ": t -> pi is a ring isomorphism"
                              : "t -> pi failed verification";
    if (!out.verified) throw InternalError("iso_check_truncated: " + out.reason + " for " + spec.label());
    return out;
}

}  // namespace repzoo
