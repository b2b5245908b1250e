#include "hjelmslev/galois_ring.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace hjelmslev {

namespace {

constexpr int kMaxOrder = 1024;

long ipow(long base, int exp) {
    long result = 1;
    for (int i = 0; i < exp; ++i) result *= base;
    return result;
}

int mod(long value, int modulus) {
    long v = value % modulus;
    return static_cast<int>(v < 0 ? v + modulus : v);
}

int smallest_prime_factor(long n) {
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return static_cast<int>(d);
    return static_cast<int>(n);
}

// Exponent e with base^e == value, or -1.
int exact_log(long value, long base) {
    int e = 0;
    while (value > 1 && value % base == 0) {
        value /= base;
        ++e;
    }
    return value == 1 ? e : -1;
}

long parse_long(std::string_view text) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("ring spec: expected an integer, got '" + std::string(text) + "'");
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

// Remainder of a modulo monic b over F_p; both constant term first.
std::vector<int> poly_rem_mod_p(std::vector<int> a, const std::vector<int>& b, int p) {
    const int db = static_cast<int>(b.size()) - 1;
    for (int d = static_cast<int>(a.size()) - 1; d >= db; --d) {
        const int c = a[d];
        if (c == 0) continue;
        for (int i = 0; i <= db; ++i) a[d - db + i] = mod(a[d - db + i] - static_cast<long>(c) * b[i], p);
    }
    a.resize(std::max(db, 0));
    return a;
}

}  // namespace

bool is_prime(long n) {
    if (n < 2) return false;
    return smallest_prime_factor(n) == n;
}

bool is_irreducible_mod_p(std::span<const int> poly, int p) {
    std::vector<int> a;
    a.reserve(poly.size());
    for (int c : poly) a.push_back(mod(c, p));
    while (!a.empty() && a.back() == 0) a.pop_back();
    const int deg = static_cast<int>(a.size()) - 1;
    if (deg < 1) return false;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (int d = 1; 2 * d <= deg; ++d) {
        const long count = ipow(p, d);
        for (long code = 0; code < count; ++code) {
            std::vector<int> divisor(d + 1);
            long c = code;
            for (int i = 0; i < d; ++i) {
                divisor[i] = static_cast<int>(c % p);
                c /= p;
            }
            divisor[d] = 1;
            auto rem = poly_rem_mod_p(a, divisor, p);
            if (std::all_of(rem.begin(), rem.end(), [](int v) { return v == 0; })) return false;
        }
    }
    return true;
}

std::vector<int> default_modulus(int p, int r) {
    if (!is_prime(p) || r < 1) throw std::invalid_argument("default_modulus: need prime p and r >= 1");
    const long count = ipow(p, r);
    // Codes enumerate (c0, ..., c_{r-1}) with c0 most significant.
    for (long code = 0; code < count; ++code) {
        std::vector<int> f(r + 1);
        long c = code;
        for (int i = r - 1; i >= 0; --i) {
            f[i] = static_cast<int>(c % p);
            c /= p;
        }
        f[r] = 1;
        if (is_irreducible_mod_p(f, p)) return f;
    }
    throw std::logic_error("default_modulus: no irreducible polynomial found");
}

int GaloisRingSpec::q() const { return static_cast<int>(ipow(p, r)); }
int GaloisRingSpec::characteristic() const { return static_cast<int>(ipow(p, m)); }
int GaloisRingSpec::order() const { return static_cast<int>(ipow(p, r * m)); }

std::string GaloisRingSpec::to_string() const {
    std::ostringstream os;
    os << "GR(p^m=" << characteristic() << ",q=" << q() << ",f=[";
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    os << "])";
    return os.str();
}

GaloisRingSpec make_ring_spec(int p, int r, int m, std::optional<std::vector<int>> f) {
    if (!is_prime(p)) throw std::invalid_argument("ring spec: p = " + std::to_string(p) + " is not prime");
    if (r < 1 || m < 1) throw std::invalid_argument("ring spec: r and m must be at least 1");
    if (ipow(p, r * m) > kMaxOrder) throw std::invalid_argument("ring spec: ring order exceeds 1024");
    GaloisRingSpec spec;
    spec.p = p;
    spec.r = r;
    spec.m = m;
    if (!f) {
        spec.f = default_modulus(p, r);
        return spec;
    }
    const int pm = spec.characteristic();
    std::vector<int> poly;
    for (int c : *f) poly.push_back(mod(c, pm));
    if (static_cast<int>(poly.size()) != r + 1)
        throw std::invalid_argument("ring spec: f must have degree r = " + std::to_string(r));
    if (poly.back() != 1) throw std::invalid_argument("ring spec: f is not monic");
    if (!is_irreducible_mod_p(poly, p)) throw std::invalid_argument("ring spec: f is reducible modulo p");
    spec.f = std::move(poly);
    return spec;
}

GaloisRingSpec parse_ring_spec(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("ring spec: empty");

    // Canonical form GR(p^m=..,q=..,f=[...]).
    if (text.starts_with("GR(p^m=")) {
        const auto comma = text.find(",q=");
        const auto fpos = text.find(",f=[");
        const auto close = text.find("])");
        if (comma == std::string_view::npos || fpos == std::string_view::npos || close == std::string_view::npos)
            throw std::invalid_argument("ring spec: malformed '" + std::string(text) + "'");
        const long pm = parse_long(text.substr(7, comma - 7));
        const long q = parse_long(text.substr(comma + 3, fpos - comma - 3));
        std::vector<int> f;
        std::string_view list = text.substr(fpos + 4, close - fpos - 4);
        while (!list.empty()) {
            const auto next = list.find(',');
            f.push_back(static_cast<int>(parse_long(trim(list.substr(0, next)))));
            if (next == std::string_view::npos) break;
            list.remove_prefix(next + 1);
        }
        const int p = smallest_prime_factor(pm);
        const int m = exact_log(pm, p);
        const int r = exact_log(q, p);
        if (m < 1 || r < 1) throw std::invalid_argument("ring spec: inconsistent p^m and q");
        return make_ring_spec(p, r, m, f);
    }

    auto order_char = [](long order, long characteristic) {
        if (order < 2 || characteristic < 2) throw std::invalid_argument("ring spec: order too small");
        const int p = smallest_prime_factor(characteristic);
        const int m = exact_log(characteristic, p);
        const int total = exact_log(order, p);
        if (m < 1 || total < 1 || total % m != 0)
            throw std::invalid_argument("ring spec: no Galois ring of order " + std::to_string(order) +
                                        " and characteristic " + std::to_string(characteristic));
        return make_ring_spec(p, total / m, m);
    };

    if (text.starts_with("GR(")) {
        const auto comma = text.find(',');
        if (comma == std::string_view::npos || text.back() != ')')
            throw std::invalid_argument("ring spec: malformed '" + std::string(text) + "'");
        return order_char(parse_long(trim(text.substr(3, comma - 3))),
                          parse_long(trim(text.substr(comma + 1, text.size() - comma - 2))));
    }
    const char head = text.front();
    const long value = parse_long(text.substr(1));
    switch (head) {
        case 'Z':
            return order_char(value, value);
        case 'F': {
            const int p = smallest_prime_factor(value);
            const int r = exact_log(value, p);
            if (r < 1) throw std::invalid_argument("ring spec: F" + std::to_string(value) + " is not a field");
            return make_ring_spec(p, r, 1);
        }
        case 'G': {
            // G_{q^2}: the Galois ring of order q^2 with chain length 2.
            const int p = smallest_prime_factor(value);
            const int total = exact_log(value, p);
            if (total < 2 || total % 2 != 0)
                throw std::invalid_argument("ring spec: G" + std::to_string(value) + " needs order q^2");
            return make_ring_spec(p, total / 2, 2);
        }
        default:
            throw std::invalid_argument("ring spec: unrecognized '" + std::string(text) + "'");
    }
}

std::string short_name(const GaloisRingSpec& spec) {
    if (spec.m == 1) return "F" + std::to_string(spec.q());
    if (spec.r == 1) return "Z" + std::to_string(spec.characteristic());
    return "GR(" + std::to_string(spec.order()) + "," + std::to_string(spec.characteristic()) + ")";
}

GaloisRing::GaloisRing(GaloisRingSpec spec) : spec_(std::move(spec)) {
    // Re-validate, the spec may have been assembled by hand.
    spec_ = make_ring_spec(spec_.p, spec_.r, spec_.m, spec_.f);
    q_ = spec_.q();
    order_ = spec_.order();
    char_ = spec_.characteristic();
    const int r = spec_.r;
    const int pm = char_;
    const std::size_t n = static_cast<std::size_t>(order_);

    std::vector<std::vector<int>> coeff(n);
    for (std::size_t id = 0; id < n; ++id) coeff[id] = coeffs(RingElement{static_cast<std::uint32_t>(id)});

    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    std::vector<int> buf(r), prod(2 * r - 1);
    for (std::size_t a = 0; a < n; ++a) {
        for (int i = 0; i < r; ++i) buf[i] = mod(-coeff[a][i], pm);
        neg_[a] = static_cast<std::uint16_t>(from_coeffs(buf).id);
        for (std::size_t b = 0; b < n; ++b) {
            for (int i = 0; i < r; ++i) buf[i] = mod(coeff[a][i] + coeff[b][i], pm);
            add_[a * n + b] = static_cast<std::uint16_t>(from_coeffs(buf).id);

            std::fill(prod.begin(), prod.end(), 0);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    prod[i + j] = mod(prod[i + j] + static_cast<long>(coeff[a][i]) * coeff[b][j], pm);
            // X^r = -(c0 + ... + c_{r-1} X^{r-1}) mod f.
            for (int d = 2 * r - 2; d >= r; --d) {
                const int c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                for (int i = 0; i < r; ++i)
                    prod[d - r + i] = mod(prod[d - r + i] - static_cast<long>(c) * spec_.f[i], pm);
            }
            std::copy(prod.begin(), prod.begin() + r, buf.begin());
            mul_[a * n + b] = static_cast<std::uint16_t>(from_coeffs(buf).id);
        }
    }

    valuation_.resize(n);
    residue_.resize(n);
    inv_.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
        int v = spec_.m;
        for (int c : coeff[a]) {
            if (c == 0) continue;
            int cv = 0;
            for (int t = c; t % spec_.p == 0; t /= spec_.p) ++cv;
            v = std::min(v, cv);
        }
        valuation_[a] = static_cast<std::int8_t>(v);
        // Residue ids use base p instead of base p^m.
        long rid = 0;
        for (int i = r - 1; i >= 0; --i) rid = rid * spec_.p + coeff[a][i] % spec_.p;
        residue_[a] = static_cast<std::uint16_t>(rid);
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (valuation_[a] != 0) continue;
        for (std::size_t b = 0; b < n; ++b) {
            if (mul_[a * n + b] == 1) {
                inv_[a] = static_cast<std::int32_t>(b);
                break;
            }
        }
    }

    if (spec_.m == 1) {
        residue_field_ = nullptr;
    } else {
        std::vector<int> fbar;
        for (int c : spec_.f) fbar.push_back(c % spec_.p);
        residue_field_ = std::make_shared<const GaloisRing>(make_ring_spec(spec_.p, r, 1, fbar));
    }

    teichmuller_of_residue_.assign(static_cast<std::size_t>(q_), 0);
    for (std::size_t a = 0; a < n; ++a) {
        const RingElement x{static_cast<std::uint32_t>(a)};
        if (pow(x, static_cast<std::uint64_t>(q_)) == x) {
            teichmuller_.push_back(x);
            teichmuller_of_residue_[residue_[a]] = static_cast<std::uint16_t>(a);
        }
    }
    if (static_cast<int>(teichmuller_.size()) != q_)
        throw std::logic_error("GaloisRing: Teichmueller set has the wrong size");
}

void GaloisRing::check(RingElement x) const {
    if (x.id >= static_cast<std::uint32_t>(order_))
        throw std::out_of_range("ring element id " + std::to_string(x.id) + " is not in " + spec_.to_string());
}

RingElement GaloisRing::generator() const {
    if (spec_.r == 1) return neg(from_int(spec_.f[0]));
    std::vector<int> c(spec_.r, 0);
    c[1] = 1;
    return from_coeffs(c);
}

RingElement GaloisRing::from_int(long value) const {
    std::vector<int> c(spec_.r, 0);
    c[0] = mod(value, char_);
    return from_coeffs(c);
}

RingElement GaloisRing::from_coeffs(std::span<const int> c) const {
    if (static_cast<int>(c.size()) != spec_.r)
        throw std::invalid_argument("from_coeffs: expected " + std::to_string(spec_.r) + " coefficients");
    long id = 0;
    for (int i = spec_.r - 1; i >= 0; --i) {
        if (c[i] < 0 || c[i] >= char_) throw std::invalid_argument("from_coeffs: coefficient out of range");
        id = id * char_ + c[i];
    }
    return RingElement{static_cast<std::uint32_t>(id)};
}

std::vector<int> GaloisRing::coeffs(RingElement x) const {
    check(x);
    std::vector<int> c(spec_.r);
    long id = x.id;
    for (int i = 0; i < spec_.r; ++i) {
        c[i] = static_cast<int>(id % char_);
        id /= char_;
    }
    return c;
}

RingElement GaloisRing::add(RingElement x, RingElement y) const {
    check(x);
    check(y);
    return RingElement{add_[slot(x, y)]};
}

RingElement GaloisRing::sub(RingElement x, RingElement y) const { return add(x, neg(y)); }

RingElement GaloisRing::neg(RingElement x) const {
    check(x);
    return RingElement{neg_[x.id]};
}

RingElement GaloisRing::mul(RingElement x, RingElement y) const {
    check(x);
    check(y);
    return RingElement{mul_[slot(x, y)]};
}

RingElement GaloisRing::pow(RingElement x, std::uint64_t e) const {
    RingElement result = one();
    RingElement base = x;
    while (e) {
        if (e & 1U) result = mul(result, base);
        base = mul(base, base);
        e >>= 1U;
    }
    return result;
}

bool GaloisRing::is_unit(RingElement x) const {
    check(x);
    return valuation_[x.id] == 0;
}

RingElement GaloisRing::inverse(RingElement x) const {
    check(x);
    if (inv_[x.id] < 0) throw std::domain_error("inverse: " + format(x) + " is not a unit");
    return RingElement{static_cast<std::uint32_t>(inv_[x.id])};
}

int GaloisRing::valuation(RingElement x) const {
    check(x);
    return valuation_[x.id];
}

const GaloisRing& GaloisRing::residue_field() const { return residue_field_ ? *residue_field_ : *this; }

RingElement GaloisRing::residue(RingElement x) const {
    check(x);
    return RingElement{residue_[x.id]};
}

RingElement GaloisRing::lift(RingElement residue_element) const {
    return from_coeffs(residue_field().coeffs(residue_element));
}

std::vector<RingElement> GaloisRing::elements() const {
    std::vector<RingElement> all(static_cast<std::size_t>(order_));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = RingElement{static_cast<std::uint32_t>(i)};
    return all;
}

std::vector<RingElement> GaloisRing::teichmuller_decompose(RingElement x) const {
    check(x);
    std::vector<RingElement> digits;
    digits.reserve(static_cast<std::size_t>(spec_.m));
    std::vector<int> c = coeffs(x);
    for (int level = 0; level < spec_.m; ++level) {
        const RingElement current = from_coeffs(c);
        const RingElement t{teichmuller_of_residue_[residue_[current.id]]};
        digits.push_back(t);
        // current - t is divisible by p; divide coefficientwise.
        c = coeffs(sub(current, t));
        for (int& v : c) v /= spec_.p;
    }
    return digits;
}

std::string GaloisRing::format(RingElement x) const {
    const auto c = coeffs(x);
    if (c.size() == 1) return std::to_string(c[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
    return out + ")";
}

}  // namespace hjelmslev
