#ifndef HJELMSLEV_GALOIS_RING_HPP
#define HJELMSLEV_GALOIS_RING_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hjelmslev {

/// An element of a GaloisRing, identified by its position in the ring's
/// element enumeration. Only meaningful together with the ring it came from.
struct RingElement {
    std::uint32_t id = 0;

    friend constexpr auto operator<=>(RingElement, RingElement) = default;
};

/**
 * Parameters of GR(q^m, p^m) = Z_{p^m}[X]/(f) with q = p^r.
 *
 * f is stored as its full coefficient list (c0, c1, ..., c_{r-1}, 1),
 * constant term first, every coefficient in [0, p^m).
 */
struct GaloisRingSpec {
    int p = 2;
    int r = 1;
    int m = 1;
    std::vector<int> f{0, 1};

    int q() const;
    int characteristic() const;
    int order() const;

    /// Canonical text form, e.g. "GR(p^m=4,q=4,f=[1,1,1])".
    std::string to_string() const;

    friend bool operator==(const GaloisRingSpec&, const GaloisRingSpec&) = default;
};

/// Validates the parameters and fills in the default modulus when `f` is
/// absent. Throws std::invalid_argument on a non-prime p, a non-monic f, a
/// wrong degree, or an f that is reducible modulo p.
GaloisRingSpec make_ring_spec(int p, int r, int m, std::optional<std::vector<int>> f = std::nullopt);

/// The lexicographically smallest monic degree-r polynomial with coefficients
/// in [0, p) that is irreducible over F_p (smallest constant term first).
/// X^2+X+1 for p=2, r=2; X for r=1.
std::vector<int> default_modulus(int p, int r);

/// Accepts the canonical form produced by GaloisRingSpec::to_string as well as
/// the short names "Z25", "F4", "G16" and "GR(16,4)".
GaloisRingSpec parse_ring_spec(std::string_view text);

/// Short human name: "Z8", "F4", "GR(16,4)".
std::string short_name(const GaloisRingSpec& spec);

bool is_prime(long n);

/// True iff the polynomial (coefficients constant term first) has no monic
/// factor of degree 1..deg/2 over F_p. Coefficients are reduced mod p first.
bool is_irreducible_mod_p(std::span<const int> poly, int p);

/**
 * Exact arithmetic in a Galois ring.
 *
 * Elements are enumerated by their coefficient vectors (c0, ..., c_{r-1})
 * with id = sum c_i * (p^m)^i, so for r = 1 the id is the integer value.
 * Addition and multiplication go through precomputed tables; the supported
 * ring order is at most 1024.
 */
class GaloisRing {
public:
    explicit GaloisRing(GaloisRingSpec spec);

    const GaloisRingSpec& spec() const { return spec_; }
    int p() const { return spec_.p; }
    int r() const { return spec_.r; }
    int m() const { return spec_.m; }
    int q() const { return q_; }
    int order() const { return order_; }
    int characteristic() const { return char_; }

    RingElement zero() const { return RingElement{0}; }
    RingElement one() const { return RingElement{1}; }
    /// The class of X. For r = 1 this is the integer -c0 of f = X + c0.
    RingElement generator() const;
    RingElement from_int(long value) const;
    RingElement from_coeffs(std::span<const int> coeffs) const;
    std::vector<int> coeffs(RingElement x) const;

    RingElement add(RingElement x, RingElement y) const;
    RingElement sub(RingElement x, RingElement y) const;
    RingElement neg(RingElement x) const;
    RingElement mul(RingElement x, RingElement y) const;
    RingElement pow(RingElement x, std::uint64_t e) const;
    bool is_unit(RingElement x) const;
    /// Throws std::domain_error for non-units.
    RingElement inverse(RingElement x) const;

    /// Largest i with x in p^i R; m for zero.
    int valuation(RingElement x) const;

    /// The residue field F_q = R/pR as a ring with m = 1 (the ring itself
    /// when m = 1).
    const GaloisRing& residue_field() const;
    /// Shared handle to the residue field; null when m = 1.
    std::shared_ptr<const GaloisRing> residue_field_ptr() const { return residue_field_; }
    /// Coefficientwise reduction mod p, as an element of residue_field().
    RingElement residue(RingElement x) const;
    /// Coefficient embedding of a residue-field element (coefficients in
    /// [0, p) taken as ring coefficients). residue(lift(a)) == a.
    RingElement lift(RingElement residue_element) const;

    std::vector<RingElement> elements() const;

    /// The q solutions of t^q = t, in ascending id order.
    std::span<const RingElement> teichmuller_set() const { return teichmuller_; }
    /// (t_0, ..., t_{m-1}) with x = sum p^i t_i, every t_i Teichmueller.
    std::vector<RingElement> teichmuller_decompose(RingElement x) const;

    /// Integer for r = 1, coefficient tuple "(c0,c1,...)" otherwise.
    std::string format(RingElement x) const;

private:
    void check(RingElement x) const;
    std::size_t slot(RingElement x, RingElement y) const {
        return static_cast<std::size_t>(x.id) * static_cast<std::size_t>(order_) + y.id;
    }

    GaloisRingSpec spec_;
    int q_ = 0;
    int order_ = 0;
    int char_ = 0;
    std::vector<std::uint16_t> add_;
    std::vector<std::uint16_t> mul_;
    std::vector<std::uint16_t> neg_;
    std::vector<std::int32_t> inv_;
    std::vector<std::int8_t> valuation_;
    std::vector<std::uint16_t> residue_;
    std::vector<RingElement> teichmuller_;
    std::vector<std::uint16_t> teichmuller_of_residue_;
    std::shared_ptr<const GaloisRing> residue_field_;
};

}  // namespace hjelmslev

#endif  // HJELMSLEV_GALOIS_RING_HPP
