#ifndef HJELMSLEV_RING_CODES_HPP
#define HJELMSLEV_RING_CODES_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hjelmslev/plane.hpp"

namespace hjelmslev {

/// An R-linear code of rank 3 whose generator columns are point coordinates.
struct RingLinearCode {
    std::shared_ptr<const GaloisRing> ring;
    std::vector<HomogeneousVector> columns;

    std::size_t length() const { return columns.size(); }
    int rank() const { return 3; }
    /// Number of messages, |R|^3.
    std::uint64_t message_count() const;
};

/// Columns are the normalized coordinates of the (multi)set, in ascending
/// point index order. Throws std::invalid_argument for an empty arc.
RingLinearCode code_from_arc(std::span<const PointIndex> points, const PlaneModel& plane);

/// Homogeneous weight: 0 for zero, q^{m-1} on the nonzero elements of the
/// minimal ideal p^{m-1}R, (q-1) q^{m-2} elsewhere. For m = 1 this is the
/// Hamming weight.
int hom_weight(const GaloisRing& ring, RingElement a);

/// Calls visit(message, codeword) for every message in R^3, messages in
/// lexicographic id order.
void for_each_codeword(const RingLinearCode& code,
                       const std::function<void(const HomogeneousVector&, std::span<const RingElement>)>& visit);

using WeightEnumerator = std::map<std::int64_t, std::uint64_t>;

/// Homogeneous weight census over all messages. Throws std::length_error if
/// the message count exceeds max_messages.
WeightEnumerator hom_weight_enumerator(const RingLinearCode& code, std::uint64_t max_messages = 1U << 22);

/// Smallest weight with a nonzero count, ignoring weight 0.
std::optional<std::int64_t> min_nonzero_weight(const WeightEnumerator& enumerator);

/// (a_0, ..., a_m): a_i counts arc points P (with multiplicity) whose value
/// L . P has p-adic valuation i; a_m counts the points on L.
using KType = std::vector<std::size_t>;

KType line_ktype(std::span<const PointIndex> points, const PlaneModel& plane, LineIndex line);
std::map<KType, std::size_t> ktype_census(std::span<const PointIndex> points, const PlaneModel& plane);

/// The weight enumerator rebuilt from line k-types and the residue-line
/// census, without enumerating codewords. Supported for m <= 2.
WeightEnumerator enumerator_from_ktypes(std::span<const PointIndex> points, const PlaneModel& plane);

/// Gray image of one ring element: with a = t0 + p t1 (Teichmueller digits),
/// the word indexed by u in F_q is res(t1) + res(t0) u. The identity for
/// m = 1. Symbols are residue-field element ids. Throws std::domain_error
/// for m >= 3.
std::vector<RingElement> gray_map(const GaloisRing& ring, RingElement a);

struct GrayOptions {
    std::uint64_t max_messages = 1U << 22;
    /// Distance invariance is checked from every word up to this many words,
    /// from an evenly spaced sample above it.
    std::size_t full_check_limit = 1U << 14;
    std::size_t sample_size = 512;
};

/// Gray image of a code over F_q: the distinct codewords, mapped
/// coordinatewise.
struct GrayImage {
    /// The residue field whose element ids are the symbols.
    std::shared_ptr<const GaloisRing> field;
    int q = 0;
    std::size_t length = 0;
    std::vector<std::vector<std::uint8_t>> words;
    std::map<std::size_t, std::uint64_t> weight_distribution;
    std::size_t min_distance = 0;
    bool distance_invariant = false;
    /// False when distance invariance and min_distance come from a sample.
    bool exhaustive = false;
    bool linear = false;
};

GrayImage gray_image(const RingLinearCode& code, const GrayOptions& options = {});

/// Dimension of the F_q-span of the words. Stops early and returns the
/// current dimension once q^dimension exceeds stop_above.
std::size_t span_dimension(const GrayImage& image, std::uint64_t stop_above = std::numeric_limits<std::uint64_t>::max());

/// True iff the word set is closed under F_q-linear combinations.
bool is_linear(const GrayImage& image);

struct CodeParameters {
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::int64_t d = 0;

    friend bool operator==(const CodeParameters&, const CodeParameters&) = default;
};

/// A linear [n,k,d]_q code implies a linear [n-d, k-1, ceil(d/q)]_q code.
/// Throws std::invalid_argument unless q >= 2, k >= 2 and 1 <= d <= n.
CodeParameters griesmer_step(std::int64_t q, std::int64_t n, std::int64_t k, std::int64_t d);

/// Repeated griesmer_step down to k = 1, starting with the input itself.
std::vector<CodeParameters> griesmer_chain(std::int64_t q, CodeParameters start);

struct CodeReport {
    GaloisRingSpec spec;
    CodeParameters ring_code;
    WeightEnumerator enumerator;
    int q = 0;
    std::size_t gray_length = 0;
    std::size_t gray_words = 0;
    /// log_q of the word count when that is an integer.
    std::optional<std::int64_t> gray_dimension;
    std::size_t gray_min_distance = 0;
    bool distance_invariant = false;
    bool exhaustive = false;
    bool linear = false;
    std::vector<CodeParameters> griesmer;
};

CodeReport code_report(const RingLinearCode& code, const GrayImage& image);

}  // namespace hjelmslev

#endif  // HJELMSLEV_RING_CODES_HPP
