#include "hjelmslev/ring_codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hjelmslev {

std::uint64_t RingLinearCode::message_count() const {
    const auto order = static_cast<std::uint64_t>(ring->order());
    return order * order * order;
}

RingLinearCode code_from_arc(std::span<const PointIndex> points, const PlaneModel& plane) {
    if (points.empty()) throw std::invalid_argument("code_from_arc: empty arc");
    std::vector<PointIndex> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    RingLinearCode code;
    code.ring = plane.ring_ptr();
    for (PointIndex P : sorted) code.columns.push_back(plane.point(P).rep);
    return code;
}

int hom_weight(const GaloisRing& ring, RingElement a) {
    const int v = ring.valuation(a);
    const int m = ring.m();
    if (v == m) return 0;
    const int q = ring.q();
    if (v == m - 1) return static_cast<int>(std::pow(q, m - 1));
    return (q - 1) * static_cast<int>(std::pow(q, m - 2));
}

void for_each_codeword(const RingLinearCode& code,
                       const std::function<void(const HomogeneousVector&, std::span<const RingElement>)>& visit) {
    const GaloisRing& R = *code.ring;
    const auto elements = R.elements();
    std::vector<RingElement> word(code.length());
    for (RingElement a : elements) {
        for (RingElement b : elements) {
            for (RingElement c : elements) {
                const HomogeneousVector message{a, b, c};
                for (std::size_t j = 0; j < word.size(); ++j) word[j] = dot(R, message, code.columns[j]);
                visit(message, word);
            }
        }
    }
}

WeightEnumerator hom_weight_enumerator(const RingLinearCode& code, std::uint64_t max_messages) {
    if (code.message_count() > max_messages)
        throw std::length_error("hom_weight_enumerator: " + std::to_string(code.message_count()) +
                                " messages exceed the budget");
    const GaloisRing& R = *code.ring;
    std::vector<int> weight(static_cast<std::size_t>(R.order()));
    for (RingElement e : R.elements()) weight[e.id] = hom_weight(R, e);
    WeightEnumerator enumerator;
    for_each_codeword(code, [&](const HomogeneousVector&, std::span<const RingElement> word) {
        std::int64_t w = 0;
        for (RingElement c : word) w += weight[c.id];
        ++enumerator[w];
    });
    return enumerator;
}

std::optional<std::int64_t> min_nonzero_weight(const WeightEnumerator& enumerator) {
    for (const auto& [w, count] : enumerator)
        if (w > 0 && count > 0) return w;
    return std::nullopt;
}

KType line_ktype(std::span<const PointIndex> points, const PlaneModel& plane, LineIndex line) {
    const GaloisRing& R = plane.ring();
    KType type(static_cast<std::size_t>(R.m()) + 1, 0);
    const Line& L = plane.line(line);
    for (PointIndex P : points) ++type[static_cast<std::size_t>(R.valuation(dot(R, L.rep, plane.point(P).rep)))];
    return type;
}

std::map<KType, std::size_t> ktype_census(std::span<const PointIndex> points, const PlaneModel& plane) {
    std::map<KType, std::size_t> census;
    for (const Line& L : plane.lines()) ++census[line_ktype(points, plane, L.index)];
    return census;
}

WeightEnumerator enumerator_from_ktypes(std::span<const PointIndex> points, const PlaneModel& plane) {
    const GaloisRing& R = plane.ring();
    const int m = R.m();
    if (m > 2) throw std::domain_error("enumerator_from_ktypes: only chain length m <= 2 is supported");
    const std::int64_t q = R.q();
    const std::int64_t order = R.order();

    // Height-i weight, using a representative of valuation i.
    std::vector<std::int64_t> height_weight(static_cast<std::size_t>(m) + 1, 0);
    for (RingElement e : R.elements()) height_weight[static_cast<std::size_t>(R.valuation(e))] = hom_weight(R, e);

    WeightEnumerator enumerator;
    enumerator[0] = 1;
    // Messages s * L with s a unit and L a line.
    const auto units = static_cast<std::uint64_t>(order - order / q);
    for (const Line& L : plane.lines()) {
        const KType type = line_ktype(points, plane, L.index);
        std::int64_t w = 0;
        for (std::size_t i = 0; i < type.size(); ++i) w += static_cast<std::int64_t>(type[i]) * height_weight[i];
        enumerator[w] += units;
    }
    if (m == 2) {
        // Messages p * u: u is determined by a residue line and a nonzero scalar.
        const PlaneModel& base = plane.residue_plane();
        std::vector<std::size_t> class_count(base.num_points(), 0);
        for (PointIndex P : points) ++class_count[plane.neighbor_class(P)];
        const std::int64_t ideal_weight = height_weight[1];
        for (const Line& l : base.lines()) {
            std::size_t on_line = 0;
            for (PointIndex c : base.points_on_line(l.index)) on_line += class_count[c];
            const auto off = static_cast<std::int64_t>(points.size() - on_line);
            enumerator[off * ideal_weight] += static_cast<std::uint64_t>(q - 1);
        }
    }
    return enumerator;
}

std::vector<RingElement> gray_map(const GaloisRing& ring, RingElement a) {
    if (ring.m() == 1) return {a};
    if (ring.m() > 2) throw std::domain_error("gray_map: chain length m >= 3 is not supported");
    const GaloisRing& field = ring.residue_field();
    const auto digits = ring.teichmuller_decompose(a);
    const RingElement t0 = ring.residue(digits[0]);
    const RingElement t1 = ring.residue(digits[1]);
    std::vector<RingElement> word;
    word.reserve(static_cast<std::size_t>(field.order()));
    for (RingElement u : field.elements()) word.push_back(field.add(t1, field.mul(t0, u)));
    return word;
}

namespace {

// Words packed into fixed-width bit fields for fast Hamming distances.
class PackedWords {
public:
    PackedWords(const std::vector<std::vector<std::uint8_t>>& words, int q, std::size_t length)
        : bits_(std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(q - 1))))),
          per_word_(static_cast<std::size_t>(64 / bits_)),
          stride_((length + per_word_ - 1) / per_word_) {
        for (std::size_t f = 0; f < per_word_; ++f) low_ |= std::uint64_t{1} << (f * static_cast<std::size_t>(bits_));
        data_.assign(words.size() * stride_, 0);
        for (std::size_t w = 0; w < words.size(); ++w)
            for (std::size_t i = 0; i < length; ++i)
                data_[w * stride_ + i / per_word_] |= std::uint64_t{words[w][i]}
                                                      << ((i % per_word_) * static_cast<std::size_t>(bits_));
    }

    std::size_t distance(std::size_t a, std::size_t b) const {
        std::size_t d = 0;
        const std::uint64_t* x = &data_[a * stride_];
        const std::uint64_t* y = &data_[b * stride_];
        for (std::size_t i = 0; i < stride_; ++i) {
            const std::uint64_t diff = x[i] ^ y[i];
            std::uint64_t fold = diff;
            for (int s = 1; s < bits_; ++s) fold |= diff >> s;
            d += static_cast<std::size_t>(std::popcount(fold & low_));
        }
        return d;
    }

private:
    int bits_;
    std::size_t per_word_;
    std::size_t stride_;
    std::uint64_t low_ = 0;
    std::vector<std::uint64_t> data_;
};

// Arithmetic tables of F_q indexed by residue-field element id.
struct FieldTables {
    int q;
    std::vector<std::uint8_t> add, mul, neg, inv;

    explicit FieldTables(const GaloisRing& field) : q(field.order()) {
        const auto n = static_cast<std::size_t>(q);
        add.resize(n * n);
        mul.resize(n * n);
        neg.resize(n);
        inv.resize(n, 0);
        for (RingElement a : field.elements()) {
            neg[a.id] = static_cast<std::uint8_t>(field.neg(a).id);
            if (a != field.zero()) inv[a.id] = static_cast<std::uint8_t>(field.inverse(a).id);
            for (RingElement b : field.elements()) {
                add[a.id * n + b.id] = static_cast<std::uint8_t>(field.add(a, b).id);
                mul[a.id * n + b.id] = static_cast<std::uint8_t>(field.mul(a, b).id);
            }
        }
    }
};

}  // namespace

GrayImage gray_image(const RingLinearCode& code, const GrayOptions& options) {
    const GaloisRing& R = *code.ring;
    if (code.message_count() > options.max_messages)
        throw std::length_error("gray_image: " + std::to_string(code.message_count()) + " messages exceed the budget");
    std::vector<std::vector<RingElement>> table(static_cast<std::size_t>(R.order()));
    for (RingElement e : R.elements()) table[e.id] = gray_map(R, e);
    const std::size_t block = table[0].size();

    std::set<std::vector<std::uint16_t>> distinct;
    for_each_codeword(code, [&](const HomogeneousVector&, std::span<const RingElement> word) {
        std::vector<std::uint16_t> ids(word.size());
        for (std::size_t j = 0; j < word.size(); ++j) ids[j] = static_cast<std::uint16_t>(word[j].id);
        distinct.insert(std::move(ids));
    });

    GrayImage image;
    image.field = R.m() == 1 ? code.ring : R.residue_field_ptr();
    image.q = R.q();
    image.length = code.length() * block;
    image.words.reserve(distinct.size());
    for (const auto& ids : distinct) {
        std::vector<std::uint8_t> word;
        word.reserve(image.length);
        for (std::uint16_t id : ids)
            for (RingElement s : table[id]) word.push_back(static_cast<std::uint8_t>(s.id));
        std::size_t weight = 0;
        for (std::uint8_t s : word) weight += s != 0;
        ++image.weight_distribution[weight];
        image.words.push_back(std::move(word));
    }

    const PackedWords packed(image.words, image.q, image.length);
    const std::size_t count = image.words.size();
    std::vector<std::size_t> rows;
    image.exhaustive = count <= options.full_check_limit;
    if (image.exhaustive) {
        for (std::size_t i = 0; i < count; ++i) rows.push_back(i);
    } else {
        const std::size_t step = std::max<std::size_t>(1, count / std::max<std::size_t>(1, options.sample_size));
        for (std::size_t i = 0; i < count; i += step) rows.push_back(i);
    }
    image.distance_invariant = true;
    image.min_distance = std::numeric_limits<std::size_t>::max();
    for (std::size_t a : rows) {
        std::map<std::size_t, std::uint64_t> profile;
        for (std::size_t b = 0; b < count; ++b) {
            const std::size_t d = packed.distance(a, b);
            ++profile[d];
            if (b != a) image.min_distance = std::min(image.min_distance, d);
        }
        if (profile != image.weight_distribution) image.distance_invariant = false;
    }
    if (count < 2) image.min_distance = 0;
    image.linear = is_linear(image);
    return image;
}

std::size_t span_dimension(const GrayImage& image, std::uint64_t stop_above) {
    if (image.words.empty()) return 0;
    if (!image.field) throw std::invalid_argument("span_dimension: image has no field");
    const FieldTables F(*image.field);
    const auto q = static_cast<std::size_t>(F.q);

    std::vector<std::vector<std::uint8_t>> basis;
    std::vector<std::size_t> pivot;
    std::uint64_t span_size = 1;
    std::vector<std::uint8_t> v;
    for (const auto& word : image.words) {
        v = word;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const std::uint8_t c = v[pivot[b]];
            if (c == 0) continue;
            const std::uint8_t nc = F.neg[c];
            const auto& row = basis[b];
            for (std::size_t i = 0; i < v.size(); ++i)
                if (row[i]) v[i] = F.add[v[i] * q + F.mul[nc * q + row[i]]];
        }
        const auto lead = std::find_if(v.begin(), v.end(), [](std::uint8_t s) { return s != 0; });
        if (lead == v.end()) continue;
        const std::uint8_t scale = F.inv[*lead];
        for (auto& s : v) s = F.mul[scale * q + s];
        pivot.push_back(static_cast<std::size_t>(lead - v.begin()));
        basis.push_back(v);
        if (span_size > stop_above / q) return basis.size();
        span_size *= q;
        if (span_size > stop_above) return basis.size();
    }
    return basis.size();
}

bool is_linear(const GrayImage& image) {
    if (image.words.empty()) return false;
    const auto count = static_cast<std::uint64_t>(image.words.size());
    const std::size_t dim = span_dimension(image, count);
    std::uint64_t span = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        if (span > count / static_cast<std::uint64_t>(image.q)) return false;
        span *= static_cast<std::uint64_t>(image.q);
    }
    // The words lie in their span, so equal sizes mean the words are the span.
    return span == count;
}

CodeParameters griesmer_step(std::int64_t q, std::int64_t n, std::int64_t k, std::int64_t d) {
    if (q < 2 || k < 2 || d < 1 || d > n)
        throw std::invalid_argument("griesmer_step: need q >= 2, k >= 2 and 1 <= d <= n");
    return CodeParameters{n - d, k - 1, (d + q - 1) / q};
}

std::vector<CodeParameters> griesmer_chain(std::int64_t q, CodeParameters start) {
    std::vector<CodeParameters> chain{start};
    while (chain.back().k >= 2 && chain.back().d >= 1 && chain.back().d <= chain.back().n) {
        const CodeParameters& c = chain.back();
        chain.push_back(griesmer_step(q, c.n, c.k, c.d));
    }
    return chain;
}

CodeReport code_report(const RingLinearCode& code, const GrayImage& image) {
    CodeReport report;
    report.spec = code.ring->spec();
    report.enumerator = hom_weight_enumerator(code);
    report.ring_code = CodeParameters{static_cast<std::int64_t>(code.length()), code.rank(),
                                      min_nonzero_weight(report.enumerator).value_or(0)};
    report.q = image.q;
    report.gray_length = image.length;
    report.gray_words = image.words.size();
    report.gray_min_distance = image.min_distance;
    report.distance_invariant = image.distance_invariant;
    report.exhaustive = image.exhaustive;
    report.linear = image.linear;

    std::uint64_t size = 1;
    std::int64_t dim = 0;
    while (size < image.words.size()) {
        size *= static_cast<std::uint64_t>(image.q);
        ++dim;
    }
    if (size == image.words.size()) {
        report.gray_dimension = dim;
        if (dim >= 1 && image.min_distance >= 1)
            report.griesmer = griesmer_chain(image.q, CodeParameters{static_cast<std::int64_t>(image.length), dim,
                                                                     static_cast<std::int64_t>(image.min_distance)});
    }
    return report;
}

}  // namespace hjelmslev
