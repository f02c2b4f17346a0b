#pragma once

#include <array>
#include <map>
#include <vector>

#include "vcausal/behavior.hpp"
#include "vcausal/errors.hpp"

namespace vcausal {

/// One Clauser-Horne facet of the 2-party, 2-setting, 2-outcome local polytope,
/// stored as integer coefficients over the 16 table entries p(b,c|y,z),
/// index = ((y*2+z)*2+b)*2+c. Local points satisfy coeff . p <= 0.
///
/// Marginal terms are expanded against a fixed partner setting (the partner's
/// setting 0), so two facets that differ as coefficient vectors may agree as
/// functionals on every no-signalling behavior. The canonical list below is
/// deduplicated on the no-signalling subspace, which leaves exactly 8 facets.
struct ChFacet {
    std::array<int, 16> coeff{};

    static constexpr int index(int y, int z, int b, int c) { return ((y * 2 + z) * 2 + b) * 2 + c; }
};

namespace detail {

/// The literal CH expression with marginals expanded at partner setting 0:
/// p(00|00)+p(00|01)+p(00|10)-p(00|11) - sum_c p(0,c|00) - sum_b p(b,0|00).
inline ChFacet ch_canonical_vector() {
    ChFacet f;
    f.coeff[ChFacet::index(0, 0, 0, 0)] += 1;
    f.coeff[ChFacet::index(0, 1, 0, 0)] += 1;
    f.coeff[ChFacet::index(1, 0, 0, 0)] += 1;
    f.coeff[ChFacet::index(1, 1, 0, 0)] -= 1;
    f.coeff[ChFacet::index(0, 0, 0, 0)] -= 1;
    f.coeff[ChFacet::index(0, 0, 0, 1)] -= 1;
    f.coeff[ChFacet::index(0, 0, 0, 0)] -= 1;
    f.coeff[ChFacet::index(0, 0, 1, 0)] -= 1;
    return f;
}

inline ChFacet transform_facet(const ChFacet& v, bool swap_y, bool swap_z, bool flip_b, bool flip_c,
                               bool swap_parties) {
    ChFacet out;
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    int yy = swap_y ? 1 - y : y;
                    int zz = swap_z ? 1 - z : z;
                    int bb = flip_b ? 1 - b : b;
                    int cc = flip_c ? 1 - c : c;
                    if (swap_parties) {
                        std::swap(yy, zz);
                        std::swap(bb, cc);
                    }
                    out.coeff[ChFacet::index(yy, zz, bb, cc)] += v.coeff[ChFacet::index(y, z, b, c)];
                }
    return out;
}

/// Values of the facet on the 24 extreme points of the no-signalling polytope
/// (16 deterministic, 8 PR boxes), doubled so everything is an integer. Two
/// facets with equal signatures agree on the whole no-signalling polytope.
inline std::array<int, 24> ns_signature(const ChFacet& f) {
    std::array<int, 24> sig{};
    int k = 0;
    for (int fb0 = 0; fb0 < 2; ++fb0)
        for (int fb1 = 0; fb1 < 2; ++fb1)
            for (int fc0 = 0; fc0 < 2; ++fc0)
                for (int fc1 = 0; fc1 < 2; ++fc1) {
                    const int fb[2] = {fb0, fb1};
                    const int fc[2] = {fc0, fc1};
                    int v = 0;
                    for (int y = 0; y < 2; ++y)
                        for (int z = 0; z < 2; ++z) v += f.coeff[ChFacet::index(y, z, fb[y], fc[z])];
                    sig[k++] = 2 * v;
                }
    for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be)
            for (int ga = 0; ga < 2; ++ga) {
                int v2 = 0;  // 2x the PR value; each supported entry has probability 1/2
                for (int y = 0; y < 2; ++y)
                    for (int z = 0; z < 2; ++z)
                        for (int b = 0; b < 2; ++b)
                            for (int c = 0; c < 2; ++c)
                                if ((b ^ c) == ((y & z) ^ (al & y) ^ (be & z) ^ ga))
                                    v2 += f.coeff[ChFacet::index(y, z, b, c)];
                sig[k++] = v2;
            }
    return sig;
}

struct ChFacetTable {
    std::vector<ChFacet> facets;  // exactly 8, sorted by coefficient array
    int canonical = -1;           // index of the literal CH expression's class
};

inline ChFacetTable build_ch_facets() {
    const ChFacet canon = ch_canonical_vector();
    std::map<std::array<int, 24>, std::array<int, 16>> classes;
    for (int bits = 0; bits < 32; ++bits) {
        const ChFacet t = transform_facet(canon, bits & 1, bits & 2, bits & 4, bits & 8, bits & 16);
        auto [it, inserted] = classes.try_emplace(ns_signature(t), t.coeff);
        if (!inserted && t.coeff < it->second) it->second = t.coeff;
    }
    ChFacetTable table;
    for (const auto& [sig, coeff] : classes) table.facets.push_back(ChFacet{coeff});
    std::sort(table.facets.begin(), table.facets.end(),
              [](const ChFacet& a, const ChFacet& b) { return a.coeff < b.coeff; });
    const auto canon_sig = ns_signature(canon);
    for (std::size_t i = 0; i < table.facets.size(); ++i)
        if (ns_signature(table.facets[i]) == canon_sig) table.canonical = static_cast<int>(i);
    return table;
}

} // namespace detail

/// The canonical list of CH facets (8 of them after deduplication on the
/// no-signalling polytope).
inline const std::vector<ChFacet>& ch_facets() {
    static const detail::ChFacetTable table = detail::build_ch_facets();
    return table.facets;
}

/// Index (into ch_facets()) of the class containing the literal CH expression.
inline int canonical_ch_facet() {
    static const int idx = [] {
        static const detail::ChFacetTable table = detail::build_ch_facets();
        return table.canonical;
    }();
    return idx;
}

template <class T>
void require_2222(const Behavior<T>& b) {
    if (b.parties != 2 || b.settings != std::vector<int>{2, 2} || b.outcomes != std::vector<int>{2, 2})
        throw WrongShape("expected a 2-party, 2-setting, 2-outcome behavior");
}

/// Value of facet `facet_id` on a 2222 behavior. Local points give <= 0; the
/// canonical PR box gives exactly +1/2 on its violated facet.
template <class T>
T ch_value(const Behavior<T>& b, int facet_id) {
    require_2222(b);
    const ChFacet& f = ch_facets().at(facet_id);
    T acc(0);
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
            for (int o1 = 0; o1 < 2; ++o1)
                for (int o2 = 0; o2 < 2; ++o2) {
                    const int c = f.coeff[ChFacet::index(y, z, o1, o2)];
                    if (c != 0) acc += T(c) * b.table[y * 2 + z][o1 * 2 + o2];
                }
    return acc;
}

/// Facet-test verdict; when nonlocal, `facet` and `value` witness the
/// violation (the largest one).
template <class T>
struct LocalityVerdict {
    bool local = true;
    int facet = -1;
    T value{0};
};

/// Facet test for 2-party locality. The input must be no-signalling within
/// tol; locality is undefined otherwise and SignallingInput is raised.
template <class T>
LocalityVerdict<T> is_local_2222(const Behavior<T>& b, const T& tol) {
    require_2222(b);
    if (!is_no_signalling(b, tol)) throw SignallingInput();
    LocalityVerdict<T> verdict;
    for (std::size_t i = 0; i < ch_facets().size(); ++i) {
        const T v = ch_value(b, static_cast<int>(i));
        if (v > tol && (verdict.local || v > verdict.value)) {
            verdict.local = false;
            verdict.facet = static_cast<int>(i);
            verdict.value = v;
        }
    }
    return verdict;
}

} // namespace vcausal
