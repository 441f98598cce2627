#include "nullnet/motifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nullnet {

namespace {

// Edge-code bit layout for a digraph on nodes {0,1,2}:
// bit0 = a01, bit1 = a10, bit2 = a02, bit3 = a20, bit4 = a12, bit5 = a21.
using Adj3 = std::array<std::array<std::uint8_t, 3>, 3>;

Adj3 adj_from_code(int code) {
    Adj3 a{};
    a[0][1] = (code >> 0) & 1;
    a[1][0] = (code >> 1) & 1;
    a[0][2] = (code >> 2) & 1;
    a[2][0] = (code >> 3) & 1;
    a[1][2] = (code >> 4) & 1;
    a[2][1] = (code >> 5) & 1;
    return a;
}

int matrix_id(const Adj3& a) {
    int id = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (a[i][j]) id |= 1 << (3 * i + j);
    return id;
}

constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

Adj3 permute(const Adj3& a, const int* p) {
    Adj3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[p[i]][p[j]];
    return r;
}

bool weakly_connected(const Adj3& a) {
    bool und[3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) und[i][j] = a[i][j] || a[j][i];
    // 3 nodes: connected iff no isolated node and not two isolated pieces
    bool seen[3] = {true, false, false};
    for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < 3; ++i)
            if (seen[i])
                for (int j = 0; j < 3; ++j)
                    if (und[i][j]) seen[j] = true;
    return seen[0] && seen[1] && seen[2];
}

bool has_three_cycle(const Adj3& a) {
    for (const auto& p : kPerms)
        if (a[p[0]][p[1]] && a[p[1]][p[2]] && a[p[2]][p[0]]) return true;
    return false;
}

int reciprocated_dyads(const Adj3& a) {
    int r = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (a[i][j] && a[j][i]) ++r;
    return r;
}

int joint_to_code(int joint) {
    // joint = s01 | s02 << 2 | s12 << 4, each s: 0 empty, 1 low->high,
    // 2 high->low, 3 both.
    const int s01 = joint & 3, s02 = (joint >> 2) & 3, s12 = (joint >> 4) & 3;
    int code = 0;
    if (s01 & 1) code |= 1 << 0;
    if (s01 & 2) code |= 1 << 1;
    if (s02 & 1) code |= 1 << 2;
    if (s02 & 2) code |= 1 << 3;
    if (s12 & 1) code |= 1 << 4;
    if (s12 & 2) code |= 1 << 5;
    return code;
}

MotifCatalog build_catalog() {
    struct ClassInfo {
        int canonical_id = -1;
        int rep_code = -1;
        int count = 0;
    };
    std::array<int, 64> canon_of_code{};
    std::vector<ClassInfo> found;
    std::array<int, 512> canon_slot;
    canon_slot.fill(-1);

    for (int code = 0; code < 64; ++code) {
        const Adj3 a = adj_from_code(code);
        int canon = 1 << 9;
        for (const auto& p : kPerms) canon = std::min(canon, matrix_id(permute(a, p)));
        canon_of_code[code] = canon;
        if (canon_slot[canon] < 0) {
            canon_slot[canon] = static_cast<int>(found.size());
            found.push_back({canon, -1, 0});
        }
        ClassInfo& ci = found[canon_slot[canon]];
        ++ci.count;
        if (matrix_id(a) == canon) ci.rep_code = code;
    }
    if (found.size() != kTriadClasses)
        throw std::logic_error("triad catalog: class count != 16");

    std::vector<int> connected_ids, other_ids;
    for (const auto& ci : found) {
        if (weakly_connected(adj_from_code(ci.rep_code)))
            connected_ids.push_back(ci.canonical_id);
        else
            other_ids.push_back(ci.canonical_id);
    }
    if (connected_ids.size() != 13)
        throw std::logic_error("triad catalog: connected class count != 13");
    std::sort(connected_ids.begin(), connected_ids.end());
    std::sort(other_ids.begin(), other_ids.end());

    MotifCatalog cat;
    std::array<int, 512> slot_of_canon;
    slot_of_canon.fill(-1);
    auto fill_class = [&](int slot, int canon, int motif_index, std::string name) {
        const ClassInfo& ci = found[canon_slot[canon]];
        TriadClass& tc = cat.classes[slot];
        tc.canonical_id = canon;
        tc.rep = adj_from_code(ci.rep_code);
        tc.connected = weakly_connected(tc.rep);
        tc.motif_index = motif_index;
        tc.name = std::move(name);
        tc.edges = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) tc.edges += tc.rep[i][j];
        tc.automorphisms = 0;
        for (const auto& p : kPerms)
            if (permute(tc.rep, p) == tc.rep) ++tc.automorphisms;
        slot_of_canon[canon] = slot;
    };
    for (int m = 1; m <= 13; ++m)
        fill_class(m - 1, connected_ids[m - 1], m, "M" + std::to_string(m));
    fill_class(13, other_ids[0], 0, "empty_triad");
    fill_class(14, other_ids[1], 0, "single_dyad_triad");
    fill_class(15, other_ids[2], 0, "mutual_dyad_triad");

    for (int code = 0; code < 64; ++code)
        cat.class_of_code[code] = slot_of_canon[canon_of_code[code]];
    for (int joint = 0; joint < 64; ++joint)
        cat.class_of_joint[joint] = cat.class_of_code[joint_to_code(joint)];

    // The ordering anchors that pin the catalog to the standard motif
    // numbering: 9 is the plain 3-cycle, 10/12/13 the 3-loops with 1/2/3
    // reciprocated dyads.
    auto check = [&cat](int m, int edges, int recip, bool cycle, int aut) {
        const TriadClass& tc = cat.motif(m);
        if (tc.edges != edges || reciprocated_dyads(tc.rep) != recip ||
            has_three_cycle(tc.rep) != cycle || tc.automorphisms != aut)
            throw std::logic_error("triad catalog: motif anchor violated");
    };
    check(9, 3, 0, true, 3);
    check(10, 4, 1, true, 1);
    check(12, 5, 2, true, 1);
    check(13, 6, 3, true, 6);
    return cat;
}

inline int pair_state(const DirectedGraph& g, int i, int j) {
    // i < j; 0 empty, 1 i->j, 2 j->i, 3 both
    return (g.has_edge(i, j) ? 1 : 0) | (g.has_edge(j, i) ? 2 : 0);
}

// Per-pair state probabilities in the low->high orientation, flat n*n array
// indexed i*n+j for i<j.
std::vector<std::array<double, 4>> pair_probabilities(const FittedEnsemble& e) {
    const int n = e.n;
    std::vector<std::array<double, 4>> p(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto d = dyad_probabilities(e, i, j);
            p[static_cast<std::size_t>(i) * n + j] = {d.p_empty, d.p_out, d.p_in, d.p_both};
        }
    }
    return p;
}

}  // namespace

const MotifCatalog& MotifCatalog::instance() {
    static const MotifCatalog cat = build_catalog();
    return cat;
}

std::string MotifId::name() const {
    if (triadic) return "M" + std::to_string(index);
    switch (index) {
        case 1: return "L_single";
        case 2: return "L_recip";
        case 3: return "L_empty";
    }
    return "?";
}

std::array<long long, kTriadClasses> full_triad_census(const DirectedGraph& g) {
    const auto& cat = MotifCatalog::instance();
    const int n = g.n();
    std::array<long long, kTriadClasses> counts{};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int sij = pair_state(g, i, j);
            for (int k = j + 1; k < n; ++k) {
                const int joint =
                    sij | pair_state(g, i, k) << 2 | pair_state(g, j, k) << 4;
                ++counts[cat.class_of_joint[joint]];
            }
        }
    }
    return counts;
}

long long count_motif(const DirectedGraph& g, MotifId m) {
    if (m.triadic) {
        if (m.index < 1 || m.index > 13)
            throw std::invalid_argument("count_motif: bad triadic index");
        const auto& cat = MotifCatalog::instance();
        const auto census = full_triad_census(g);
        return census[m.index - 1] * cat.motif(m.index).automorphisms;
    }
    const int n = g.n();
    long long single = 0, both = 0, empty = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            switch (pair_state(g, i, j)) {
                case 0: ++empty; break;
                case 3: ++both; break;
                default: ++single; break;
            }
        }
    }
    switch (m.index) {
        case 1: return single;      // sum_{i!=j} a->_ij
        case 2: return 2 * both;    // sum_{i!=j} a_ij a_ji
        case 3: return 2 * empty;   // sum_{i!=j} (1-a_ij)(1-a_ji)
    }
    throw std::invalid_argument("count_motif: bad dyadic index");
}

std::array<double, kTriadClasses> expected_triads(const FittedEnsemble& e) {
    const auto& cat = MotifCatalog::instance();
    const int n = e.n;
    const auto probs = pair_probabilities(e);
    // Kahan-compensated accumulation: the sum runs over O(n^3 * 64) terms and
    // plain summation drifts past the accuracy the closed forms are held to.
    std::array<double, kTriadClasses> acc{};
    std::array<double, kTriadClasses> comp{};
    auto add = [&](int c, double v) {
        const double y = v - comp[c];
        const double t = acc[c] + y;
        comp[c] = (t - acc[c]) - y;
        acc[c] = t;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& pij = probs[static_cast<std::size_t>(i) * n + j];
            for (int k = j + 1; k < n; ++k) {
                const auto& pik = probs[static_cast<std::size_t>(i) * n + k];
                const auto& pjk = probs[static_cast<std::size_t>(j) * n + k];
                for (int s1 = 0; s1 < 4; ++s1) {
                    const double p1 = pij[s1];
                    if (p1 == 0.0) continue;
                    for (int s2 = 0; s2 < 4; ++s2) {
                        const double p12 = p1 * pik[s2];
                        if (p12 == 0.0) continue;
                        const int base = s1 | s2 << 2;
                        for (int s3 = 0; s3 < 4; ++s3)
                            add(cat.class_of_joint[base | s3 << 4], p12 * pjk[s3]);
                    }
                }
            }
        }
    }
    for (int c = 0; c < kTriadClasses; ++c) acc[c] *= cat.classes[c].automorphisms;
    return acc;
}

std::array<double, kTriadClasses> triad_variances(const FittedEnsemble& e) {
    const auto& cat = MotifCatalog::instance();
    const int n = e.n;
    const auto probs = pair_probabilities(e);

    // Within-triple term: Var(g_T) summed over unordered triples.
    std::array<double, kTriadClasses> var{};
    std::array<double, kTriadClasses> prob_t{};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& pij = probs[static_cast<std::size_t>(i) * n + j];
            for (int k = j + 1; k < n; ++k) {
                const auto& pik = probs[static_cast<std::size_t>(i) * n + k];
                const auto& pjk = probs[static_cast<std::size_t>(j) * n + k];
                prob_t.fill(0.0);
                for (int s1 = 0; s1 < 4; ++s1) {
                    const double p1 = pij[s1];
                    if (p1 == 0.0) continue;
                    for (int s2 = 0; s2 < 4; ++s2) {
                        const double p12 = p1 * pik[s2];
                        if (p12 == 0.0) continue;
                        const int base = s1 | s2 << 2;
                        for (int s3 = 0; s3 < 4; ++s3)
                            prob_t[cat.class_of_joint[base | s3 << 4]] += p12 * pjk[s3];
                    }
                }
                for (int c = 0; c < kTriadClasses; ++c)
                    var[c] += prob_t[c] * (1.0 - prob_t[c]);
            }
        }
    }

    // Cross term: ordered pairs of triples sharing exactly one dyad.
    // Conditioning on the shared dyad's state makes the two triples
    // independent; triples sharing at most one node are fully independent.
    std::array<std::array<double, kTriadClasses>, 4> e_dk{};
    std::array<std::array<double, kTriadClasses>, 4> s_d{};
    std::array<std::array<double, kTriadClasses>, 4> q_d{};
    std::array<double, kTriadClasses> m_sum{}, m_sq{}, m_k{};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& shared = probs[static_cast<std::size_t>(i) * n + j];
            for (auto& r : s_d) r.fill(0.0);
            for (auto& r : q_d) r.fill(0.0);
            m_sum.fill(0.0);
            m_sq.fill(0.0);
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                // slot shifts of the sorted triple: the shared dyad {i,j} and
                // the two dyads through k
                int sh_shared, sh_f1, sh_f2;
                const std::array<double, 4>* f1;
                const std::array<double, 4>* f2;
                if (k < i) {  // sorted (k,i,j): {i,j} last, free {k,i},{k,j}
                    sh_shared = 4;
                    f1 = &probs[static_cast<std::size_t>(k) * n + i];
                    sh_f1 = 0;
                    f2 = &probs[static_cast<std::size_t>(k) * n + j];
                    sh_f2 = 2;
                } else if (k < j) {  // sorted (i,k,j): {i,j} middle
                    sh_shared = 2;
                    f1 = &probs[static_cast<std::size_t>(i) * n + k];
                    sh_f1 = 0;
                    f2 = &probs[static_cast<std::size_t>(k) * n + j];
                    sh_f2 = 4;
                } else {  // sorted (i,j,k)
                    sh_shared = 0;
                    f1 = &probs[static_cast<std::size_t>(i) * n + k];
                    sh_f1 = 2;
                    f2 = &probs[static_cast<std::size_t>(j) * n + k];
                    sh_f2 = 4;
                }
                for (auto& r : e_dk) r.fill(0.0);
                for (int s1 = 0; s1 < 4; ++s1) {
                    const double p1 = (*f1)[s1];
                    if (p1 == 0.0) continue;
                    for (int s2 = 0; s2 < 4; ++s2) {
                        const double p12 = p1 * (*f2)[s2];
                        if (p12 == 0.0) continue;
                        const int base = s1 << sh_f1 | s2 << sh_f2;
                        for (int d = 0; d < 4; ++d)
                            e_dk[d][cat.class_of_joint[base | d << sh_shared]] += p12;
                    }
                }
                m_k.fill(0.0);
                for (int d = 0; d < 4; ++d) {
                    const double pd = shared[d];
                    for (int c = 0; c < kTriadClasses; ++c) {
                        const double v = e_dk[d][c];
                        s_d[d][c] += v;
                        q_d[d][c] += v * v;
                        m_k[c] += pd * v;
                    }
                }
                for (int c = 0; c < kTriadClasses; ++c) {
                    m_sum[c] += m_k[c];
                    m_sq[c] += m_k[c] * m_k[c];
                }
            }
            for (int c = 0; c < kTriadClasses; ++c) {
                double cov = -(m_sum[c] * m_sum[c] - m_sq[c]);
                for (int d = 0; d < 4; ++d)
                    cov += shared[d] * (s_d[d][c] * s_d[d][c] - q_d[d][c]);
                var[c] += cov;
            }
        }
    }
    for (int c = 0; c < kTriadClasses; ++c) {
        const double a = cat.classes[c].automorphisms;
        var[c] *= a * a;
        if (var[c] < 0.0) var[c] = 0.0;  // roundoff on deterministic ensembles
    }
    return var;
}

std::array<double, kDyadicMotifs> expected_dyadic(const FittedEnsemble& e) {
    const int n = e.n;
    std::array<double, kDyadicMotifs> acc{};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto d = dyad_probabilities(e, i, j);
            acc[0] += d.p_out + d.p_in;
            acc[1] += 2.0 * d.p_both;
            acc[2] += 2.0 * d.p_empty;
        }
    }
    return acc;
}

std::array<double, kDyadicMotifs> dyadic_variances(const FittedEnsemble& e) {
    const int n = e.n;
    std::array<double, kDyadicMotifs> acc{};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto d = dyad_probabilities(e, i, j);
            const double ps = d.p_out + d.p_in;
            acc[0] += ps * (1.0 - ps);
            acc[1] += 4.0 * d.p_both * (1.0 - d.p_both);
            acc[2] += 4.0 * d.p_empty * (1.0 - d.p_empty);
        }
    }
    return acc;
}

double drg_closed_form_expected(int n, double p, MotifId m) {
    const double q = 1.0 - p;
    if (m.triadic) {
        const auto& tc = MotifCatalog::instance().motif(m.index);
        return static_cast<double>(n) * (n - 1) * (n - 2) *
               std::pow(p, tc.edges) * std::pow(q, 6 - tc.edges);
    }
    const double pairs = static_cast<double>(n) * (n - 1);
    switch (m.index) {
        case 1: return pairs * p * q;
        case 2: return pairs * p * p;
        case 3: return pairs * q * q;
    }
    throw std::invalid_argument("drg_closed_form_expected: bad motif");
}

double expected_motif(const FittedEnsemble& e, MotifId m) {
    if (e.kind == ModelKind::DRG) return drg_closed_form_expected(e.n, e.p, m);
    if (m.triadic) return expected_triads(e)[m.index - 1];
    return expected_dyadic(e)[m.index - 1];
}

double motif_variance(const FittedEnsemble& e, MotifId m) {
    if (m.triadic) return triad_variances(e)[m.index - 1];
    return dyadic_variances(e)[m.index - 1];
}

double z_score(const DirectedGraph& g, const FittedEnsemble& e, MotifId m) {
    const double sd = std::sqrt(motif_variance(e, m));
    if (sd == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (static_cast<double>(count_motif(g, m)) - expected_motif(e, m)) / sd;
}

std::array<double, 13> significance_profile(const std::array<double, 13>& z,
                                            bool* all_zero) {
    std::array<double, 13> sp{};
    double norm2 = 0.0;
    for (int m = 0; m < 13; ++m) {
        const double v = std::isfinite(z[m]) ? z[m] : 0.0;
        sp[m] = v;
        norm2 += v * v;
    }
    if (norm2 == 0.0) {
        if (all_zero) *all_zero = true;
        return sp;
    }
    if (all_zero) *all_zero = false;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : sp) v *= inv;
    return sp;
}

std::vector<MotifStats> motif_stats(const DirectedGraph& g, const FittedEnsemble& e) {
    if (g.n() != e.n) throw std::invalid_argument("motif_stats: size mismatch");
    const auto& cat = MotifCatalog::instance();
    const auto census = full_triad_census(g);
    const auto exp_t = expected_triads(e);
    const auto var_t = triad_variances(e);
    const auto exp_d = expected_dyadic(e);
    const auto var_d = dyadic_variances(e);

    std::vector<MotifStats> out;
    out.reserve(16);
    std::array<double, 13> zvec{};
    auto make = [](MotifId id, double obs, double exp, double var) {
        MotifStats s;
        s.motif = id;
        s.observed = obs;
        s.expected = exp;
        s.std_dev = std::sqrt(std::max(var, 0.0));
        if (s.std_dev > 0.0) {
            s.z = (obs - exp) / s.std_dev;
        } else {
            s.z = std::numeric_limits<double>::quiet_NaN();
            s.z_defined = false;
        }
        return s;
    };
    for (int i = 1; i <= 3; ++i)
        out.push_back(make(MotifId::dyadic(i),
                           static_cast<double>(count_motif(g, MotifId::dyadic(i))),
                           exp_d[i - 1], var_d[i - 1]));
    for (int m = 1; m <= 13; ++m) {
        const double obs =
            static_cast<double>(census[m - 1]) * cat.motif(m).automorphisms;
        auto s = make(MotifId::triad(m), obs, exp_t[m - 1], var_t[m - 1]);
        zvec[m - 1] = s.z_defined ? s.z : std::numeric_limits<double>::quiet_NaN();
        out.push_back(s);
    }
    const auto sp = significance_profile(zvec);
    for (int m = 1; m <= 13; ++m) out[2 + m].sp = sp[m - 1];
    return out;
}

}  // namespace nullnet
