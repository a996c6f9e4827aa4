#include "qltc/weight_reduction.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "qltc/balance.h"
#include "qltc/zoo.h"

namespace qltc {

namespace {

std::vector<std::vector<size_t>> column_lists(const BitMatrix &m) { return m.transpose().sparse_rows(); }

CssCode with_stage(CssCode code, const CodeMeta &from, const std::string &stage) {
    code.meta.stages = from.stages;
    code.meta.stages.push_back(stage);
    return code;
}

// Heights for base elements whose l layered copies are rows v * l + k of m. Elements with a
// preassigned height keep it; the rest are placed greedily to keep the number of retained
// layered rows meeting any column small.
HeightChoice greedy_layer_heights(const BitMatrix &m, size_t base, size_t l, const std::vector<long> &fixed,
                                  size_t restarts, uint64_t seed, size_t &max_load) {
    std::vector<std::vector<std::vector<size_t>>> footprint(base, std::vector<std::vector<size_t>>(l));
    for (size_t v = 0; v < base; ++v) {
        for (size_t k = 0; k < l; ++k) {
            footprint[v][k] = m.row_support(v * l + k);
        }
    }
    std::mt19937_64 rng(seed);
    HeightChoice best;
    best.l = l;
    max_load = SIZE_MAX;
    std::vector<size_t> order(base);
    std::iota(order.begin(), order.end(), 0);
    for (size_t attempt = 0; attempt < std::max<size_t>(restarts, 1); ++attempt) {
        if (attempt > 0) {
            std::shuffle(order.begin(), order.end(), rng);
        }
        std::vector<size_t> load(m.cols(), 0);
        HeightChoice hc;
        hc.l = l;
        hc.height.assign(base, 0);
        for (size_t v = 0; v < base; ++v) {
            if (fixed[v] >= 0) {
                hc.height[v] = static_cast<size_t>(fixed[v]);
                for (size_t c : footprint[v][hc.height[v]]) {
                    ++load[c];
                }
            }
        }
        for (size_t v : order) {
            if (fixed[v] >= 0) {
                continue;
            }
            size_t pick = 0, pick_max = SIZE_MAX, pick_sum = SIZE_MAX;
            for (size_t k = 0; k < l; ++k) {
                size_t mx = 0, sum = 0;
                for (size_t c : footprint[v][k]) {
                    mx = std::max(mx, load[c] + 1);
                    sum += load[c];
                }
                if (mx < pick_max || (mx == pick_max && sum < pick_sum)) {
                    pick = k;
                    pick_max = mx;
                    pick_sum = sum;
                }
            }
            hc.height[v] = pick;
            for (size_t c : footprint[v][pick]) {
                ++load[c];
            }
        }
        size_t mx = load.empty() ? 0 : *std::max_element(load.begin(), load.end());
        if (mx < max_load) {
            max_load = mx;
            best = hc;
        }
    }
    return best;
}

size_t layered_load(const BitMatrix &m, const HeightChoice &hc) {
    std::vector<size_t> load(m.cols(), 0);
    for (size_t v = 0; v < hc.height.size(); ++v) {
        for (size_t c : m.row(v * hc.l + hc.height[v]).support()) {
            ++load[c];
        }
    }
    return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

// Keeps row v * l + height[v] of every base element (in base order), then every row past the
// layered block. A negative height keeps all layers of that element.
BitMatrix keep_heights(const BitMatrix &m, size_t base, size_t l, const std::vector<long> &height) {
    BitMatrix out(0, m.cols());
    for (size_t v = 0; v < base; ++v) {
        for (size_t k = 0; k < l; ++k) {
            if (height[v] < 0 || static_cast<size_t>(height[v]) == k) {
                out.append_row(m.row(v * l + k));
            }
        }
    }
    for (size_t r = base * l; r < m.rows(); ++r) {
        out.append_row(m.row(r));
    }
    return out;
}

}  // namespace

CssCode copying(const CssCode &code) {
    size_t q = code.h_x.max_column_weight();
    if (q == 0) {
        throw std::invalid_argument("copying: requires q_x >= 1");
    }
    size_t n = code.n();
    BitMatrix hx(0, n * q);
    std::vector<size_t> next_copy(n, 0);
    for (size_t r = 0; r < code.n_x(); ++r) {
        BitVector row(n * q);
        for (size_t a : code.h_x.row(r).support()) {
            row.set(a * q + next_copy[a]++);
        }
        hx.append_row(row);
    }
    for (size_t a = 0; a < n; ++a) {
        for (size_t j = 0; j + 1 < q; ++j) {
            hx.append_row(BitVector::from_support(n * q, {a * q + j, a * q + j + 1}));
        }
    }
    BitMatrix hz(code.n_z(), n * q);
    for (size_t r = 0; r < code.n_z(); ++r) {
        for (size_t a : code.h_z.row(r).support()) {
            for (size_t j = 0; j < q; ++j) {
                hz.set(r, a * q + j);
            }
        }
    }
    return with_stage(CssCode(hx, hz), code.meta, "copy");
}

CssCode gauging(const CssCode &code) {
    size_t n = code.n();
    size_t ancillas = 0;
    for (size_t r = 0; r < code.n_x(); ++r) {
        size_t w = code.h_x.row_weight(r);
        if (w > 3) {
            ancillas += w - 2;
        }
    }
    size_t total = n + ancillas;
    auto z_by_col = column_lists(code.h_z);
    BitMatrix hz(code.n_z(), total);
    for (size_t r = 0; r < code.n_z(); ++r) {
        for (size_t c : code.h_z.row(r).support()) {
            hz.set(r, c);
        }
    }
    BitMatrix hx(0, total);
    size_t next = n;
    for (size_t r = 0; r < code.n_x(); ++r) {
        auto q = code.h_x.row_support(r);
        size_t w = q.size();
        if (w <= 3) {
            hx.append_row(BitVector::from_support(total, q));
            continue;
        }
        size_t e0 = next;
        next += w - 2;
        // Chain element g_0 holds q_0, q_1; g_j (0 < j < w - 2) holds q_{j+1}; g_{w-2} holds q_{w-1}.
        // Ancilla e0 + j is shared by g_j and g_{j+1}.
        hx.append_row(BitVector::from_support(total, {q[0], q[1], e0}));
        for (size_t j = 1; j + 2 < w; ++j) {
            hx.append_row(BitVector::from_support(total, {e0 + j - 1, q[j + 1], e0 + j}));
        }
        hx.append_row(BitVector::from_support(total, {e0 + w - 3, q[w - 1]}));
        std::map<size_t, std::vector<size_t>> hits;
        for (size_t p = 0; p < w; ++p) {
            for (size_t z : z_by_col[q[p]]) {
                hits[z].push_back(p);
            }
        }
        for (const auto &[z, positions] : hits) {
            std::vector<uint8_t> odd(w - 1, 0);
            for (size_t p : positions) {
                odd[p == 0 ? 0 : p - 1] ^= 1;
            }
            uint8_t parity = 0;
            for (size_t j = 0; j + 2 < w; ++j) {
                parity ^= odd[j];
                if (parity) {
                    hz.set(z, e0 + j);
                }
            }
        }
    }
    return with_stage(CssCode(hx, hz), code.meta, "gauge");
}

CssCode thicken(const CssCode &code, size_t l) {
    if (l == 0) {
        throw std::invalid_argument("thicken: l must be positive");
    }
    CssCode out = distance_balance(code, ClassicalCode(repetition_pcm(l)));
    out.meta.stages = code.meta.stages;
    out.meta.stages.push_back("thicken");
    out.meta.thickening = ThickeningMeta{l, code.n_z()};
    return out;
}

HeightResult choose_heights(const CssCode &thickened, const HeightOptions &opts) {
    if (!thickened.meta.thickening) {
        throw std::invalid_argument("choose_heights: input carries no thickening metadata");
    }
    const ThickeningMeta tm = *thickened.meta.thickening;
    HeightResult res;
    std::vector<long> fixed(tm.base_rows, -1);
    switch (opts.strategy) {
        case HeightStrategy::Greedy:
            res.choice = greedy_layer_heights(thickened.h_z, tm.base_rows, tm.l, fixed, opts.restarts, opts.seed,
                                              res.max_load);
            break;
        case HeightStrategy::Random: {
            std::mt19937_64 rng(opts.seed);
            res.choice.l = tm.l;
            for (size_t v = 0; v < tm.base_rows; ++v) {
                res.choice.height.push_back(rng() % tm.l);
            }
            break;
        }
        case HeightStrategy::Explicit:
            res.choice = opts.explicit_choice;
            if (res.choice.l != tm.l || res.choice.height.size() != tm.base_rows) {
                throw std::invalid_argument("choose_heights: explicit choice does not match thickening");
            }
            for (size_t h : res.choice.height) {
                if (h >= tm.l) {
                    throw std::invalid_argument("choose_heights: height out of range");
                }
            }
            break;
    }
    res.max_load = layered_load(thickened.h_z, res.choice);
    res.target_met = res.max_load <= opts.target_load;
    std::vector<long> keep(res.choice.height.begin(), res.choice.height.end());
    BitMatrix hz = keep_heights(thickened.h_z, tm.base_rows, tm.l, keep);
    res.code = CssCode(thickened.h_x, hz);
    res.code.meta.stages = thickened.meta.stages;
    res.code.meta.stages.push_back("heights");
    return res;
}

ThickenHeightsResult thicken_and_choose_heights(const CssCode &code, size_t l, const HeightOptions &opts) {
    size_t lo = l ? l : 2;
    size_t hi = l ? l : std::max<size_t>(2, code.h_z.max_column_weight() * std::max<size_t>(code.h_z.max_row_weight(), 1) + 1);
    ThickenHeightsResult out;
    for (size_t cur = lo; cur <= hi; ++cur) {
        HeightResult hr = choose_heights(thicken(code, cur), opts);
        out.code = std::move(hr.code);
        out.l = cur;
        out.choice = hr.choice;
        out.max_load = hr.max_load;
        if (hr.target_met) {
            break;
        }
    }
    return out;
}

ReasonableCheck is_reasonable(const CssCode &code) {
    ReasonableCheck out;
    SpanBasis zspan(code.n());
    for (const auto &r : code.h_z.row_vectors()) {
        zspan.insert(r);
    }
    for (size_t i = 0; i < code.n_z(); ++i) {
        auto q = code.h_z.row_support(i);
        BitMatrix local = code.h_x.select_columns(q);
        for (const auto &v : rank_kernel(local).kernel_basis) {
            BitVector lifted(code.n());
            for (size_t j : v.support()) {
                lifted.set(q[j]);
            }
            if (!zspan.contains(lifted)) {
                out.reasonable = false;
                out.stabiliser = i;
                out.witness = lifted;
                return out;
            }
        }
    }
    return out;
}

namespace {

LocalComplex local_complex(const CssCode &code, const std::vector<std::vector<size_t>> &x_by_col, size_t i) {
    LocalComplex lc;
    lc.index = i;
    lc.qubits = code.h_z.row_support(i);
    std::map<size_t, std::vector<size_t>> overlaps;
    for (size_t v = 0; v < lc.qubits.size(); ++v) {
        for (size_t s : x_by_col[lc.qubits[v]]) {
            overlaps[s].push_back(v);
        }
    }
    for (const auto &[s, vs] : overlaps) {
        if (vs.size() % 2) {
            throw std::invalid_argument("build_local_complex: X-stabiliser meets Z-stabiliser oddly");
        }
        for (size_t p = 0; p < vs.size(); p += 2) {
            lc.pairs.push_back({s, vs[p], vs[p + 1]});
        }
    }
    size_t nv = lc.qubits.size();
    std::vector<std::vector<std::pair<size_t, size_t>>> adj(nv);
    for (size_t e = 0; e < lc.pairs.size(); ++e) {
        adj[lc.pairs[e].a].push_back({lc.pairs[e].b, e});
        adj[lc.pairs[e].b].push_back({lc.pairs[e].a, e});
    }
    std::vector<size_t> parent(nv, SIZE_MAX), parent_edge(nv, SIZE_MAX), depth(nv, 0);
    std::vector<bool> seen(nv, false), tree_edge(lc.pairs.size(), false);
    for (size_t root = 0; root < nv; ++root) {
        if (seen[root]) {
            continue;
        }
        ++lc.components;
        std::vector<size_t> queue{root};
        seen[root] = true;
        for (size_t h = 0; h < queue.size(); ++h) {
            size_t u = queue[h];
            for (auto [w, e] : adj[u]) {
                if (!seen[w]) {
                    seen[w] = true;
                    parent[w] = u;
                    parent_edge[w] = e;
                    depth[w] = depth[u] + 1;
                    tree_edge[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    for (size_t e = 0; e < lc.pairs.size(); ++e) {
        if (tree_edge[e]) {
            continue;
        }
        size_t a = lc.pairs[e].a, b = lc.pairs[e].b;
        std::vector<size_t> up_a{a}, up_b{b}, edges_a, edges_b;
        while (up_a.back() != up_b.back()) {
            if (depth[up_a.back()] >= depth[up_b.back()]) {
                edges_a.push_back(parent_edge[up_a.back()]);
                up_a.push_back(parent[up_a.back()]);
            } else {
                edges_b.push_back(parent_edge[up_b.back()]);
                up_b.push_back(parent[up_b.back()]);
            }
        }
        std::vector<size_t> vertices = up_a;
        for (size_t t = up_b.size() - 1; t-- > 0;) {
            vertices.push_back(up_b[t]);
        }
        std::vector<size_t> edges = edges_a;
        for (size_t t = edges_b.size(); t-- > 0;) {
            edges.push_back(edges_b[t]);
        }
        edges.push_back(e);
        lc.cycles.push_back(std::move(edges));
        lc.cycle_vertices.push_back(std::move(vertices));
    }
    return lc;
}

}  // namespace

LocalComplex build_local_complex(const CssCode &code, size_t i) {
    if (i >= code.n_z()) {
        throw std::out_of_range("build_local_complex: no such Z-stabiliser");
    }
    return local_complex(code, column_lists(code.h_x), i);
}

CssCode cone(const CssCode &code, ConeStats *stats) {
    ReasonableCheck rc = is_reasonable(code);
    if (!rc.reasonable) {
        throw std::invalid_argument("cone: code is not reasonable; Z-stabiliser " + std::to_string(rc.stabiliser) +
                                    " contains logical " + rc.witness->str());
    }
    auto x_by_col = column_lists(code.h_x);
    std::vector<LocalComplex> locals;
    size_t edge_total = 0;
    for (size_t i = 0; i < code.n_z(); ++i) {
        locals.push_back(local_complex(code, x_by_col, i));
        edge_total += locals.back().pairs.size();
    }
    size_t n = code.n();
    size_t total = n + edge_total;
    BitMatrix hz(0, total);
    BitMatrix hx(code.n_x(), total);
    for (size_t r = 0; r < code.n_x(); ++r) {
        for (size_t c : code.h_x.row(r).support()) {
            hx.set(r, c);
        }
    }
    ConeMeta meta;
    meta.base_qubits = n;
    meta.base_x_rows = code.n_x();
    meta.base_z_rows = code.n_z();
    meta.base_w_z = code.h_z.max_row_weight();
    meta.base_q_x = code.h_x.max_column_weight();
    ConeStats st;
    size_t edge_off = n;
    for (const auto &lc : locals) {
        size_t z_off = hz.rows();
        for (size_t v = 0; v < lc.qubits.size(); ++v) {
            BitVector row(total);
            row.set(lc.qubits[v]);
            hz.append_row(row);
        }
        for (size_t e = 0; e < lc.pairs.size(); ++e) {
            hz.set(z_off + lc.pairs[e].a, edge_off + e);
            hz.set(z_off + lc.pairs[e].b, edge_off + e);
            hx.set(lc.pairs[e].stabiliser, edge_off + e);
        }
        std::vector<size_t> multiplicity(lc.pairs.size(), 0);
        BitMatrix cyc(0, lc.pairs.size());
        for (size_t c = 0; c < lc.cycles.size(); ++c) {
            ConeDisc disc;
            disc.x_row = hx.rows();
            BitVector row(total);
            for (size_t e : lc.cycles[c]) {
                row.set(edge_off + e);
                disc.edges.push_back(edge_off + e);
                ++multiplicity[e];
            }
            for (size_t v : lc.cycle_vertices[c]) {
                disc.vertices.push_back(z_off + v);
            }
            hx.append_row(row);
            cyc.append_row(BitVector::from_support(lc.pairs.size(), lc.cycles[c]));
            st.max_cycle_length = std::max(st.max_cycle_length, lc.cycles[c].size());
            st.total_cycle_weight += lc.cycles[c].size();
            meta.discs.push_back(std::move(disc));
        }
        for (size_t m : multiplicity) {
            st.max_edge_multiplicity = std::max(st.max_edge_multiplicity, m);
        }
        size_t expected = lc.pairs.size() + lc.components - lc.qubits.size();
        if (lc.cycles.size() != expected || rank(cyc) != expected) {
            st.rank_identity_holds = false;
        }
        ++st.local_complexes;
        st.total_pairs += lc.pairs.size();
        st.total_cycles += lc.cycles.size();
        edge_off += lc.pairs.size();
    }
    if (stats) {
        *stats = st;
    }
    CssCode out(hx, hz);
    out.meta.stages = code.meta.stages;
    out.meta.stages.push_back("cone");
    out.meta.cone = std::move(meta);
    return out;
}

std::vector<DiscFace> cellulate_disc(size_t w) {
    size_t J = w >= 2 ? (w - 2) / 2 : 0;
    std::vector<DiscFace> faces;
    if (J == 0) {
        DiscFace f;
        for (size_t t = 0; t < w; ++t) {
            f.boundary_edges.push_back(t);
        }
        faces.push_back(std::move(f));
        return faces;
    }
    faces.push_back({{0, w - 1}, {1}});
    for (size_t j = 1; j < J; ++j) {
        faces.push_back({{j, w - j - 1}, {j, j + 1}});
    }
    DiscFace last;
    for (size_t t = J; t <= w - J - 1; ++t) {
        last.boundary_edges.push_back(t);
    }
    last.chords.push_back(J);
    faces.push_back(std::move(last));
    return faces;
}

ReduceConeResult reduce_cone(const CssCode &cone_code, const ReduceConeOptions &opts) {
    if (!cone_code.meta.cone) {
        throw std::invalid_argument("reduce_cone: input carries no cone metadata");
    }
    const ConeMeta &cm = *cone_code.meta.cone;
    ReduceConeResult res;
    size_t nd = cm.discs.size();

    std::map<size_t, std::vector<size_t>> discs_at_vertex;
    for (size_t d = 0; d < nd; ++d) {
        for (size_t v : cm.discs[d].vertices) {
            discs_at_vertex[v].push_back(d);
        }
    }
    std::vector<size_t> colour(nd, 0);
    for (size_t d = 0; d < nd; ++d) {
        std::vector<bool> used(nd + 1, false);
        for (size_t v : cm.discs[d].vertices) {
            for (size_t o : discs_at_vertex[v]) {
                if (o < d) {
                    used[colour[o]] = true;
                }
            }
        }
        size_t c = 0;
        while (used[c]) {
            ++c;
        }
        colour[d] = c;
        res.colours_needed = std::max(res.colours_needed, c + 1);
    }
    double wz = static_cast<double>(std::max<size_t>(cm.base_w_z, 2));
    res.formula_palette = static_cast<size_t>(std::ceil(wz * static_cast<double>(cm.base_q_x) * std::log2(wz)));
    size_t l2 = opts.l2 ? opts.l2 : std::max<size_t>(2, res.colours_needed);
    while (l2 < res.colours_needed) {
        l2 *= 2;
        res.l2_increased = true;
    }
    res.l2 = l2;

    CssCode thick = dual(distance_balance(dual(cone_code), ClassicalCode(repetition_pcm(l2))));
    thick.meta.stages = cone_code.meta.stages;
    thick.meta.stages.push_back("dual-thicken");
    res.thickened = thick;

    size_t base_x = cone_code.n_x();
    std::vector<long> partial(base_x, -1);
    std::vector<long> disc_of_row(base_x, -1);
    for (size_t d = 0; d < nd; ++d) {
        partial[cm.discs[d].x_row] = static_cast<long>(colour[d]);
        disc_of_row[cm.discs[d].x_row] = static_cast<long>(d);
    }
    res.partial_heights = CssCode(keep_heights(thick.h_x, base_x, l2, partial), thick.h_z);
    res.partial_heights.meta.stages = thick.meta.stages;
    res.partial_heights.meta.stages.push_back("partial-heights");

    size_t full_load = 0;
    HeightChoice full = greedy_layer_heights(thick.h_x, base_x, l2, partial, 1, 0, full_load);
    std::vector<long> full_keep(full.height.begin(), full.height.end());
    res.full_heights = CssCode(keep_heights(thick.h_x, base_x, l2, full_keep), thick.h_z);
    res.full_heights.meta.stages = thick.meta.stages;
    res.full_heights.meta.stages.push_back("full-heights");

    size_t chords = 0;
    std::vector<std::vector<DiscFace>> faces(nd);
    for (size_t d = 0; d < nd; ++d) {
        faces[d] = cellulate_disc(cm.discs[d].edges.size());
        chords += faces[d].back().chords.empty() ? 0 : faces[d].back().chords.back();
    }
    res.chords = chords;
    size_t n0 = thick.n();
    size_t total = n0 + chords;
    BitMatrix hz(thick.n_z(), total);
    for (size_t r = 0; r < thick.n_z(); ++r) {
        for (size_t c : thick.h_z.row(r).support()) {
            hz.set(r, c);
        }
    }
    BitMatrix hx(0, total);
    std::vector<size_t> chord_base(nd, 0);
    for (size_t d = 0, next = n0; d < nd; ++d) {
        chord_base[d] = next;
        next += faces[d].back().chords.empty() ? 0 : faces[d].back().chords.back();
    }
    auto lift = [&](const BitVector &row) {
        BitVector out(total);
        for (size_t c : row.support()) {
            out.set(c);
        }
        return out;
    };
    for (size_t c = 0; c < base_x; ++c) {
        for (size_t k = 0; k < l2; ++k) {
            if (partial[c] >= 0 && static_cast<size_t>(partial[c]) != k) {
                continue;
            }
            if (disc_of_row[c] < 0) {
                hx.append_row(lift(thick.h_x.row(c * l2 + k)));
                continue;
            }
            size_t d = static_cast<size_t>(disc_of_row[c]);
            const ConeDisc &disc = cm.discs[d];
            size_t w = disc.edges.size();
            for (const auto &f : faces[d]) {
                BitVector row(total);
                for (size_t t : f.boundary_edges) {
                    row.set(disc.edges[t] * l2 + k);
                }
                for (size_t j : f.chords) {
                    row.set(chord_base[d] + j - 1);
                }
                hx.append_row(row);
            }
            for (size_t j = 1; j <= (faces[d].back().chords.empty() ? 0 : faces[d].back().chords.back()); ++j) {
                hz.set(disc.vertices[j] * l2 + k, chord_base[d] + j - 1);
                hz.set(disc.vertices[w - j] * l2 + k, chord_base[d] + j - 1);
            }
        }
    }
    for (size_t r = base_x * l2; r < thick.n_x(); ++r) {
        hx.append_row(lift(thick.h_x.row(r)));
    }
    res.code = CssCode(hx, hz);
    res.code.meta.stages = cone_code.meta.stages;
    res.code.meta.stages.push_back("reduce-cone");
    return res;
}

}  // namespace qltc
