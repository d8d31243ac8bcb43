#include "compactor/compactorfile.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "compactor/errors.hpp"

namespace compactor {

namespace {

std::string encode_state(const ProblemAlgebra& alg, const AlgebraState& s) {
    std::string out = "b";
    bool first = true;
    for (int i = 0; i < 32; ++i)
        if ((s.ann >> i) & 1u) {
            if (!first) out += ',';
            out += std::to_string(i + 1);
            first = false;
        }
    if (first) out += '-';
    out += ';';
    out += alg.encode_payload(s);
    return out;
}

AlgebraState decode_state(const ProblemAlgebra& alg, const std::string& text, long line_no) {
    if (text.size() < 2 || text[0] != 'b') throw parse_error("bad state encoding", line_no);
    auto sep = text.find(';');
    if (sep == std::string::npos) throw parse_error("bad state encoding", line_no);
    uint32_t ann = 0;
    std::string list = text.substr(1, sep - 1);
    if (list != "-") {
        std::istringstream ls(list);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            if (tok.empty()) throw parse_error("bad annotation index", line_no);
            for (char c : tok)
                if (c < '0' || c > '9') throw parse_error("bad annotation index", line_no);
            int idx = std::stoi(tok);
            if (idx < 1 || idx > 32) throw parse_error("annotation index out of range", line_no);
            ann |= 1u << (idx - 1);
        }
    }
    auto payload = alg.decode_payload(text.substr(sep + 1));
    if (!payload) throw parse_error("bad state payload", line_no);
    return {ann, *payload};
}

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace

CompactorFile condense(const Graph& g, int k, const ProblemAlgebra& alg,
                       const PipelineOptions& opt, CondenseReport* report) {
    if (k < 0) throw domain_error("condense: negative k");

    CompactorFile f;
    f.problem = alg.name();
    f.k = k;

    PipelineStats stats;
    auto outcome = full_pipeline_decomposition(g, k, alg, opt, &stats);
    if (std::holds_alternative<NullReport>(outcome)) {
        f.null_file = true;
        if (report) *report = CondenseReport{};
        return f;
    }
    const ProtrusionDecomposition& pd = std::get<ProtrusionDecomposition>(outcome);

    // center vertices renamed to 1..n0 in label order
    auto index_of = [&](vertex_t v) {
        auto it = std::lower_bound(pd.center.begin(), pd.center.end(), v);
        return static_cast<int>(it - pd.center.begin()) + 1;
    };
    f.center_n = static_cast<int>(pd.center.size());
    Graph center_graph = g.induced(pd.center);
    for (auto [u, v] : center_graph.edges()) f.center_edges.emplace_back(index_of(u), index_of(v));
    std::sort(f.center_edges.begin(), f.center_edges.end());

    int max_states = 0;
    long stored = 0;
    for (size_t i = 0; i < pd.protrusions.size(); ++i) {
        const BGraph& prot = pd.protrusions[i];
        std::vector<int> bnd;
        for (vertex_t v : prot.boundary) bnd.push_back(index_of(v));
        f.boundaries.push_back(std::move(bnd));

        NiceTreeDecomposition nd = make_nice(pd.decompositions[i], prot.graph, prot.boundary);
        CountTable tbl = count_table(prot, nd, alg, k);
        std::vector<TableEntry> entries;
        for (const auto& [state, vec] : tbl.counts)
            for (int kp = 0; kp <= k; ++kp)
                if (!vec[kp].is_zero()) entries.push_back({state, kp, vec[kp]});
        max_states = std::max(max_states, static_cast<int>(tbl.counts.size()));
        stored += static_cast<long>(entries.size());
        f.tables.push_back(std::move(entries));
    }

    if (report) {
        report->pipeline = stats;
        report->pd_report = validate_protrusion_decomposition(g, pd);
        report->protrusion_count = static_cast<int>(pd.protrusions.size());
        report->alpha = pd.alpha;
        report->beta = pd.beta;
        report->gamma = pd.gamma;
        report->max_states_per_protrusion = max_states;
        report->stored_values = stored;
    }
    return f;
}

BigUInt extract(const CompactorFile& f) {
    if (f.null_file) return BigUInt();
    const ProblemAlgebra* alg = algebra_by_name(f.problem);
    if (!alg) throw parse_error("unknown problem '" + f.problem + "'");

    vset center_verts(f.center_n);
    for (int i = 0; i < f.center_n; ++i) center_verts[i] = i + 1;
    std::vector<std::pair<vertex_t, vertex_t>> ce;
    for (auto [u, v] : f.center_edges) ce.emplace_back(u, v);
    Graph center(center_verts, ce);

    size_t s = f.tables.size();
    std::vector<vset> boundaries(s);
    for (size_t i = 0; i < s; ++i)
        for (int idx : f.boundaries[i]) boundaries[i].push_back(idx);

    // per-protrusion count lookup
    std::vector<CountTable> tables(s);
    for (size_t i = 0; i < s; ++i) {
        tables[i].boundary = boundaries[i];
        tables[i].k_max = f.k;
        for (const TableEntry& e : f.tables[i]) {
            auto& vec = tables[i].counts[e.state];
            if (vec.empty()) vec.resize(f.k + 1);
            if (e.kprime <= f.k) vec[e.kprime] += e.count;
        }
    }

    BigUInt total;
    // subsets of the center of size <= k, lexicographic per size
    std::vector<AlgebraState> mapping(s);
    std::function<void(const vset&, int)> try_a0 = [&](const vset& a0, int rem) {
        // candidate states per protrusion: annotated boundary matches a0 and
        // the shifted polynomial is not identically zero
        std::vector<std::vector<const AlgebraState*>> cands(s);
        for (size_t i = 0; i < s; ++i) {
            uint32_t ann = boundary_index_mask(boundaries[i], a0);
            int shift = std::popcount(ann);
            for (const auto& [state, vec] : tables[i].counts) {
                if (state.ann != ann) continue;
                bool nonzero = false;
                for (int j = 0; j <= rem && j + shift <= f.k; ++j)
                    if (!vec[j + shift].is_zero()) {
                        nonzero = true;
                        break;
                    }
                if (nonzero) cands[i].push_back(&state);
            }
            if (cands[i].empty()) return;  // no mapping can contribute
        }
        std::function<void(size_t)> enumerate = [&](size_t i) {
            if (i == s) {
                if (!alg->combine(center, a0, boundaries, mapping)) return;
                std::vector<BigUInt> prod{BigUInt(1)};
                for (size_t j = 0; j < s; ++j) {
                    int shift = std::popcount(mapping[j].ann);
                    prod = poly_mul_truncated(
                        prod, table_polynomial(tables[j], mapping[j], shift, rem), rem);
                }
                if (static_cast<int>(prod.size()) > rem) total += prod[rem];
                return;
            }
            for (const AlgebraState* st : cands[i]) {
                mapping[i] = *st;
                enumerate(i + 1);
            }
        };
        enumerate(0);
    };

    for (int sz = 0; sz <= std::min(f.k, f.center_n); ++sz) {
        std::vector<int> idx(sz);
        for (int i = 0; i < sz; ++i) idx[i] = i;
        for (;;) {
            vset a0(sz);
            for (int i = 0; i < sz; ++i) a0[i] = center_verts[idx[i]];
            try_a0(a0, f.k - sz);
            int i = sz - 1;
            while (i >= 0 && idx[i] == f.center_n - sz + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return total;
}

std::string serialize(const CompactorFile& f) {
    const ProblemAlgebra* alg = algebra_by_name(f.problem);
    if (!alg) throw domain_error("serialize: unknown problem '" + f.problem + "'");
    std::ostringstream body;
    if (f.null_file) {
        body << "NULL\n";
    } else {
        body << "CENTER " << f.center_n << ' ' << f.center_edges.size() << '\n';
        for (auto [u, v] : f.center_edges) body << u << ' ' << v << '\n';
        body << "PROTRUSIONS " << f.tables.size() << '\n';
        for (size_t i = 0; i < f.tables.size(); ++i) {
            body << "B " << (i + 1);
            for (int idx : f.boundaries[i]) body << ' ' << idx;
            body << '\n';
            for (const TableEntry& e : f.tables[i])
                body << "ENTRY " << (i + 1) << ' ' << encode_state(*alg, e.state) << ' '
                     << e.kprime << ' ' << e.count.to_decimal() << '\n';
        }
    }
    std::string body_str = body.str();
    std::ostringstream out;
    out << "COMPACTOR v1 " << f.problem << " k=" << f.k << '\n';
    out << "CHECKSUM " << hex64(fnv1a64(body_str)) << '\n';
    out << body_str;
    return out.str();
}

CompactorFile deserialize(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string line;
    long line_no = 0;
    auto next_line = [&](bool required) {
        if (!std::getline(in, line)) {
            if (required) throw parse_error("unexpected end of file", line_no);
            return false;
        }
        ++line_no;
        return true;
    };

    next_line(true);
    std::istringstream h1(line);
    std::string magic, version, problem, kpart;
    if (!(h1 >> magic >> version >> problem >> kpart) || magic != "COMPACTOR")
        throw parse_error("bad header", 1);
    if (version != "v1") throw parse_error("unsupported version '" + version + "'", 1);
    const ProblemAlgebra* alg = algebra_by_name(problem);
    if (!alg) throw parse_error("unknown problem '" + problem + "'", 1);
    if (kpart.rfind("k=", 0) != 0) throw parse_error("bad header", 1);
    CompactorFile f;
    f.problem = problem;
    try {
        f.k = std::stoi(kpart.substr(2));
    } catch (...) {
        throw parse_error("bad k", 1);
    }
    if (f.k < 0) throw parse_error("bad k", 1);

    next_line(true);
    std::istringstream h2(line);
    std::string cs_tag, cs_hex;
    if (!(h2 >> cs_tag >> cs_hex) || cs_tag != "CHECKSUM" || cs_hex.size() != 16)
        throw parse_error("bad checksum line", 2);

    std::string rest;
    {
        std::ostringstream acc;
        acc << in.rdbuf();
        rest = acc.str();
    }
    if (hex64(fnv1a64(rest)) != cs_hex) throw parse_error("checksum mismatch");

    std::istringstream body(rest);
    auto body_line = [&](bool required) {
        if (!std::getline(body, line)) {
            if (required) throw parse_error("unexpected end of file", line_no);
            return false;
        }
        ++line_no;
        return true;
    };

    body_line(true);
    if (line == "NULL") {
        if (body_line(false)) throw parse_error("trailing content after NULL", line_no);
        f.null_file = true;
        return f;
    }
    {
        std::istringstream ls(line);
        std::string tag;
        int m0 = 0;
        if (!(ls >> tag >> f.center_n >> m0) || tag != "CENTER" || f.center_n < 0 || m0 < 0)
            throw parse_error("bad CENTER line", line_no);
        for (int e = 0; e < m0; ++e) {
            body_line(true);
            std::istringstream es(line);
            int u = 0, v = 0;
            if (!(es >> u >> v) || u < 1 || v < 1 || u >= v || v > f.center_n)
                throw parse_error("bad center edge", line_no);
            f.center_edges.emplace_back(u, v);
        }
    }
    body_line(true);
    int s = 0;
    {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag >> s) || tag != "PROTRUSIONS" || s < 0)
            throw parse_error("bad PROTRUSIONS line", line_no);
    }
    f.boundaries.resize(s);
    f.tables.resize(s);
    int seen = 0;
    while (body_line(false)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "B") {
            int i = 0;
            if (!(ls >> i) || i != seen + 1 || i > s) throw parse_error("bad B line", line_no);
            seen = i;
            int idx = 0, prev = 0;
            while (ls >> idx) {
                if (idx < 1 || idx > f.center_n || idx <= prev)
                    throw parse_error("bad boundary index", line_no);
                f.boundaries[i - 1].push_back(idx);
                prev = idx;
            }
        } else if (tag == "ENTRY") {
            int i = 0, kp = 0;
            std::string state_text, count_text;
            if (!(ls >> i >> state_text >> kp >> count_text) || i < 1 || i > seen || kp < 0 ||
                kp > f.k)
                throw parse_error("bad ENTRY line", line_no);
            TableEntry e;
            e.state = decode_state(*alg, state_text, line_no);
            e.kprime = kp;
            e.count = BigUInt::from_decimal(count_text);
            f.tables[i - 1].push_back(std::move(e));
        } else if (tag.empty()) {
            throw parse_error("blank line in body", line_no);
        } else {
            throw parse_error("unknown line tag '" + tag + "'", line_no);
        }
    }
    if (seen != s) throw parse_error("missing protrusion blocks");
    return f;
}

BigUInt count_end_to_end(const Graph& g, int k, const ProblemAlgebra& alg,
                         const PipelineOptions& opt) {
    return extract(condense(g, k, alg, opt));
}

}  // namespace compactor
