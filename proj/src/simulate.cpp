#include "ldmcache/simulate.hpp"

#include <algorithm>

#include <json.hpp>

#include "ldmcache/dtb.hpp"

namespace ldmcache {

using nlohmann::json;

Files random_files(int file_count, int file_size, std::mt19937& rng) {
    Files files(file_count, std::vector<uint8_t>(file_size));
    for (auto& file : files)
        for (auto& bit : file) bit = static_cast<uint8_t>(rng() & 1);
    return files;
}

bool Transcript::consistent() const {
    for (int t = 0; t < uses(); ++t) {
        if (yr[t] != downshift(xs[t], n.ns)) return false;
        if (yu[t] != superpose(downshift(xs[t], n.nd), downshift(xr[t], n.nr))) return false;
    }
    return true;
}

std::string Transcript::to_json(int indent) const {
    json j;
    j["n"] = {{"nd", n.nd}, {"nr", n.nr}, {"ns", n.ns}};
    j["q"] = n.word_size();
    j["T"] = uses();
    j["demand"] = {demand.first, demand.second};
    json files_json = json::array();
    for (const auto& file : files) {
        std::string bits(file.size(), '0');
        for (std::size_t i = 0; i < file.size(); ++i)
            if (file[i]) bits[i] = '1';
        files_json.push_back(bits);
    }
    j["files"] = std::move(files_json);
    auto emit = [](const std::vector<LevelWord>& words) {
        json arr = json::array();
        for (const auto& w : words) arr.push_back(w.to_string());
        return arr;
    };
    j["x_s"] = emit(xs);
    j["x_r"] = emit(xr);
    j["y_r"] = emit(yr);
    j["y_u"] = emit(yu);
    return indent < 0 ? j.dump() : j.dump(indent);
}

namespace {

int demand_file(Demand d, Role role) { return role == Role::RnDemand ? d.first : d.second; }

}  // namespace

Transcript simulate_delivery(const LinearScheme& scheme, const Files& files, Demand demand) {
    scheme.validate();
    if (files.size() < 2 && demand.first != demand.second)
        throw std::invalid_argument("simulate_delivery: need two files for distinct demands");
    const int file_count = static_cast<int>(files.size());
    if (demand.first < 0 || demand.first >= file_count || demand.second < 0 ||
        demand.second >= file_count)
        throw std::invalid_argument("simulate_delivery: demand outside the library");
    for (const auto& file : files)
        if (static_cast<int>(file.size()) != scheme.file_size)
            throw std::invalid_argument("simulate_delivery: file size mismatch");

    const int q = scheme.word_size();
    Transcript tr{scheme.n, demand, files, {}, {}, {}, {}};
    for (int t = 0; t < scheme.uses; ++t) {
        LevelWord xs_t(q);
        for (int lvl = 0; lvl < q; ++lvl) {
            bool v = false;
            for (const auto& ref : scheme.denb[t][lvl])
                v ^= files[demand_file(demand, ref.role)][ref.bit] != 0;
            xs_t.set(lvl, v);
        }
        LevelWord xr_t(q);
        for (int lvl = 0; lvl < q; ++lvl) {
            bool v = false;
            for (const auto& term : scheme.rn[t][lvl]) {
                if (term.kind == RnTerm::Kind::Cache) {
                    v ^= files[demand_file(demand, term.cache.role)][term.cache.bit] != 0;
                } else {
                    if (term.received.use >= t)
                        throw CausalityError("simulate_delivery: relay reads its own future");
                    v ^= tr.yr[term.received.use].get(term.received.level);
                }
            }
            xr_t.set(lvl, v);
        }
        tr.xs.push_back(xs_t);
        tr.xr.push_back(xr_t);
        tr.yr.push_back(downshift(xs_t, scheme.n.ns));
        tr.yu.push_back(superpose(downshift(xs_t, scheme.n.nd), downshift(xr_t, scheme.n.nr)));
    }
    return tr;
}

namespace {

using PackedRow = std::vector<uint64_t>;

struct RowBuilder {
    int cols;
    int words;

    explicit RowBuilder(int cols_) : cols(cols_), words((cols_ + 63) / 64) {}

    PackedRow zero() const { return PackedRow(words, 0); }
    void flip(PackedRow& row, int col) const { row[col >> 6] ^= uint64_t{1} << (col & 63); }
    void accumulate(PackedRow& row, const PackedRow& other) const {
        for (int w = 0; w < words; ++w) row[w] ^= other[w];
    }
};

/// The scheme unrolled into linear maps from file-bit unknowns to every
/// signal level. With distinct demands the unknowns are the 2L bits of the
/// two requested files; with equal demands both roles share one L-bit block.
struct SymbolicDelivery {
    int cols = 0;
    std::vector<PackedRow> yu_flat;                  // uses * q rows, use-major
    std::vector<PackedRow> yr_flat;                  // uses * q rows, use-major
    std::vector<std::pair<Role, int>> cache_rows;    // relay side information
    std::vector<int> rn_demand_cols, ue_demand_cols;
};

int unknown_col(Demand d, int file_size, Role role, int bit) {
    if (d.first == d.second) return bit;
    return role == Role::RnDemand ? bit : file_size + bit;
}

SymbolicDelivery build_symbolic(const LinearScheme& scheme, Demand d) {
    const int q = scheme.word_size();
    const int L = scheme.file_size;
    SymbolicDelivery sym;
    sym.cols = d.first == d.second ? L : 2 * L;
    RowBuilder rb(sym.cols);

    std::vector<std::vector<PackedRow>> xs(scheme.uses), yr(scheme.uses);
    for (int t = 0; t < scheme.uses; ++t) {
        xs[t].assign(q, rb.zero());
        for (int lvl = 0; lvl < q; ++lvl)
            for (const auto& ref : scheme.denb[t][lvl])
                rb.flip(xs[t][lvl], unknown_col(d, L, ref.role, ref.bit));
        yr[t].assign(q, rb.zero());
        for (int pos = q - scheme.n.ns; pos < q; ++pos)
            yr[t][pos] = xs[t][pos - (q - scheme.n.ns)];

        std::vector<PackedRow> xr(q, rb.zero());
        for (int lvl = 0; lvl < q; ++lvl) {
            for (const auto& term : scheme.rn[t][lvl]) {
                if (term.kind == RnTerm::Kind::Cache)
                    rb.flip(xr[lvl], unknown_col(d, L, term.cache.role, term.cache.bit));
                else if (term.received.use < t)
                    rb.accumulate(xr[lvl], yr[term.received.use][term.received.level]);
                else
                    throw CausalityError("build_symbolic: relay reads its own future");
            }
        }
        for (int pos = 0; pos < q; ++pos) {
            PackedRow row = rb.zero();
            if (pos >= q - scheme.n.nd) rb.accumulate(row, xs[t][pos - (q - scheme.n.nd)]);
            if (pos >= q - scheme.n.nr) rb.accumulate(row, xr[pos - (q - scheme.n.nr)]);
            sym.yu_flat.push_back(std::move(row));
        }
        for (int pos = 0; pos < q; ++pos) sym.yr_flat.push_back(yr[t][pos]);
    }

    for (int pos : scheme.placement.cached) sym.cache_rows.emplace_back(Role::RnDemand, pos);
    for (int pos : scheme.placement.cached) sym.cache_rows.emplace_back(Role::UeDemand, pos);
    for (int bit = 0; bit < L; ++bit) {
        sym.rn_demand_cols.push_back(unknown_col(d, L, Role::RnDemand, bit));
        sym.ue_demand_cols.push_back(unknown_col(d, L, Role::UeDemand, bit));
    }
    return sym;
}

Gf2Matrix to_matrix(const std::vector<PackedRow>& rows, int cols) {
    Gf2Matrix m(static_cast<int>(rows.size()), cols);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        for (int c = 0; c < cols; ++c)
            if (rows[r][c >> 6] >> (c & 63) & 1) m.set(r, c, true);
    }
    return m;
}

LinearSystem ue_system(const SymbolicDelivery& sym) {
    return LinearSystem(to_matrix(sym.yu_flat, sym.cols));
}

LinearSystem rn_system(const LinearScheme& scheme, const SymbolicDelivery& sym, Demand d) {
    std::vector<PackedRow> rows = sym.yr_flat;
    RowBuilder rb(sym.cols);
    for (const auto& [role, pos] : sym.cache_rows) {
        PackedRow row = rb.zero();
        rb.flip(row, unknown_col(d, scheme.file_size, role, pos));
        rows.push_back(std::move(row));
    }
    return LinearSystem(to_matrix(rows, sym.cols));
}

bool all_determined(const LinearSystem& sys, const std::vector<int>& cols) {
    return std::all_of(cols.begin(), cols.end(), [&](int c) { return sys.determines(c); });
}

DemandResult demand_decodable(const LinearScheme& scheme, Demand d) {
    const SymbolicDelivery sym = build_symbolic(scheme, d);
    DemandResult res;
    res.ue_ok = all_determined(ue_system(sym), sym.ue_demand_cols);
    res.rn_ok = all_determined(rn_system(scheme, sym, d), sym.rn_demand_cols);
    return res;
}

/// Oracle hot path: demands (0,0) and (0,1) decide all of [N]^2 for N = 2,
/// since relabeling files permutes unknown blocks without changing ranks.
bool decodable_for_all_demands_fast(const LinearScheme& scheme) {
    for (const Demand& d : {Demand{0, 0}, Demand{0, 1}}) {
        const DemandResult res = demand_decodable(scheme, d);
        if (!res.rn_ok || !res.ue_ok) return false;
    }
    return true;
}

}  // namespace

VerificationReport check_decodability(const LinearScheme& scheme, int file_count) {
    scheme.validate();
    if (file_count < 2)
        throw std::invalid_argument("check_decodability: need at least two files");
    VerificationReport report;
    report.achieved_dtb = scheme.dtb();
    report.lower_bound = dtb_lower_bound(scheme.mu(), scheme.n);
    report.optimal = dtb_optimal(scheme.mu(), scheme.n).optimal;
    report.all_ok = true;
    for (int i = 0; i < file_count; ++i) {
        for (int j = 0; j < file_count; ++j) {
            const Demand d{i, j};
            const DemandResult res = demand_decodable(scheme, d);
            report.all_ok = report.all_ok && res.rn_ok && res.ue_ok;
            report.decode[d] = res;
        }
    }
    if (scheme.n.ns >= scheme.n.nd) {
        std::mt19937 rng(2024);
        bool ok = true;
        for (int i = 0; i < file_count && ok; ++i) {
            for (int j = 0; j < file_count && ok; ++j) {
                const Files files = random_files(file_count, scheme.file_size, rng);
                ok = recursive_reconstruct(scheme, files, Demand{i, j}).success;
            }
        }
        report.recursion_ok = ok;
    }
    return report;
}

std::optional<DecodedFiles> decode_transcript(const LinearScheme& scheme,
                                              const Transcript& transcript) {
    const SymbolicDelivery sym = build_symbolic(scheme, transcript.demand);
    const int q = scheme.word_size();

    std::vector<uint8_t> ue_rhs;
    ue_rhs.reserve(sym.yu_flat.size());
    for (int t = 0; t < scheme.uses; ++t)
        for (int pos = 0; pos < q; ++pos) ue_rhs.push_back(transcript.yu[t].get(pos) ? 1 : 0);
    std::vector<uint8_t> rn_rhs;
    rn_rhs.reserve(sym.yr_flat.size() + sym.cache_rows.size());
    for (int t = 0; t < scheme.uses; ++t)
        for (int pos = 0; pos < q; ++pos) rn_rhs.push_back(transcript.yr[t].get(pos) ? 1 : 0);
    for (const auto& [role, pos] : sym.cache_rows)
        rn_rhs.push_back(transcript.files[demand_file(transcript.demand, role)][pos]);

    const LinearSystem ue = ue_system(sym);
    const LinearSystem rn = rn_system(scheme, sym, transcript.demand);
    DecodedFiles out;
    out.ue_file.resize(scheme.file_size);
    out.rn_file.resize(scheme.file_size);
    for (int bit = 0; bit < scheme.file_size; ++bit) {
        const auto u = ue.decode(sym.ue_demand_cols[bit], ue_rhs);
        const auto r = rn.decode(sym.rn_demand_cols[bit], rn_rhs);
        if (!u || !r) return std::nullopt;
        out.ue_file[bit] = *u ? 1 : 0;
        out.rn_file[bit] = *r ? 1 : 0;
    }
    return out;
}

ReconstructionResult recursive_reconstruct(const LinearScheme& scheme, const Files& files,
                                           Demand demand) {
    if (scheme.n.ns < scheme.n.nd)
        throw NotApplicable("recursive_reconstruct: requires ns >= nd, channel " +
                            scheme.n.str());
    const int q = scheme.word_size();
    const Transcript truth = simulate_delivery(scheme, files, demand);

    ReconstructionResult result;
    // Step one of the argument: the UE word alone pins down the UE file,
    // hence the cached part of it.
    const SymbolicDelivery sym = build_symbolic(scheme, demand);
    const LinearSystem ue = ue_system(sym);
    std::vector<uint8_t> ue_rhs;
    for (int t = 0; t < scheme.uses; ++t)
        for (int pos = 0; pos < q; ++pos) ue_rhs.push_back(truth.yu[t].get(pos) ? 1 : 0);
    std::vector<uint8_t> ue_file(scheme.file_size);
    for (int bit = 0; bit < scheme.file_size; ++bit) {
        const auto v = ue.decode(sym.ue_demand_cols[bit], ue_rhs);
        if (!v) return result;  // not decodable, reconstruction impossible
        ue_file[bit] = *v ? 1 : 0;
    }
    const std::vector<uint8_t>& rn_cache_source = files[demand.first];  // given side information

    auto cache_value = [&](const FileBitRef& ref) -> bool {
        return ref.role == Role::RnDemand ? rn_cache_source[ref.bit] != 0
                                          : ue_file[ref.bit] != 0;
    };

    // Replay the relay use by use: its inputs at use t are the caches plus
    // receptions already rebuilt in earlier steps.
    std::vector<LevelWord> yr_rec;
    for (int t = 0; t < scheme.uses; ++t) {
        LevelWord xr_t(q);
        for (int lvl = 0; lvl < q; ++lvl) {
            bool v = false;
            for (const auto& term : scheme.rn[t][lvl]) {
                if (term.kind == RnTerm::Kind::Cache)
                    v ^= cache_value(term.cache);
                else
                    v ^= yr_rec[term.received.use].get(term.received.level);
            }
            xr_t.set(lvl, v);
        }
        // Peel the relay's contribution off the UE word to expose the top
        // nd source levels, then splice in the given slice below them.
        const LevelWord direct_part = superpose(truth.yu[t], downshift(xr_t, scheme.n.nr));
        LevelWord xs_rec(q);
        for (int j = 0; j < scheme.n.nd; ++j) xs_rec.set(j, direct_part.get(q - scheme.n.nd + j));
        for (int j = scheme.n.nd; j < scheme.n.ns; ++j) xs_rec.set(j, truth.xs[t].get(j));
        yr_rec.push_back(downshift(xs_rec, scheme.n.ns));
    }

    result.reconstructed_yr = yr_rec;
    result.success = std::equal(yr_rec.begin(), yr_rec.end(), truth.yr.begin(), truth.yr.end());
    return result;
}

namespace {

/// Depth-first enumeration of the restricted scheme family, lexicographic
/// with silence first, stopping at the first decodable policy.
struct OracleSearch {
    ChannelTriple n;
    int q, uses, file_size, cached, uncached;
    int denb_levels;  // levels visible to at least one receiver
    long long& nodes;  // shared across the whole search call
    long long node_budget;
    LinearScheme scheme;

    OracleSearch(const ChannelTriple& n_, int uses_, int file_size_, Placement placement,
                 long long& nodes_, long long budget)
        : n(n_),
          q(n_.word_size()),
          uses(uses_),
          file_size(file_size_),
          cached(placement.cached_count()),
          uncached(file_size_ - placement.cached_count()),
          denb_levels(std::min(q, std::max(n_.nd, n_.ns))),
          nodes(nodes_),
          node_budget(budget),
          scheme(n_, uses_, file_size_, std::move(placement)) {}

    void tick(long long cost = 1) {
        nodes += cost;
        if (nodes > node_budget)
            throw SearchBudgetExceeded("brute_force_search: enumeration budget exhausted");
    }

    bool run() { return denb_dfs(0, 0, 0); }

    bool denb_dfs(int slot, int used_r, int used_u) {
        tick();
        const int total = uses * denb_levels;
        if (slot == total) {
            if (used_r < uncached || used_u < uncached) return false;
            return rn_dfs(0, 0, 0);
        }
        const int remaining = total - slot;
        const int needed = (uncached - used_r) + (uncached - used_u);
        if (remaining < needed) return false;
        const int t = slot / denb_levels, lvl = slot % denb_levels;
        if (remaining > needed) {
            if (denb_dfs(slot + 1, used_r, used_u)) return true;  // silence
        }
        if (used_r < uncached) {
            scheme.denb[t][lvl] = {FileBitRef{Role::RnDemand, used_r}};
            if (denb_dfs(slot + 1, used_r + 1, used_u)) return true;
            scheme.denb[t][lvl].clear();
        }
        if (used_u < uncached) {
            scheme.denb[t][lvl] = {FileBitRef{Role::UeDemand, used_u}};
            if (denb_dfs(slot + 1, used_r, used_u + 1)) return true;
            scheme.denb[t][lvl].clear();
        }
        return false;
    }

    bool rn_dfs(int slot, int used_cr, int used_cu) {
        tick();
        const int total = uses * n.nr;
        if (slot == total) {
            tick(64);  // a rank check costs far more than a tree step
            return decodable_for_all_demands_fast(scheme);
        }
        const int t = slot / n.nr, lvl = slot % n.nr;
        if (rn_dfs(slot + 1, used_cr, used_cu)) return true;  // silence
        if (used_cr < cached) {
            scheme.rn[t][lvl] = {RnTerm::from_cache(Role::RnDemand, uncached + used_cr)};
            if (rn_dfs(slot + 1, used_cr + 1, used_cu)) return true;
            scheme.rn[t][lvl].clear();
        }
        if (used_cu < cached) {
            scheme.rn[t][lvl] = {RnTerm::from_cache(Role::UeDemand, uncached + used_cu)};
            if (rn_dfs(slot + 1, used_cr, used_cu + 1)) return true;
            scheme.rn[t][lvl].clear();
        }
        for (int past = 0; past < t; ++past) {
            for (int pos = q - n.ns; pos < q; ++pos) {
                // Forwarding a level that is known zero is just silence again.
                if (scheme.denb[past][pos - (q - n.ns)].empty()) continue;
                scheme.rn[t][lvl] = {RnTerm::from_received(past, pos)};
                if (rn_dfs(slot + 1, used_cr, used_cu)) return true;
                scheme.rn[t][lvl].clear();
            }
        }
        return false;
    }
};

}  // namespace

std::optional<SearchResult> brute_force_search(const ChannelTriple& n, const Rational& mu,
                                               int max_file_size, int max_uses) {
    if (mu < Rational(0) || mu > Rational(1))
        throw InvalidCacheFraction("brute_force_search: mu must lie in [0, 1]");
    const int max_component = std::max({n.nd, n.nr, n.ns});
    if (max_component > 5 || max_uses < 1 || max_uses > 2 || max_file_size < 1 ||
        max_file_size > 8)
        throw SearchBudgetExceeded(
            "brute_force_search: supported budget is components <= 5, T <= 2, L <= 8");

    constexpr long long kNodeBudget = 5'000'000;
    long long nodes = 0;
    std::optional<SearchResult> best;
    for (int uses = 1; uses <= max_uses; ++uses) {
        const int cap = std::min(max_file_size, uses * std::max(n.nd, n.nr));
        for (int L = cap; L >= 1; --L) {
            const Rational cached_bits = mu * Rational(L);
            if (!cached_bits.is_integer()) continue;
            const int cached = static_cast<int>(cached_bits.num());
            const int uncached = L - cached;
            if (2 * uncached > uses * std::max(n.nd, n.ns)) continue;  // source slots
            if (uncached > uses * n.ns) continue;                      // relay reachability
            OracleSearch search(n, uses, L, make_placement(2, L, mu), nodes, kNodeBudget);
            if (!search.run()) continue;
            const Rational dtb(uses, L);
            if (!best || dtb < best->dtb)
                best = SearchResult{L, uses, dtb, std::move(search.scheme)};
            break;  // first hit is the largest feasible L for this T
        }
    }
    return best;
}

}  // namespace ldmcache
