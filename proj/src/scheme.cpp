#include "ldmcache/scheme.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <json.hpp>

#include "ldmcache/dtb.hpp"

namespace ldmcache {

using nlohmann::json;

bool Placement::is_cached(int bit) const {
    return std::binary_search(cached.begin(), cached.end(), bit);
}

Placement make_placement(int file_count, int file_size, const Rational& mu) {
    if (file_count < 1 || file_size < 1)
        throw std::invalid_argument("make_placement: need at least one file and one bit");
    if (mu < Rational(0) || mu > Rational(1))
        throw InvalidCacheFraction("make_placement: mu must lie in [0, 1]");
    const Rational bits = mu * Rational(file_size);
    if (!bits.is_integer())
        throw IndivisibleCache("make_placement: mu * L = " + bits.str() +
                               " is not an integer; scale L first");
    Placement p;
    p.file_count = file_count;
    p.file_size = file_size;
    const int cached = static_cast<int>(bits.num());
    p.cached.resize(cached);
    std::iota(p.cached.begin(), p.cached.end(), file_size - cached);
    return p;
}

LinearScheme::LinearScheme(const ChannelTriple& n_, int uses_, int file_size_,
                           Placement placement_)
    : n(n_), uses(uses_), file_size(file_size_), placement(std::move(placement_)) {
    if (uses < 1 || file_size < 1)
        throw std::invalid_argument("LinearScheme: uses and file size must be positive");
    denb.assign(uses, std::vector<DenbLevel>(word_size()));
    rn.assign(uses, std::vector<RnLevel>(word_size()));
}

void LinearScheme::validate() const {
    const int q = word_size();
    auto check_bit = [&](const FileBitRef& ref) {
        if (ref.bit < 0 || ref.bit >= file_size)
            throw std::invalid_argument("LinearScheme: file bit out of range");
    };
    for (int t = 0; t < uses; ++t) {
        for (int lvl = 0; lvl < q; ++lvl) {
            for (const auto& ref : denb[t][lvl]) check_bit(ref);
            for (const auto& term : rn[t][lvl]) {
                if (term.kind == RnTerm::Kind::Cache) {
                    check_bit(term.cache);
                    if (!placement.is_cached(term.cache.bit))
                        throw std::invalid_argument(
                            "LinearScheme: relay references an uncached bit");
                } else {
                    if (term.received.use >= t)
                        throw CausalityError(
                            "LinearScheme: relay encoder at use " + std::to_string(t) +
                            " references reception of use " + std::to_string(term.received.use));
                    if (term.received.use < 0 || term.received.level < 0 ||
                        term.received.level >= q)
                        throw std::invalid_argument("LinearScheme: received level out of range");
                }
            }
        }
    }
}

namespace {

json role_json(Role role) { return role == Role::RnDemand ? "rn" : "ue"; }

Role role_from_json(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "rn") return Role::RnDemand;
    if (s == "ue") return Role::UeDemand;
    throw std::invalid_argument("scheme json: unknown role '" + s + "'");
}

}  // namespace

std::string LinearScheme::to_json(int indent) const {
    json j;
    j["n"] = {{"nd", n.nd}, {"nr", n.nr}, {"ns", n.ns}};
    j["q"] = word_size();
    j["T"] = uses;
    j["L"] = file_size;
    j["N"] = placement.file_count;
    j["placement"] = {{"cached", placement.cached}};
    json denb_plan = json::array();
    for (const auto& levels : denb) {
        json per_use = json::array();
        for (const auto& terms : levels) {
            json lvl = json::array();
            for (const auto& ref : terms) lvl.push_back({{"role", role_json(ref.role)}, {"bit", ref.bit}});
            per_use.push_back(std::move(lvl));
        }
        denb_plan.push_back(std::move(per_use));
    }
    j["denb_plan"] = std::move(denb_plan);
    json rn_plan = json::array();
    for (const auto& levels : rn) {
        json per_use = json::array();
        for (const auto& terms : levels) {
            json lvl = json::array();
            for (const auto& term : terms) {
                if (term.kind == RnTerm::Kind::Cache)
                    lvl.push_back({{"cache", {{"role", role_json(term.cache.role)},
                                              {"bit", term.cache.bit}}}});
                else
                    lvl.push_back({{"rx", {{"use", term.received.use},
                                           {"level", term.received.level}}}});
            }
            per_use.push_back(std::move(lvl));
        }
        rn_plan.push_back(std::move(per_use));
    }
    j["rn_plan"] = std::move(rn_plan);
    return indent < 0 ? j.dump() : j.dump(indent);
}

LinearScheme LinearScheme::from_json(const std::string& text) {
    const json j = json::parse(text);
    const ChannelTriple n(j.at("n").at("nd").get<int>(), j.at("n").at("nr").get<int>(),
                          j.at("n").at("ns").get<int>());
    Placement placement;
    placement.file_count = j.at("N").get<int>();
    placement.file_size = j.at("L").get<int>();
    placement.cached = j.at("placement").at("cached").get<std::vector<int>>();
    LinearScheme scheme(n, j.at("T").get<int>(), j.at("L").get<int>(), std::move(placement));
    const auto& denb_plan = j.at("denb_plan");
    const auto& rn_plan = j.at("rn_plan");
    for (int t = 0; t < scheme.uses; ++t) {
        for (int lvl = 0; lvl < scheme.word_size(); ++lvl) {
            for (const auto& term : denb_plan.at(t).at(lvl))
                scheme.denb[t][lvl].push_back(
                    FileBitRef{role_from_json(term.at("role")), term.at("bit").get<int>()});
            for (const auto& term : rn_plan.at(t).at(lvl)) {
                if (term.contains("cache"))
                    scheme.rn[t][lvl].push_back(
                        RnTerm::from_cache(role_from_json(term.at("cache").at("role")),
                                           term.at("cache").at("bit").get<int>()));
                else
                    scheme.rn[t][lvl].push_back(
                        RnTerm::from_received(term.at("rx").at("use").get<int>(),
                                              term.at("rx").at("level").get<int>()));
            }
        }
    }
    scheme.validate();
    return scheme;
}

namespace {

// Bits each user must collect per pair of uses at the cache-free optimum.
int mu0_pair_rate(const ChannelTriple& n) {
    return std::min({std::max(n.nd, n.ns), 2 * n.ns, 2 * std::max(n.nd, n.nr)});
}

}  // namespace

LinearScheme build_scheme_mu0(const ChannelTriple& n, int file_size) {
    if (file_size < 1) throw std::invalid_argument("build_scheme_mu0: file size must be positive");
    const int q = n.word_size();
    const int m = mu0_pair_rate(n);
    const int surplus = n.nr > n.nd ? n.nr - n.nd : 0;  // relay levels the UE hears cleanly
    const long long L = file_size;

    // Cumulative per-user targets after t uses; the floor/ceil split keeps
    // every single use within the m-bit source budget.
    auto target_rn = [&](long long t) { return std::min<long long>(L, t * m / 2); };
    auto target_ue = [&](long long t) { return std::min<long long>(L, (t * m + 1) / 2); };

    struct Pending {
        int bit;       // UE-file bit index riding the relay pipe
        int yr_level;  // where it lands in y_r
    };

    std::vector<std::vector<DenbLevel>> denb_plan;
    std::vector<std::vector<RnLevel>> rn_plan;
    std::deque<Pending> pipe;
    long long sent_rn = 0, handled_ue = 0;

    for (long long t = 0; sent_rn < L || handled_ue < L || !pipe.empty(); ++t) {
        std::vector<DenbLevel> denb_use(q);
        std::vector<RnLevel> rn_use(q);

        // Forward last use's pipelined bits on the relay's clean top levels.
        const int fwd = static_cast<int>(std::min<long long>(static_cast<long long>(pipe.size()),
                                                             surplus));
        for (int i = 0; i < fwd; ++i) {
            rn_use[i].push_back(RnTerm::from_received(static_cast<int>(t) - 1,
                                                      pipe.front().yr_level));
            pipe.pop_front();
        }

        const int fresh = static_cast<int>(target_rn(t + 1) - sent_rn);
        const int ue_need = static_cast<int>(target_ue(t + 1) - handled_ue);
        const int direct = std::min(ue_need, n.nd);
        const int pipelined = ue_need - direct;
        if (pipelined > surplus)
            throw std::logic_error("build_scheme_mu0: schedule exceeds the relay's clean levels");

        if (n.nd >= n.ns) {
            // Relay-bound bits first so they stay within the serving window;
            // direct UE bits follow inside the UE window. Never pipelines.
            for (int i = 0; i < fresh; ++i)
                denb_use[i].push_back(FileBitRef{Role::RnDemand, static_cast<int>(sent_rn) + i});
            for (int i = 0; i < direct; ++i)
                denb_use[fresh + i].push_back(
                    FileBitRef{Role::UeDemand, static_cast<int>(handled_ue) + i});
        } else {
            for (int i = 0; i < direct; ++i)
                denb_use[i].push_back(FileBitRef{Role::UeDemand, static_cast<int>(handled_ue) + i});
            for (int i = 0; i < fresh; ++i)
                denb_use[direct + i].push_back(
                    FileBitRef{Role::RnDemand, static_cast<int>(sent_rn) + i});
            for (int i = 0; i < pipelined; ++i) {
                const int level = direct + fresh + i;
                const int bit = static_cast<int>(handled_ue) + direct + i;
                denb_use[level].push_back(FileBitRef{Role::UeDemand, bit});
                pipe.push_back(Pending{bit, q - n.ns + level});
            }
        }
        sent_rn += fresh;
        handled_ue += ue_need;
        denb_plan.push_back(std::move(denb_use));
        rn_plan.push_back(std::move(rn_use));
    }

    Placement placement;
    placement.file_count = 2;
    placement.file_size = file_size;
    LinearScheme scheme(n, static_cast<int>(denb_plan.size()), file_size, std::move(placement));
    scheme.denb = std::move(denb_plan);
    scheme.rn = std::move(rn_plan);
    scheme.validate();
    return scheme;
}

namespace {

void require_corner_regime(const ChannelTriple& n, const char* which) {
    // Non-strict membership: boundary channels whose tie-broken label is a
    // neighboring regime still satisfy the construction's inequalities.
    if (!regime_predicate(Regime::R31, n) || n.nr < n.ns)
        throw RegimeMismatch(std::string(which) + ": needs regime R31 with nr >= ns, channel " +
                             n.str() + " is " +
                             std::string(to_string(classify_regime(n).fine)));
}

SchemePoint finish_point(LinearScheme scheme) {
    scheme.validate();
    SchemePoint point{scheme.mu(), scheme.dtb(), std::move(scheme)};
    return point;
}

}  // namespace

SchemePoint build_corner_scheme_b(const ChannelTriple& n) {
    require_corner_regime(n, "build_corner_scheme_b");
    const int rounds = n.ns % 2 == 0 ? 1 : 2;
    const int uncached = rounds * n.ns / 2;           // per file, split across rounds
    const int cached = rounds * (n.nr - n.nd);
    const int L = uncached + cached;
    Placement placement;
    placement.file_count = 2;
    placement.file_size = L;
    placement.cached.resize(cached);
    std::iota(placement.cached.begin(), placement.cached.end(), uncached);

    LinearScheme scheme(n, rounds, L, std::move(placement));
    int ue_fresh = 0, rn_fresh = 0, ue_cached = uncached;
    for (int t = 0; t < rounds; ++t) {
        // Odd ns: the UE half leads with the extra bit, the RN half trails.
        const int ue_part = rounds == 1 ? n.ns / 2 : (t == 0 ? (n.ns + 1) / 2 : n.ns / 2);
        const int rn_part = n.ns - ue_part;
        for (int i = 0; i < ue_part; ++i)
            scheme.denb[t][i].push_back(FileBitRef{Role::UeDemand, ue_fresh++});
        for (int i = 0; i < rn_part; ++i)
            scheme.denb[t][ue_part + i].push_back(FileBitRef{Role::RnDemand, rn_fresh++});
        for (int i = 0; i < n.nr - n.nd; ++i)
            scheme.rn[t][i].push_back(RnTerm::from_cache(Role::UeDemand, ue_cached++));
    }
    return finish_point(std::move(scheme));
}

SchemePoint build_corner_scheme_c(const ChannelTriple& n) {
    require_corner_regime(n, "build_corner_scheme_c");
    const int L = n.nr;
    const int uncached = n.ns - n.nd;
    const int cached = L - uncached;  // nd + nr - ns
    Placement placement;
    placement.file_count = 2;
    placement.file_size = L;
    placement.cached.resize(cached);
    std::iota(placement.cached.begin(), placement.cached.end(), uncached);

    LinearScheme scheme(n, 1, L, std::move(placement));
    for (int i = 0; i < uncached; ++i)
        scheme.denb[0][i].push_back(FileBitRef{Role::UeDemand, i});
    for (int i = 0; i < uncached; ++i)
        scheme.denb[0][n.nd + i].push_back(FileBitRef{Role::RnDemand, i});
    // Cached UE bits ride the relay's clean top levels and the positions
    // aligned with the source's silent gap.
    int next = uncached;
    for (int i = 0; i < n.nr - n.nd; ++i)
        scheme.rn[0][i].push_back(RnTerm::from_cache(Role::UeDemand, next++));
    for (int i = n.nr + n.ns - 2 * n.nd; i < n.nr; ++i)
        scheme.rn[0][i].push_back(RnTerm::from_cache(Role::UeDemand, next++));
    return finish_point(std::move(scheme));
}

SchemePoint build_full_cache_scheme(const ChannelTriple& n) {
    const int L = std::max(n.nd, n.nr);
    Placement placement;
    placement.file_count = 2;
    placement.file_size = L;
    placement.cached.resize(L);
    std::iota(placement.cached.begin(), placement.cached.end(), 0);
    LinearScheme scheme(n, 1, L, std::move(placement));
    if (n.nr >= n.nd) {
        for (int i = 0; i < n.nr; ++i)
            scheme.rn[0][i].push_back(RnTerm::from_cache(Role::UeDemand, i));
    } else {
        for (int i = 0; i < n.nd; ++i) scheme.denb[0][i].push_back(FileBitRef{Role::UeDemand, i});
    }
    return finish_point(std::move(scheme));
}

namespace {

FileBitRef offset_ref(const FileBitRef& ref, int bit_offset) {
    return FileBitRef{ref.role, ref.bit + bit_offset};
}

}  // namespace

SchemePoint time_share(const SchemePoint& p1, const SchemePoint& p2, const Rational& mu) {
    if (mu == p1.mu) return p1;
    if (mu == p2.mu) return p2;
    if (!(p1.mu < mu && mu < p2.mu))
        throw InterpolationRange("time_share: mu = " + mu.str() + " outside (" + p1.mu.str() +
                                 ", " + p2.mu.str() + ")");
    if (p1.scheme.n != p2.scheme.n)
        throw InterpolationRange("time_share: scheme points belong to different channels");

    const long long p = mu.num(), q = mu.den();
    const long long l1 = p1.scheme.file_size, c1 = p1.scheme.placement.cached_count();
    const long long l2 = p2.scheme.file_size, c2 = p2.scheme.placement.cached_count();
    // Replication counts k1, k2 with (k1 c1 + k2 c2) / (k1 L1 + k2 L2) = mu.
    const long long alpha = p * l1 - q * c1;  // > 0 since mu > mu1
    const long long beta = q * c2 - p * l2;   // > 0 since mu < mu2
    const long long g = std::gcd(alpha, beta);
    const long long k1 = beta / g, k2 = alpha / g;

    const long long L = k1 * l1 + k2 * l2;
    const long long T = k1 * p1.scheme.uses + k2 * p2.scheme.uses;
    if (L > (1 << 28)) throw std::overflow_error("time_share: composite file size too large");

    Placement placement;
    placement.file_count = 2;
    placement.file_size = static_cast<int>(L);
    LinearScheme scheme(p1.scheme.n, static_cast<int>(T), static_cast<int>(L), placement);

    int bit_offset = 0, use_offset = 0;
    auto append_block = [&](const LinearScheme& block) {
        for (int pos : block.placement.cached) scheme.placement.cached.push_back(pos + bit_offset);
        for (int t = 0; t < block.uses; ++t) {
            for (int lvl = 0; lvl < block.word_size(); ++lvl) {
                for (const auto& ref : block.denb[t][lvl])
                    scheme.denb[use_offset + t][lvl].push_back(offset_ref(ref, bit_offset));
                for (const auto& term : block.rn[t][lvl]) {
                    if (term.kind == RnTerm::Kind::Cache)
                        scheme.rn[use_offset + t][lvl].push_back(RnTerm::from_cache(
                            term.cache.role, term.cache.bit + bit_offset));
                    else
                        scheme.rn[use_offset + t][lvl].push_back(RnTerm::from_received(
                            term.received.use + use_offset, term.received.level));
                }
            }
        }
        bit_offset += block.file_size;
        use_offset += block.uses;
    };
    for (long long i = 0; i < k1; ++i) append_block(p1.scheme);
    for (long long i = 0; i < k2; ++i) append_block(p2.scheme);
    std::sort(scheme.placement.cached.begin(), scheme.placement.cached.end());
    return finish_point(std::move(scheme));
}

std::optional<SchemePoint> scheme_for(const Rational& mu, const ChannelTriple& n) {
    if (mu < Rational(0) || mu > Rational(1))
        throw InvalidCacheFraction("scheme_for: mu must lie in [0, 1]");
    if (mu == Rational(0)) {
        // Small canonical size: two loaded uses at the pair rate.
        LinearScheme scheme = build_scheme_mu0(n, mu0_pair_rate(n));
        return finish_point(std::move(scheme));
    }
    if (mu == Rational(1)) return build_full_cache_scheme(n);

    if (!regime_predicate(Regime::R31, n) || n.nr < n.ns) return std::nullopt;

    std::vector<SchemePoint> corners;
    corners.push_back(*scheme_for(Rational(0), n));
    corners.push_back(build_corner_scheme_b(n));
    corners.push_back(build_corner_scheme_c(n));
    corners.push_back(build_full_cache_scheme(n));
    // Degenerate corners collapse when nr == nd or ns == nd.
    std::vector<SchemePoint> distinct;
    for (auto& point : corners) {
        if (distinct.empty() || distinct.back().mu < point.mu) distinct.push_back(std::move(point));
    }
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        if (mu == distinct[i].mu) return distinct[i];
        if (distinct[i].mu < mu && mu < distinct[i + 1].mu)
            return time_share(distinct[i], distinct[i + 1], mu);
    }
    return distinct.back();  // mu == 1 handled above; unreachable fallback
}

}  // namespace ldmcache
