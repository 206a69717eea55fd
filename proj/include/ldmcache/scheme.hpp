#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldmcache/channel.hpp"
#include "ldmcache/rational.hpp"

namespace ldmcache {

/// Symmetric cache placement: every file stores the same set of bit
/// positions at the relay. Intra-file selection only; files are never mixed.
struct Placement {
    int file_count = 2;
    int file_size = 0;
    std::vector<int> cached;  // sorted 0-based positions, identical per file

    int cached_count() const { return static_cast<int>(cached.size()); }
    bool is_cached(int bit) const;
};

/// Caches the trailing mu * file_size positions of every file (uncached
/// prefix, cached suffix). mu * file_size must be an integer.
Placement make_placement(int file_count, int file_size, const Rational& mu);

/// Whose requested file a term refers to. Plans are written against the two
/// demand roles, so one scheme serves every demand vector, including both
/// nodes requesting the same file.
enum class Role { RnDemand, UeDemand };

struct FileBitRef {
    Role role;
    int bit;
    friend bool operator==(const FileBitRef&, const FileBitRef&) = default;
};

/// A level of an earlier relay reception: y_r[use], position `level` (0 is
/// the most significant position of the word).
struct ReceivedRef {
    int use;
    int level;
    friend bool operator==(const ReceivedRef&, const ReceivedRef&) = default;
};

/// One XOR summand of a relay transmit level: either a cached file bit or a
/// previously received level.
struct RnTerm {
    enum class Kind { Cache, Received };
    Kind kind;
    FileBitRef cache{};
    ReceivedRef received{};

    static RnTerm from_cache(Role role, int bit) {
        return RnTerm{Kind::Cache, FileBitRef{role, bit}, {}};
    }
    static RnTerm from_received(int use, int level) {
        return RnTerm{Kind::Received, {}, ReceivedRef{use, level}};
    }
    friend bool operator==(const RnTerm&, const RnTerm&) = default;
};

using DenbLevel = std::vector<FileBitRef>;  // XOR of file bits; empty = silent
using RnLevel = std::vector<RnTerm>;

/// A complete executable delivery policy over the deterministic channel:
/// cache placement plus per-channel-use linear encoders for both
/// transmitters. The source encoder may touch any file bit; the relay
/// encoder may touch only cached bits and receptions from strictly earlier
/// uses (it transmits and receives in the same use).
struct LinearScheme {
    ChannelTriple n;
    int uses = 0;       // T
    int file_size = 0;  // L
    Placement placement;
    std::vector<std::vector<DenbLevel>> denb;  // [uses][word_size]
    std::vector<std::vector<RnLevel>> rn;      // [uses][word_size]

    LinearScheme(const ChannelTriple& n_, int uses_, int file_size_, Placement placement_);

    int word_size() const { return n.word_size(); }
    Rational mu() const { return Rational(placement.cached_count(), file_size); }
    Rational dtb() const { return Rational(uses, file_size); }

    /// Structural checks: term ranges, cache membership, relay causality.
    /// Throws CausalityError / std::invalid_argument on violation.
    void validate() const;

    std::string to_json(int indent = -1) const;
    static LinearScheme from_json(const std::string& text);
};

/// A point on the cache-size/latency tradeoff realized by a concrete scheme,
/// with mu == cached bits / L and dtb == T / L exactly.
struct SchemePoint {
    Rational mu;
    Rational dtb;
    LinearScheme scheme;
};

/// Cache-free delivery of both requested files at the optimal rate
/// 2 / min(max(nd, ns), 2 ns, 2 max(nd, nr)). For nd >= ns this is a pure
/// source broadcast and the rate is met exactly whenever the schedule
/// divides L. For ns > nd the relay pipelines: each use the source feeds it
/// ahead of time and it forwards on its interference-free top levels, with
/// direct transmission preferred whenever the UE window has room. At most
/// one trailing flush use remains, so T <= ceil(2L/m) + 1.
LinearScheme build_scheme_mu0(const ChannelTriple& n, int file_size);

/// Corner scheme with mu = (nr - nd) / (ns/2 + nr - nd): the source sends
/// the uncached halves of both files, the relay sends the cached part of the
/// UE file on its interference-free levels. One channel use when ns is even,
/// two uses with doubled block size when odd. Requires regime R31 with
/// nr >= ns.
SchemePoint build_corner_scheme_b(const ChannelTriple& n);

/// Corner scheme with mu = (nd + nr - ns) / nr and latency 1/nr: the source
/// drops to rate ns - nd per file and leaves a gap the relay fills with
/// cached bits, so the UE sees all nr useful positions. Single channel use.
/// Requires regime R31 with nr >= ns.
SchemePoint build_corner_scheme_c(const ChannelTriple& n);

/// Full-cache policy (mu = 1): the stronger of the two links towards the UE
/// carries max(nd, nr) bits in one use; the relay decodes from its cache.
SchemePoint build_full_cache_scheme(const ChannelTriple& n);

/// File splitting and time sharing between two scheme points for the same
/// channel: replicates each policy on its own block of every file so the
/// combined cache fraction is exactly mu and the combined latency is the
/// matching convex combination of the endpoints.
SchemePoint time_share(const SchemePoint& p1, const SchemePoint& p2, const Rational& mu);

/// Constructive scheme dispatch. Covered: mu = 0 and mu = 1 on every
/// channel, and all of [0, 1] on R31 channels with nr >= ns (corner schemes
/// plus time sharing). Returns nullopt where no construction is provided;
/// the brute-force search remains available as a fallback oracle.
std::optional<SchemePoint> scheme_for(const Rational& mu, const ChannelTriple& n);

}  // namespace ldmcache
