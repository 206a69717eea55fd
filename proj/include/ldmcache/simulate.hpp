#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ldmcache/gf2.hpp"
#include "ldmcache/rational.hpp"
#include "ldmcache/scheme.hpp"

namespace ldmcache {

/// Concrete file contents: file_count vectors of file_size bits (0/1).
using Files = std::vector<std::vector<uint8_t>>;

/// Which file each node requests, 0-based: (relay demand, UE demand).
using Demand = std::pair<int, int>;

Files random_files(int file_count, int file_size, std::mt19937& rng);

/// Everything that went over the air in one delivery: per channel use the
/// two transmit words and the two receive words, plus the inputs that
/// produced them. Receive words always satisfy the channel law
///   y_r[t] = downshift(x_s[t], ns)
///   y_u[t] = downshift(x_s[t], nd) xor downshift(x_r[t], nr).
struct Transcript {
    ChannelTriple n;
    Demand demand;
    Files files;
    std::vector<LevelWord> xs, xr, yr, yu;

    int uses() const { return static_cast<int>(xs.size()); }
    /// Recomputes the receive words from the transmit words and compares.
    bool consistent() const;
    std::string to_json(int indent = -1) const;
};

/// Runs a scheme's encoders in time order over the deterministic channel.
/// The relay encoder at use t sees only cache bits and receptions of uses
/// strictly before t; violations raise CausalityError.
Transcript simulate_delivery(const LinearScheme& scheme, const Files& files, Demand demand);

struct DemandResult {
    bool rn_ok = false;
    bool ue_ok = false;
};

struct VerificationReport {
    std::map<Demand, DemandResult> decode;
    bool all_ok = false;
    Rational achieved_dtb;
    Rational lower_bound;
    Rational optimal;
    std::optional<bool> recursion_ok;  // present when ns >= nd
};

/// Zero-error decodability for every demand vector over `file_count` files:
/// the demanded file must be uniquely determined by (y_u) at the UE and by
/// (y_r, cache) at the relay, as a rank condition over GF(2). Also evaluates
/// achieved T/L against the exact converse at the scheme's cache fraction,
/// and replays the reconstruction argument where it applies.
VerificationReport check_decodability(const LinearScheme& scheme, int file_count = 2);

/// Decodes both requested files from a concrete transcript (UE from y_u,
/// relay from y_r plus cache). nullopt when some demanded bit is not
/// determined.
struct DecodedFiles {
    std::vector<uint8_t> rn_file;
    std::vector<uint8_t> ue_file;
};
std::optional<DecodedFiles> decode_transcript(const LinearScheme& scheme,
                                              const Transcript& transcript);

struct ReconstructionResult {
    bool success = false;
    std::vector<LevelWord> reconstructed_yr;
};

/// Executable form of the strongest side-information argument (ns >= nd):
/// given the below-UE-window slice of x_s, the UE's receive word and the
/// relay-demand cache, first decode the UE file from y_u, then step through
/// the uses replaying the relay encoder, peeling its contribution out of y_u
/// and rebuilding y_r. Succeeds iff the rebuilt y_r matches the transcript
/// bit for bit.
ReconstructionResult recursive_reconstruct(const LinearScheme& scheme, const Files& files,
                                           Demand demand);

struct SearchResult {
    int file_size = 0;
    int uses = 0;
    Rational dtb;
    LinearScheme scheme;
};

/// Exhaustive achievability oracle over a restricted scheme family: each
/// source level carries a distinct uncached file bit or silence, each relay
/// level a distinct cached bit, one previously received level, or silence
/// (no XOR combining at either transmitter, canonical bit order). Returns
/// the minimum T/L that decodes for every demand, preferring smaller T and
/// earlier enumeration order on ties. The family is restricted, so results
/// are achievable points, never bounds.
std::optional<SearchResult> brute_force_search(const ChannelTriple& n, const Rational& mu,
                                               int max_file_size, int max_uses);

}  // namespace ldmcache
