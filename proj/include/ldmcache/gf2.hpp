#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ldmcache/errors.hpp"

namespace ldmcache {

/// One channel use worth of signal levels over GF(2). Level 0 is the most
/// significant level; a link of strength n hands the transmitter's top n
/// levels to the receiver's bottom n positions and drops the rest. Words are
/// immutable in practice (construct, fill, share) and capped at 64 levels.
class LevelWord {
  public:
    explicit LevelWord(int size);

    /// Builds from a bit string such as "1011", most significant level first.
    static LevelWord from_string(std::string_view bits);

    int size() const { return size_; }
    bool get(int level) const;
    void set(int level, bool value);
    bool is_zero() const { return bits_ == 0; }

    std::string to_string() const;

    friend bool operator==(const LevelWord&, const LevelWord&) = default;

  private:
    int size_ = 0;
    uint64_t bits_ = 0;  // level i lives at bit (size-1-i)
};

/// Keeps the top `strength` levels of x, received at the bottom `strength`
/// positions; everything above them reads zero.
LevelWord downshift(const LevelWord& x, int strength);

/// Elementwise XOR of two equally sized words.
LevelWord superpose(const LevelWord& a, const LevelWord& b);

/// Dense GF(2) matrix with word-packed rows.
class Gf2Matrix {
  public:
    Gf2Matrix(int rows, int cols);

    static Gf2Matrix identity(int n);
    /// The linear map computed by downshift(x, strength) on words of size q.
    static Gf2Matrix shift_power(int q, int strength);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool at(int r, int c) const;
    void set(int r, int c, bool value);

    Gf2Matrix multiplied(const Gf2Matrix& rhs) const;
    LevelWord apply(const LevelWord& x) const;

    friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

  private:
    friend class LinearSystem;
    int rows_ = 0;
    int cols_ = 0;
    int words_ = 0;
    std::vector<uint64_t> bits_;
};

/// Row reduction of a GF(2) system A·x = y with full bookkeeping of the row
/// operations. Besides the rank, this answers the question the decoders care
/// about: is a particular unknown pinned down by the observations, and if so,
/// which XOR of observation rows reveals it.
class LinearSystem {
  public:
    explicit LinearSystem(const Gf2Matrix& a);

    int rank() const { return static_cast<int>(pivot_cols_.size()); }
    int cols() const { return cols_; }
    int input_rows() const { return rows_in_; }

    /// True iff the unit vector for `col` lies in the row space, i.e. the
    /// unknown is uniquely determined by any consistent right-hand side.
    bool determines(int col) const;

    /// Mask over the original rows whose XOR isolates unknown `col`
    /// (one byte per row, 0/1), or nullopt when the unknown is free.
    std::optional<std::vector<uint8_t>> combination_for(int col) const;

    /// Reads unknown `col` off a concrete right-hand side.
    std::optional<bool> decode(int col, const std::vector<uint8_t>& rhs) const;

  private:
    int cols_ = 0;
    int words_ = 0;
    int rows_in_ = 0;
    int comb_words_ = 0;
    std::vector<int> pivot_cols_;             // ascending
    std::vector<std::vector<uint64_t>> rows_;  // reduced rows, one per pivot
    std::vector<std::vector<uint64_t>> comb_;  // matching row combinations
};

/// Solves A·x = y when the solution is unique; nullopt when the system is
/// singular or inconsistent. rank_out (optional) always receives rank(A).
std::optional<std::vector<uint8_t>> solve_gf2(const Gf2Matrix& a, const std::vector<uint8_t>& y,
                                              int* rank_out = nullptr);

}  // namespace ldmcache
