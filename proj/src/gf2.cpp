#include "ldmcache/gf2.hpp"

#include <algorithm>

namespace ldmcache {

namespace {

constexpr int kMaxWordSize = 64;

inline int word_index(int col) { return col >> 6; }
inline uint64_t word_mask(int col) { return uint64_t{1} << (col & 63); }

}  // namespace

LevelWord::LevelWord(int size) : size_(size) {
    if (size < 1 || size > kMaxWordSize)
        throw DimensionError("LevelWord: size must be in [1, 64], got " + std::to_string(size));
}

LevelWord LevelWord::from_string(std::string_view bits) {
    LevelWord w(static_cast<int>(bits.size()));
    for (int i = 0; i < w.size_; ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw DimensionError("LevelWord: bit string must contain only 0/1");
        w.set(i, bits[i] == '1');
    }
    return w;
}

bool LevelWord::get(int level) const {
    if (level < 0 || level >= size_) throw DimensionError("LevelWord: level out of range");
    return (bits_ >> (size_ - 1 - level)) & 1;
}

void LevelWord::set(int level, bool value) {
    if (level < 0 || level >= size_) throw DimensionError("LevelWord: level out of range");
    const uint64_t mask = uint64_t{1} << (size_ - 1 - level);
    if (value)
        bits_ |= mask;
    else
        bits_ &= ~mask;
}

std::string LevelWord::to_string() const {
    std::string s(size_, '0');
    for (int i = 0; i < size_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

LevelWord downshift(const LevelWord& x, int strength) {
    if (strength < 0 || strength > x.size())
        throw InvalidShift("downshift: strength " + std::to_string(strength) +
                           " outside [0, " + std::to_string(x.size()) + "]");
    LevelWord out(x.size());
    // Top `strength` levels land at the bottom `strength` positions.
    for (int j = 0; j < strength; ++j) out.set(x.size() - strength + j, x.get(j));
    return out;
}

LevelWord superpose(const LevelWord& a, const LevelWord& b) {
    if (a.size() != b.size())
        throw DimensionError("superpose: size mismatch (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    LevelWord out(a.size());
    for (int i = 0; i < a.size(); ++i) out.set(i, a.get(i) ^ b.get(i));
    return out;
}

Gf2Matrix::Gf2Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw DimensionError("Gf2Matrix: dimensions must be positive");
    words_ = (cols + 63) / 64;
    bits_.assign(static_cast<std::size_t>(rows) * words_, 0);
}

Gf2Matrix Gf2Matrix::identity(int n) {
    Gf2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

Gf2Matrix Gf2Matrix::shift_power(int q, int strength) {
    if (strength < 0 || strength > q)
        throw InvalidShift("shift_power: strength outside [0, q]");
    Gf2Matrix m(q, q);
    for (int k = 0; k < strength; ++k) m.set(q - strength + k, k, true);
    return m;
}

bool Gf2Matrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw DimensionError("Gf2Matrix: index out of range");
    return (bits_[static_cast<std::size_t>(r) * words_ + word_index(c)] & word_mask(c)) != 0;
}

void Gf2Matrix::set(int r, int c, bool value) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw DimensionError("Gf2Matrix: index out of range");
    uint64_t& w = bits_[static_cast<std::size_t>(r) * words_ + word_index(c)];
    if (value)
        w |= word_mask(c);
    else
        w &= ~word_mask(c);
}

Gf2Matrix Gf2Matrix::multiplied(const Gf2Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionError("Gf2Matrix: inner dimensions disagree");
    Gf2Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            if (!at(i, k)) continue;
            for (int w = 0; w < rhs.words_; ++w)
                out.bits_[static_cast<std::size_t>(i) * out.words_ + w] ^=
                    rhs.bits_[static_cast<std::size_t>(k) * rhs.words_ + w];
        }
    }
    return out;
}

LevelWord Gf2Matrix::apply(const LevelWord& x) const {
    if (cols_ != x.size()) throw DimensionError("Gf2Matrix: vector size mismatch");
    LevelWord out(rows_);
    for (int i = 0; i < rows_; ++i) {
        bool v = false;
        for (int j = 0; j < cols_; ++j) v ^= at(i, j) && x.get(j);
        out.set(i, v);
    }
    return out;
}

LinearSystem::LinearSystem(const Gf2Matrix& a)
    : cols_(a.cols_), words_(a.words_), rows_in_(a.rows_) {
    comb_words_ = (rows_in_ + 63) / 64;
    // Gauss-Jordan with an identity carried alongside, so each reduced row
    // remembers which original rows it sums.
    std::vector<std::vector<uint64_t>> work(rows_in_), comb(rows_in_);
    for (int r = 0; r < rows_in_; ++r) {
        work[r].assign(a.bits_.begin() + static_cast<std::size_t>(r) * words_,
                       a.bits_.begin() + static_cast<std::size_t>(r + 1) * words_);
        comb[r].assign(comb_words_, 0);
        comb[r][word_index(r)] |= word_mask(r);
    }
    int next = 0;
    for (int col = 0; col < cols_ && next < rows_in_; ++col) {
        int pivot = -1;
        for (int r = next; r < rows_in_; ++r) {
            if (work[r][word_index(col)] & word_mask(col)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(work[pivot], work[next]);
        std::swap(comb[pivot], comb[next]);
        for (int r = 0; r < rows_in_; ++r) {
            if (r == next) continue;
            if (work[r][word_index(col)] & word_mask(col)) {
                for (int w = 0; w < words_; ++w) work[r][w] ^= work[next][w];
                for (int w = 0; w < comb_words_; ++w) comb[r][w] ^= comb[next][w];
            }
        }
        pivot_cols_.push_back(col);
        rows_.push_back(std::move(work[next]));
        comb_.push_back(std::move(comb[next]));
        work[next] = rows_.back();   // keep elimination source valid
        comb[next] = comb_.back();
        ++next;
    }
}

bool LinearSystem::determines(int col) const { return combination_for(col).has_value(); }

std::optional<std::vector<uint8_t>> LinearSystem::combination_for(int col) const {
    if (col < 0 || col >= cols_) throw DimensionError("LinearSystem: column out of range");
    std::vector<uint64_t> v(words_, 0), c(comb_words_, 0);
    v[word_index(col)] |= word_mask(col);
    for (std::size_t i = 0; i < pivot_cols_.size(); ++i) {
        const int p = pivot_cols_[i];
        if (v[word_index(p)] & word_mask(p)) {
            for (int w = 0; w < words_; ++w) v[w] ^= rows_[i][w];
            for (int w = 0; w < comb_words_; ++w) c[w] ^= comb_[i][w];
        }
    }
    for (const uint64_t w : v)
        if (w != 0) return std::nullopt;
    std::vector<uint8_t> mask(rows_in_, 0);
    for (int r = 0; r < rows_in_; ++r)
        if (c[word_index(r)] & word_mask(r)) mask[r] = 1;
    return mask;
}

std::optional<bool> LinearSystem::decode(int col, const std::vector<uint8_t>& rhs) const {
    if (static_cast<int>(rhs.size()) != rows_in_)
        throw DimensionError("LinearSystem: right-hand side length mismatch");
    const auto mask = combination_for(col);
    if (!mask) return std::nullopt;
    bool v = false;
    for (int r = 0; r < rows_in_; ++r) v ^= ((*mask)[r] & rhs[r]) != 0;
    return v;
}

std::optional<std::vector<uint8_t>> solve_gf2(const Gf2Matrix& a, const std::vector<uint8_t>& y,
                                              int* rank_out) {
    if (static_cast<int>(y.size()) != a.rows())
        throw DimensionError("solve_gf2: rows(A) must match length of y");
    LinearSystem sys(a);
    if (rank_out) *rank_out = sys.rank();
    if (sys.rank() < a.cols()) return std::nullopt;  // free unknowns remain
    std::vector<uint8_t> x(a.cols(), 0);
    for (int c = 0; c < a.cols(); ++c) {
        const auto bit = sys.decode(c, y);
        if (!bit) return std::nullopt;
        x[c] = *bit ? 1 : 0;
    }
    // Full column rank pins x down; reject right-hand sides outside the
    // column space.
    for (int r = 0; r < a.rows(); ++r) {
        bool v = false;
        for (int c = 0; c < a.cols(); ++c) v ^= a.at(r, c) && x[c];
        if (v != (y[r] != 0)) return std::nullopt;
    }
    return x;
}

}  // namespace ldmcache
