#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blockwish {

/// A set partition of k upper + l lower points, stored in canonical
/// block-labeled form. Reading order is upper row left to right, then lower
/// row left to right. Block ids form a contiguous range 0..B-1, labeled by
/// first occurrence in reading order.
class Partition {
public:
    Partition(int upper_count, int lower_count, std::vector<int> block_ids);

    /// Parses a literal like "ab/ba". Identical letters denote one block
    /// across both rows; "/abc" denotes a partition in P(0,3).
    static Partition parse(const std::string& text);

    /// Canonical literal, letters in first-occurrence order.
    std::string str() const;

    int upperCount() const { return upper_; }
    int lowerCount() const { return lower_; }
    int points() const { return static_cast<int>(ids_.size()); }
    int blockCount() const { return blocks_; }

    /// Block id at a point in reading order (0-based).
    int blockAt(int point) const { return ids_[point]; }
    int upperBlockAt(int i) const { return ids_[i]; }
    int lowerBlockAt(int i) const { return ids_[upper_ + i]; }
    const std::vector<int>& blockIds() const { return ids_; }

    /// Points of each block, in reading order.
    std::vector<std::vector<int>> blocks() const;
    /// Size of each block.
    std::vector<int> blockSizes() const;
    bool allBlocksEven() const;

    bool operator==(const Partition& other) const {
        return upper_ == other.upper_ && lower_ == other.lower_ && ids_ == other.ids_;
    }
    bool operator!=(const Partition& other) const { return !(*this == other); }
    bool operator<(const Partition& other) const;

private:
    int upper_ = 0;
    int lower_ = 0;
    int blocks_ = 0;
    std::vector<int> ids_;
};

/// A permutation of {0..p-1}.
class Permutation {
public:
    explicit Permutation(std::vector<int> image);
    static Permutation identity(int p);
    /// gamma = (0 -> 1 -> ... -> p-1 -> 0).
    static Permutation standardCycle(int p);

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int x) const { return image_[x]; }
    const std::vector<int>& image() const { return image_; }

    Permutation inverse() const;
    int cycleCount() const;
    /// Orbit partition in P(0,p).
    Partition cyclePartition() const;

    bool operator==(const Permutation& o) const { return image_ == o.image_; }

private:
    std::vector<int> image_;
};

/// compose(a,b)(x) = a(b(x)).
Permutation permCompose(const Permutation& a, const Permutation& b);

/// A word over {1,*}; '*' marks an adjoint factor.
class ExponentWord {
public:
    ExponentWord() = default;
    explicit ExponentWord(std::string letters);
    static ExponentWord allOnes(int p);
    /// All 2^p words of length p, in lexicographic (ASCII) order, so '*' < '1'.
    static std::vector<ExponentWord> allWords(int p);

    int size() const { return static_cast<int>(letters_.size()); }
    bool isStar(int i) const { return letters_[i] == '*'; }
    /// +1 for '1', -1 for '*'.
    int sign(int i) const { return isStar(i) ? -1 : 1; }
    const std::string& str() const { return letters_; }

    bool operator==(const ExponentWord& o) const { return letters_ == o.letters_; }
    bool operator<(const ExponentWord& o) const;

private:
    std::string letters_;
};

// ---- partition operations ----

Partition parsePartition(const std::string& text);

/// All partitions of k upper + l lower points; evenOnly keeps even block
/// sizes. Rejects more than 16 points.
std::vector<Partition> enumeratePartitions(int k, int l, bool even_only = false);

/// Boundary order: upper row left to right, then lower row right to left.
/// Noncrossing means no interleaving pair of blocks in this order.
bool isNoncrossing(const Partition& pi);

/// All noncrossing partitions in P(0,p); count is the p-th Catalan number.
/// Results are cached per p.
const std::vector<Partition>& enumerateNoncrossing(int p);

/// Partition grouping positions carrying equal values.
Partition kernel(const std::vector<int>& upper_values, const std::vector<int>& lower_values);

/// 1 iff every block of pi carries a constant value.
int deltaSymbol(const Partition& pi, const std::vector<int>& upper_values,
                const std::vector<int>& lower_values);

/// True iff every block of pi is contained in a block of sigma
/// (sigma is coarser than pi).
bool isCoarser(const Partition& sigma, const Partition& pi);

/// Finest partition coarser than both (join in the coarsening direction).
Partition commonCoarsening(const Partition& sigma, const Partition& tau);

/// Swaps, on each row, the left half-block of s points with the right one.
Partition middleSymmetry(const Partition& pi);

/// Upper and lower rows exchanged.
Partition adjoint(const Partition& pi);

struct VerticalComposition {
    Partition result;
    int loopCount = 0;
};

/// Glues top's lower row to bottom's upper row. The result lives on top's
/// upper and bottom's lower points; loopCount counts components touching
/// only glued points.
VerticalComposition verticalCompose(const Partition& top, const Partition& bottom);

/// Twisting signature of an even partition: crossing parity of the
/// consecutive-pairing refinement in boundary order.
int signature(const Partition& pi);

/// Oracle: parity of a minimal sequence of adjacent leg switches reaching a
/// noncrossing arrangement. Intended for partitions of at most 8 points.
int signatureSwitchSearch(const Partition& pi);

/// Embedding NC_p -> S_p by cycling inside each block.
Permutation ncToPermutation(const Partition& sigma);

/// Kreweras complement of a noncrossing partition; |sigma| + |kreweras| = p+1.
Partition kreweras(const Partition& sigma);

}  // namespace blockwish
