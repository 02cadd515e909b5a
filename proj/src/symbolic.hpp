#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rng.hpp"
#include "util.hpp"

namespace nifslab {

// Per-level alphabet sizes |I^(j)|, j >= 1, given by a periodic table.
// A constant alphabet is the period-1 case.
class AlphabetSchedule {
public:
    AlphabetSchedule() : sizes_{1} {}
    explicit AlphabetSchedule(std::vector<int> periodic_sizes);

    int size_at(int level) const {
        return sizes_[static_cast<std::size_t>(level - 1) % sizes_.size()];
    }
    int period() const { return static_cast<int>(sizes_.size()); }
    bool constant() const { return sizes_.size() == 1; }

    // Number of words in I_n^{n+len-1}; throws Errc::budget above `cap`.
    std::uint64_t word_count(int start_level, int length, std::uint64_t cap) const;

private:
    std::vector<int> sizes_;
};

// Finite index string anchored at a level: symbol k lives in I^(start_level+k).
// Symbols are 0-based internally; presentation layers add 1.
struct Word {
    int start_level = 1;
    std::vector<int> symbols;

    int length() const { return static_cast<int>(symbols.size()); }
    bool empty() const { return symbols.empty(); }
    Word subword(int drop_front) const;
    bool operator==(const Word&) const = default;
};

std::string to_string(const Word& word); // 1-based, e.g. "1.2.1@3"

void validate_word(const Word& word, const AlphabetSchedule& alphabet);

// Computable infinite symbol sequence: an explicit finite prefix followed by
// a tail rule. Tail rules are indexed by absolute level so that shifting a
// stream never changes which symbol sits at a given level.
class SymbolStream {
public:
    enum class Tail { periodic, hashed };

    static SymbolStream periodic(int start_level, std::vector<int> pattern);
    static SymbolStream constant(int start_level, int symbol);
    static SymbolStream eventually(int start_level, std::vector<int> prefix, std::vector<int> tail_pattern);
    // Tail symbol at level j is hash(seed, j) mod size_at(j).
    static SymbolStream random(int start_level, std::uint64_t seed, AlphabetSchedule alphabet);
    static SymbolStream with_prefix(std::vector<int> prefix, const SymbolStream& tail_of);

    int start_level() const { return start_level_; }

    // Symbol at position k >= 0, i.e. at absolute level start_level + k.
    int at(int k) const;

    SymbolStream shifted(int n) const;

private:
    SymbolStream() = default;

    int start_level_ = 1;
    std::vector<int> prefix_;
    Tail tail_ = Tail::periodic;
    // periodic tail: pattern anchored at `anchor_level_`
    std::vector<int> pattern_;
    int anchor_level_ = 1;
    // hashed tail
    std::uint64_t seed_ = 0;
    AlphabetSchedule alphabet_;
};

Word prefix(const SymbolStream& stream, int j);

// sigma^n: drops the first n symbols; the result starts at level
// start_level + n. sigma^0 is the identity.
SymbolStream shift(const SymbolStream& stream, int n);

struct CommonPrefix {
    enum class Kind { prefix, disjoint_at_first_symbol, depth_limit };
    Kind kind = Kind::prefix;
    Word word; // meaningful only for Kind::prefix
};

// Largest common initial segment of two streams anchored at the same level.
// Stream equality is undecidable, hence the explicit depth limit.
CommonPrefix longest_common_prefix(const SymbolStream& a, const SymbolStream& b, int depth_limit = 64);

// Visits every word of I_n^{n+length-1} in lexicographic order (first level
// most significant). The same order indexes Gibbs mass tables, so cylinder
// extensions form contiguous ranges.
void enumerate_words(const AlphabetSchedule& alphabet, int start_level, int length,
                     std::uint64_t budget_cap, const std::function<void(const Word&)>& visit);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ULL << 24;

} // namespace nifslab
