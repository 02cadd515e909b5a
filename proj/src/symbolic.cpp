#include "symbolic.hpp"

#include <sstream>

namespace nifslab {

AlphabetSchedule::AlphabetSchedule(std::vector<int> periodic_sizes) : sizes_(std::move(periodic_sizes)) {
    if (sizes_.empty()) fail(Errc::invalid_argument, "alphabet schedule needs at least one level size");
    for (int s : sizes_)
        if (s < 1) fail(Errc::invalid_argument, "alphabet level size must be >= 1");
}

std::uint64_t AlphabetSchedule::word_count(int start_level, int length, std::uint64_t cap) const {
    std::uint64_t count = 1;
    for (int k = 0; k < length; ++k) {
        count *= static_cast<std::uint64_t>(size_at(start_level + k));
        if (count > cap)
            fail(Errc::budget, "word enumeration budget exceeded (" + std::to_string(cap) + ")");
    }
    return count;
}

Word Word::subword(int drop_front) const {
    if (drop_front < 0 || drop_front > length())
        fail(Errc::invalid_argument, "subword drop count out of range");
    Word out;
    out.start_level = start_level + drop_front;
    out.symbols.assign(symbols.begin() + drop_front, symbols.end());
    return out;
}

std::string to_string(const Word& word) {
    std::ostringstream os;
    for (std::size_t i = 0; i < word.symbols.size(); ++i) {
        if (i) os << '.';
        os << word.symbols[i] + 1;
    }
    if (word.symbols.empty()) os << "-";
    os << '@' << word.start_level;
    return os.str();
}

void validate_word(const Word& word, const AlphabetSchedule& alphabet) {
    if (word.start_level < 1) fail(Errc::invalid_argument, "word start level must be >= 1");
    for (int k = 0; k < word.length(); ++k) {
        const int symbol = word.symbols[static_cast<std::size_t>(k)];
        if (symbol < 0 || symbol >= alphabet.size_at(word.start_level + k))
            fail(Errc::invalid_argument, "symbol " + std::to_string(symbol + 1) + " out of range at level " +
                                             std::to_string(word.start_level + k));
    }
}

SymbolStream SymbolStream::periodic(int start_level, std::vector<int> pattern) {
    if (pattern.empty()) fail(Errc::invalid_argument, "periodic stream needs a non-empty pattern");
    SymbolStream s;
    s.start_level_ = start_level;
    s.tail_ = Tail::periodic;
    s.pattern_ = std::move(pattern);
    s.anchor_level_ = start_level;
    return s;
}

SymbolStream SymbolStream::constant(int start_level, int symbol) {
    return periodic(start_level, {symbol});
}

SymbolStream SymbolStream::eventually(int start_level, std::vector<int> prefix, std::vector<int> tail_pattern) {
    SymbolStream s = periodic(start_level, std::move(tail_pattern));
    s.anchor_level_ = start_level + static_cast<int>(prefix.size());
    s.prefix_ = std::move(prefix);
    return s;
}

SymbolStream SymbolStream::random(int start_level, std::uint64_t seed, AlphabetSchedule alphabet) {
    SymbolStream s;
    s.start_level_ = start_level;
    s.tail_ = Tail::hashed;
    s.seed_ = seed;
    s.alphabet_ = std::move(alphabet);
    return s;
}

SymbolStream SymbolStream::with_prefix(std::vector<int> prefix, const SymbolStream& tail_of) {
    SymbolStream s = tail_of;
    if (!s.prefix_.empty()) fail(Errc::invalid_argument, "with_prefix expects a prefix-free tail stream");
    if (s.tail_ == Tail::periodic) s.anchor_level_ = s.start_level_ + static_cast<int>(prefix.size());
    s.prefix_ = std::move(prefix);
    return s;
}

int SymbolStream::at(int k) const {
    if (k < 0) fail(Errc::invalid_argument, "stream position must be >= 0");
    if (k < static_cast<int>(prefix_.size())) return prefix_[static_cast<std::size_t>(k)];
    const int level = start_level_ + k;
    if (tail_ == Tail::periodic) {
        const int p = static_cast<int>(pattern_.size());
        int idx = (level - anchor_level_) % p;
        if (idx < 0) idx += p;
        return pattern_[static_cast<std::size_t>(idx)];
    }
    const auto n = static_cast<std::uint32_t>(alphabet_.size_at(level));
    return static_cast<int>(hash_combine(seed_, static_cast<std::uint64_t>(level)) % n);
}

SymbolStream SymbolStream::shifted(int n) const {
    if (n < 0) fail(Errc::invalid_argument, "shift count must be >= 0");
    if (n == 0) return *this;
    SymbolStream s = *this;
    s.start_level_ = start_level_ + n;
    const int drop = std::min<int>(n, static_cast<int>(prefix_.size()));
    s.prefix_.erase(s.prefix_.begin(), s.prefix_.begin() + drop);
    return s;
}

Word prefix(const SymbolStream& stream, int j) {
    if (j < 0) fail(Errc::invalid_argument, "prefix length must be >= 0");
    Word w;
    w.start_level = stream.start_level();
    w.symbols.reserve(static_cast<std::size_t>(j));
    for (int k = 0; k < j; ++k) w.symbols.push_back(stream.at(k));
    return w;
}

SymbolStream shift(const SymbolStream& stream, int n) { return stream.shifted(n); }

CommonPrefix longest_common_prefix(const SymbolStream& a, const SymbolStream& b, int depth_limit) {
    if (a.start_level() != b.start_level())
        fail(Errc::invalid_argument, "common prefix requires equal start levels");
    if (depth_limit < 1) fail(Errc::invalid_argument, "depth limit must be >= 1");
    CommonPrefix out;
    if (a.at(0) != b.at(0)) {
        out.kind = CommonPrefix::Kind::disjoint_at_first_symbol;
        return out;
    }
    out.word.start_level = a.start_level();
    for (int k = 0; k < depth_limit; ++k) {
        if (a.at(k) != b.at(k)) {
            out.kind = CommonPrefix::Kind::prefix;
            return out;
        }
        out.word.symbols.push_back(a.at(k));
    }
    out.kind = CommonPrefix::Kind::depth_limit;
    out.word.symbols.clear();
    return out;
}

void enumerate_words(const AlphabetSchedule& alphabet, int start_level, int length,
                     std::uint64_t budget_cap, const std::function<void(const Word&)>& visit) {
    if (length < 0) fail(Errc::invalid_argument, "word length must be >= 0");
    alphabet.word_count(start_level, length, budget_cap);
    Word w;
    w.start_level = start_level;
    w.symbols.assign(static_cast<std::size_t>(length), 0);
    if (length == 0) {
        visit(w);
        return;
    }
    while (true) {
        visit(w);
        int pos = length - 1;
        while (pos >= 0) {
            if (++w.symbols[static_cast<std::size_t>(pos)] < alphabet.size_at(start_level + pos)) break;
            w.symbols[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) return;
    }
}

} // namespace nifslab
