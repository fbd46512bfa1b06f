#include "dlts/lts.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace dlts {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

NondeterminismError::NondeterminismError(std::string state_name, std::string letter_name)
    : std::runtime_error("nondeterministic: state '" + state_name + "' has several '" + letter_name +
                         "' transitions"),
      state_(std::move(state_name)),
      letter_(std::move(letter_name)) {}

std::size_t NormalizedDlts::isolated_count() const noexcept {
    return static_cast<std::size_t>(std::count(isolated_.begin(), isolated_.end(), char{1}));
}

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        tokens.push_back({line.substr(start, i - start), start + 1});
    }
    return tokens;
}

struct TripleHash {
    std::size_t operator()(const Transition& t) const noexcept {
        std::uint64_t h = t.src;
        h = h * 0x9E3779B97F4A7C15ULL ^ t.letter;
        h = h * 0x9E3779B97F4A7C15ULL ^ t.dst;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

// Shared reader for both formats.
class Reader {
public:
    Reader(std::istream& in, bool dfa) : in_(in), dfa_(dfa) {}

    Dfa run() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            auto tokens = tokenize(line);
            if (tokens.empty()) continue;
            if (!seen_header_) {
                read_header(tokens);
            } else if (tokens[0].text.back() == ':') {
                read_keyword(tokens);
            } else {
                read_transition(tokens);
            }
        }
        if (!seen_header_) throw ParseError(line_no_ + 1, 1, std::string("missing '") + keyword() + " <n>' line");
        finish_states();
        if (dfa_ && !out_.initial && !out_.lts.states.empty())
            throw ParseError(line_no_ + 1, 1, "missing 'initial:' line");
        std::sort(out_.finals.begin(), out_.finals.end());
        return std::move(out_);
    }

private:
    const char* keyword() const { return dfa_ ? "dfa" : "dlts"; }

    [[noreturn]] void fail(const Token& tok, const std::string& what) const {
        throw ParseError(line_no_, tok.column, what);
    }

    void read_header(const std::vector<Token>& tokens) {
        if (tokens[0].text != keyword()) fail(tokens[0], std::string("expected '") + keyword() + " <n>'");
        if (tokens.size() != 2) fail(tokens[0], std::string("expected '") + keyword() + " <n>'");
        std::size_t n = 0;
        auto sv = tokens[1].text;
        auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), n);
        if (ec != std::errc() || ptr != sv.data() + sv.size()) fail(tokens[1], "state count must be a non-negative integer");
        n_ = n;
        seen_header_ = true;
    }

    void read_keyword(const std::vector<Token>& tokens) {
        auto key = tokens[0].text;
        if (key == "states:") {
            if (states_fixed_) fail(tokens[0], "'states:' must come once, before other lines");
            if (tokens.size() - 1 != n_)
                fail(tokens[0], "'states:' lists " + std::to_string(tokens.size() - 1) + " names, header declares " +
                                    std::to_string(n_));
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                auto [it, inserted] = state_index_.emplace(std::string(tokens[i].text), out_.lts.states.size());
                if (!inserted) fail(tokens[i], "duplicate state name '" + std::string(tokens[i].text) + "'");
                out_.lts.states.emplace_back(tokens[i].text);
            }
            states_fixed_ = true;
        } else if (key == "letters:") {
            if (letters_declared_ || !out_.lts.transitions.empty())
                fail(tokens[0], "'letters:' must come once, before transitions");
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                auto [it, inserted] = letter_index_.emplace(std::string(tokens[i].text), out_.lts.letters.size());
                if (!inserted) fail(tokens[i], "duplicate letter name '" + std::string(tokens[i].text) + "'");
                out_.lts.letters.emplace_back(tokens[i].text);
            }
            letters_declared_ = true;
        } else if (dfa_ && key == "initial:") {
            if (out_.initial) fail(tokens[0], "duplicate 'initial:' line");
            if (tokens.size() != 2) fail(tokens[0], "'initial:' takes exactly one state");
            if (!out_.lts.transitions.empty()) fail(tokens[0], "'initial:' must come before transitions");
            finish_states();
            out_.initial = resolve_state(tokens[1]);
        } else if (dfa_ && key == "finals:") {
            if (seen_finals_) fail(tokens[0], "duplicate 'finals:' line");
            if (!out_.lts.transitions.empty()) fail(tokens[0], "'finals:' must come before transitions");
            finish_states();
            seen_finals_ = true;
            std::unordered_set<StateIndex> seen;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                auto q = resolve_state(tokens[i]);
                if (!seen.insert(q).second) fail(tokens[i], "duplicate final state '" + std::string(tokens[i].text) + "'");
                out_.finals.push_back(q);
            }
        } else {
            fail(tokens[0], "unknown keyword '" + std::string(key) + "'");
        }
    }

    void read_transition(const std::vector<Token>& tokens) {
        if (tokens.size() != 3) fail(tokens[0], "expected '<src> <letter> <dst>'");
        finish_states();
        Transition t{resolve_state(tokens[0]), resolve_letter(tokens[1]), resolve_state(tokens[2])};
        if (!triples_.insert(t).second) fail(tokens[0], "duplicate transition");
        out_.lts.transitions.push_back(t);
    }

    // Names default to "0".."n-1" when no `states:` line was given.
    void finish_states() {
        if (states_fixed_) return;
        for (std::size_t i = 0; i < n_; ++i) {
            out_.lts.states.push_back(std::to_string(i));
            state_index_.emplace(out_.lts.states.back(), i);
        }
        states_fixed_ = true;
    }

    StateIndex resolve_state(const Token& tok) const {
        auto it = state_index_.find(std::string(tok.text));
        if (it == state_index_.end()) fail(tok, "undeclared state '" + std::string(tok.text) + "'");
        return static_cast<StateIndex>(it->second);
    }

    LetterIndex resolve_letter(const Token& tok) {
        auto it = letter_index_.find(std::string(tok.text));
        if (it != letter_index_.end()) return static_cast<LetterIndex>(it->second);
        if (letters_declared_) fail(tok, "undeclared letter '" + std::string(tok.text) + "'");
        letter_index_.emplace(std::string(tok.text), out_.lts.letters.size());
        out_.lts.letters.emplace_back(tok.text);
        return static_cast<LetterIndex>(out_.lts.letters.size() - 1);
    }

    std::istream& in_;
    bool dfa_;
    std::size_t line_no_ = 0;
    std::size_t n_ = 0;
    bool seen_header_ = false;
    bool states_fixed_ = false;
    bool letters_declared_ = false;
    bool seen_finals_ = false;
    std::unordered_map<std::string, std::size_t> state_index_;
    std::unordered_map<std::string, std::size_t> letter_index_;
    std::unordered_set<Transition, TripleHash> triples_;
    Dfa out_;
};

void check_indices(const RawLts& raw) {
    for (const auto& t : raw.transitions) {
        if (t.src >= raw.states.size() || t.dst >= raw.states.size() || t.letter >= raw.letters.size())
            throw ValidationError("transition refers to an unknown state or letter");
    }
}

// Transition indices grouped by source state (counting sort).
std::vector<std::size_t> order_by_source(const RawLts& raw, std::vector<std::size_t>& offsets, std::uint64_t& steps) {
    const std::size_t n = raw.states.size();
    offsets.assign(n + 1, 0);
    for (const auto& t : raw.transitions) {
        ++offsets[t.src + 1];
        ++steps;
    }
    for (std::size_t q = 0; q < n; ++q) {
        offsets[q + 1] += offsets[q];
        ++steps;
    }
    std::vector<std::size_t> order(raw.transitions.size());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < raw.transitions.size(); ++i) {
        order[fill[raw.transitions[i].src]++] = i;
        ++steps;
    }
    return order;
}

// Calls report(q, a) once per nondeterministic pair, in (state, letter-of-first-repeat) order.
template <typename Report>
void scan_determinism(const RawLts& raw, Report&& report, std::uint64_t& steps) {
    std::vector<std::size_t> offsets;
    auto order = order_by_source(raw, offsets, steps);
    // stamp[a] = q + 1 when a was seen on q; reported[a] likewise once reported.
    std::vector<std::size_t> stamp(raw.letters.size(), 0);
    std::vector<std::size_t> reported(raw.letters.size(), 0);
    steps += raw.letters.size();
    for (std::size_t q = 0; q < raw.states.size(); ++q) {
        ++steps;
        for (std::size_t i = offsets[q]; i < offsets[q + 1]; ++i) {
            ++steps;
            LetterIndex a = raw.transitions[order[i]].letter;
            if (stamp[a] == q + 1) {
                if (reported[a] != q + 1) {
                    reported[a] = q + 1;
                    if (!report(static_cast<StateIndex>(q), a)) return;
                }
            } else {
                stamp[a] = q + 1;
            }
        }
    }
}

void write_names(std::ostringstream& out, const char* key, const std::vector<std::string>& names) {
    out << key;
    for (const auto& name : names) out << ' ' << name;
    out << '\n';
}

}  // namespace

RawLts parse_lts(std::istream& in) { return Reader(in, false).run().lts; }

RawLts parse_lts(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_lts(in);
}

Dfa parse_dfa(std::istream& in) { return Reader(in, true).run(); }

Dfa parse_dfa(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dfa(in);
}

std::vector<Violation> check_deterministic(const RawLts& raw) {
    check_indices(raw);
    std::vector<Violation> out;
    std::uint64_t steps = 0;
    scan_determinism(
        raw,
        [&](StateIndex q, LetterIndex a) {
            out.push_back({q, a});
            return true;
        },
        steps);
    std::sort(out.begin(), out.end(),
              [](const Violation& x, const Violation& y) { return std::tie(x.state, x.letter) < std::tie(y.state, y.letter); });
    return out;
}

NormalizedDlts normalize(const RawLts& raw, std::uint64_t* steps) {
    check_indices(raw);
    std::uint64_t ops = 0;
    scan_determinism(
        raw, [&](StateIndex q, LetterIndex a) -> bool { throw NondeterminismError(raw.states[q], raw.letters[a]); },
        ops);

    const std::size_t n = raw.states.size();
    const std::size_t m = raw.transitions.size();
    NormalizedDlts out;

    // Restrict the alphabet to used letters, keeping declaration order.
    constexpr auto kUnused = static_cast<LetterIndex>(-1);
    std::vector<LetterIndex> letter_map(raw.letters.size(), kUnused);
    for (const auto& t : raw.transitions) {
        letter_map[t.letter] = 0;
        ++ops;
    }
    for (std::size_t a = 0; a < raw.letters.size(); ++a) {
        ++ops;
        if (letter_map[a] == kUnused) continue;
        letter_map[a] = static_cast<LetterIndex>(out.letter_names_.size());
        out.letter_names_.push_back(raw.letters[a]);
    }

    // Counting sort by destination.
    out.in_offsets_.assign(n + 1, 0);
    for (const auto& t : raw.transitions) {
        ++out.in_offsets_[t.dst + 1];
        ++ops;
    }
    for (std::size_t q = 0; q < n; ++q) {
        out.in_offsets_[q + 1] += out.in_offsets_[q];
        ++ops;
    }
    out.transitions_.resize(m);
    std::vector<std::size_t> fill(out.in_offsets_.begin(), out.in_offsets_.end() - 1);
    out.isolated_.assign(n, 1);
    for (const auto& t : raw.transitions) {
        out.transitions_[fill[t.dst]++] = Transition{t.src, letter_map[t.letter], t.dst};
        out.isolated_[t.src] = 0;
        out.isolated_[t.dst] = 0;
        ++ops;
    }

    out.state_names_ = raw.states;
    if (steps != nullptr) *steps += ops;
    return out;
}

RawLts to_raw(const NormalizedDlts& t) {
    RawLts raw;
    raw.states = t.state_names();
    raw.letters = t.letter_names();
    raw.transitions.assign(t.transitions().begin(), t.transitions().end());
    return raw;
}

std::string format_lts(const RawLts& raw) {
    std::ostringstream out;
    out << "dlts " << raw.states.size() << '\n';
    if (!raw.states.empty()) write_names(out, "states:", raw.states);
    if (!raw.letters.empty()) write_names(out, "letters:", raw.letters);
    for (const auto& t : raw.transitions)
        out << raw.states[t.src] << ' ' << raw.letters[t.letter] << ' ' << raw.states[t.dst] << '\n';
    return out.str();
}

std::string format_dfa(const Dfa& dfa) {
    const auto& raw = dfa.lts;
    std::ostringstream out;
    out << "dfa " << raw.states.size() << '\n';
    if (!raw.states.empty()) write_names(out, "states:", raw.states);
    if (!raw.letters.empty()) write_names(out, "letters:", raw.letters);
    if (dfa.initial) out << "initial: " << raw.states[*dfa.initial] << '\n';
    if (!raw.states.empty()) {
        out << "finals:";
        for (auto q : dfa.finals) out << ' ' << raw.states[q];
        out << '\n';
    }
    for (const auto& t : raw.transitions)
        out << raw.states[t.src] << ' ' << raw.letters[t.letter] << ' ' << raw.states[t.dst] << '\n';
    return out.str();
}

}  // namespace dlts
