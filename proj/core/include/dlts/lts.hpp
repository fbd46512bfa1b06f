#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dlts {

using StateIndex = std::uint32_t;
using LetterIndex = std::uint32_t;

struct Transition {
    StateIndex src = 0;
    LetterIndex letter = 0;
    StateIndex dst = 0;

    friend bool operator==(const Transition&, const Transition&) = default;
};

/// Error raised while reading the text formats. Carries a 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Structural problem with an otherwise well-formed input (bad partition, bad DFA).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Violation {
    StateIndex state = 0;
    LetterIndex letter = 0;

    friend bool operator==(const Violation&, const Violation&) = default;
};

class NondeterminismError : public std::runtime_error {
public:
    NondeterminismError(std::string state_name, std::string letter_name);

    const std::string& state_name() const noexcept { return state_; }
    const std::string& letter_name() const noexcept { return letter_; }

private:
    std::string state_;
    std::string letter_;
};

/// An LTS exactly as written in a file: names interned in declaration order,
/// transitions indexed into the two name tables.
struct RawLts {
    std::vector<std::string> states;
    std::vector<std::string> letters;
    std::vector<Transition> transitions;
};

/// Indexed encoding consumed by the refinement engine.
///
/// Only letters that label some transition are kept. Transitions are stored
/// sorted by destination, so the incoming transitions of state q are
/// transitions[in_offsets[q] .. in_offsets[q+1]). States without any incident
/// transition are kept and reported by is_isolated().
class NormalizedDlts {
public:
    NormalizedDlts() = default;

    std::size_t state_count() const noexcept { return state_names_.size(); }
    std::size_t letter_count() const noexcept { return letter_names_.size(); }
    std::size_t transition_count() const noexcept { return transitions_.size(); }

    std::span<const Transition> transitions() const noexcept { return transitions_; }
    std::span<const std::size_t> in_offsets() const noexcept { return in_offsets_; }
    std::span<const Transition> incoming(StateIndex q) const noexcept {
        return std::span<const Transition>(transitions_)
            .subspan(in_offsets_[q], in_offsets_[q + 1] - in_offsets_[q]);
    }

    const std::vector<std::string>& state_names() const noexcept { return state_names_; }
    const std::vector<std::string>& letter_names() const noexcept { return letter_names_; }

    bool is_isolated(StateIndex q) const noexcept { return isolated_[q] != 0; }
    std::size_t isolated_count() const noexcept;

private:
    friend NormalizedDlts normalize(const RawLts& raw, std::uint64_t* steps);

    std::vector<Transition> transitions_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<std::string> state_names_;
    std::vector<std::string> letter_names_;
    std::vector<char> isolated_;
};

/// A deterministic automaton over a declared alphabet. Letters that label no
/// transition still belong to the alphabet (they matter for language checks).
struct Dfa {
    RawLts lts;
    std::optional<StateIndex> initial;  // empty only for the 0-state automaton
    std::vector<StateIndex> finals;     // sorted, unique
};

/// Reads the `dlts <n>` format. Throws ParseError.
RawLts parse_lts(std::istream& in);
RawLts parse_lts(std::string_view text);

/// Reads the `dfa <n>` format. Throws ParseError.
Dfa parse_dfa(std::istream& in);
Dfa parse_dfa(std::string_view text);

/// All (state, letter) pairs with more than one outgoing transition, each
/// reported once, ordered by state then letter.
std::vector<Violation> check_deterministic(const RawLts& raw);

/// Builds the indexed encoding in O(k + m + n). Throws NondeterminismError
/// naming the first offending pair. If steps is given, the number of loop
/// iterations performed is added to it.
NormalizedDlts normalize(const RawLts& raw, std::uint64_t* steps = nullptr);

/// Inverse view of normalize: the used alphabet only, transitions in
/// destination order.
RawLts to_raw(const NormalizedDlts& t);

std::string format_lts(const RawLts& raw);
std::string format_dfa(const Dfa& dfa);

}  // namespace dlts
