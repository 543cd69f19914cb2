#pragma once

// Parser for the lattice literal mini-language shared by the CLI and tests:
//   spec  := term ('+' term)*
//   term  := [count] atom [ '(' int ')' ]     count repeats, (m) rescales
//   atom  := 'U' | 'A'<n> | 'D'<n> | 'E'(6|7|8) | '<'int'>'
// e.g. "2U+2E8(-1)+<-46>".  A leading '{' is JSON {"gram": [[...]]} territory
// and is handled by the I/O layer, not here.

#include <klat/errors.hpp>
#include <klat/lattice.hpp>

#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

namespace klat {

namespace detail {

class SpecParser {
public:
    explicit SpecParser(const std::string& text) : s_(text) {}

    IntegralLattice parse() {
        std::vector<IntegralLattice> parts;
        parse_term(parts);
        skip_ws();
        while (pos_ < s_.size() && s_[pos_] == '+') {
            ++pos_;
            parse_term(parts);
            skip_ws();
        }
        check(pos_ == s_.size(), errc::parse_error,
              "unexpected trailing input in lattice spec: '" + s_.substr(pos_) + "'");
        IntegralLattice L = direct_sum(parts);
        L.set_label(compact_label());
        return L;
    }

private:
    void parse_term(std::vector<IntegralLattice>& parts) {
        skip_ws();
        long long count = 1;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            count = parse_int();
            check(count >= 1, errc::parse_error, "repeat count must be >= 1");
        }
        IntegralLattice atom = parse_atom();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            Integer m(parse_int());
            skip_ws();
            expect(')');
            atom = rescale(atom, m);
        }
        for (long long i = 0; i < count; ++i) parts.push_back(atom);
    }

    IntegralLattice parse_atom() {
        skip_ws();
        check(pos_ < s_.size(), errc::parse_error, "lattice spec ends where an atom is expected");
        char c = s_[pos_];
        if (c == 'U') {
            ++pos_;
            return lattice_U();
        }
        if (c == 'A' || c == 'D' || c == 'E') {
            ++pos_;
            long long n = parse_int();
            check(n >= 1, errc::parse_error, "rank must be positive");
            if (c == 'A') return lattice_A(static_cast<std::size_t>(n));
            if (c == 'D') {
                check(n >= 2, errc::parse_error, "D_n needs n >= 2");
                return lattice_D(static_cast<std::size_t>(n));
            }
            check(n >= 6 && n <= 8, errc::parse_error, "E_n needs n in {6,7,8}");
            return lattice_E(static_cast<std::size_t>(n));
        }
        if (c == '<') {
            ++pos_;
            Integer k(parse_int());
            skip_ws();
            expect('>');
            return lattice_scalar(k);
        }
        throw error(errc::parse_error, std::string("unexpected character '") + c + "' in lattice spec");
    }

    long long parse_int() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        check(pos_ > digits, errc::parse_error, "expected an integer in lattice spec");
        check(pos_ - start <= 12, errc::parse_error, "integer literal out of range");
        return std::stoll(s_.substr(start, pos_ - start));
    }

    void expect(char c) {
        check(pos_ < s_.size() && s_[pos_] == c, errc::parse_error,
              std::string("expected '") + c + "' in lattice spec");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string compact_label() const {
        std::string out;
        for (char c : s_)
            if (!std::isspace(static_cast<unsigned char>(c))) out += c;
        return out;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline IntegralLattice parse_lattice_spec(const std::string& text) {
    return detail::SpecParser(text).parse();
}

}  // namespace klat
