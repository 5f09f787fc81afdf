#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nestfold/diagnostic.hpp"

namespace nestfold {

enum class Tok {
    uident,
    lident,
    nat,
    atom,
    arrow,
    colon,
    equals,
    lparen,
    rparen,
    lbracket,
    rbracket,
    comma,
    newline,
    eof,
};

struct Token {
    Tok kind;
    std::string text;
    std::uint64_t nat = 0;
    Pos pos;
};

inline const char* describe(Tok t) {
    switch (t) {
    case Tok::uident: return "type name";
    case Tok::lident: return "identifier";
    case Tok::nat: return "natural number";
    case Tok::atom: return "atom";
    case Tok::arrow: return "'->'";
    case Tok::colon: return "':'";
    case Tok::equals: return "'='";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::comma: return "','";
    case Tok::newline: return "end of line";
    case Tok::eof: return "end of input";
    }
    return "token";
}

/// Splits DSL text into tokens. `--` starts a line comment. Newlines are
/// significant (one constructor per line) and reported as tokens.
inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;

    auto ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    };
    auto advance = [&](std::size_t n) {
        i += n;
        col += n;
    };

    while (i < src.size()) {
        char c = src[i];
        Pos pos{line, col};
        if (c == '\n') {
            out.push_back({Tok::newline, "\n", 0, pos});
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            advance(1);
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            out.push_back({Tok::arrow, "->", 0, pos});
            advance(2);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            std::string word(src.substr(i, j - i));
            Tok k = std::isupper(static_cast<unsigned char>(c)) ? Tok::uident : Tok::lident;
            out.push_back({k, std::move(word), 0, pos});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            std::uint64_t v = 0;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                auto d = static_cast<std::uint64_t>(src[j] - '0');
                if (v > (UINT64_MAX - d) / 10) throw Error(pos, "natural literal out of range");
                v = v * 10 + d;
                ++j;
            }
            if (j < src.size() && ident_char(src[j]))
                throw Error(Pos{line, col + (j - i)}, "unexpected character after number");
            out.push_back({Tok::nat, std::string(src.substr(i, j - i)), v, pos});
            advance(j - i);
            continue;
        }
        if (c == '\'') {
            std::size_t j = i + 1;
            while (j < src.size() && ident_char(src[j]) && src[j] != '\'') ++j;
            if (j == i + 1) throw Error(pos, "empty atom");
            out.push_back({Tok::atom, std::string(src.substr(i + 1, j - i - 1)), 0, pos});
            advance(j - i);
            continue;
        }
        Tok k;
        switch (c) {
        case ':': k = Tok::colon; break;
        case '=': k = Tok::equals; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case '[': k = Tok::lbracket; break;
        case ']': k = Tok::rbracket; break;
        case ',': k = Tok::comma; break;
        default: {
            std::string shown = static_cast<unsigned char>(c) < 0x80 ? std::string(1, c) : "non-ASCII byte";
            throw Error(pos, "unexpected character '" + shown + "'");
        }
        }
        out.push_back({k, std::string(1, c), 0, pos});
        advance(1);
    }
    out.push_back({Tok::eof, "", 0, Pos{line, col}});
    return out;
}

} // namespace nestfold
