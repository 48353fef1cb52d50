#ifndef TECSOE_CDL_LEXER_HPP
#define TECSOE_CDL_LEXER_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "tecsoe/diag.hpp"

namespace tecsoe {

enum class TokenKind {
    Keyword,   // signature celltype cell entry call attr var void
    Ident,
    IntLit,
    FloatLit,
    BoolLit,
    LBrace, RBrace,
    LParen, RParen,
    Semi, Comma, Eq, Dot,
    EndOfFile,
};

inline const char* to_string(TokenKind k) {
    switch (k) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Ident: return "identifier";
        case TokenKind::IntLit: return "integer";
        case TokenKind::FloatLit: return "float";
        case TokenKind::BoolLit: return "bool";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Semi: return "';'";
        case TokenKind::Comma: return "','";
        case TokenKind::Eq: return "'='";
        case TokenKind::Dot: return "'.'";
        case TokenKind::EndOfFile: return "end of file";
    }
    return "?";
}

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string lexeme;
    SourceSpan span;

    bool is_keyword(std::string_view kw) const {
        return kind == TokenKind::Keyword && lexeme == kw;
    }
};

namespace detail {

inline bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_cdl_keyword(std::string_view s) {
    return s == "signature" || s == "celltype" || s == "cell" || s == "entry" ||
           s == "call" || s == "attr" || s == "var" || s == "void";
}

} // namespace detail

// Comments and whitespace are discarded; the trailing EndOfFile token is not
// included in the returned stream.
inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    };

    auto make_span = [&](std::size_t len) {
        return SourceSpan{pos, pos + len, line, col};
    };

    while (pos < text.size()) {
        char c = text[pos];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
            while (pos < text.size() && text[pos] != '\n') advance(1);
            continue;
        }
        if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '*') {
            SourceSpan open = make_span(2);
            advance(2);
            bool closed = false;
            while (pos + 1 < text.size()) {
                if (text[pos] == '*' && text[pos + 1] == '/') {
                    advance(2);
                    closed = true;
                    break;
                }
                advance(1);
            }
            if (!closed) throw LexError(open, "unterminated block comment");
            continue;
        }

        if (detail::is_ident_start(c)) {
            std::size_t len = 1;
            while (pos + len < text.size() && detail::is_ident_char(text[pos + len])) ++len;
            std::string lexeme(text.substr(pos, len));
            TokenKind kind = TokenKind::Ident;
            if (lexeme == "true" || lexeme == "false")
                kind = TokenKind::BoolLit;
            else if (detail::is_cdl_keyword(lexeme))
                kind = TokenKind::Keyword;
            out.push_back({kind, std::move(lexeme), make_span(len)});
            advance(len);
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos + 1 < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos + 1])))) {
            std::size_t len = c == '-' ? 1 : 0;
            while (pos + len < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[pos + len])))
                ++len;
            bool is_float = false;
            // '.' only starts a fraction when a digit follows; otherwise it is
            // the member-access dot.
            if (pos + len + 1 < text.size() && text[pos + len] == '.' &&
                std::isdigit(static_cast<unsigned char>(text[pos + len + 1]))) {
                is_float = true;
                ++len;
                while (pos + len < text.size() &&
                       std::isdigit(static_cast<unsigned char>(text[pos + len])))
                    ++len;
            }
            out.push_back({is_float ? TokenKind::FloatLit : TokenKind::IntLit,
                           std::string(text.substr(pos, len)), make_span(len)});
            advance(len);
            continue;
        }

        TokenKind kind;
        switch (c) {
            case '{': kind = TokenKind::LBrace; break;
            case '}': kind = TokenKind::RBrace; break;
            case '(': kind = TokenKind::LParen; break;
            case ')': kind = TokenKind::RParen; break;
            case ';': kind = TokenKind::Semi; break;
            case ',': kind = TokenKind::Comma; break;
            case '=': kind = TokenKind::Eq; break;
            case '.': kind = TokenKind::Dot; break;
            default:
                throw LexError(make_span(1),
                               "unrecognized character '" + std::string(1, c) + "'");
        }
        out.push_back({kind, std::string(1, c), make_span(1)});
        advance(1);
    }
    return out;
}

} // namespace tecsoe

#endif // TECSOE_CDL_LEXER_HPP
